#include "jcpost/oracles.hpp"

#include <algorithm>
#include <cmath>

namespace jcpost {

void SeriesParams::validate() const {
    if (!std::isfinite(alpha_sq) || alpha_sq < 0.0)
        throw invalid_input_error("alpha_sq must be finite and >= 0");
    if (!std::isfinite(r) || r < 0.0)
        throw invalid_input_error("coupling r must be finite and >= 0");
    if (n_atoms < 1) throw invalid_input_error("n_atoms must be >= 1");
    if (terms < 1) throw invalid_input_error("terms must be >= 1");
    if (!std::isfinite(tol) || tol <= 0.0) throw invalid_input_error("tol must be > 0");
}

namespace {

// Sum_n w_n f(n) with Poisson weights w_n = exp(-m) m^n / n!. The requested
// term count is a floor; summation continues until both the last contribution
// and a tail bound drop below tol/10. Once n+1 >= 2m the weights at least
// halve per step, so sum_{k>n} k w_k <= 2 (n+2) w_{n+1}, which also bounds
// plain tails since f stays within [0, k] for every integrand used here.
template <typename F>
double poisson_series(double m, int min_terms, double tol, F&& f) {
    double w = std::exp(-m);
    double sum = 0.0;
    const double target = tol / 10.0;
    int n = 0;
    for (;;) {
        const double contrib = w * f(n);
        sum += contrib;
        const double w_next = w * m / (static_cast<double>(n) + 1.0);
        const bool deep_enough =
            n + 1 >= min_terms && static_cast<double>(n + 1) >= 2.0 * m + 8.0;
        if (deep_enough && 2.0 * (n + 2) * w_next < target && std::abs(contrib) < target)
            return sum;
        w = w_next;
        ++n;
        if (n > 50'000'000) throw degenerate_state_error("series failed to converge");
    }
}

}  // namespace

double mean_n_absorption(const SeriesParams& params) {
    params.validate();
    if (params.n_atoms != 1)
        throw invalid_input_error("mean_n_absorption covers a single atom only");
    const double r = params.r;
    const double removed = poisson_series(params.alpha_sq, params.terms, params.tol, [r](int n) {
        const double s = std::sin(r * std::sqrt(static_cast<double>(n)));
        return s * s;
    });
    return params.alpha_sq - removed;
}

double mean_n_postselect(const SeriesParams& params) {
    params.validate();
    if (params.n_atoms != 1)
        throw invalid_input_error("mean_n_postselect covers a single atom only");
    const double r = params.r;
    const double num = poisson_series(params.alpha_sq, params.terms, params.tol, [r](int n) {
        const double c = std::cos(r * std::sqrt(static_cast<double>(n) + 1.0));
        return c * c;
    });
    const double den = poisson_series(params.alpha_sq, params.terms, params.tol, [r](int n) {
        const double c = std::cos(r * std::sqrt(static_cast<double>(n)));
        return c * c;
    });
    if (den < 1e-300)
        throw impossible_postselection_error("ground post-selection has vanishing probability");
    return params.alpha_sq * num / den;
}

double success_probability(const SeriesParams& params) {
    params.validate();
    const double r = params.r;
    const int n_atoms = params.n_atoms;
    const double p = poisson_series(params.alpha_sq, params.terms, params.tol, [r, n_atoms](int n) {
        const double c = std::cos(r * std::sqrt(static_cast<double>(n)));
        return std::pow(c * c, n_atoms);
    });
    return std::clamp(p, 0.0, 1.0);
}

FieldState postselected_state_closed_form(complexd alpha, double r, int n_atoms, int dim) {
    if (!std::isfinite(r) || r < 0.0)
        throw invalid_input_error("coupling r must be finite and >= 0");
    if (n_atoms < 1) throw invalid_input_error("n_atoms must be >= 1");

    AmplitudeVector amps = coherent_amplitudes(alpha, dim);
    Eigen::VectorXcd filtered = amps.c;
    for (int n = 0; n < dim; ++n)
        filtered[n] *= std::pow(std::cos(r * std::sqrt(static_cast<double>(n))), n_atoms);

    const double norm_sq = filtered.squaredNorm();
    if (norm_sq < 1e-300)
        throw impossible_postselection_error("post-selection filter annihilated the state");

    FieldState st;
    st.matrix.noalias() = (filtered * filtered.adjoint()) / norm_sq;
    st.is_normalized = true;
    return st;
}

double small_r_equivalence_gap(double alpha_sq, double r) {
    if (!std::isfinite(r) || r < 0.0 || r >= 0.2)
        throw invalid_input_error("small_r_equivalence_gap requires 0 <= r < 0.2");
    SeriesParams params;
    params.alpha_sq = alpha_sq;
    params.r = r;
    params.terms = 64;
    params.tol = 1e-13;
    return std::abs(mean_n_absorption(params) - mean_n_postselect(params));
}

}  // namespace jcpost

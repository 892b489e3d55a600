#include "jcpost/fock.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace jcpost {

namespace {

bool is_finite(complexd z) {
    return std::isfinite(z.real()) && std::isfinite(z.imag());
}

}  // namespace

void InputSpec::validate() const {
    if (!is_finite(alpha)) throw invalid_input_error("alpha must be finite");
    if (!std::isfinite(squeezing_s) || squeezing_s < 0.0)
        throw invalid_input_error("squeezing_s must be finite and >= 0");
    if (!std::isfinite(squeezing_theta) || squeezing_theta < 0.0 ||
        squeezing_theta >= 2.0 * std::numbers::pi)
        throw invalid_input_error("squeezing_theta must lie in [0, 2*pi)");
}

AmplitudeVector coherent_amplitudes(complexd alpha, int dim) {
    if (dim < 1) throw invalid_input_error("dim must be >= 1");
    if (!is_finite(alpha)) throw invalid_input_error("alpha must be finite");

    AmplitudeVector out;
    out.c.resize(dim);
    out.c[0] = std::exp(-0.5 * std::norm(alpha));
    for (int n = 0; n + 1 < dim; ++n)
        out.c[n + 1] = out.c[n] * alpha / std::sqrt(static_cast<double>(n) + 1.0);
    out.tail_mass = std::max(0.0, 1.0 - out.c.squaredNorm());
    return out;
}

AmplitudeVector squeezed_coherent_amplitudes(const InputSpec& spec, int dim) {
    spec.validate();
    if (dim < 1) throw invalid_input_error("dim must be >= 1");
    if (spec.squeezing_s < 1e-12) return coherent_amplitudes(spec.alpha, dim);

    const double s = spec.squeezing_s;
    const complexd eith = std::polar(1.0, spec.squeezing_theta);
    const complexd gamma = spec.alpha * std::cosh(s) + std::conj(spec.alpha) * eith * std::sinh(s);
    // The Hermite argument and the prefactor's square root must share one
    // branch, or every odd amplitude flips sign relative to the coherent
    // limit. Deriving both from u guarantees that.
    const complexd u = std::sqrt(eith * std::sinh(2.0 * s));
    const complexd x = gamma / u;
    const complexd sqw = u / (2.0 * std::cosh(s));

    // Evaluate in an overshoot space so the truncation tail can be reported.
    const int ext = dim + 32;

    // Hermite values by the three-term recurrence, rescaled into a log offset
    // whenever the magnitude grows past 1e250.
    Eigen::VectorXcd h(ext);       // scaled H_n(x)
    Eigen::VectorXd h_log(ext);    // log of the scale factor taken out of h[n]
    h[0] = 1.0;
    h_log[0] = 0.0;
    if (ext > 1) {
        h[1] = 2.0 * x;
        h_log[1] = 0.0;
    }
    for (int n = 1; n + 1 < ext; ++n) {
        complexd next =
            2.0 * x * h[n] - 2.0 * static_cast<double>(n) * h[n - 1] * std::exp(h_log[n - 1] - h_log[n]);
        double lg = h_log[n];
        const double mag = std::abs(next);
        if (mag > 1e250) {
            next /= mag;
            lg += std::log(mag);
        }
        h[n + 1] = next;
        h_log[n + 1] = lg;
    }

    // Prefactor sqw^n / sqrt(n! cosh s) as unit phase times log magnitude,
    // both advanced multiplicatively.
    const double log_abs_sqw = std::log(std::abs(sqw));
    const complexd phase_step = sqw / std::abs(sqw);
    Eigen::VectorXd a_log(ext);
    Eigen::VectorXcd a_unit(ext);
    complexd phase = 1.0;
    double p_log = -0.5 * std::log(std::cosh(s));
    for (int n = 0; n < ext; ++n) {
        if (n > 0) {
            phase *= phase_step;
            p_log += log_abs_sqw - 0.5 * std::log(static_cast<double>(n));
        }
        const double hmag = std::abs(h[n]);
        if (hmag == 0.0) {
            a_log[n] = -std::numeric_limits<double>::infinity();
            a_unit[n] = 0.0;
        } else {
            a_log[n] = p_log + h_log[n] + std::log(hmag);
            a_unit[n] = phase * (h[n] / hmag);
        }
    }

    const double peak = a_log.maxCoeff();
    if (!std::isfinite(peak))
        throw degenerate_state_error("squeezed amplitude evaluation produced an empty state");

    Eigen::VectorXcd raw(ext);
    for (int n = 0; n < ext; ++n)
        raw[n] = std::isfinite(a_log[n]) ? a_unit[n] * std::exp(a_log[n] - peak) : complexd(0.0);

    const double total = raw.squaredNorm();
    const double kept = raw.head(dim).squaredNorm();
    if (!(kept > 0.0))
        throw degenerate_state_error("requested dimension carries no amplitude mass");
    AmplitudeVector out;
    out.c = raw.head(dim) / std::sqrt(kept);
    out.tail_mass = std::max(0.0, (total - kept) / total);
    return out;
}

FieldState pure_density(const AmplitudeVector& amps) {
    if (amps.dim() < 1) throw invalid_input_error("amplitude vector must be non-empty");
    if (!amps.c.allFinite()) throw invalid_input_error("amplitudes must be finite");

    FieldState st;
    st.matrix.noalias() = amps.c * amps.c.adjoint();
    st.is_normalized = std::abs(st.trace() - 1.0) <= 1e-10;
    return st;
}

FieldState number_state_density(int n, int dim) {
    if (dim < 1) throw invalid_input_error("dim must be >= 1");
    if (n < 0) throw invalid_input_error("photon number must be >= 0");
    if (n >= dim) throw out_of_range_error("photon number exceeds the truncation dimension");

    FieldState st;
    st.matrix = Eigen::MatrixXcd::Zero(dim, dim);
    st.matrix(n, n) = 1.0;
    st.is_normalized = true;
    return st;
}

double mean_photon_number(const FieldState& rho) {
    if (!rho.is_normalized)
        throw invalid_input_error("state is not normalized; use the unnormalized variant");
    double sum = 0.0;
    for (int n = 0; n < rho.dim(); ++n) sum += n * rho.matrix(n, n).real();
    return sum;
}

double mean_photon_number_unnormalized(const FieldState& rho) {
    const double tr = rho.trace();
    if (tr < 1e-300) throw degenerate_state_error("state trace vanished");
    double sum = 0.0;
    for (int n = 0; n < rho.dim(); ++n) sum += n * rho.matrix(n, n).real();
    return sum / tr;
}

complexd mean_amplitude(const FieldState& rho) {
    complexd sum = 0.0;
    for (int n = 0; n + 1 < rho.dim(); ++n)
        sum += std::sqrt(static_cast<double>(n) + 1.0) * rho.matrix(n + 1, n);
    return sum;
}

int default_dim(double mean_photons, bool may_amplify) {
    if (!std::isfinite(mean_photons) || mean_photons < 0.0)
        throw invalid_input_error("mean photon number must be finite and >= 0");
    const double m = may_amplify ? 3.0 * mean_photons : mean_photons;
    return static_cast<int>(std::ceil(m + 12.0 * std::sqrt(m + 1.0))) + 8;
}

double hermiticity_defect(const FieldState& rho) {
    return (rho.matrix - rho.matrix.adjoint()).cwiseAbs().maxCoeff();
}

double min_diagonal(const FieldState& rho) {
    return rho.matrix.diagonal().real().minCoeff();
}

double min_eigenvalue(const FieldState& rho) {
    const Eigen::MatrixXcd herm = 0.5 * (rho.matrix + rho.matrix.adjoint());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(herm, Eigen::EigenvaluesOnly);
    return solver.eigenvalues().minCoeff();
}

}  // namespace jcpost

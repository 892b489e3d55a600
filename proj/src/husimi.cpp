#include "jcpost/husimi.hpp"

#include <cmath>
#include <numbers>

namespace jcpost {

void QGridSpec::validate() const {
    if (!std::isfinite(re_min) || !std::isfinite(re_max) || !std::isfinite(im_min) ||
        !std::isfinite(im_max))
        throw invalid_input_error("grid bounds must be finite");
    if (!(re_max > re_min) || !(im_max > im_min))
        throw invalid_input_error("grid bounds must satisfy max > min on both axes");
    if (n_re < 2 || n_im < 2)
        throw invalid_input_error("grid needs at least 2 samples per axis");
}

double QGrid::integral() const {
    return values.sum() * spec.re_step() * spec.im_step();
}

QGridSpec default_grid_spec(const FieldState& rho) {
    const complexd center = mean_amplitude(rho);
    const double half_width = 4.5 / std::sqrt(2.0);
    QGridSpec spec;
    spec.re_min = center.real() - half_width;
    spec.re_max = center.real() + half_width;
    spec.im_min = center.imag() - half_width;
    spec.im_max = center.imag() + half_width;
    spec.n_re = 201;
    spec.n_im = 201;
    return spec;
}

QGrid q_function(const FieldState& rho, const QGridSpec& spec) {
    spec.validate();
    if (!rho.is_normalized) throw invalid_input_error("q_function requires a normalized state");
    if (rho.matrix.rows() != rho.matrix.cols())
        throw invalid_input_error("density matrix must be square");
    if (!rho.matrix.allFinite()) throw invalid_input_error("density matrix must be finite");

    const int d = rho.dim();
    QGrid grid;
    grid.spec = spec;
    grid.values.resize(spec.n_im, spec.n_re);

    // Batch one grid row at a time: build the coherent vectors for every
    // re-sample as columns, push them through rho with one product, then take
    // the quadratic form column by column.
    Eigen::MatrixXcd coh(d, spec.n_re);
    Eigen::MatrixXcd pushed(d, spec.n_re);
    for (int i = 0; i < spec.n_im; ++i) {
        const double y = spec.im_at(i);
        for (int j = 0; j < spec.n_re; ++j) {
            const complexd alpha(spec.re_at(j), y);
            coh(0, j) = std::exp(-0.5 * std::norm(alpha));
            for (int n = 0; n + 1 < d; ++n)
                coh(n + 1, j) = coh(n, j) * alpha / std::sqrt(static_cast<double>(n) + 1.0);
        }
        pushed.noalias() = rho.matrix * coh;
        for (int j = 0; j < spec.n_re; ++j) {
            const complexd q = coh.col(j).dot(pushed.col(j));
            if (std::abs(q.imag()) > 1e-12)
                throw invalid_input_error("density matrix is not Hermitian enough for Q evaluation");
            grid.values(i, j) = q.real() / std::numbers::pi;
        }
    }
    return grid;
}

QPeak q_peak(const QGrid& grid) {
    const int n_im = static_cast<int>(grid.values.rows());
    const int n_re = static_cast<int>(grid.values.cols());
    if (n_im < 1 || n_re < 1) throw invalid_input_error("grid has no samples");

    bool all_zero = true;
    bool found = false;
    double best_value = 0.0;
    complexd best_alpha;
    for (int i = 0; i < n_im; ++i) {
        for (int j = 0; j < n_re; ++j) {
            const double v = grid.values(i, j);
            if (v != 0.0) all_zero = false;
            const complexd alpha(grid.spec.re_at(j), grid.spec.im_at(i));
            const bool better =
                !found || v > best_value ||
                (v == best_value && std::norm(alpha) < std::norm(best_alpha));
            if (better) {
                found = true;
                best_value = v;
                best_alpha = alpha;
            }
        }
    }
    if (all_zero) throw degenerate_grid_error("Q grid is identically zero");
    return QPeak{best_alpha, best_value};
}

}  // namespace jcpost

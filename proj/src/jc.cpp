#include "jcpost/jc.hpp"

#include <cmath>

namespace jcpost {

void InteractionConfig::validate() const {
    if (!std::isfinite(r) || r < 0.0)
        throw invalid_input_error("coupling r must be finite and >= 0");
    if (n_atoms < 1) throw invalid_input_error("n_atoms must be >= 1");
    if (dim < 2) throw invalid_input_error("dim must be >= 2");
}

BlockOperators block_operators(double r, int dim) {
    if (dim < 2) throw invalid_input_error("dim must be >= 2");
    if (!std::isfinite(r) || r < 0.0)
        throw invalid_input_error("coupling r must be finite and >= 0");

    BlockOperators ops;
    ops.cprime.resize(dim);
    ops.s_shift.resize(dim);
    for (int n = 0; n < dim; ++n) {
        ops.cprime[n] = std::cos(r * std::sqrt(static_cast<double>(n)));
        ops.s_shift[n] = complexd(0.0, -1.0) * std::sin(r * std::sqrt(static_cast<double>(n) + 1.0));
    }
    return ops;
}

EvolvedBlocks evolve_one_atom(const FieldState& rho, double r) {
    if (!std::isfinite(r) || r < 0.0)
        throw invalid_input_error("coupling r must be finite and >= 0");
    const int d = rho.dim();
    if (d < 2) throw invalid_input_error("dim must be >= 2");
    if (rho.matrix.cols() != d) throw invalid_input_error("density matrix must be square");
    if (!rho.matrix.allFinite()) throw invalid_input_error("density matrix must be finite");

    Eigen::VectorXd cos_ground(d);   // cos(r sqrt(n)), weight kept on |n>
    Eigen::VectorXd sin_lowered(d);  // sin(r sqrt(n+1)), weight moved from |n+1> to |n>
    for (int n = 0; n < d; ++n) {
        cos_ground[n] = std::cos(r * std::sqrt(static_cast<double>(n)));
        sin_lowered[n] = std::sin(r * std::sqrt(static_cast<double>(n) + 1.0));
    }

    EvolvedBlocks out;
    out.rho22.noalias() =
        cos_ground.asDiagonal() * rho.matrix * cos_ground.asDiagonal();
    out.rho11 = Eigen::MatrixXcd::Zero(d, d);
    out.rho11.topLeftCorner(d - 1, d - 1).noalias() =
        sin_lowered.head(d - 1).asDiagonal() * rho.matrix.bottomRightCorner(d - 1, d - 1) *
        sin_lowered.head(d - 1).asDiagonal();
    return out;
}

Eigen::MatrixXcd joint_unitary(double r, int dim) {
    if (dim < 2) throw invalid_input_error("dim must be >= 2");
    if (!std::isfinite(r) || r < 0.0)
        throw invalid_input_error("coupling r must be finite and >= 0");

    // Basis order: |n, excited> for n in [0, dim), then |n, ground>.
    Eigen::MatrixXcd u = Eigen::MatrixXcd::Zero(2 * dim, 2 * dim);
    const complexd minus_i(0.0, -1.0);
    for (int n = 0; n < dim; ++n) {
        const double up = r * std::sqrt(static_cast<double>(n) + 1.0);
        u(n, n) = std::cos(up);
        if (n + 1 < dim) u(dim + n + 1, n) = minus_i * std::sin(up);

        const double down = r * std::sqrt(static_cast<double>(n));
        u(dim + n, dim + n) = std::cos(down);
        if (n >= 1) u(n - 1, dim + n) = minus_i * std::sin(down);
    }
    return u;
}

}  // namespace jcpost

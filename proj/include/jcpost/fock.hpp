#pragma once

#include <Eigen/Dense>
#include <complex>

#include "jcpost/errors.hpp"

namespace jcpost {

using complexd = std::complex<double>;

// Parameters of the initial field: coherent amplitude plus optional squeezing.
struct InputSpec {
    complexd alpha{0.0, 0.0};
    double squeezing_s = 0.0;      // >= 0; 0 means a plain coherent state
    double squeezing_theta = 0.0;  // radians in [0, 2*pi)

    void validate() const;  // throws invalid_input_error on violation
};

// Fock-basis amplitude vector c_n for n = 0..dim-1.
struct AmplitudeVector {
    Eigen::VectorXcd c;
    // Estimated probability mass of the state beyond the truncation dimension.
    double tail_mass = 0.0;

    int dim() const { return static_cast<int>(c.size()); }
};

// Density matrix of the field in the truncated Fock basis.
struct FieldState {
    Eigen::MatrixXcd matrix;
    bool is_normalized = false;

    int dim() const { return static_cast<int>(matrix.rows()); }
    double trace() const { return matrix.trace().real(); }
};

// c_n = e^{-|alpha|^2/2} alpha^n / sqrt(n!), via the stable multiplicative
// recurrence c_{n+1} = c_n * alpha / sqrt(n+1).
AmplitudeVector coherent_amplitudes(complexd alpha, int dim);

// Squeezed coherent amplitudes: Hermite-polynomial expansion evaluated by the
// three-term recurrence with a multiplicative prefactor, normalized
// numerically after truncation. Falls back to coherent_amplitudes when
// squeezing_s < 1e-12.
AmplitudeVector squeezed_coherent_amplitudes(const InputSpec& spec, int dim);

// rho_{nm} = c_n * conj(c_m). The trace equals the squared norm of c; the
// is_normalized flag is set when that trace is within 1e-10 of one.
FieldState pure_density(const AmplitudeVector& amps);

// rho = |n><n| on a dim-dimensional space.
FieldState number_state_density(int n, int dim);

// Sum_n n * Re(rho_nn). Requires a normalized state.
double mean_photon_number(const FieldState& rho);

// Variant for unnormalized states: divides by the trace.
double mean_photon_number_unnormalized(const FieldState& rho);

// Tr(rho a) = Sum_n sqrt(n+1) rho_{n+1,n}; used to center phase-space grids.
complexd mean_amplitude(const FieldState& rho);

// Default truncation dimension for a state of the given mean photon number.
// When a requested channel can amplify, the mean is tripled before applying
// the tail rule so the output state still fits.
int default_dim(double mean_photons, bool may_amplify);

// Diagnostics used by tests and the truncation warning machinery.
double hermiticity_defect(const FieldState& rho);  // max elementwise |rho - rho^H|
double min_diagonal(const FieldState& rho);        // min over n of Re(rho_nn)
double min_eigenvalue(const FieldState& rho);      // smallest eigenvalue of the Hermitian part

}  // namespace jcpost

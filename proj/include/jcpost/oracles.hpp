#pragma once

#include "jcpost/fock.hpp"

namespace jcpost {

// Parameters for the closed-form series evaluators. `terms` is a floor on the
// series length; evaluation extends adaptively until both the Poisson tail
// bound and the last-term contribution fall below tol/10.
struct SeriesParams {
    double alpha_sq = 0.0;  // |alpha|^2
    double r = 0.0;
    int n_atoms = 1;
    int terms = 64;
    double tol = 1e-12;

    void validate() const;
};

// Single-atom mean photon number after ordinary absorption:
//   |alpha|^2 - e^{-|alpha|^2} Sum_n |alpha|^{2n}/n! * sin^2(r sqrt(n)).
double mean_n_absorption(const SeriesParams& params);

// Single-atom mean photon number after ground-state post-selection:
//   |alpha|^2 * Sum_n w_n cos^2(r sqrt(n+1)) / Sum_n w_n cos^2(r sqrt(n)),
// with Poisson weights w_n.
double mean_n_postselect(const SeriesParams& params);

// Probability that all N atoms are found in the ground state:
//   e^{-|alpha|^2} Sum_n |alpha|^{2n}/n! * cos^{2N}(r sqrt(n)).
double success_probability(const SeriesParams& params);

// Ground-state post-selected field after N atoms, built directly from the
// one-shot amplitude filter c_n -> c_n cos^N(r sqrt(n)) and normalized;
// bypasses the step-by-step engine entirely.
FieldState postselected_state_closed_form(complexd alpha, double r, int n_atoms, int dim);

// |mean_n_absorption - mean_n_postselect| at a single atom; shrinks like r^4.
// Requires r < 0.2 (the regime the expansion argument covers).
double small_r_equivalence_gap(double alpha_sq, double r);

}  // namespace jcpost

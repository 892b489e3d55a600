#pragma once

#include <Eigen/Dense>

#include "jcpost/fock.hpp"

namespace jcpost {

// One interaction run: coupling r = lambda*t, number of sequential atoms,
// Fock truncation dimension.
struct InteractionConfig {
    double r = 0.0;
    int n_atoms = 1;
    int dim = 2;

    void validate() const;  // throws invalid_input_error on violation
};

// Field blocks of the joint density operator after one interaction interval
// with a ground-state atom.
struct EvolvedBlocks {
    Eigen::MatrixXcd rho11;  // atom ended excited: one photon moved into the atom
    Eigen::MatrixXcd rho22;  // atom ended in the ground state
};

// Fock-basis action coefficients of the block evolution operators.
struct BlockOperators {
    // Entry n: cos(r*sqrt(n)); diagonal action on |n>.
    Eigen::VectorXd cprime;
    // Entry n: -i*sin(r*sqrt(n+1)); action |n> -> |n+1>. The adjoint-side
    // lowering action on |n> uses the same magnitudes shifted down, with the
    // n = 0 entry exactly zero.
    Eigen::VectorXcd s_shift;
};

BlockOperators block_operators(double r, int dim);

// Elementwise closed-form evolution:
//   rho22_{nm} = cos(r sqrt(n)) rho_{nm} cos(r sqrt(m))
//   rho11_{nm} = sin(r sqrt(n+1)) rho_{n+1,m+1} sin(r sqrt(m+1)),  n,m <= D-2
// with the last row/column of rho11 zero. Exactly trace-conserving:
// Tr(rho11) + Tr(rho22) = Tr(rho).
EvolvedBlocks evolve_one_atom(const FieldState& rho, double r);

// Debug/test support: the full 2D x 2D block unitary on (excited, ground)
// joint basis, ordered excited block first. Truncation clips the raising
// action out of the top excited column only; all other columns are exactly
// orthonormal.
Eigen::MatrixXcd joint_unitary(double r, int dim);

}  // namespace jcpost

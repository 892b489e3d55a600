#pragma once

#include <Eigen/Dense>

#include "jcpost/fock.hpp"

namespace jcpost {

struct QGridSpec {
    double re_min = 0.0, re_max = 0.0;
    double im_min = 0.0, im_max = 0.0;
    int n_re = 201, n_im = 201;

    void validate() const;  // max > min per axis, >= 2 samples per axis
    double re_step() const { return (re_max - re_min) / (n_re - 1); }
    double im_step() const { return (im_max - im_min) / (n_im - 1); }
    double re_at(int j) const { return re_min + j * re_step(); }
    double im_at(int i) const { return im_min + i * im_step(); }
};

struct QGrid {
    QGridSpec spec;
    Eigen::MatrixXd values;  // n_im rows by n_re columns

    double integral() const;  // Riemann sum: sum(values) * re_step * im_step
};

struct QPeak {
    complexd alpha_peak{0.0, 0.0};
    double q_max = 0.0;
};

// Default grid: centered on Tr(rho a), half-width 4.5 standard deviations of
// a coherent state's Q distribution (4.5/sqrt(2)), 201 x 201 samples.
QGridSpec default_grid_spec(const FieldState& rho);

// Q(alpha) = <alpha|rho|alpha> / pi evaluated on the grid.
QGrid q_function(const FieldState& rho, const QGridSpec& spec);

// Grid argmax. Ties break toward smaller |alpha|, then row-major order.
QPeak q_peak(const QGrid& grid);

}  // namespace jcpost

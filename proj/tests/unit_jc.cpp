#include <cmath>
#include <complex>
#include <numbers>

#include "doctest.h"
#include "jcpost/jc.hpp"

using jcpost::complexd;

namespace {

const double kSqrt10 = std::sqrt(10.0);

// Independent coherent amplitude: alpha^n by repeated multiplication over a
// long-double factorial, not the library recurrence.
complexd brute_coherent(complexd alpha, int n) {
    complexd num(1.0, 0.0);
    long double fact = 1.0L;
    for (int k = 1; k <= n; ++k) {
        num *= alpha;
        fact *= k;
    }
    return std::exp(-0.5 * std::norm(alpha)) * num / std::sqrt(static_cast<double>(fact));
}

}  // namespace

TEST_CASE("block operators: pinned entries") {
    const auto at_zero = jcpost::block_operators(0.0, 3);
    for (int n = 0; n < 3; ++n) {
        CHECK(at_zero.cprime[n] == 1.0);
        CHECK(std::abs(at_zero.s_shift[n]) == 0.0);
    }

    const double r = 0.25;
    const auto ops = jcpost::block_operators(r, 3);
    CHECK(ops.cprime[0] == 1.0);
    CHECK(ops.cprime[1] == doctest::Approx(std::cos(r)).epsilon(1e-15));
    CHECK(ops.cprime[2] == doctest::Approx(std::cos(r * std::sqrt(2.0))).epsilon(1e-15));
    CHECK(ops.s_shift[0].imag() == doctest::Approx(-std::sin(r)).epsilon(1e-15));
    CHECK(ops.s_shift[0].real() == 0.0);

    CHECK_THROWS_AS(jcpost::block_operators(0.5, 1), jcpost::invalid_input_error);
    CHECK_THROWS_AS(jcpost::block_operators(-0.5, 4), jcpost::invalid_input_error);
}

TEST_CASE("vacuum is inert and a number state Rabi-oscillates") {
    const auto vacuum = jcpost::number_state_density(0, 6);
    const auto ev = jcpost::evolve_one_atom(vacuum, 1.3);
    CHECK((ev.rho22 - vacuum.matrix).cwiseAbs().maxCoeff() < 1e-15);
    CHECK(ev.rho11.cwiseAbs().maxCoeff() < 1e-15);

    for (int n : {1, 3, 5}) {
        for (double r : {0.2, 0.7, 1.9}) {
            const auto state = jcpost::number_state_density(n, 8);
            const auto blocks = jcpost::evolve_one_atom(state, r);
            const double c = std::cos(r * std::sqrt(static_cast<double>(n)));
            CHECK(blocks.rho22.trace().real() == doctest::Approx(c * c).epsilon(1e-14));
            CHECK(blocks.rho11.trace().real() ==
                  doctest::Approx(1.0 - c * c).epsilon(1e-13));
            // The excited block holds |n-1><n-1|.
            CHECK(blocks.rho11(n - 1, n - 1).real() ==
                  doctest::Approx(1.0 - c * c).epsilon(1e-13));
        }
    }
}

TEST_CASE("one-photon state fully absorbed at the pi pulse") {
    const auto one = jcpost::number_state_density(1, 4);
    const auto blocks = jcpost::evolve_one_atom(one, std::numbers::pi / 2.0);
    CHECK(blocks.rho22.trace().real() < 1e-30);
    CHECK((blocks.rho11(0, 0).real()) == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("evolved blocks match the closed-form coefficients") {
    for (const complexd alpha : {complexd(kSqrt10, 0.0), complexd(1.0, 0.3)}) {
        const double r = 0.4;
        const auto rho = jcpost::pure_density(jcpost::coherent_amplitudes(alpha, 40));
        const auto blocks = jcpost::evolve_one_atom(rho, r);
        for (int n = 0; n <= 25; ++n) {
            for (int m = 0; m <= 25; ++m) {
                const complexd cn = brute_coherent(alpha, n);
                const complexd cm = brute_coherent(alpha, m);
                const complexd expected22 = std::cos(r * std::sqrt(double(n))) *
                                            std::cos(r * std::sqrt(double(m))) * cn *
                                            std::conj(cm);
                CHECK(std::abs(blocks.rho22(n, m) - expected22) < 1e-12);

                const complexd cn1 = brute_coherent(alpha, n + 1);
                const complexd cm1 = brute_coherent(alpha, m + 1);
                const complexd expected11 = std::sin(r * std::sqrt(double(n) + 1.0)) *
                                            std::sin(r * std::sqrt(double(m) + 1.0)) * cn1 *
                                            std::conj(cm1);
                CHECK(std::abs(blocks.rho11(n, m) - expected11) < 1e-12);
            }
        }
        // Last row and column of the excited block are zero by construction.
        CHECK(blocks.rho11.row(39).cwiseAbs().maxCoeff() == 0.0);
        CHECK(blocks.rho11.col(39).cwiseAbs().maxCoeff() == 0.0);
    }
}

TEST_CASE("ground-block trace matches the Poisson series") {
    const auto rho = jcpost::pure_density(jcpost::coherent_amplitudes(complexd(kSqrt10, 0.0), 60));
    const double r = 0.25;
    const auto blocks = jcpost::evolve_one_atom(rho, r);

    long double w = std::exp(-10.0L);
    long double expected = 0.0L;
    for (int n = 0; n < 200; ++n) {
        const long double c = std::cos(r * std::sqrt(static_cast<long double>(n)));
        expected += w * c * c;
        w *= 10.0L / (n + 1);
    }
    CHECK(blocks.rho22.trace().real() ==
          doctest::Approx(static_cast<double>(expected)).epsilon(1e-10));
}

TEST_CASE("trace is conserved exactly across the two blocks") {
    for (const complexd alpha : {complexd(2.0, 0.0), complexd(0.7, -1.1)}) {
        const auto rho = jcpost::pure_density(jcpost::coherent_amplitudes(alpha, 50));
        for (double r : {0.1, 0.6, 2.4}) {
            const auto blocks = jcpost::evolve_one_atom(rho, r);
            const double total = blocks.rho11.trace().real() + blocks.rho22.trace().real();
            CHECK(std::abs(total - rho.trace()) < 1e-14);
        }
    }
}

TEST_CASE("r = 0 leaves the field untouched") {
    const auto rho = jcpost::pure_density(jcpost::coherent_amplitudes(complexd(1.2, 0.4), 24));
    const auto blocks = jcpost::evolve_one_atom(rho, 0.0);
    CHECK((blocks.rho22 - rho.matrix).cwiseAbs().maxCoeff() == 0.0);
    CHECK(blocks.rho11.cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("elementwise evolution agrees with the joint unitary") {
    const int dim = 12;
    const double r = 0.7;
    const auto rho = jcpost::pure_density(jcpost::coherent_amplitudes(complexd(1.1, 0.0), dim));

    const Eigen::MatrixXcd u = jcpost::joint_unitary(r, dim);
    Eigen::MatrixXcd joint = Eigen::MatrixXcd::Zero(2 * dim, 2 * dim);
    joint.bottomRightCorner(dim, dim) = rho.matrix;  // atom starts in the ground state
    const Eigen::MatrixXcd evolved = u * joint * u.adjoint();

    const auto blocks = jcpost::evolve_one_atom(rho, r);
    CHECK((evolved.topLeftCorner(dim, dim) - blocks.rho11).cwiseAbs().maxCoeff() < 1e-13);
    CHECK((evolved.bottomRightCorner(dim, dim) - blocks.rho22).cwiseAbs().maxCoeff() < 1e-13);
}

TEST_CASE("joint unitary is orthonormal except the clipped top column") {
    const int dim = 12;
    const double r = 0.7;
    const Eigen::MatrixXcd u = jcpost::joint_unitary(r, dim);
    Eigen::MatrixXcd defect = u.adjoint() * u - Eigen::MatrixXcd::Identity(2 * dim, 2 * dim);

    const double top = r * std::sqrt(static_cast<double>(dim));
    const double expected_defect = std::cos(top) * std::cos(top) - 1.0;
    CHECK(defect(dim - 1, dim - 1).real() ==
          doctest::Approx(expected_defect).epsilon(1e-12));
    defect(dim - 1, dim - 1) = 0.0;
    CHECK(defect.cwiseAbs().maxCoeff() < 1e-13);
}

TEST_CASE("interaction config validation") {
    jcpost::InteractionConfig config{0.5, 3, 16};
    CHECK_NOTHROW(config.validate());
    config.n_atoms = 0;
    CHECK_THROWS_AS(config.validate(), jcpost::invalid_input_error);
    config.n_atoms = 3;
    config.dim = 1;
    CHECK_THROWS_AS(config.validate(), jcpost::invalid_input_error);
    config.dim = 16;
    config.r = -1.0;
    CHECK_THROWS_AS(config.validate(), jcpost::invalid_input_error);
}

#include <cmath>
#include <complex>
#include <numbers>

#include "doctest.h"
#include "jcpost/fock.hpp"

using jcpost::complexd;

namespace {

const double kSqrt10 = std::sqrt(10.0);

long double poisson_weight(long double m, int n) {
    long double w = std::exp(-m);
    for (int k = 1; k <= n; ++k) w *= m / k;
    return w;
}

}  // namespace

TEST_CASE("coherent amplitudes: vacuum and small cases") {
    const auto vac = jcpost::coherent_amplitudes(complexd(0.0, 0.0), 4);
    CHECK(vac.c[0].real() == doctest::Approx(1.0).epsilon(1e-15));
    for (int n = 1; n < 4; ++n) CHECK(std::abs(vac.c[n]) == 0.0);
    CHECK(vac.tail_mass <= 1e-15);

    const auto one = jcpost::coherent_amplitudes(complexd(1.0, 0.0), 2);
    const double e_half = std::exp(-0.5);
    CHECK(one.c[0].real() == doctest::Approx(e_half).epsilon(1e-15));
    CHECK(one.c[1].real() == doctest::Approx(e_half).epsilon(1e-15));
}

TEST_CASE("coherent amplitudes reproduce Poisson populations") {
    const auto amps = jcpost::coherent_amplitudes(complexd(kSqrt10, 0.0), 60);
    for (int n = 0; n <= 30; ++n) {
        const double expected = static_cast<double>(poisson_weight(10.0L, n));
        CHECK(std::norm(amps.c[n]) == doctest::Approx(expected).epsilon(1e-14));
    }
    CHECK(amps.tail_mass < 1e-12);

    double mean = 0.0;
    for (int n = 0; n < 60; ++n) mean += n * std::norm(amps.c[n]);
    CHECK(mean == doctest::Approx(10.0).epsilon(1e-12));
}

TEST_CASE("coherent amplitudes: complex argument phases") {
    const complexd alpha(1.0, 0.5);
    const auto amps = jcpost::coherent_amplitudes(alpha, 20);
    // c_3 / c_2 = alpha / sqrt(3)
    const complexd ratio = amps.c[3] / amps.c[2];
    CHECK(std::abs(ratio - alpha / std::sqrt(3.0)) < 1e-15);
}

TEST_CASE("coherent amplitudes reject bad input") {
    CHECK_THROWS_AS(jcpost::coherent_amplitudes(complexd(0.0, 0.0), 0),
                    jcpost::invalid_input_error);
    const double nan = std::numeric_limits<double>::quiet_NaN();
    CHECK_THROWS_AS(jcpost::coherent_amplitudes(complexd(nan, 0.0), 4),
                    jcpost::invalid_input_error);
}

TEST_CASE("squeezed amplitudes fall back to coherent at s = 0") {
    jcpost::InputSpec spec;
    spec.alpha = complexd(1.3, -0.2);
    spec.squeezing_s = 0.0;
    const auto squeezed = jcpost::squeezed_coherent_amplitudes(spec, 24);
    const auto coherent = jcpost::coherent_amplitudes(spec.alpha, 24);
    for (int n = 0; n < 24; ++n) CHECK(std::abs(squeezed.c[n] - coherent.c[n]) == 0.0);
}

TEST_CASE("squeezed amplitudes approach the coherent limit continuously") {
    jcpost::InputSpec spec;
    spec.alpha = complexd(1.5, 0.0);
    spec.squeezing_s = 1e-8;
    const auto squeezed = jcpost::squeezed_coherent_amplitudes(spec, 30);
    const auto coherent = jcpost::coherent_amplitudes(spec.alpha, 30);
    for (int n = 0; n < 30; ++n) CHECK(std::abs(squeezed.c[n] - coherent.c[n]) < 1e-6);
}

TEST_CASE("squeezed vacuum matches the even-order closed form") {
    const double s = 0.2;
    jcpost::InputSpec spec;
    spec.alpha = complexd(0.0, 0.0);
    spec.squeezing_s = s;
    const auto amps = jcpost::squeezed_coherent_amplitudes(spec, 60);

    // Odd amplitudes vanish; even ones follow
    // c_{2k} = (cosh s)^{-1/2} (-tanh(s)/2)^k sqrt((2k)!)/k!  at theta = 0.
    for (int n = 1; n < 40; n += 2) CHECK(std::abs(amps.c[n]) < 1e-15);
    long double sqrt_fact = 1.0L;  // sqrt((2k)!)
    long double k_fact = 1.0L;
    for (int k = 0; k <= 12; ++k) {
        if (k > 0) {
            sqrt_fact *= std::sqrt(static_cast<long double>(2 * k - 1) *
                                   static_cast<long double>(2 * k));
            k_fact *= k;
        }
        const long double expected = std::pow(-std::tanh((long double)s) / 2.0L, k) *
                                     sqrt_fact / k_fact / std::sqrt(std::cosh((long double)s));
        CHECK(amps.c[2 * k].real() ==
              doctest::Approx(static_cast<double>(expected)).epsilon(1e-12));
        CHECK(std::abs(amps.c[2 * k].imag()) < 1e-15);
    }
}

TEST_CASE("squeezed coherent state: pinned real-amplitude values") {
    jcpost::InputSpec spec;
    spec.alpha = complexd(kSqrt10, 0.0);
    spec.squeezing_s = 0.2;
    spec.squeezing_theta = 0.0;
    const auto amps = jcpost::squeezed_coherent_amplitudes(spec, 80);

    CHECK(amps.c[0].real() == doctest::Approx(0.00248667043742612559).epsilon(1e-12));
    CHECK(amps.c[1].real() == doctest::Approx(0.0094156115663428802).epsilon(1e-12));
    CHECK(amps.c[2].real() == doctest::Approx(0.0248624239219427995).epsilon(1e-12));
    CHECK(amps.c[5].real() == doctest::Approx(0.152856226311135174).epsilon(1e-12));
    CHECK(amps.c[10].real() == doctest::Approx(0.388927511026013622).epsilon(1e-12));
    CHECK(amps.c[15].real() == doctest::Approx(0.161584508406151821).epsilon(1e-12));
    for (int n = 0; n < 80; ++n) CHECK(std::abs(amps.c[n].imag()) < 1e-15);

    double mean = 0.0;
    for (int n = 0; n < 80; ++n) mean += n * std::norm(amps.c[n]);
    CHECK(mean == doctest::Approx(10.040536185919227).epsilon(1e-9));
}

TEST_CASE("squeezed coherent state: pinned complex-amplitude values") {
    jcpost::InputSpec spec;
    spec.alpha = complexd(1.0, 0.5);
    spec.squeezing_s = 0.3;
    spec.squeezing_theta = std::numbers::pi / 3.0;
    const auto amps = jcpost::squeezed_coherent_amplitudes(spec, 60);

    const auto check = [&](int n, double re, double im) {
        CHECK(amps.c[n].real() == doctest::Approx(re).epsilon(1e-12));
        CHECK(amps.c[n].imag() == doctest::Approx(im).epsilon(1e-11));
    };
    check(0, 0.436951287124635068, 0.0);
    check(1, 0.555713933702757185, 0.296889160510608469);
    check(2, 0.312108625292359241, 0.456034678483750425);
    check(3, 0.0453438898692376708, 0.307509834330265989);
    check(7, 0.0138887972030538488, 0.002492294764701972);

    double mean = 0.0;
    for (int n = 0; n < 60; ++n) mean += n * std::norm(amps.c[n]);
    // <n> = |alpha|^2 + sinh^2 s
    CHECK(mean == doctest::Approx(1.3427326091211339).epsilon(1e-12));
}

TEST_CASE("input spec validation") {
    jcpost::InputSpec spec;
    spec.alpha = complexd(1.0, 0.0);
    spec.squeezing_s = -0.1;
    CHECK_THROWS_AS(spec.validate(), jcpost::invalid_input_error);
    spec.squeezing_s = 0.1;
    spec.squeezing_theta = 2.0 * std::numbers::pi;
    CHECK_THROWS_AS(spec.validate(), jcpost::invalid_input_error);
    spec.squeezing_theta = 1.0;
    CHECK_NOTHROW(spec.validate());
}

TEST_CASE("pure density basics") {
    jcpost::AmplitudeVector amps;
    amps.c.resize(2);
    amps.c << complexd(1.0, 0.0), complexd(0.0, 0.0);
    const auto rho = jcpost::pure_density(amps);
    CHECK(rho.matrix(0, 0).real() == 1.0);
    CHECK(rho.matrix(1, 1).real() == 0.0);
    CHECK(rho.is_normalized);

    const auto coh = jcpost::pure_density(jcpost::coherent_amplitudes(complexd(kSqrt10, 0.0), 60));
    CHECK(coh.trace() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(jcpost::hermiticity_defect(coh) < 1e-15);
    CHECK(jcpost::min_diagonal(coh) >= 0.0);
    CHECK(jcpost::min_eigenvalue(coh) >= -1e-12);
}

TEST_CASE("number state density and mean photon number") {
    const auto five = jcpost::number_state_density(5, 8);
    CHECK(five.matrix(5, 5).real() == 1.0);
    CHECK(jcpost::mean_photon_number(five) == doctest::Approx(5.0).epsilon(1e-15));
    CHECK_THROWS_AS(jcpost::number_state_density(5, 3), jcpost::out_of_range_error);
    CHECK_THROWS_AS(jcpost::number_state_density(-1, 3), jcpost::invalid_input_error);

    // Even mixture of |0> and |2>.
    jcpost::FieldState mix;
    mix.matrix = Eigen::MatrixXcd::Zero(4, 4);
    mix.matrix(0, 0) = 0.5;
    mix.matrix(2, 2) = 0.5;
    mix.is_normalized = true;
    CHECK(jcpost::mean_photon_number(mix) == doctest::Approx(1.0).epsilon(1e-15));

    jcpost::FieldState unnorm;
    unnorm.matrix = mix.matrix * 0.25;
    unnorm.is_normalized = false;
    CHECK_THROWS_AS(jcpost::mean_photon_number(unnorm), jcpost::invalid_input_error);
    CHECK(jcpost::mean_photon_number_unnormalized(unnorm) == doctest::Approx(1.0).epsilon(1e-15));

    jcpost::FieldState zero;
    zero.matrix = Eigen::MatrixXcd::Zero(4, 4);
    CHECK_THROWS_AS(jcpost::mean_photon_number_unnormalized(zero), jcpost::degenerate_state_error);
}

TEST_CASE("mean amplitude recovers the coherent displacement") {
    const complexd alpha(0.8, -0.6);
    const auto rho = jcpost::pure_density(jcpost::coherent_amplitudes(alpha, 40));
    const complexd mean = jcpost::mean_amplitude(rho);
    CHECK(std::abs(mean - alpha) < 1e-12);
}

TEST_CASE("default dimension rule") {
    CHECK(jcpost::default_dim(10.0, true) == 105);
    CHECK(jcpost::default_dim(64.0, true) == 367);
    CHECK(jcpost::default_dim(10.0, false) < jcpost::default_dim(10.0, true));
    CHECK(jcpost::default_dim(0.0, false) >= 2);
    CHECK_THROWS_AS(jcpost::default_dim(-1.0, false), jcpost::invalid_input_error);
}

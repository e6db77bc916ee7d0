#include "doctest.h"

#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include "csl/error.hpp"
#include "csl/theta.hpp"

using namespace csl;
using cplx = std::complex<double>;

namespace {

constexpr double kPi = std::numbers::pi;

// Jacobi triple product, independent of the series and the folding
cplx theta_product(cplx z, double tau_im) {
    const double q = std::exp(-kPi * tau_im);
    cplx prod = 2.0 * std::pow(q, 0.25) * std::sin(z);
    const cplx c2 = std::cos(2.0 * z);
    for (int n = 1; n < 200; ++n) {
        const double q2n = std::pow(q, 2.0 * n);
        if (q2n < 1e-300)
            break;
        prod *= (1.0 - q2n) * (1.0 - 2.0 * q2n * c2 + q2n * q2n);
    }
    return prod;
}

double rel_err(const LogAmplitude &a, cplx ref) { return std::abs(a.to_complex() - ref) / std::abs(ref); }

} // namespace

TEST_SUITE("theta") {

TEST_CASE("series matches the triple product") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(-1.5, 1.5);
    for (double tau_im : {0.25, 0.5, 2.0 / 3.0, 1.0, 9.0 / 8.0, 1.5}) {
        for (int k = 0; k < 200; ++k) {
            const cplx z(u(rng), u(rng) * kPi * tau_im / 2.0);
            CHECK(rel_err(log_theta1(z, tau_im), theta_product(z, tau_im)) < 1e-12);
        }
    }
}

TEST_CASE("arguments where an early series term vanishes") {
    // sin(3z) = 0 at z = pi/3; the sum must not stop there
    for (double tau_im : {2.0 / 6.0, 3.0 / 6.0, 4.0 / 6.0, 0.5, 1.0}) {
        for (int k = -5; k <= 5; ++k) {
            if (k == 0)
                continue;
            for (double im : {0.0, 0.1, -0.3}) {
                const cplx z(k * kPi / 6.0, im);
                CHECK(rel_err(log_theta1(z, tau_im), theta_product(z, tau_im)) < 1e-13);
            }
        }
    }
}

TEST_CASE("odd, quasi-periodic and zero on the period lattice") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    for (double tau_im : {0.5, 1.0, 1.5}) {
        for (int k = 0; k < 100; ++k) {
            const cplx z(u(rng), u(rng));
            const cplx t = log_theta1(z, tau_im).to_complex();
            const double scale = std::abs(t);
            CHECK(std::abs(log_theta1(-z, tau_im).to_complex() + t) < 1e-12 * scale);
            CHECK(std::abs(log_theta1(z + kPi, tau_im).to_complex() + t) < 1e-12 * scale);
            // theta(z + pi tau) = -q^{-1} e^{-2iz} theta(z), in log form
            const LogAmplitude shifted = log_theta1(z + cplx(0.0, kPi * tau_im), tau_im);
            const LogAmplitude base = log_theta1(z, tau_im);
            CHECK(shifted.log_mag - base.log_mag == doctest::Approx(kPi * tau_im + 2.0 * z.imag()).epsilon(1e-12));
            CHECK(std::abs(reduce_phase(shifted.phase - base.phase - (kPi - 2.0 * z.real()))) < 1e-11);
        }
        for (int m = -2; m <= 2; ++m)
            for (int n = -2; n <= 2; ++n)
                CHECK(log_theta1(cplx(m * kPi, n * kPi * tau_im), tau_im).is_zero());
    }
}

TEST_CASE("large imaginary parts stay finite in log form") {
    const double tau_im = 9.0 / 8.0;
    const LogAmplitude far = log_theta1(cplx(0.3, 40.0 * kPi * tau_im + 0.2), tau_im);
    CHECK(std::isfinite(far.log_mag));
    CHECK(far.log_mag > 700.0);
    CHECK(theta1_term_count(cplx(0.3, 0.2), tau_im) < 10);
}

TEST_CASE("tau must lie in the upper half plane") {
    CHECK_THROWS_AS(log_theta1(cplx(0.1, 0.0), 0.0), Error);
    CHECK_THROWS_AS(log_theta1(cplx(0.1, 0.0), -1.0), Error);
}

TEST_CASE("log amplitude arithmetic") {
    const LogAmplitude a = LogAmplitude::from_complex({-2.0, 1.0});
    const LogAmplitude b = LogAmplitude::from_complex({0.5, -3.0});
    CHECK(std::abs((a * b).to_complex() - cplx(-2.0, 1.0) * cplx(0.5, -3.0)) < 1e-14);
    CHECK(std::abs((a / b).to_complex() - cplx(-2.0, 1.0) / cplx(0.5, -3.0)) < 1e-14);
    CHECK(std::abs(a.squared().to_complex() - cplx(-2.0, 1.0) * cplx(-2.0, 1.0)) < 1e-13);
    CHECK((a * LogAmplitude::zero()).is_zero());
    CHECK(reduce_phase(3.0 * kPi) == doctest::Approx(kPi));
    CHECK(reduce_phase(-kPi) == doctest::Approx(kPi));
}

}

#include "csl/theta.hpp"

#include <cmath>
#include <numbers>

#include "csl/error.hpp"

namespace csl {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTruncation = 1e-16;
constexpr int kMaxTerms = 512;

struct Folded {
    std::complex<double> z;
    double log_mag = 0.0; // from the quasi-periodicity factors
    double phase = 0.0;
    bool zero = false;
};

Folded fold(std::complex<double> z, double tau_im) {
    if (!(tau_im > 0.0))
        fail(ErrorKind::invalid_argument, "theta_1 needs Im(tau) > 0");
    Folded f;
    const double period_im = kPi * tau_im;
    const double k = std::nearbyint(z.imag() / period_im);
    const double m = std::nearbyint(z.real() / kPi);
    f.z = {z.real() - m * kPi, z.imag() - k * period_im};
    // theta(z' + k pi tau) = (-1)^k q^{-k^2} e^{-2ikz'} theta(z')
    f.log_mag = k * k * period_im + 2.0 * k * f.z.imag();
    f.phase = (k + m) * kPi - 2.0 * k * f.z.real();
    const double scale = std::max(1.0, std::abs(z));
    f.zero = std::abs(f.z) <= 64.0 * std::numeric_limits<double>::epsilon() * scale;
    return f;
}

// sum_n (-1)^n q^{n(n+1)} sin((2n+1) z)
std::complex<double> reduced_series(std::complex<double> z, double tau_im, int *terms) {
    const double log_q = -kPi * tau_im;
    std::complex<double> sum = std::sin(z);
    int n = 1;
    for (; n < kMaxTerms; ++n) {
        const double weight = std::exp(log_q * n * (n + 1.0));
        const std::complex<double> term = weight * std::sin((2.0 * n + 1.0) * z);
        sum += (n % 2 == 0) ? term : -term;
        // bound |sin| by cosh so a term that vanishes by accident (sin(3 pi/3))
        // does not stop the series early
        const double bound = weight * std::cosh((2.0 * n + 1.0) * z.imag());
        if (bound == 0.0 || bound < kTruncation * std::abs(sum))
            break;
    }
    if (terms)
        *terms = n + 1;
    return sum;
}

} // namespace

LogAmplitude log_theta1(std::complex<double> z, double tau_im) {
    const Folded f = fold(z, tau_im);
    if (f.zero)
        return LogAmplitude::zero();
    const std::complex<double> s = reduced_series(f.z, tau_im, nullptr);
    // 2 q^{1/4} prefactor
    const double log_prefactor = std::log(2.0) - kPi * tau_im / 4.0;
    return LogAmplitude::polar(f.log_mag + log_prefactor + std::log(std::abs(s)),
                               f.phase + std::arg(s));
}

LogAmplitude log_theta1_sq(std::complex<double> z, double tau_im) {
    return log_theta1(z, tau_im).squared();
}

int theta1_term_count(std::complex<double> z, double tau_im) {
    const Folded f = fold(z, tau_im);
    if (f.zero)
        return 0;
    int terms = 0;
    reduced_series(f.z, tau_im, &terms);
    return terms;
}

} // namespace csl

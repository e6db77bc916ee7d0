#include "csl/log_amplitude.hpp"

#include <cmath>
#include <numbers>

namespace csl {

double reduce_phase(double phase) noexcept {
    double r = std::remainder(phase, 2.0 * std::numbers::pi);
    if (r <= -std::numbers::pi)
        r += 2.0 * std::numbers::pi;
    return r;
}

LogAmplitude LogAmplitude::from_complex(std::complex<double> w) {
    if (w == std::complex<double>{})
        return zero();
    return {std::log(std::abs(w)), std::arg(w) == -std::numbers::pi ? std::numbers::pi : std::arg(w)};
}

LogAmplitude LogAmplitude::polar(double log_mag, double phase) {
    if (log_mag == -std::numeric_limits<double>::infinity())
        return zero();
    return {log_mag, reduce_phase(phase)};
}

std::complex<double> LogAmplitude::to_complex() const { return to_complex_scaled(0.0); }

std::complex<double> LogAmplitude::to_complex_scaled(double log_scale) const {
    if (is_zero())
        return {};
    return std::polar(std::exp(log_mag - log_scale), phase);
}

LogAmplitude &LogAmplitude::operator*=(const LogAmplitude &o) noexcept {
    if (is_zero() || o.is_zero()) {
        *this = zero();
        return *this;
    }
    log_mag += o.log_mag;
    phase = reduce_phase(phase + o.phase);
    return *this;
}

LogAmplitude &LogAmplitude::operator/=(const LogAmplitude &o) noexcept {
    if (is_zero())
        return *this;
    log_mag -= o.log_mag;
    phase = reduce_phase(phase - o.phase);
    return *this;
}

LogAmplitude LogAmplitude::squared() const noexcept { return *this * *this; }

} // namespace csl

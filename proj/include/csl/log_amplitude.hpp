#pragma once

#include <complex>
#include <limits>

namespace csl {

/// Complex number stored as (log|w|, arg w). Products of thousands of theta
/// factors overflow doubles; their logs do not.
struct LogAmplitude {
    /// Natural log of the modulus; -infinity encodes an exact zero.
    double log_mag = -std::numeric_limits<double>::infinity();
    /// Radians in (-pi, pi].
    double phase = 0.0;

    static LogAmplitude zero() noexcept { return {}; }
    static LogAmplitude one() noexcept { return {0.0, 0.0}; }
    static LogAmplitude from_complex(std::complex<double> w);
    /// Builds from an unreduced phase.
    static LogAmplitude polar(double log_mag, double phase);

    [[nodiscard]] bool is_zero() const noexcept { return log_mag == -std::numeric_limits<double>::infinity(); }
    [[nodiscard]] std::complex<double> to_complex() const;
    /// to_complex() of this / exp(log_scale), used to materialize amplitudes.
    [[nodiscard]] std::complex<double> to_complex_scaled(double log_scale) const;

    LogAmplitude &operator*=(const LogAmplitude &o) noexcept;
    /// Requires o nonzero.
    LogAmplitude &operator/=(const LogAmplitude &o) noexcept;

    friend LogAmplitude operator*(LogAmplitude a, const LogAmplitude &b) noexcept { return a *= b; }
    friend LogAmplitude operator/(LogAmplitude a, const LogAmplitude &b) noexcept { return a /= b; }

    [[nodiscard]] LogAmplitude squared() const noexcept;
};

/// Maps any angle into (-pi, pi].
double reduce_phase(double phase) noexcept;

} // namespace csl

#pragma once

#include <complex>

#include "csl/log_amplitude.hpp"

namespace csl {

/// theta_1(z | tau) for tau = i * tau_im, in log form.
///
/// Im z is first folded into |Im z| <= pi*tau_im/2 with
/// theta_1(z + pi tau) = -q^{-1} e^{-2iz} theta_1(z), and Re z into
/// |Re z| <= pi/2 with theta_1(z + pi) = -theta_1(z). The remaining series
///   2 sum_n (-1)^n q^{(n+1/2)^2} sin((2n+1) z),  q = exp(-pi tau_im)
/// is summed until a term drops below 1e-16 of the partial sum. A folded
/// argument within rounding of 0 (a point of the zero lattice) is an exact zero.
/// Throws ErrorKind::invalid_argument unless tau_im > 0.
LogAmplitude log_theta1(std::complex<double> z, double tau_im);

/// theta_1(z | tau)^2.
LogAmplitude log_theta1_sq(std::complex<double> z, double tau_im);

/// Number of series terms log_theta1 sums for this argument.
int theta1_term_count(std::complex<double> z, double tau_im);

} // namespace csl

#include <boost/multiprecision/mpfr.hpp>

#include <cmath>
#include <limits>

#include "csl/error.hpp"
#include "csl/wavefunction.hpp"

namespace csl {

namespace mp = boost::multiprecision;

double sum_rule_residual_log10(const Polynomial &f, double radius, double gaussian_divisor) {
    if (!(radius > 0.0))
        fail(ErrorKind::invalid_argument, "sum rule radius must be positive");
    if (f.empty() || f.size() > 5)
        fail(ErrorKind::invalid_argument, "sum rule polynomial must have degree 0..4");
    if (!(gaussian_divisor > 0.0))
        fail(ErrorKind::invalid_argument, "gaussian divisor must be positive");

    // The tail beyond R is ~exp(-R^2/d) R^deg; carry enough digits to see it.
    const double tail_digits = radius * radius / (gaussian_divisor * std::log(10.0));
    const unsigned digits = static_cast<unsigned>(tail_digits) + 60;
    mp::mpfr_float::default_precision(digits);

    const mp::mpfr_float pi = boost::math::constants::pi<mp::mpfr_float>();
    const mp::mpfr_float b = mp::sqrt(2 * pi);
    const mp::mpfr_float r2_max = mp::mpfr_float(radius) * mp::mpfr_float(radius);
    std::vector<mp::mpfr_float> cre, cim;
    for (const auto &c : f) {
        cre.emplace_back(c.real());
        cim.emplace_back(c.imag());
    }

    mp::mpfr_float sum_re = 0, sum_im = 0;
    const int n_max = static_cast<int>(std::ceil(radius / kSpacing)) + 1;
    for (int n1 = -n_max; n1 <= n_max; ++n1) {
        for (int n2 = -n_max; n2 <= n_max; ++n2) {
            const mp::mpfr_float x = n1 * b;
            const mp::mpfr_float y = n2 * b;
            const mp::mpfr_float r2 = x * x + y * y;
            if (r2 >= r2_max)
                continue;
            // Horner in complex arithmetic
            mp::mpfr_float pre = cre.back(), pim = cim.back();
            for (std::size_t k = cre.size() - 1; k-- > 0;) {
                mp::mpfr_float t = pre * x - pim * y + cre[k];
                pim = pre * y + pim * x + cim[k];
                pre = std::move(t);
            }
            const mp::mpfr_float w = sum_rule_sign(n1, n2) * mp::exp(-r2 / gaussian_divisor);
            sum_re += w * pre;
            sum_im += w * pim;
        }
    }
    const mp::mpfr_float mag2 = sum_re * sum_re + sum_im * sum_im;
    if (mag2 == 0)
        return -std::numeric_limits<double>::infinity();
    return static_cast<double>(mp::log10(mag2) / 2);
}

} // namespace csl

#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include "csl/lattice.hpp"
#include "csl/log_amplitude.hpp"

namespace csl {

/// One of the two degenerate torus states on a given lattice.
struct WaveFunctionSpec {
    LatticeSpec lattice;
    int sector = 0;    ///< n = 0 or 1
    double W = 0.0;    ///< centre-of-mass offset W_n
    double phi1 = 0.0; ///< x boundary flux, always 0
    double phi2 = 0.0; ///< y boundary flux, 0 (N2 even) or pi (N2 odd)
};

/// W_n = n L1/2 for even N2, (2n+1) L1/4 for odd N2.
double com_offset(int n2_count, int sector, double L1);

WaveFunctionSpec make_wavefunction(const LatticeSpec &lattice, int sector);

/// Psi_n at arbitrary complex positions z_i = x_i + i y_i (one per boson):
///   F_n(Z) prod_{i<j} theta_1(pi (z_i - z_j)/L1 | tau)^2 prod_i exp(-y_i^2/2),
///   F_n(Z) = theta_1(pi (Z - W_n)/L1 | tau)^2,  Z = sum_i z_i.
/// Evaluated directly; O(N^2) theta calls.
LogAmplitude log_psi_at(const WaveFunctionSpec &spec, std::span<const std::complex<double>> z);

LogAmplitude log_psi(const WaveFunctionSpec &spec, const SpinConfiguration &c);

/// max |Phi(r_1 + L e_dir, ...) / Phi(r_1, ...) - 1| over `samples` random
/// lattice configurations, with Psi evaluated off the torus by the direct
/// formula. Zero when the fluxes make Phi periodic in that direction.
double boundary_residual(const WaveFunctionSpec &spec, Direction dir, int samples, std::uint64_t seed);

/// Spin amplitude Phi_n = prod_{up} (-1)^{n1+n2} Psi_n.
LogAmplitude log_phi(const WaveFunctionSpec &spec, const SpinConfiguration &c);

/// Eigenvalue of the diagonal slow-twist operator on c, from the boson form
/// (-i)^{N2} exp(i 2 pi X / L1) with X the sum of up-spin x coordinates.
std::complex<double> ulsm_config_phase(const LatticeSpec &lattice, std::span<const int> up_sites);
std::complex<double> ulsm_config_phase(const WaveFunctionSpec &spec, const SpinConfiguration &c);

/// The same eigenvalue from the spin form exp(i (pi/L1) sum_r x_r sigma^z_r).
std::complex<double> ulsm_spin_phase(const LatticeSpec &lattice, std::span<const int> up_sites);

/// Table-driven evaluator for Phi_n on lattice configurations.
///
/// The pair factor theta_1(pi (z_i - z_j)/L1)^2 depends only on the label
/// difference (dn1, dn2), so it is tabulated once; a full amplitude then
/// costs N(N-1)/2 lookups plus one theta call, and a one-boson move N lookups.
class PhiEvaluator {
  public:
    explicit PhiEvaluator(const WaveFunctionSpec &spec);

    [[nodiscard]] const WaveFunctionSpec &spec() const noexcept { return spec_; }

    [[nodiscard]] LogAmplitude log_phi(std::span<const int> up_sites) const;
    [[nodiscard]] LogAmplitude log_phi_mask(std::uint64_t mask) const;

    /// Centre-of-mass factor F_n at Z = b (s1 + i s2), s1/s2 the label sums.
    [[nodiscard]] LogAmplitude log_com(int s1, int s2) const;

    /// Pair factor between sites a and b.
    [[nodiscard]] const LogAmplitude &pair(int a, int b) const noexcept {
        return pair_[pair_index(a, b)];
    }

    /// Single-site factor exp(-y^2/2) (-1)^{n1+n2}.
    [[nodiscard]] const LogAmplitude &single(int site) const noexcept { return single_[site]; }

    /// Phi(c') / Phi(c) where c' moves one up spin from `from` to `to`.
    /// s1/s2 are the label sums of c. Requires Phi(c) != 0.
    [[nodiscard]] LogAmplitude move_ratio(std::span<const int> up_sites, int s1, int s2, int from,
                                          int to) const;

    /// log|Phi(c')/Phi(c)| only; the Metropolis step needs nothing more.
    [[nodiscard]] double move_log_ratio_mag(std::span<const int> up_sites, int s1, int s2, int from,
                                            int to) const;

    [[nodiscard]] int label1(int site) const noexcept { return n1_[site]; }
    [[nodiscard]] int label2(int site) const noexcept { return n2_[site]; }

  private:
    [[nodiscard]] std::size_t pair_index(int a, int b) const noexcept {
        const int d1 = n1_[a] - n1_[b] + spec_.lattice.N1() - 1;
        const int d2 = n2_[a] - n2_[b] + spec_.lattice.N2() - 1;
        return static_cast<std::size_t>(d1) * (2 * spec_.lattice.N2() - 1) + d2;
    }

    WaveFunctionSpec spec_;
    std::vector<int> n1_;
    std::vector<int> n2_;
    std::vector<LogAmplitude> pair_;
    std::vector<LogAmplitude> single_;
};

/// A polynomial in z with complex coefficients, lowest degree first.
using Polynomial = std::vector<std::complex<double>>;

/// Gaussian exponent in the singlet sum rule: exp(-|z|^2 / gaussian_divisor).
/// 4 is the form that vanishes for b^2 = 2 pi.
inline constexpr double kSumRuleGaussianDivisor = 4.0;

/// log10 |sum_{|r| < R} G(r) f(z) exp(-|z|^2/d)| over the infinite square
/// lattice of spacing b, G(r) = (-1)^{n1 n2 + n1 + n2 + 1}. Summed in
/// multiprecision with precision grown with R so the truncation tail stays
/// above rounding. Returns -infinity for an exactly zero sum. Degree <= 4.
double sum_rule_residual_log10(const Polynomial &f, double radius,
                               double gaussian_divisor = kSumRuleGaussianDivisor);

/// Staggering sign G(r).
int sum_rule_sign(int n1, int n2) noexcept;

/// Relative residual of exp(ib(x+y)/2) exp(-y^2/2) = -G(r) exp(z^2/4) exp(-|z|^2/4)
/// at lattice point (n1, n2) b.
double lattice_identity_residual(int n1, int n2);

} // namespace csl

#include "csl/wavefunction.hpp"

#include <bit>
#include <cmath>
#include <algorithm>
#include <numbers>
#include <numeric>
#include <random>

#include "csl/error.hpp"
#include "csl/theta.hpp"

namespace csl {

namespace {
constexpr double kPi = std::numbers::pi;

LogAmplitude sublattice_sign(int n1, int n2) {
    return {0.0, ((n1 + n2) % 2 != 0) ? kPi : 0.0};
}
} // namespace

double com_offset(int n2_count, int sector, double L1) {
    if (sector != 0 && sector != 1)
        fail(ErrorKind::invalid_argument, "sector must be 0 or 1");
    if (n2_count % 2 == 0)
        return sector * L1 / 2.0;
    return (2 * sector + 1) * L1 / 4.0;
}

WaveFunctionSpec make_wavefunction(const LatticeSpec &lattice, int sector) {
    WaveFunctionSpec spec{lattice};
    spec.sector = sector;
    spec.W = com_offset(lattice.N2(), sector, lattice.L1());
    spec.phi1 = 0.0;
    spec.phi2 = (lattice.N2() % 2 == 0) ? 0.0 : kPi;
    return spec;
}

LogAmplitude log_psi_at(const WaveFunctionSpec &spec, std::span<const std::complex<double>> z) {
    const double L1 = spec.lattice.L1();
    const double tau = spec.lattice.tau_im();
    std::complex<double> Z{};
    LogAmplitude acc = LogAmplitude::one();
    for (std::size_t i = 0; i < z.size(); ++i) {
        Z += z[i];
        for (std::size_t j = i + 1; j < z.size(); ++j)
            acc *= log_theta1_sq(kPi * (z[i] - z[j]) / L1, tau);
        acc *= LogAmplitude{-0.5 * z[i].imag() * z[i].imag(), 0.0};
    }
    acc *= log_theta1_sq(kPi * (Z - spec.W) / L1, tau);
    return acc;
}

double boundary_residual(const WaveFunctionSpec &spec, Direction dir, int samples, std::uint64_t seed) {
    const LatticeSpec &lat = spec.lattice;
    std::mt19937_64 rng(seed);
    std::vector<int> sites(lat.sites());
    std::iota(sites.begin(), sites.end(), 0);
    // Psi picks up (-1)^{N2} under y -> y + L2; the sublattice sign undoes it
    const double sign = (dir == Direction::y && lat.N2() % 2 != 0) ? -1.0 : 1.0;
    const std::complex<double> shift =
        dir == Direction::x ? std::complex<double>{lat.L1(), 0.0} : std::complex<double>{0.0, lat.L2()};
    double worst = 0.0;
    for (int k = 0, tries = 0; k < samples && tries < 100 * samples; ++tries) {
        std::shuffle(sites.begin(), sites.end(), rng);
        std::vector<std::complex<double>> z;
        for (int i = 0; i < lat.bosons(); ++i)
            z.push_back(lat.z(sites[i]));
        const LogAmplitude before = log_psi_at(spec, z);
        if (before.is_zero())
            continue;
        z.front() += shift;
        const LogAmplitude after = log_psi_at(spec, z);
        worst = std::max(worst, std::abs(sign * (after / before).to_complex() - 1.0));
        ++k;
    }
    return worst;
}

LogAmplitude log_psi(const WaveFunctionSpec &spec, const SpinConfiguration &c) {
    std::vector<std::complex<double>> z;
    z.reserve(c.up_sites().size());
    for (int s : c.up_sites())
        z.push_back(spec.lattice.z(s));
    return log_psi_at(spec, z);
}

LogAmplitude log_phi(const WaveFunctionSpec &spec, const SpinConfiguration &c) {
    LogAmplitude a = log_psi(spec, c);
    for (int s : c.up_sites()) {
        const Site site = spec.lattice.site(s);
        a *= sublattice_sign(site.n1, site.n2);
    }
    return a;
}

std::complex<double> ulsm_config_phase(const LatticeSpec &lattice, std::span<const int> up_sites) {
    long label_sum = 0;
    for (int s : up_sites)
        label_sum += lattice.site(s).n1;
    // 2 pi X / L1 = 2 pi (sum n1) / N1, kept in integers until the last step
    const long reduced = ((label_sum % lattice.N1()) + lattice.N1()) % lattice.N1();
    const double angle = 2.0 * kPi * static_cast<double>(reduced) / lattice.N1() -
                         kPi / 2.0 * (lattice.N2() % 4);
    return std::polar(1.0, angle);
}

std::complex<double> ulsm_config_phase(const WaveFunctionSpec &spec, const SpinConfiguration &c) {
    return ulsm_config_phase(spec.lattice, c.up_sites());
}

std::complex<double> ulsm_spin_phase(const LatticeSpec &lattice, std::span<const int> up_sites) {
    std::vector<int> sigma(lattice.sites(), -1);
    for (int s : up_sites)
        sigma[s] = 1;
    double angle = 0.0;
    for (int r = 0; r < lattice.sites(); ++r)
        angle += kPi / lattice.L1() * lattice.x(r) * sigma[r];
    return std::polar(1.0, angle);
}

PhiEvaluator::PhiEvaluator(const WaveFunctionSpec &spec) : spec_(spec) {
    const LatticeSpec &lat = spec_.lattice;
    const int m = lat.sites();
    n1_.resize(m);
    n2_.resize(m);
    single_.resize(m);
    for (int s = 0; s < m; ++s) {
        const Site site = lat.site(s);
        n1_[s] = site.n1;
        n2_[s] = site.n2;
        single_[s] = LogAmplitude{-0.5 * lat.y(s) * lat.y(s), 0.0} * sublattice_sign(site.n1, site.n2);
    }
    const int w1 = 2 * lat.N1() - 1;
    const int w2 = 2 * lat.N2() - 1;
    pair_.resize(static_cast<std::size_t>(w1) * w2);
    for (int d1 = 0; d1 < w1; ++d1) {
        for (int d2 = 0; d2 < w2; ++d2) {
            const std::complex<double> dz{(d1 - lat.N1() + 1) * lat.b(), (d2 - lat.N2() + 1) * lat.b()};
            pair_[static_cast<std::size_t>(d1) * w2 + d2] =
                log_theta1_sq(kPi * dz / lat.L1(), lat.tau_im());
        }
    }
}

LogAmplitude PhiEvaluator::log_com(int s1, int s2) const {
    const LatticeSpec &lat = spec_.lattice;
    // pi (Z - W)/L1 with Z = b (s1 + i s2), L1 = N1 b
    const double w = spec_.W / lat.b();
    const std::complex<double> arg{kPi * (s1 - w) / lat.N1(), kPi * s2 / lat.N1()};
    return log_theta1_sq(arg, lat.tau_im());
}

LogAmplitude PhiEvaluator::log_phi(std::span<const int> up_sites) const {
    LogAmplitude acc = LogAmplitude::one();
    int s1 = 0, s2 = 0;
    for (std::size_t i = 0; i < up_sites.size(); ++i) {
        const int a = up_sites[i];
        s1 += n1_[a];
        s2 += n2_[a];
        acc *= single_[a];
        for (std::size_t j = i + 1; j < up_sites.size(); ++j)
            acc *= pair(a, up_sites[j]);
    }
    acc *= log_com(s1, s2);
    return acc;
}

LogAmplitude PhiEvaluator::log_phi_mask(std::uint64_t mask) const {
    int up[64];
    int n = 0;
    for (auto m = mask; m != 0; m &= m - 1)
        up[n++] = std::countr_zero(m);
    return log_phi(std::span<const int>(up, n));
}

LogAmplitude PhiEvaluator::move_ratio(std::span<const int> up_sites, int s1, int s2, int from,
                                      int to) const {
    LogAmplitude num = single_[to];
    LogAmplitude den = single_[from];
    for (int k : up_sites) {
        if (k == from)
            continue;
        num *= pair(to, k);
        den *= pair(from, k);
    }
    num *= log_com(s1 - n1_[from] + n1_[to], s2 - n2_[from] + n2_[to]);
    den *= log_com(s1, s2);
    return num / den;
}

double PhiEvaluator::move_log_ratio_mag(std::span<const int> up_sites, int s1, int s2, int from,
                                        int to) const {
    const LogAmplitude com_new = log_com(s1 - n1_[from] + n1_[to], s2 - n2_[from] + n2_[to]);
    if (com_new.is_zero())
        return -std::numeric_limits<double>::infinity();
    double acc = single_[to].log_mag - single_[from].log_mag;
    for (int k : up_sites) {
        if (k == from)
            continue;
        acc += pair(to, k).log_mag - pair(from, k).log_mag;
    }
    return acc + com_new.log_mag - log_com(s1, s2).log_mag;
}

int sum_rule_sign(int n1, int n2) noexcept {
    const long e = static_cast<long>(n1) * n2 + n1 + n2 + 1;
    return (e % 2 == 0) ? 1 : -1;
}

double lattice_identity_residual(int n1, int n2) {
    const double b = kSpacing;
    const double x = n1 * b;
    const double y = n2 * b;
    const std::complex<double> z{x, y};
    const std::complex<double> lhs = std::polar(std::exp(-0.5 * y * y), b * (x + y) / 2.0);
    const std::complex<double> rhs =
        -static_cast<double>(sum_rule_sign(n1, n2)) * std::exp(z * z / 4.0 - std::norm(z) / 4.0);
    return std::abs(lhs - rhs) / std::abs(lhs);
}

} // namespace csl

#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace csl {

/// Lattice spacing in magnetic lengths; b^2 = 2*pi.
extern const double kSpacing;

enum class Direction { x, y };

/// Integer label of a lattice site. n1 in [-N1/2+1, N1/2], n2 in [1, N2].
struct Site {
    int n1 = 0;
    int n2 = 1;
    friend bool operator==(const Site &, const Site &) = default;
};

/// Signed bond displacement in magnetic-length units.
struct Displacement {
    double dx = 0.0;
    double dy = 0.0;
};

/// Periodic N1 x N2 square lattice with the labeling that fixes the x seam
/// between n1 = N1/2 and n1 = -N1/2+1.
///
/// Sites are indexed row-major in (n2, n1): index = (n2-1)*N1 + (n1 + N1/2 - 1).
class LatticeSpec {
  public:
    LatticeSpec(int n1_count, int n2_count);

    [[nodiscard]] int N1() const noexcept { return n1_; }
    [[nodiscard]] int N2() const noexcept { return n2_; }
    [[nodiscard]] double b() const noexcept { return kSpacing; }
    [[nodiscard]] double L1() const noexcept { return n1_ * kSpacing; }
    [[nodiscard]] double L2() const noexcept { return n2_ * kSpacing; }
    /// tau = i * tau_im with tau_im = L2/L1.
    [[nodiscard]] double tau_im() const noexcept { return static_cast<double>(n2_) / n1_; }

    [[nodiscard]] int sites() const noexcept { return n1_ * n2_; }
    [[nodiscard]] int bosons() const noexcept { return n1_ * n2_ / 2; }

    [[nodiscard]] int n1_min() const noexcept { return -n1_ / 2 + 1; }
    [[nodiscard]] int n1_max() const noexcept { return n1_ / 2; }

    [[nodiscard]] Site site(int index) const;
    [[nodiscard]] int index(Site s) const;
    /// Index of (n1, n2) after periodic wrapping into the canonical range.
    [[nodiscard]] int wrapped_index(int n1, int n2) const noexcept;
    /// Column position 0..N1-1 (0 is n1 = -N1/2+1, N1-1 is n1 = N1/2).
    [[nodiscard]] int column(int index) const noexcept { return index % n1_; }

    [[nodiscard]] double x(int index) const noexcept;
    [[nodiscard]] double y(int index) const noexcept;
    [[nodiscard]] std::complex<double> z(int index) const noexcept { return {x(index), y(index)}; }

    /// Site reached by one lattice vector along dir, with periodic wraparound.
    [[nodiscard]] int shifted(int index, Direction dir, int steps = 1) const noexcept;

    /// "N1xN2"
    [[nodiscard]] std::string label() const;

    friend bool operator==(const LatticeSpec &a, const LatticeSpec &b) noexcept {
        return a.n1_ == b.n1_ && a.n2_ == b.n2_;
    }

  private:
    int n1_;
    int n2_;
};

LatticeSpec build_lattice(int n1_count, int n2_count);

/// Parses "N1xN2" (e.g. "6x4").
LatticeSpec parse_lattice(const std::string &text);

/// Sorted set of up-spin sites at half filling (Sz = 0).
class SpinConfiguration {
  public:
    SpinConfiguration(const LatticeSpec &lattice, std::vector<int> up_sites);

    static SpinConfiguration from_mask(const LatticeSpec &lattice, std::uint64_t mask);

    [[nodiscard]] std::span<const int> up_sites() const noexcept { return up_; }
    [[nodiscard]] bool is_up(int site) const;
    /// Bitmask of up sites; requires at most 64 sites.
    [[nodiscard]] std::uint64_t mask() const;

    friend bool operator==(const SpinConfiguration &, const SpinConfiguration &) = default;

  private:
    std::vector<int> up_;
};

SpinConfiguration translate(const LatticeSpec &lattice, const SpinConfiguration &c, Direction dir);

/// Permutation p with p[site] = site shifted by one lattice vector.
std::vector<int> translation_permutation(const LatticeSpec &lattice, Direction dir);

/// The unique periodic image of b - a whose |dx| <= max_dx.
///
/// dy is the minimal periodic image; for the half-way tie it points from the
/// lower index to the higher, so the result is antisymmetric in (a, b).
/// Throws ErrorKind::ambiguous when two x images satisfy the bound and
/// ErrorKind::invalid_argument when none does.
Displacement bond_displacement(const LatticeSpec &lattice, int a, int b, double max_dx);

} // namespace csl

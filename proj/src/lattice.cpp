#include "csl/lattice.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>

#include "csl/error.hpp"

namespace csl {

const double kSpacing = std::sqrt(2.0 * std::numbers::pi);

namespace {
int floor_mod(int a, int m) noexcept {
    const int r = a % m;
    return r < 0 ? r + m : r;
}
} // namespace

LatticeSpec::LatticeSpec(int n1_count, int n2_count) : n1_(n1_count), n2_(n2_count) {
    if (n1_count < 2 || n2_count < 2)
        fail(ErrorKind::invalid_argument, "lattice extents must be >= 2, got " +
                                              std::to_string(n1_count) + "x" +
                                              std::to_string(n2_count));
    if (n1_count % 2 != 0)
        fail(ErrorKind::invalid_argument,
             "N1 must be even, got " + std::to_string(n1_count));
}

Site LatticeSpec::site(int index) const {
    if (index < 0 || index >= sites())
        fail(ErrorKind::invalid_argument, "site index out of range: " + std::to_string(index));
    return {index % n1_ + n1_min(), index / n1_ + 1};
}

int LatticeSpec::index(Site s) const {
    if (s.n1 < n1_min() || s.n1 > n1_max() || s.n2 < 1 || s.n2 > n2_)
        fail(ErrorKind::invalid_argument, "site label out of range: (" + std::to_string(s.n1) +
                                              ", " + std::to_string(s.n2) + ")");
    return (s.n2 - 1) * n1_ + (s.n1 - n1_min());
}

int LatticeSpec::wrapped_index(int n1, int n2) const noexcept {
    return floor_mod(n2 - 1, n2_) * n1_ + floor_mod(n1 - n1_min(), n1_);
}

double LatticeSpec::x(int index) const noexcept {
    return (index % n1_ + n1_min()) * kSpacing;
}

double LatticeSpec::y(int index) const noexcept { return (index / n1_ + 1) * kSpacing; }

int LatticeSpec::shifted(int index, Direction dir, int steps) const noexcept {
    const int c = index % n1_;
    const int r = index / n1_;
    if (dir == Direction::x)
        return r * n1_ + floor_mod(c + steps, n1_);
    return floor_mod(r + steps, n2_) * n1_ + c;
}

std::string LatticeSpec::label() const {
    return std::to_string(n1_) + "x" + std::to_string(n2_);
}

LatticeSpec build_lattice(int n1_count, int n2_count) { return {n1_count, n2_count}; }

LatticeSpec parse_lattice(const std::string &text) {
    const auto pos = text.find_first_of("xX");
    if (pos == std::string::npos || pos == 0 || pos + 1 == text.size())
        fail(ErrorKind::invalid_argument, "lattice must look like N1xN2, got '" + text + "'");
    std::size_t used1 = 0, used2 = 0;
    int a = 0, b = 0;
    try {
        a = std::stoi(text.substr(0, pos), &used1);
        b = std::stoi(text.substr(pos + 1), &used2);
    } catch (const std::exception &) {
        fail(ErrorKind::invalid_argument, "lattice must look like N1xN2, got '" + text + "'");
    }
    if (used1 != pos || used2 != text.size() - pos - 1)
        fail(ErrorKind::invalid_argument, "lattice must look like N1xN2, got '" + text + "'");
    return build_lattice(a, b);
}

SpinConfiguration::SpinConfiguration(const LatticeSpec &lattice, std::vector<int> up_sites)
    : up_(std::move(up_sites)) {
    std::sort(up_.begin(), up_.end());
    if (static_cast<int>(up_.size()) != lattice.bosons())
        fail(ErrorKind::invalid_argument, "configuration must have " +
                                              std::to_string(lattice.bosons()) + " up spins, got " +
                                              std::to_string(up_.size()));
    if (std::adjacent_find(up_.begin(), up_.end()) != up_.end())
        fail(ErrorKind::invalid_argument, "configuration repeats a site");
    if (!up_.empty() && (up_.front() < 0 || up_.back() >= lattice.sites()))
        fail(ErrorKind::invalid_argument, "configuration site out of range");
}

SpinConfiguration SpinConfiguration::from_mask(const LatticeSpec &lattice, std::uint64_t mask) {
    std::vector<int> up;
    for (auto m = mask; m != 0; m &= m - 1)
        up.push_back(std::countr_zero(m));
    return {lattice, std::move(up)};
}

bool SpinConfiguration::is_up(int site) const {
    return std::binary_search(up_.begin(), up_.end(), site);
}

std::uint64_t SpinConfiguration::mask() const {
    std::uint64_t m = 0;
    for (int s : up_) {
        if (s >= 64)
            fail(ErrorKind::invalid_argument, "bitmask form needs at most 64 sites");
        m |= std::uint64_t{1} << s;
    }
    return m;
}

SpinConfiguration translate(const LatticeSpec &lattice, const SpinConfiguration &c, Direction dir) {
    std::vector<int> up;
    up.reserve(c.up_sites().size());
    for (int s : c.up_sites())
        up.push_back(lattice.shifted(s, dir));
    return {lattice, std::move(up)};
}

std::vector<int> translation_permutation(const LatticeSpec &lattice, Direction dir) {
    std::vector<int> p(lattice.sites());
    for (int s = 0; s < lattice.sites(); ++s)
        p[s] = lattice.shifted(s, dir);
    return p;
}

Displacement bond_displacement(const LatticeSpec &lattice, int a, int b, double max_dx) {
    if (a == b)
        fail(ErrorKind::invalid_argument, "bond endpoints must differ");
    const Site sa = lattice.site(a);
    const Site sb = lattice.site(b);
    const int n1 = lattice.N1();
    const int n2 = lattice.N2();
    const double tol = 1e-9 * lattice.b();

    const int d1 = sb.n1 - sa.n1;
    int found = 0;
    int image = 0;
    // every image d1 + k*N1 with |.| <= max_dx lies in this k window
    const int kmax = static_cast<int>(std::ceil((max_dx / lattice.b() + std::abs(d1)) / n1)) + 1;
    for (int k = -kmax; k <= kmax; ++k) {
        const int cand = d1 + k * n1;
        if (std::abs(cand) * lattice.b() <= max_dx + tol) {
            ++found;
            image = cand;
        }
    }
    if (found == 0)
        fail(ErrorKind::invalid_argument, "no periodic image of the bond satisfies |dx| <= max_dx");
    if (found > 1)
        fail(ErrorKind::ambiguous, std::to_string(found) +
                                       " periodic images satisfy |dx| <= max_dx (2*max_dx >= L1)");

    int d2 = floor_mod(sb.n2 - sa.n2, n2);
    if (2 * d2 > n2)
        d2 -= n2;
    else if (2 * d2 == n2 && a > b)
        d2 = -d2;
    return {image * lattice.b(), d2 * lattice.b()};
}

} // namespace csl

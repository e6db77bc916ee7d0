#include "doctest.h"

#include <bit>
#include <cmath>
#include <map>
#include <numbers>
#include <random>

#include "csl/error.hpp"
#include "csl/valence_bond.hpp"
#include "csl/wavefunction.hpp"

using namespace csl;
using cplx = std::complex<double>;

namespace {

// Number of allowed bonds between a and b, recomputed from the rule
int oracle_multiplicity(const LatticeSpec &lat, const BondRule &rule, int a, int b) {
    const Site sa = lat.site(a), sb = lat.site(b);
    const int n2 = lat.N2();
    int dy = ((sb.n2 - sa.n2) % n2 + n2) % n2;
    dy = std::min(dy, n2 - dy);
    if (dy * lat.b() > rule.max_dy + 1e-9)
        return 0;
    int count = 0;
    const int lim = static_cast<int>(rule.max_dx / lat.b() + 1e-9);
    for (int s = -lim; s <= lim; ++s) {
        if (((s - (sb.n1 - sa.n1)) % lat.N1() + lat.N1()) % lat.N1() != 0)
            continue;
        if (rule.axis_aligned && s != 0 && dy != 0)
            continue;
        ++count;
    }
    return count;
}

// Perfect matchings weighted by multiplicity, by DP over covered-site masks
std::uint64_t oracle_count(const LatticeSpec &lat, const BondRule &rule) {
    const int m = lat.sites();
    std::vector<std::vector<int>> mult(m, std::vector<int>(m, 0));
    for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b)
            if (a != b)
                mult[a][b] = oracle_multiplicity(lat, rule, a, b);
    const std::uint32_t full = (1u << m) - 1;
    std::vector<std::uint64_t> ways(std::size_t{1} << m, 0);
    ways[full] = 1;
    for (std::uint32_t mask = full; mask-- > 0;) {
        if (std::popcount(mask) % 2 != 0)
            continue;
        const int i = std::countr_one(mask);
        std::uint64_t total = 0;
        for (int j = i + 1; j < m; ++j)
            if (!(mask >> j & 1u) && mult[i][j] != 0)
                total += mult[i][j] * ways[mask | 1u << i | 1u << j];
        ways[mask] = total;
    }
    return ways[0];
}

// <alpha|U|alpha> on the explicit 2^M singlet-product vector
double product_state_twist(const LatticeSpec &lat, const DimerCovering &cov) {
    std::map<std::uint64_t, double> amp = {{0, 1.0}};
    for (const Bond &bd : cov.bonds) {
        std::map<std::uint64_t, double> next;
        for (const auto &[mask, a] : amp) {
            next[mask | std::uint64_t{1} << bd.a] += a / std::sqrt(2.0);
            next[mask | std::uint64_t{1} << bd.b] -= a / std::sqrt(2.0);
        }
        amp = std::move(next);
    }
    cplx u{};
    for (const auto &[mask, a] : amp) {
        std::vector<int> up;
        for (int s = 0; s < lat.sites(); ++s)
            if (mask >> s & 1u)
                up.push_back(s);
        u += a * a * ulsm_spin_phase(lat, up);
    }
    CHECK(std::abs(u.imag()) < 1e-12);
    return u.real();
}

} // namespace

TEST_SUITE("valence_bond") {

TEST_CASE("covering counts agree with the matching oracle") {
    const BondRule two_b{2 * kSpacing, 2 * kSpacing, false};
    const BondRule nn = BondRule::nearest_neighbour();
    const BondRule wide{2 * kSpacing, kSpacing, true};
    for (auto [n1, n2] : {std::pair{2, 2}, {4, 2}, {6, 2}, {4, 3}, {2, 4}, {4, 4}, {8, 2}}) {
        const LatticeSpec lat(n1, n2);
        for (const BondRule &rule : {two_b, nn, wide}) {
            const BondGraph g(lat, rule);
            for (int a = 0; a < lat.sites(); ++a)
                for (int b = 0; b < lat.sites(); ++b)
                    if (a != b)
                        CHECK(g.multiplicity(a, b) == oracle_multiplicity(lat, rule, a, b));
            CHECK(count_coverings(g) == oracle_count(lat, rule));
        }
    }
    CHECK(count_coverings(BondGraph(LatticeSpec(2, 2), nn)) == 5);
    CHECK(count_coverings(BondGraph(LatticeSpec(4, 2), two_b)) == 305);
}

TEST_CASE("the product formula matches the explicit singlet-product state") {
    const LatticeSpec lat(4, 2);
    const BondGraph g(lat, {2 * kSpacing, 2 * kSpacing, false});
    int seen = 0;
    enumerate_coverings(g, [&](const DimerCovering &cov) {
        CHECK(std::abs(ulsm_vb_expectation(lat, cov) - product_state_twist(lat, cov)) < 1e-12);
        ++seen;
        return true;
    });
    CHECK(seen == 305);
}

TEST_CASE("gap parities alternate on odd widths and are uniform on even widths") {
    for (auto [n1, n2] : {std::pair{6, 3}, {8, 3}, {6, 4}, {4, 5}}) {
        const LatticeSpec lat(n1, n2);
        const ParityPattern expect = n2 % 2 ? ParityPattern::alternating : ParityPattern::uniform;
        std::map<std::string, int> classes;
        enumerate_coverings(BondGraph(lat, BondRule::nearest_neighbour()), [&](const DimerCovering &cov) {
            CHECK(classify(gap_parities(lat, cov)) == expect);
            ++classes[gap_parity_string(lat, cov)];
            return true;
        });
        CHECK(classes.size() == 2);
    }
    CHECK(classify({1, 0, 1, 0}) == ParityPattern::alternating);
    CHECK(classify({1, 1, 1, 1}) == ParityPattern::uniform);
    CHECK(classify({1, 1, 0, 0}) == ParityPattern::other);
}

TEST_CASE("reference coverings") {
    const auto refs = reference_coverings();
    REQUIRE(refs.size() == 4);
    const double expect_u[4] = {0.487, -0.650, -0.422, 0.422};
    const char *expect_gaps[4] = {"oeoeoe", "eoeoeo", "oooooo", "eeeeee"};
    for (int k = 0; k < 4; ++k) {
        const auto &r = refs[k];
        CHECK_NOTHROW(validate_covering(BondGraph(r.lattice, BondRule::nearest_neighbour()), r.covering));
        CHECK(seam_crossings(r.lattice, r.covering) == r.gamma);
        CHECK(gap_parity_string(r.lattice, r.covering) == expect_gaps[k]);
        const double u = ulsm_vb_expectation(r.lattice, r.covering);
        CHECK(u == doctest::Approx(expect_u[k]).epsilon(2e-3));
        CHECK(std::abs(u - seam_parity(r.lattice, r.covering)) <= ulsm_vb_bound(r.lattice, r.covering) + 1e-12);
    }
}

TEST_CASE("wide random coverings follow the seam sign within the bound") {
    const LatticeSpec lat(32, 3);
    const BondGraph g(lat, {2 * kSpacing, 2 * kSpacing, false});
    std::mt19937_64 rng(21);
    for (int k = 0; k < 50; ++k) {
        const DimerCovering cov = random_covering(g, rng);
        CHECK_NOTHROW(validate_covering(g, cov));
        const double u = ulsm_vb_expectation(lat, cov);
        const int sign = seam_parity(lat, cov);
        CHECK(u * sign > 0.0);
        CHECK(std::abs(u - sign) <= ulsm_vb_bound(lat, cov) + 1e-12);
        CHECK(classify(gap_parities(lat, cov)) == ParityPattern::alternating);
    }
}

TEST_CASE("invalid coverings are rejected") {
    const LatticeSpec lat(4, 2);
    const BondGraph nn(lat, BondRule::nearest_neighbour());
    CHECK_THROWS_AS(validate_covering(nn, make_covering(lat, {{0, 1, 1}, {2, 3, 1}, {4, 5, 1}})), Error);
    CHECK_THROWS_AS(validate_covering(nn, make_covering(lat, {{0, 2, 2}, {1, 3, 2}, {4, 5, 1}, {6, 7, 1}})), Error);
    CHECK_NOTHROW(validate_covering(nn, make_covering(lat, {{0, 1, 1}, {2, 3, 1}, {4, 5, 1}, {6, 7, 1}})));
    CHECK_THROWS_AS(BondGraph(lat, {-1.0, 1.0, false}), Error);
}

TEST_CASE("enumeration stops at the limit or when asked") {
    const BondGraph g(LatticeSpec(6, 3), BondRule::nearest_neighbour());
    CHECK(count_coverings(g) == 224);
    CHECK(count_coverings(g, 100) == 100);
    int visits = 0;
    enumerate_coverings(g, [&](const DimerCovering &) { return ++visits < 7; });
    CHECK(visits == 7);
}

}

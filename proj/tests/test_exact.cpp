#include "doctest.h"

#include <bit>
#include <cmath>
#include <random>
#include <sstream>

#include "csl/error.hpp"
#include "csl/exact.hpp"

using namespace csl;
using cplx = std::complex<double>;

namespace {

// Full 2^M vector built from the direct formula; operators act bit by bit.
struct Dense {
    int m = 0;
    std::vector<cplx> v;
};

Dense dense_state(const LatticeSpec &lat, int sector) {
    const auto spec = make_wavefunction(lat, sector);
    Dense d{lat.sites(), std::vector<cplx>(std::size_t{1} << lat.sites())};
    double top = -INFINITY;
    std::vector<LogAmplitude> logs(d.v.size());
    for (std::uint64_t mask = 0; mask < d.v.size(); ++mask) {
        if (std::popcount(mask) != lat.bosons())
            continue;
        logs[mask] = log_phi(spec, SpinConfiguration::from_mask(lat, mask));
        top = std::max(top, logs[mask].log_mag);
    }
    double n2 = 0.0;
    for (std::uint64_t mask = 0; mask < d.v.size(); ++mask) {
        if (std::popcount(mask) == lat.bosons())
            d.v[mask] = logs[mask].to_complex_scaled(top);
        n2 += std::norm(d.v[mask]);
    }
    for (auto &a : d.v)
        a /= std::sqrt(n2);
    return d;
}

std::vector<cplx> apply(const Dense &d, int site, char axis) {
    std::vector<cplx> out(d.v.size());
    const std::uint64_t bit = std::uint64_t{1} << site;
    for (std::uint64_t mask = 0; mask < d.v.size(); ++mask) {
        const bool up = mask & bit;
        switch (axis) {
        case 'x': out[mask ^ bit] += d.v[mask]; break;
        case 'y': out[mask ^ bit] += (up ? cplx(0, 1) : cplx(0, -1)) * d.v[mask]; break;
        default: out[mask] += (up ? 1.0 : -1.0) * d.v[mask];
        }
    }
    return out;
}

cplx dot(const std::vector<cplx> &a, const std::vector<cplx> &b) {
    cplx s{};
    for (std::size_t k = 0; k < a.size(); ++k)
        s += std::conj(a[k]) * b[k];
    return s;
}

cplx dense_two_site(const Dense &bra, const Dense &ket, int i, char a, int j, char b) {
    const Dense step{ket.m, apply(ket, j, b)};
    return dot(bra.v, apply(step, i, a));
}

} // namespace

TEST_SUITE("exact") {

TEST_CASE("pinned 4x2 overlap") {
    const LatticeSpec lat(4, 2);
    const auto p0 = build_state(make_wavefunction(lat, 0));
    const auto p1 = build_state(make_wavefunction(lat, 1), kDefaultBudget, p0.space);
    CHECK(std::abs(overlap(p0, p1)) == doctest::Approx(0.20889318714683483).epsilon(1e-12));
    CHECK(norm(p0) == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("sparse engine agrees with a dense 2^M oracle") {
    for (auto [n1, n2] : {std::pair{4, 2}, {4, 3}}) {
        const LatticeSpec lat(n1, n2);
        for (int n = 0; n < 2; ++n) {
            const auto sv = build_state(make_wavefunction(lat, n));
            const Dense d = dense_state(lat, n);
            // S^2 = (1/4) sum_ij sigma_i . sigma_j
            cplx s2{};
            for (int i = 0; i < lat.sites(); ++i)
                for (int j = 0; j < lat.sites(); ++j)
                    for (char a : {'x', 'y', 'z'})
                        s2 += i == j ? 1.0 : dense_two_site(d, d, i, a, j, a);
            CHECK(std::abs(s2) / 4.0 < 1e-10);
            CHECK(total_spin(sv) < 1e-10);
            CHECK(singlet_defect(sv) < 1e-8);
            for (int i = 0; i < lat.sites(); i += 3) {
                for (int j = i + 1; j < lat.sites(); j += 2) {
                    CHECK(zz_correlator(sv, i, j) ==
                          doctest::Approx(dense_two_site(d, d, i, 'z', j, 'z').real()).epsilon(1e-10));
                    const cplx pxy = pauli_matrix_element(sv, {{i, Pauli::x}, {j, Pauli::y}}, sv);
                    CHECK(std::abs(pxy - dense_two_site(d, d, i, 'x', j, 'y')) < 1e-10);
                }
                CHECK(std::abs(single_pauli_expectation(sv, sv, i, Pauli::y) - dot(d.v, apply(d, i, 'y'))) < 1e-12);
            }
        }
    }
}

TEST_CASE("two-site blocks carry the singlet structure") {
    for (auto [n1, n2] : {std::pair{4, 2}, {4, 3}}) {
        const LatticeSpec lat(n1, n2);
        const auto p0 = build_state(make_wavefunction(lat, 0));
        const auto p1 = build_state(make_wavefunction(lat, 1), kDefaultBudget, p0.space);
        const StateVector *states[2] = {&p0, &p1};
        for (int i = 0; i < lat.sites(); ++i) {
            for (int j = i + 1; j < lat.sites(); ++j) {
                const auto blocks = two_site_pauli_blocks(states, i, j);
                for (int k = 0; k < 4; ++k) {
                    const auto &blk = blocks[k];
                    for (int a = 0; a < 3; ++a)
                        for (int b = 0; b < 3; ++b)
                            CHECK(std::abs(blk[3 * a + b] - (a == b ? blk[8] : cplx{})) < 1e-10);
                }
                CHECK(std::abs(blocks[0][8] - zz_correlator(p0, i, j)) < 1e-12);
                CHECK(std::abs(blocks[1][8] - cross_zz(p0, p1, i, j)) < 1e-12);
                const cplx direct = pauli_matrix_element(p0, {{i, Pauli::y}, {j, Pauli::x}}, p1);
                CHECK(std::abs(blocks[1][3] - direct) < 1e-12);
            }
        }
    }
}

TEST_CASE("repeated sites in a Pauli string are rejected") {
    const auto sv = build_state(make_wavefunction(LatticeSpec(4, 2), 0));
    CHECK_THROWS_AS(pauli_matrix_element(sv, {{1, Pauli::x}, {1, Pauli::y}}, sv), Error);
}

TEST_CASE("translations") {
    for (auto [n1, n2] : {std::pair{4, 2}, {4, 3}, {6, 3}, {4, 4}}) {
        const LatticeSpec lat(n1, n2);
        const auto p0 = build_state(make_wavefunction(lat, 0));
        const auto p1 = build_state(make_wavefunction(lat, 1), kDefaultBudget, p0.space);
        CHECK(std::abs(translation_overlap(p0, p0, Direction::y)) == doctest::Approx(1.0).epsilon(1e-10));
        CHECK(std::abs(translation_overlap(p1, p1, Direction::y)) == doctest::Approx(1.0).epsilon(1e-10));
        if (n2 % 2 == 1) {
            CHECK(std::abs(translation_overlap(p1, p0, Direction::x)) == doctest::Approx(1.0).epsilon(1e-10));
            CHECK(std::abs(translation_overlap(p0, p1, Direction::x)) == doctest::Approx(1.0).epsilon(1e-10));
        } else {
            CHECK(std::abs(translation_overlap(p0, p0, Direction::x)) == doctest::Approx(1.0).epsilon(1e-10));
            CHECK(std::abs(translation_overlap(p1, p1, Direction::x)) == doctest::Approx(1.0).epsilon(1e-10));
        }
    }
}

TEST_CASE("chiral order is antisymmetric and has one sign in both states") {
    const LatticeSpec lat(4, 4);
    const auto p0 = build_state(make_wavefunction(lat, 0));
    const auto p1 = build_state(make_wavefunction(lat, 1), kDefaultBudget, p0.space);
    const int r = lat.index({0, 2});
    const int rx = lat.shifted(r, Direction::x);
    const int ry = lat.shifted(r, Direction::y);
    const double c0 = chiral_order(p0, {r, rx, ry});
    CHECK(chiral_order(p0, {rx, r, ry}) == doctest::Approx(-c0).epsilon(1e-10));
    CHECK(chiral_order(p0, {rx, ry, r}) == doctest::Approx(c0).epsilon(1e-10));
    CHECK(std::abs(c0) > 1e-3);
    CHECK(c0 * chiral_order(p1, {r, rx, ry}) > 0.0);
    CHECK_THROWS(chiral_order(p0, {r, r, ry}));
}

TEST_CASE("slow-twist expectation agrees with the dense spin form") {
    const LatticeSpec lat(4, 2);
    const auto p0 = build_state(make_wavefunction(lat, 0));
    const auto dense = dense_state(lat, 0);
    cplx u{};
    for (std::uint64_t mask = 0; mask < dense.v.size(); ++mask) {
        if (std::popcount(mask) != lat.bosons())
            continue;
        const auto c = SpinConfiguration::from_mask(lat, mask);
        u += std::norm(dense.v[mask]) * ulsm_spin_phase(lat, c.up_sites());
    }
    CHECK(std::abs(ulsm_expectation_exact(p0) - u) < 1e-12);
}

TEST_CASE("state dumps round trip") {
    const auto sv = build_state(make_wavefunction(LatticeSpec(6, 2), 1));
    std::stringstream buf;
    write_state(sv, buf);
    const auto back = read_state(buf);
    CHECK(back.lattice == sv.lattice);
    CHECK(back.sector == 1);
    CHECK(back.amplitudes == sv.amplitudes);
    std::stringstream truncated(buf.str().substr(0, 40));
    CHECK_THROWS_AS(read_state(truncated), Error);
}

TEST_CASE("budget and lattice checks") {
    try {
        half_filled_space(LatticeSpec(8, 6));
        FAIL("expected budget error");
    } catch (const Error &e) {
        CHECK(e.kind() == ErrorKind::budget_exceeded);
    }
    const auto a = build_state(make_wavefunction(LatticeSpec(4, 2), 0));
    const auto b = build_state(make_wavefunction(LatticeSpec(2, 4), 0));
    CHECK_THROWS_AS(overlap(a, b), Error);
}

}

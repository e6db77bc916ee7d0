#include "doctest.h"

#include <algorithm>
#include <numeric>
#include <set>

#include "csl/configuration_space.hpp"
#include "csl/error.hpp"
#include "csl/lattice.hpp"

using namespace csl;

TEST_SUITE("lattice") {

TEST_CASE("labels round trip through indices") {
    for (auto [n1, n2] : {std::pair{4, 2}, {6, 3}, {8, 9}}) {
        const LatticeSpec lat(n1, n2);
        for (int i = 0; i < lat.sites(); ++i)
            CHECK(lat.index(lat.site(i)) == i);
        CHECK(lat.site(0) == Site{lat.n1_min(), 1});
        CHECK(lat.site(lat.sites() - 1) == Site{lat.n1_max(), n2});
    }
}

TEST_CASE("coordinates are labels times the spacing") {
    const LatticeSpec lat(6, 4);
    CHECK(lat.b() * lat.b() == doctest::Approx(2.0 * 3.141592653589793).epsilon(1e-15));
    const int origin = lat.index({0, 1});
    CHECK(lat.x(origin) == 0.0);
    CHECK(lat.y(origin) == doctest::Approx(lat.b()));
    CHECK(lat.L1() == doctest::Approx(6 * lat.b()));
    CHECK(lat.tau_im() == doctest::Approx(4.0 / 6.0));
}

TEST_CASE("bad lattices are rejected") {
    CHECK_THROWS_AS(LatticeSpec(5, 3), Error);
    CHECK_THROWS_AS(LatticeSpec(0, 3), Error);
    CHECK_THROWS_AS(parse_lattice("6x"), Error);
    CHECK_THROWS_AS(parse_lattice("6x4a"), Error);
    CHECK(parse_lattice("6x4").label() == "6x4");
    CHECK(parse_lattice("8X2").N2() == 2);
}

TEST_CASE("shifts wrap and the translation permutation is a bijection") {
    const LatticeSpec lat(6, 3);
    for (Direction d : {Direction::x, Direction::y}) {
        const auto p = translation_permutation(lat, d);
        std::set<int> image(p.begin(), p.end());
        CHECK(image.size() == static_cast<std::size_t>(lat.sites()));
        const int period = d == Direction::x ? lat.N1() : lat.N2();
        for (int s = 0; s < lat.sites(); ++s) {
            CHECK(lat.shifted(s, d, period) == s);
            CHECK(lat.shifted(lat.shifted(s, d, 1), d, -1) == s);
        }
    }
    CHECK(lat.shifted(lat.index({3, 1}), Direction::x) == lat.index({-2, 1}));
    CHECK(lat.shifted(lat.index({0, 3}), Direction::y) == lat.index({0, 1}));
}

TEST_CASE("translating a configuration moves every up spin") {
    const LatticeSpec lat(4, 2);
    const SpinConfiguration c(lat, {0, 1, 4, 7});
    const SpinConfiguration t = translate(lat, c, Direction::x);
    std::vector<int> expect;
    for (int s : c.up_sites())
        expect.push_back(lat.shifted(s, Direction::x));
    std::sort(expect.begin(), expect.end());
    CHECK(std::equal(expect.begin(), expect.end(), t.up_sites().begin(), t.up_sites().end()));
    CHECK(SpinConfiguration::from_mask(lat, c.mask()) == c);
}

TEST_CASE("bond displacement picks the unique short image") {
    const LatticeSpec lat(6, 3);
    const double b = lat.b();
    const int a = lat.index({3, 1});
    const int c = lat.index({-2, 1});
    const Displacement d = bond_displacement(lat, a, c, b);
    CHECK(d.dx == doctest::Approx(b));
    CHECK(d.dy == doctest::Approx(0.0));
    const Displacement r = bond_displacement(lat, c, a, b);
    CHECK(r.dx == doctest::Approx(-b));
    // dy tie on N2 = 2 is antisymmetric
    const LatticeSpec lat2(4, 2);
    const Displacement up = bond_displacement(lat2, 0, 4, b);
    const Displacement down = bond_displacement(lat2, 4, 0, b);
    CHECK(up.dy == doctest::Approx(-down.dy));
    // two x images within 2b on N1 = 4
    try {
        bond_displacement(LatticeSpec(4, 3), 0, 2, 2 * b);
        FAIL("expected ambiguity");
    } catch (const Error &e) {
        CHECK(e.kind() == ErrorKind::ambiguous);
    }
    CHECK_THROWS_AS(bond_displacement(lat, a, lat.index({0, 1}), b), Error);
}

TEST_CASE("colex ranks are dense and match the enumeration order") {
    const ConfigurationSpace space(10, 5);
    CHECK(space.size() == binomial(10, 5));
    for (std::size_t r = 0; r < space.size(); ++r)
        CHECK(space.rank(space.mask(r)) == r);
    CHECK(space.mask(0) == 0b11111);
    std::uint64_t prev = 0;
    bool increasing = true;
    for (std::size_t r = 0; r < space.size(); ++r) {
        increasing = increasing && space.mask(r) > prev;
        prev = space.mask(r);
    }
    CHECK(increasing);
    CHECK(binomial(64, 32) == 1832624140942590534ULL);
}

}

#include "doctest.h"

#include <cmath>

#include "csl/error.hpp"
#include "csl/exact.hpp"
#include "csl/table1.hpp"
#include "csl/vmc.hpp"

using namespace csl;

namespace {

VmcSchedule quick() {
    VmcSchedule s;
    s.sweeps_warmup = 300;
    s.sweeps_measure = 4000;
    s.block_size = 100;
    return s;
}

} // namespace

TEST_SUITE("vmc") {

TEST_CASE("schedule validation") {
    VmcSchedule s;
    CHECK_NOTHROW(s.validate());
    s.n_chains = 1;
    CHECK_THROWS_AS(s.validate(), Error);
    s = {};
    s.sweeps_measure = 150;
    CHECK_THROWS_AS(s.validate(), Error);
    s = {};
    s.sweeps_warmup = -1;
    CHECK_THROWS_AS(s.validate(), Error);
}

TEST_CASE("only diagonal observables are sampled") {
    CHECK_THROWS_AS(Observable::from_pauli("xx", {{0, Pauli::x}, {1, Pauli::x}}), Error);
    CHECK_NOTHROW(Observable::from_pauli("zzz", {{0, Pauli::z}, {1, Pauli::z}, {2, Pauli::z}}));
    CHECK(Observable::twist().ulsm);
}

TEST_CASE("origin and its neighbours") {
    const LatticeSpec lat(6, 3);
    const OriginBonds o = origin_bonds(lat);
    CHECK(lat.site(o.r0) == Site{0, 1});
    CHECK(lat.site(o.rx) == Site{1, 1});
    CHECK(lat.site(o.ry) == Site{0, 2});
}

TEST_CASE("sampling reproduces exact expectations on 4x2 and 6x2") {
    for (auto [n1, n2] : {std::pair{4, 2}, {6, 2}}) {
        const LatticeSpec lat(n1, n2);
        const OriginBonds o = origin_bonds(lat);
        const std::vector<Observable> obs = {Observable::zz("x", o.r0, o.rx), Observable::zz("y", o.r0, o.ry),
                                             Observable::twist()};
        for (int n = 0; n < 2; ++n) {
            const auto spec = make_wavefunction(lat, n);
            const auto sv = build_state(spec);
            const VmcResult r = run_vmc(spec, quick(), obs);
            const double exact[2] = {zz_correlator(sv, o.r0, o.rx), zz_correlator(sv, o.r0, o.ry)};
            for (int k = 0; k < 2; ++k)
                CHECK(std::abs(r.estimates[k].mean.real() - exact[k]) < 4.0 * r.estimates[k].stderr + 1e-12);
            const auto u = ulsm_expectation_exact(sv);
            CHECK(std::abs(r.estimates[2].mean.real() - u.real()) < 4.0 * r.estimates[2].stderr + 1e-12);
            CHECK(std::abs(r.estimates[2].mean.imag() - u.imag()) < 4.0 * r.estimates[2].stderr_im + 1e-12);
            CHECK(r.acceptance > 0.01);
            CHECK(r.chain_acceptance.size() == 4);
        }
    }
}

TEST_CASE("a seed fixes the stream") {
    const auto spec = make_wavefunction(LatticeSpec(8, 3), 1);
    const std::vector<Observable> obs = {Observable::zz("x", 0, 1), Observable::twist()};
    VmcSchedule s = quick();
    s.sweeps_measure = 1000;
    const VmcResult a = run_vmc(spec, s, obs);
    const VmcResult b = run_vmc(spec, s, obs);
    CHECK(a.estimates[0].mean == b.estimates[0].mean);
    CHECK(a.estimates[1].mean == b.estimates[1].mean);
    CHECK(a.acceptance == b.acceptance);
    s.seed += 1;
    const VmcResult c = run_vmc(spec, s, obs);
    CHECK(c.estimates[0].mean != a.estimates[0].mean);
}

TEST_CASE("slow-twist limits") {
    CHECK(ulsm_limit(3, 0) == 1);
    CHECK(ulsm_limit(3, 1) == -1);
    CHECK(ulsm_limit(4, 0) == -1);
    CHECK(ulsm_limit(4, 1) == 1);
    CHECK(ulsm_limit(2, 0) == 1);
    CHECK(ulsm_limit(5, 0) == -1);
}

TEST_CASE("trend flag") {
    auto point = [](int n1, double re) {
        UlsmPoint p;
        p.N1 = n1;
        p.N2 = 3;
        p.limit = 1;
        p.estimate.mean = re;
        return p;
    };
    CHECK(ulsm_trend_ok({point(4, 0.4), point(8, 0.7), point(12, 0.8)}));
    CHECK_FALSE(ulsm_trend_ok({point(4, 0.4), point(8, 0.7), point(12, 0.6)}));
}

TEST_CASE("reference table and pulls") {
    CHECK(reference_table().size() == 24);
    const ReferenceRow *row = find_reference(4, 2);
    REQUIRE(row != nullptr);
    CHECK(row->value[0] == doctest::Approx(-0.173));
    CHECK(row->value[1] == doctest::Approx(-0.946));
    CHECK(find_reference(8, 9) != nullptr);
    CHECK(find_reference(10, 10) == nullptr);
    CHECK(pull(0.5, 0.03, 0.45, 0.04) == doctest::Approx(1.0));
}

}

#include "csl/qec.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>

#include "csl/error.hpp"

namespace csl {

namespace {

using cplx = std::complex<double>;
constexpr Pauli kAxes[3] = {Pauli::x, Pauli::y, Pauli::z};

char axis_char(Pauli p) { return static_cast<char>(p); }

// sigma^a sigma^b = delta_ab + i eps_abc sigma^c; returns (eps, c) for a != b
std::pair<int, Pauli> levi_civita(Pauli a, Pauli b) {
    const int ia = std::string_view("xyz").find(axis_char(a));
    const int ib = std::string_view("xyz").find(axis_char(b));
    const int ic = 3 - ia - ib;
    const int sign = ((ib - ia + 3) % 3 == 1) ? 1 : -1;
    return {sign, kAxes[ic]};
}

const StateVector &pick(const CodePair &code, int i) {
    if (i == 0)
        return code.zero_L;
    if (i == 1)
        return code.one_L;
    fail(ErrorKind::invalid_argument, "code index must be 0 or 1");
}

std::string site_label(Pauli p, int site) { return std::string(1, axis_char(p)) + std::to_string(site); }

} // namespace

CodePair build_code(const StateVector &phi0, const StateVector &phi1) {
    const cplx ov = overlap(phi0, phi1);
    if (std::abs(ov) > 1.0 - 1e-10)
        fail(ErrorKind::degenerate, "code states are numerically parallel, |<0|1>| = " + std::to_string(std::abs(ov)));
    CodePair code{phi0, phi1, ov};
    auto &one = code.one_L.amplitudes;
    for (std::size_t r = 0; r < one.size(); ++r)
        one[r] -= ov * phi0.amplitudes[r];
    normalize(code.one_L);
    // a second pass removes the rounding left by the first
    const cplx rest = overlap(code.zero_L, code.one_L);
    for (std::size_t r = 0; r < one.size(); ++r)
        one[r] -= rest * phi0.amplitudes[r];
    normalize(code.one_L);
    return code;
}

CodePair build_code(const LatticeSpec &lattice, std::uint64_t budget) {
    StateVector phi0 = build_state(make_wavefunction(lattice, 0), budget);
    StateVector phi1 = build_state(make_wavefunction(lattice, 1), budget, phi0.space);
    return build_code(phi0, phi1);
}

cplx kl_element(const CodePair &code, const ErrorOp &a, const ErrorOp &b, int i, int j) {
    const StateVector &bra = pick(code, i);
    const StateVector &ket = pick(code, j);
    if (a.is_identity() && b.is_identity())
        return overlap(bra, ket);
    if (a.is_identity())
        return single_pauli_expectation(bra, ket, b.site, b.axis);
    if (b.is_identity())
        return single_pauli_expectation(bra, ket, a.site, a.axis);
    if (a.site == b.site) {
        if (a.axis == b.axis)
            return overlap(bra, ket);
        const auto [eps, c] = levi_civita(a.axis, b.axis);
        return cplx(0.0, eps) * single_pauli_expectation(bra, ket, a.site, c);
    }
    return pauli_matrix_element(bra, {{a.site, a.axis}, {b.site, b.axis}}, ket);
}

bool nearest_neighbours(const LatticeSpec &lattice, int a, int b) {
    for (Direction d : {Direction::x, Direction::y})
        if (lattice.shifted(a, d, 1) == b || lattice.shifted(a, d, -1) == b)
            return true;
    return false;
}

double site_distance(const LatticeSpec &lattice, int a, int b) {
    auto fold = [](int d, int n) {
        d = ((d % n) + n) % n;
        return std::min(d, n - d);
    };
    const Site sa = lattice.site(a), sb = lattice.site(b);
    const int d1 = fold(sb.n1 - sa.n1, lattice.N1());
    const int d2 = fold(sb.n2 - sa.n2, lattice.N2());
    return lattice.b() * std::hypot(d1, d2);
}

ViolationReport kl_check(const CodePair &code) {
    const LatticeSpec &lat = code.zero_L.lattice;
    const int m = lat.sites();
    ViolationReport rep;
    rep.lattice = lat.label();

    KlEntry id;
    id.label = "I";
    id.m00 = overlap(code.zero_L, code.zero_L);
    id.m11 = overlap(code.one_L, code.one_L);
    id.m01 = overlap(code.zero_L, code.one_L);
    rep.entries.push_back(id);

    // single Paulis, and the same-site products that reduce to them
    for (int r = 0; r < m; ++r) {
        std::array<KlEntry, 3> single;
        for (int k = 0; k < 3; ++k) {
            KlEntry &e = single[k];
            e.label = site_label(kAxes[k], r);
            e.site_i = r;
            e.alpha = axis_char(kAxes[k]);
            e.m00 = single_pauli_expectation(code.zero_L, code.zero_L, r, kAxes[k]);
            e.m11 = single_pauli_expectation(code.one_L, code.one_L, r, kAxes[k]);
            e.m01 = single_pauli_expectation(code.zero_L, code.one_L, r, kAxes[k]);
            rep.max_single_pauli =
                std::max({rep.max_single_pauli, std::abs(e.m00), std::abs(e.m11), std::abs(e.m01)});
            rep.entries.push_back(e);
        }
        for (int a = 0; a < 3; ++a) {
            for (int b = 0; b < 3; ++b) {
                if (a == b)
                    continue;
                const auto [eps, c] = levi_civita(kAxes[a], kAxes[b]);
                const KlEntry &s = single[std::string_view("xyz").find(axis_char(c))];
                KlEntry e;
                e.label = site_label(kAxes[a], r) + " " + site_label(kAxes[b], r);
                e.site_i = r;
                e.alpha = axis_char(kAxes[a]);
                e.beta = axis_char(kAxes[b]);
                const cplx f(0.0, eps);
                e.m00 = f * s.m00;
                e.m11 = f * s.m11;
                e.m01 = f * s.m01;
                rep.entries.push_back(e);
            }
        }
    }

    const StateVector *states[2] = {&code.zero_L, &code.one_L};
    std::map<long long, double> by_distance; // keyed on distance in 1e-9 units
    for (int r = 0; r < m; ++r) {
        for (int s = r + 1; s < m; ++s) {
            const auto blocks = two_site_pauli_blocks(states, r, s);
            for (int a = 0; a < 3; ++a) {
                for (int b = 0; b < 3; ++b) {
                    const int q = 3 * a + b;
                    KlEntry e;
                    e.label = site_label(kAxes[a], r) + " " + site_label(kAxes[b], s);
                    e.site_i = r;
                    e.site_j = s;
                    e.alpha = axis_char(kAxes[a]);
                    e.beta = axis_char(kAxes[b]);
                    e.m00 = blocks[0][q];
                    e.m01 = blocks[1][q];
                    e.m11 = blocks[3][q];
                    if (a == 2 && b == 2) {
                        const auto key = std::llround(site_distance(lat, r, s) * 1e9);
                        by_distance[key] = std::max(by_distance[key], e.diag_mismatch());
                    }
                    rep.entries.push_back(std::move(e));
                }
            }
        }
    }
    for (const auto &[key, v] : by_distance)
        rep.zz_by_distance.push_back({static_cast<double>(key) * 1e-9, v});

    std::stable_sort(rep.entries.begin(), rep.entries.end(),
                     [](const KlEntry &x, const KlEntry &y) { return x.diag_mismatch() > y.diag_mismatch(); });
    rep.max_diag_mismatch = rep.entries.front().diag_mismatch();
    rep.argmax_diag = rep.entries.front();
    for (const auto &e : rep.entries) {
        if (e.diag_mismatch() < rep.max_diag_mismatch - 1e-12)
            break;
        if (e.alpha == 'z' && e.beta == 'z') {
            rep.argmax_diag = e;
            break;
        }
    }
    rep.argmax_offdiag = rep.entries.front();
    for (const auto &e : rep.entries) {
        if (e.offdiag() > rep.max_offdiag + 1e-12 ||
            (e.offdiag() >= rep.max_offdiag - 1e-12 && e.alpha == 'z' && e.beta == 'z' &&
             !(rep.argmax_offdiag.alpha == 'z' && rep.argmax_offdiag.beta == 'z'))) {
            rep.argmax_offdiag = e;
        }
        rep.max_offdiag = std::max(rep.max_offdiag, e.offdiag());
    }
    return rep;
}

double singlet_reduction_check(const CodePair &code, const ViolationReport &full) {
    const int m = code.zero_L.lattice.sites();
    double diag = 0.0, off = 0.0;
    for (int r = 0; r < m; ++r) {
        for (int s = r + 1; s < m; ++s) {
            const cplx z00 = cross_zz(code.zero_L, code.zero_L, r, s);
            const cplx z11 = cross_zz(code.one_L, code.one_L, r, s);
            const cplx z01 = cross_zz(code.zero_L, code.one_L, r, s);
            diag = std::max(diag, std::abs(z00 - z11));
            off = std::max(off, std::abs(z01));
        }
    }
    return std::max(std::abs(full.max_diag_mismatch - diag), std::abs(full.max_offdiag - off));
}

double singlet_reduction_check(const CodePair &code) { return singlet_reduction_check(code, kl_check(code)); }

namespace {

std::vector<PatternBond> pattern_bonds(const LatticeSpec &lat) {
    std::vector<PatternBond> out;
    for (int s = 0; s < lat.sites(); ++s)
        for (Direction d : {Direction::x, Direction::y})
            out.push_back({s, lat.shifted(s, d, 1), d});
    return out;
}

} // namespace

std::vector<PatternBond> pattern_map(const StateVector &phi0, const StateVector &phi1) {
    if (!(phi0.lattice == phi1.lattice))
        fail(ErrorKind::lattice_mismatch, "pattern map needs both states on one lattice");
    auto bonds = pattern_bonds(phi0.lattice);
    for (auto &b : bonds) {
        b.phi0 = zz_correlator(phi0, b.site_i, b.site_j);
        b.phi1 = zz_correlator(phi1, b.site_i, b.site_j);
    }
    return bonds;
}

std::vector<PatternBond> pattern_map_vmc(const LatticeSpec &lattice, const VmcSchedule &schedule) {
    auto bonds = pattern_bonds(lattice);
    std::vector<Observable> obs;
    for (const auto &b : bonds)
        obs.push_back(Observable::zz(std::to_string(b.site_i) + "-" + std::to_string(b.site_j), b.site_i, b.site_j));
    for (int sector = 0; sector < 2; ++sector) {
        const VmcResult r = run_vmc(make_wavefunction(lattice, sector), schedule, obs);
        for (std::size_t k = 0; k < bonds.size(); ++k) {
            (sector == 0 ? bonds[k].phi0 : bonds[k].phi1) = r.estimates[k].mean.real();
            (sector == 0 ? bonds[k].err0 : bonds[k].err1) = r.estimates[k].stderr;
        }
    }
    return bonds;
}

} // namespace csl

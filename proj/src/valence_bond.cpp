#include "csl/valence_bond.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

#include "csl/error.hpp"

namespace csl {

namespace {

int minimal_row_offset(const LatticeSpec &lat, int a, int b) {
    const int n2 = lat.N2();
    int d = (lat.site(b).n2 - lat.site(a).n2) % n2;
    if (d < 0)
        d += n2;
    if (2 * d > n2)
        d -= n2;
    if (2 * d == n2 && a > b)
        d = -d;
    return d;
}

int mod(int a, int n) { return ((a % n) + n) % n; }

} // namespace

BondGraph::BondGraph(const LatticeSpec &lattice, const BondRule &rule)
    : lattice_(lattice), rule_(rule), adj_(lattice.sites()) {
    if (!(rule.max_dx >= 0.0) || !(rule.max_dy >= 0.0))
        fail(ErrorKind::invalid_argument, "bond bounds must be non-negative");
    const double b = lattice.b();
    const double tol = 1e-9 * b;
    const int kmax = static_cast<int>(std::floor((rule.max_dx + tol) / b));
    const int n1 = lattice.N1();
    for (int a = 0; a < lattice.sites(); ++a) {
        for (int t = 0; t < lattice.sites(); ++t) {
            if (t == a)
                continue;
            const int dy = minimal_row_offset(lattice, a, t);
            if (std::abs(dy) * b > rule.max_dy + tol)
                continue;
            const int dc = lattice.column(t) - lattice.column(a);
            for (int steps = -kmax; steps <= kmax; ++steps) {
                if (mod(steps - dc, n1) != 0)
                    continue;
                if (rule.axis_aligned && steps != 0 && dy != 0)
                    continue;
                adj_[a].push_back({a, t, steps, {steps * b, dy * b}});
            }
        }
    }
}

int BondGraph::multiplicity(int a, int b) const {
    return static_cast<int>(
        std::count_if(adj_.at(a).begin(), adj_.at(a).end(), [b](const Bond &x) { return x.b == b; }));
}

namespace {

struct Search {
    const BondGraph &g;
    const std::function<bool(const DimerCovering &)> &visit;
    std::uint64_t limit;
    std::uint64_t count = 0;
    std::vector<char> covered;
    DimerCovering cov;
    bool stop = false;

    void run(int first) {
        while (first < static_cast<int>(covered.size()) && covered[first])
            ++first;
        if (first == static_cast<int>(covered.size())) {
            ++count;
            if (!visit(cov) || (limit != 0 && count >= limit))
                stop = true;
            return;
        }
        covered[first] = 1;
        for (const Bond &bond : g.from(first)) {
            if (covered[bond.b])
                continue;
            covered[bond.b] = 1;
            cov.bonds.push_back(bond);
            run(first + 1);
            cov.bonds.pop_back();
            covered[bond.b] = 0;
            if (stop)
                break;
        }
        covered[first] = 0;
    }
};

} // namespace

std::uint64_t enumerate_coverings(const BondGraph &graph,
                                  const std::function<bool(const DimerCovering &)> &visit,
                                  std::uint64_t limit) {
    Search s{graph, visit, limit, 0, {}, {}, false};
    s.covered.assign(graph.lattice().sites(), 0);
    s.run(0);
    return s.count;
}

std::uint64_t count_coverings(const BondGraph &graph, std::uint64_t limit) {
    return enumerate_coverings(graph, [](const DimerCovering &) { return true; }, limit);
}

DimerCovering random_covering(const BondGraph &graph, std::mt19937_64 &rng) {
    const LatticeSpec &lat = graph.lattice();
    const int m = lat.sites();
    // column by column, so a dead end shows up within a bond length of where it was made
    std::vector<int> order(m);
    for (int k = 0; k < m; ++k)
        order[k] = (k % lat.N2()) * lat.N1() + k / lat.N2();
    std::vector<char> covered;
    DimerCovering cov;
    long budget = 0;
    std::function<bool(int)> go = [&](int pos) -> bool {
        while (pos < m && covered[order[pos]])
            ++pos;
        if (pos == m)
            return true;
        if (--budget < 0)
            return false;
        const int first = order[pos];
        std::vector<Bond> options;
        for (const Bond &bond : graph.from(first))
            if (!covered[bond.b])
                options.push_back(bond);
        std::shuffle(options.begin(), options.end(), rng);
        covered[first] = 1;
        for (const Bond &bond : options) {
            covered[bond.b] = 1;
            cov.bonds.push_back(bond);
            if (go(pos + 1))
                return true;
            cov.bonds.pop_back();
            covered[bond.b] = 0;
        }
        covered[first] = 0;
        return false;
    };
    for (int attempt = 0; attempt < 20; ++attempt) {
        covered.assign(m, 0);
        cov.bonds.clear();
        budget = 100'000; // backtracking steps per attempt
        if (go(0))
            return cov;
    }
    fail(ErrorKind::invalid_argument, "no covering found for " + lat.label());
}

void validate_covering(const BondGraph &graph, const DimerCovering &cov) {
    const LatticeSpec &lat = graph.lattice();
    std::vector<int> seen(lat.sites(), 0);
    for (const Bond &bond : cov.bonds) {
        if (bond.a < 0 || bond.a >= lat.sites() || bond.b < 0 || bond.b >= lat.sites())
            fail(ErrorKind::invalid_argument, "bond site out of range");
        ++seen[bond.a];
        ++seen[bond.b];
        const auto &opts = graph.from(bond.a);
        const bool allowed = std::any_of(opts.begin(), opts.end(), [&](const Bond &o) {
            return o.b == bond.b && o.steps == bond.steps;
        });
        if (!allowed)
            fail(ErrorKind::invalid_argument, "bond not allowed by the rule: " + std::to_string(bond.a) +
                                                  "-" + std::to_string(bond.b));
    }
    for (int s = 0; s < lat.sites(); ++s)
        if (seen[s] != 1)
            fail(ErrorKind::invalid_argument, "site " + std::to_string(s) + " covered " +
                                                  std::to_string(seen[s]) + " times");
}

std::vector<int> gap_crossings(const LatticeSpec &lattice, const DimerCovering &cov) {
    const int n1 = lattice.N1();
    std::vector<int> gaps(n1, 0);
    for (const Bond &bond : cov.bonds) {
        const int c = lattice.column(bond.a);
        if (bond.steps > 0)
            for (int k = 0; k < bond.steps; ++k)
                ++gaps[mod(c + k, n1)];
        else
            for (int k = 1; k <= -bond.steps; ++k)
                ++gaps[mod(c - k, n1)];
    }
    return gaps;
}

std::vector<int> gap_parities(const LatticeSpec &lattice, const DimerCovering &cov) {
    auto g = gap_crossings(lattice, cov);
    for (int &x : g)
        x &= 1;
    return g;
}

std::string gap_parity_string(const LatticeSpec &lattice, const DimerCovering &cov) {
    std::string s;
    for (int p : gap_parities(lattice, cov))
        s += p ? 'o' : 'e';
    return s;
}

int seam_crossings(const LatticeSpec &lattice, const DimerCovering &cov) {
    return gap_crossings(lattice, cov).back();
}

int seam_parity(const LatticeSpec &lattice, const DimerCovering &cov) {
    return (seam_crossings(lattice, cov) % 2 == 0) ? 1 : -1;
}

ParityPattern classify(const std::vector<int> &p) {
    if (p.empty())
        return ParityPattern::other;
    if (std::all_of(p.begin(), p.end(), [&](int x) { return x == p.front(); }))
        return ParityPattern::uniform;
    for (std::size_t k = 0; k < p.size(); ++k)
        if (p[k] == p[(k + 1) % p.size()])
            return ParityPattern::other;
    return ParityPattern::alternating;
}

double ulsm_vb_expectation(const LatticeSpec &lattice, const DimerCovering &cov) {
    double prod = 1.0;
    for (const Bond &bond : cov.bonds)
        prod *= std::cos(std::numbers::pi * (lattice.x(bond.a) - lattice.x(bond.b)) / lattice.L1());
    return prod;
}

double ulsm_vb_bound(const LatticeSpec &lattice, const DimerCovering &cov) {
    double s = 0.0;
    for (const Bond &bond : cov.bonds)
        s += bond.d.dx * bond.d.dx;
    return 0.5 * std::numbers::pi * std::numbers::pi * s / (lattice.L1() * lattice.L1());
}

DimerCovering make_covering(const LatticeSpec &lattice, const std::vector<std::array<int, 3>> &bonds) {
    DimerCovering cov;
    for (const auto &[a, b, steps] : bonds) {
        if (mod(lattice.column(a) + steps - lattice.column(b), lattice.N1()) != 0)
            fail(ErrorKind::invalid_argument, "bond steps do not connect its sites");
        cov.bonds.push_back({a, b, steps,
                             {steps * lattice.b(), minimal_row_offset(lattice, a, b) * lattice.b()}});
    }
    return cov;
}

std::vector<ReferenceCovering> reference_coverings() {
    std::vector<ReferenceCovering> out;
    // (column 0..5, row 1..N2) -> index
    auto build = [](const LatticeSpec &lat, const std::vector<std::array<int, 5>> &spec) {
        std::vector<std::array<int, 3>> bonds;
        for (const auto &[c1, r1, c2, r2, steps] : spec)
            bonds.push_back({(r1 - 1) * lat.N1() + c1, (r2 - 1) * lat.N1() + c2, steps});
        return make_covering(lat, bonds);
    };

    const LatticeSpec l3 = build_lattice(6, 3);
    out.push_back({"6x3 left", l3,
                   build(l3, {{5, 1, 0, 1, 1}, {5, 2, 0, 2, 1}, {0, 3, 1, 3, 1},
                              {1, 1, 1, 2, 0}, {2, 1, 2, 2, 0}, {2, 3, 3, 3, 1},
                              {3, 1, 3, 2, 0}, {4, 1, 4, 2, 0}, {4, 3, 5, 3, 1}}),
                   2});
    out.push_back({"6x3 right", l3,
                   build(l3, {{5, 3, 0, 3, 1}, {0, 1, 0, 2, 0}, {1, 1, 1, 2, 0},
                              {1, 3, 2, 3, 1}, {2, 1, 2, 2, 0}, {3, 1, 3, 2, 0},
                              {3, 3, 4, 3, 1}, {4, 1, 4, 2, 0}, {5, 1, 5, 2, 0}}),
                   1});

    const LatticeSpec l4 = build_lattice(6, 4);
    std::vector<std::array<int, 5>> lower;
    for (int c = 0; c < 6; ++c)
        lower.push_back({c, 3, c, 4, 0});
    auto left = lower;
    for (int c = 0; c < 6; c += 2)
        left.push_back({c, 1, c + 1, 1, 1});
    for (int c = 1; c < 6; c += 2)
        left.push_back({c, 2, (c + 1) % 6, 2, 1});
    auto right = lower;
    for (int r = 1; r <= 2; ++r)
        for (int c = 1; c < 6; c += 2)
            right.push_back({c, r, (c + 1) % 6, r, 1});
    out.push_back({"6x4 left", l4, build(l4, left), 1});
    out.push_back({"6x4 right", l4, build(l4, right), 2});
    return out;
}

} // namespace csl

#include "csl/table1.hpp"

#include <cmath>

namespace csl {

namespace {

// clang-format off
constexpr ReferenceRow kRows[] = {
    {4, 2, {-0.173, -0.946, -0.455,  0.273}, {0.002, 0.002, 0.002, 0.005}},
    {4, 4, {-0.247, -0.246, -0.230, -0.376}, {0.002, 0.003, 0.002, 0.003}},
    {4, 6, {-0.216, -0.312, -0.217, -0.301}, {0.002, 0.002, 0.002, 0.003}},
    {4, 8, {-0.210, -0.306, -0.210, -0.307}, {0.002, 0.003, 0.002, 0.003}},
    {6, 2, {-0.176, -0.944, -0.467,  0.322}, {0.002, 0.002, 0.002, 0.005}},
    {6, 4, {-0.311, -0.216, -0.279, -0.376}, {0.002, 0.003, 0.002, 0.003}},
    {6, 6, {-0.298, -0.300, -0.302, -0.281}, {0.002, 0.003, 0.002, 0.003}},
    {6, 8, {-0.303, -0.289, -0.302, -0.290}, {0.002, 0.003, 0.002, 0.003}},
    {8, 2, {-0.175, -0.944, -0.464,  0.335}, {0.002, 0.002, 0.002, 0.005}},
    {8, 4, {-0.306, -0.210, -0.275, -0.382}, {0.002, 0.003, 0.002, 0.003}},
    {8, 6, {-0.290, -0.303, -0.292, -0.281}, {0.002, 0.003, 0.002, 0.003}},
    {8, 8, {-0.291, -0.291, -0.290, -0.293}, {0.002, 0.002, 0.002, 0.003}},
    {4, 3, {-0.230, -0.241, -0.301, -0.241}, {0.002, 0.003, 0.002, 0.003}},
    {4, 5, {-0.229, -0.301, -0.221, -0.301}, {0.002, 0.003, 0.002, 0.003}},
    {4, 7, {-0.213, -0.305, -0.213, -0.305}, {0.002, 0.003, 0.002, 0.003}},
    {4, 9, {-0.209, -0.306, -0.209, -0.306}, {0.002, 0.003, 0.002, 0.003}},
    {6, 3, {-0.334, -0.239, -0.257, -0.239}, {0.002, 0.003, 0.002, 0.003}},
    {6, 5, {-0.280, -0.290, -0.292, -0.290}, {0.002, 0.003, 0.002, 0.003}},
    {6, 7, {-0.283, -0.294, -0.281, -0.294}, {0.002, 0.003, 0.002, 0.003}},
    {6, 9, {-0.281, -0.293, -0.281, -0.293}, {0.002, 0.003, 0.002, 0.003}},
    {8, 3, {-0.258, -0.239, -0.336, -0.239}, {0.002, 0.003, 0.002, 0.003}},
    {8, 5, {-0.298, -0.290, -0.293, -0.290}, {0.002, 0.003, 0.002, 0.003}},
    {8, 7, {-0.291, -0.290, -0.292, -0.290}, {0.002, 0.003, 0.002, 0.003}},
    {8, 9, {-0.290, -0.291, -0.290, -0.291}, {0.002, 0.003, 0.002, 0.003}},
};
// clang-format on

} // namespace

std::span<const ReferenceRow> reference_table() { return kRows; }

const ReferenceRow *find_reference(int n1, int n2) {
    for (const auto &r : kRows)
        if (r.N1 == n1 && r.N2 == n2)
            return &r;
    return nullptr;
}

double pull(double mean, double stderr, double ref, double ref_err) {
    const double s = std::sqrt(stderr * stderr + ref_err * ref_err);
    return s > 0.0 ? std::abs(mean - ref) / s : (mean == ref ? 0.0 : INFINITY);
}

std::vector<CorrelatorEntry> table1_row(const ReferenceRow &row, const VmcSchedule &schedule) {
    const LatticeSpec lat = build_lattice(row.N1, row.N2);
    const OriginBonds o = origin_bonds(lat);
    const std::vector<Observable> obs = {Observable::zz("zz_x", o.r0, o.rx), Observable::zz("zz_y", o.r0, o.ry)};
    std::vector<CorrelatorEntry> out;
    for (int sector = 0; sector < 2; ++sector) {
        const VmcResult r = run_vmc(make_wavefunction(lat, sector), schedule, obs);
        for (int d = 0; d < 2; ++d) {
            CorrelatorEntry e;
            e.N1 = row.N1;
            e.N2 = row.N2;
            e.sector = sector;
            e.dir = d == 0 ? Direction::x : Direction::y;
            e.estimate = r.estimates[d];
            e.acceptance = r.acceptance;
            e.reference = row.value[2 * sector + d];
            e.reference_err = row.error[2 * sector + d];
            e.pull = pull(e.estimate.mean.real(), e.estimate.stderr, e.reference, e.reference_err);
            out.push_back(e);
        }
    }
    return out;
}

std::vector<CorrelatorEntry> table1_report(const VmcSchedule &schedule,
                                           const std::function<void(const ReferenceRow &)> &progress) {
    std::vector<CorrelatorEntry> out;
    for (const auto &row : kRows) {
        auto entries = table1_row(row, schedule);
        out.insert(out.end(), entries.begin(), entries.end());
        if (progress)
            progress(row);
    }
    return out;
}

} // namespace csl

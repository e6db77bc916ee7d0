#pragma once

#include <array>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "csl/vmc.hpp"

namespace csl {

/// Reference nearest-neighbour correlators on one lattice, column order
/// (Phi0 x, Phi0 y, Phi1 x, Phi1 y).
struct ReferenceRow {
    int N1;
    int N2;
    std::array<double, 4> value;
    std::array<double, 4> error;
};

/// The 24 reference rows, 4x2 ... 8x9.
std::span<const ReferenceRow> reference_table();

/// The reference row for a lattice, or nullptr.
const ReferenceRow *find_reference(int n1, int n2);

struct CorrelatorEntry {
    int N1 = 0;
    int N2 = 0;
    int sector = 0;
    Direction dir = Direction::x;
    VmcEstimate estimate;
    double acceptance = 0.0;
    double reference = 0.0;
    double reference_err = 0.0;
    double pull = 0.0;
};

/// |mean - ref| / sqrt(stderr^2 + ref_err^2).
double pull(double mean, double stderr, double ref, double ref_err);

/// Four entries for one reference row, each sector sampled once.
std::vector<CorrelatorEntry> table1_row(const ReferenceRow &row, const VmcSchedule &schedule);

/// All 96 entries. `progress` (optional) is called after every row.
std::vector<CorrelatorEntry>
table1_report(const VmcSchedule &schedule,
              const std::function<void(const ReferenceRow &)> &progress = nullptr);

} // namespace csl

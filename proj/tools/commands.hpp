#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "csl/vmc.hpp"

namespace cli {

enum ExitCode { kOk = 0, kFailure = 1, kValidation = 2, kInfeasible = 3, kBadArguments = 4 };

struct RunConfig {
    std::string command;
    std::string lattice;
    std::string sector = "both";
    std::uint64_t seed = csl::VmcSchedule{}.seed;
    int chains = csl::VmcSchedule{}.n_chains;
    int sweeps = csl::VmcSchedule{}.sweeps_measure;
    int warmup = csl::VmcSchedule{}.sweeps_warmup;
    int block = csl::VmcSchedule{}.block_size;
    std::uint64_t budget = csl::kDefaultBudget;
    std::string max_dx = "2b";
    std::string max_dy = "2b";
    bool axis_aligned = false;
    std::uint64_t limit = 0; ///< vb: stop after this many coverings
    std::uint64_t rows = 10000; ///< vb: coverings written out
    int n2 = 3;                 ///< fig1
    std::vector<int> n1_list = {4, 8, 12, 16};
    std::string out;
    std::string format = "csv";
};

csl::VmcSchedule schedule_of(const RunConfig &cfg);

/// "2b" -> 2 sqrt(2 pi), "3.5" -> 3.5 (magnetic lengths).
double parse_length(const std::string &text);

/// {0}, {1} or {0, 1}.
std::vector<int> parse_sectors(const std::string &text);

int cmd_verify(const RunConfig &cfg);
int cmd_table1(const RunConfig &cfg);
int cmd_fig1(const RunConfig &cfg);
int cmd_vb(const RunConfig &cfg);
int cmd_qec(const RunConfig &cfg);
int cmd_reproduce(const RunConfig &cfg);

/// Runs `body`, mapping csl::Error kinds to exit codes and printing the message.
int guarded(int (*body)(const RunConfig &), const RunConfig &cfg);

} // namespace cli

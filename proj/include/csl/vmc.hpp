#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "csl/exact.hpp"
#include "csl/wavefunction.hpp"

namespace csl {

struct VmcSchedule {
    int n_chains = 4;
    int sweeps_warmup = 2000;
    int sweeps_measure = 20000;
    int block_size = 100; ///< sweeps per block
    std::uint64_t seed = 20240611;

    /// Throws ErrorKind::invalid_argument unless n_chains >= 2, the sweep
    /// counts are non-negative and sweeps_measure is a positive multiple of
    /// block_size.
    void validate() const;
};

/// A diagonal observable: a product of sigma^z, or the slow-twist phase.
struct Observable {
    std::string name;
    PauliString ops; ///< sigma^z factors; empty for the twist
    bool ulsm = false;

    /// Rejects anything but sigma^z factors (ErrorKind::invalid_argument).
    static Observable from_pauli(std::string name, PauliString ops);
    static Observable zz(std::string name, int i, int j);
    static Observable twist();
};

struct VmcEstimate {
    std::complex<double> mean;
    double stderr = 0.0;    ///< of the real part
    double stderr_im = 0.0; ///< of the imaginary part
    int n_blocks = 0;
    /// stderr with doubled blocks over stderr; near 1 once blocks decorrelate
    double doubling_ratio = 1.0;
    /// spread of chain means over the spread stderr predicts for them
    double interchain_ratio = 1.0;
};

struct VmcResult {
    std::vector<VmcEstimate> estimates; ///< one per observable, same order
    double acceptance = 0.0;            ///< measurement phase, all chains
    double warmup_acceptance = 0.0;
    std::vector<double> chain_acceptance;
    bool doubling_ok = true;  ///< every |doubling_ratio - 1| <= 0.3
    bool interchain_ok = true; ///< every interchain_ratio within [1/3, 3]
};

/// Name of the pseudo-random generator, for output metadata.
inline constexpr const char *kRngName = "std::mt19937_64, seed_seq(seed, N1, N2, sector, chain)";

/// Metropolis sampling of |Phi_n|^2. One sweep is M proposed moves, each
/// exchanging a random up site with a random down site. Chains run in
/// parallel; each is bit-stable for a given seed.
/// Throws ErrorKind::stuck_chain if warmup acceptance is below 1%.
VmcResult run_vmc(const WaveFunctionSpec &spec, const VmcSchedule &schedule,
                  const std::vector<Observable> &observables);

/// Origin r0 = (n1 = 0, n2 = 1) and its +x / +y neighbours.
struct OriginBonds {
    int r0, rx, ry;
};
OriginBonds origin_bonds(const LatticeSpec &lattice);

/// Limiting slow-twist eigenvalue of Phi_n as N1 grows.
int ulsm_limit(int n2_count, int sector);

struct UlsmPoint {
    int N1 = 0;
    int N2 = 0;
    int sector = 0;
    VmcEstimate estimate;
    double acceptance = 0.0;
    int limit = 0;
};

std::vector<UlsmPoint> ulsm_scan(int n2_count, const std::vector<int> &n1_list, int sector,
                                 const VmcSchedule &schedule);

/// True when Re<U> moves monotonically toward the limit along the scan.
bool ulsm_trend_ok(const std::vector<UlsmPoint> &points);

} // namespace csl

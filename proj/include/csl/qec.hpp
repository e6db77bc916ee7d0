#pragma once

#include <complex>
#include <string>
#include <vector>

#include "csl/exact.hpp"
#include "csl/vmc.hpp"

namespace csl {

struct CodePair {
    StateVector zero_L;
    StateVector one_L;
    std::complex<double> raw_overlap; ///< <Phi0|Phi1> before orthogonalization
};

/// zero_L = phi0, one_L = Gram-Schmidt of phi1 against phi0.
/// ErrorKind::degenerate if |<phi0|phi1>| > 1 - 1e-10.
CodePair build_code(const StateVector &phi0, const StateVector &phi1);
CodePair build_code(const LatticeSpec &lattice, std::uint64_t budget = kDefaultBudget);

/// Element of the weight-1 error basis: identity (site < 0) or sigma^axis_site.
struct ErrorOp {
    int site = -1;
    Pauli axis = Pauli::z;
    static ErrorOp identity() { return {}; }
    [[nodiscard]] bool is_identity() const noexcept { return site < 0; }
};

/// <i_L| A_a^dagger A_b |j_L>, i, j in {0, 1}, evaluated directly after
/// reducing same-site products with the Pauli algebra.
std::complex<double> kl_element(const CodePair &code, const ErrorOp &a, const ErrorOp &b, int i, int j);

/// One distinct operator A_a^dagger A_b of the weight-1 check.
struct KlEntry {
    std::string label;   ///< e.g. "z3 z4", "x5", "I"
    int site_i = -1;     ///< -1 for the identity
    int site_j = -1;     ///< -1 unless two distinct sites
    char alpha = 'I';
    char beta = 'I';
    std::complex<double> m00, m11, m01;
    [[nodiscard]] double diag_mismatch() const { return std::abs(m00 - m11); }
    [[nodiscard]] double offdiag() const { return std::abs(m01); }
};

struct DistanceMismatch {
    double distance; ///< minimal-image separation in magnetic lengths
    double max_mismatch;
};

struct ViolationReport {
    std::string lattice;
    double max_diag_mismatch = 0.0;
    double max_offdiag = 0.0;
    KlEntry argmax_diag; ///< ties within 1e-12 resolved in favour of zz
    KlEntry argmax_offdiag;
    double max_single_pauli = 0.0; ///< max |<i_L|sigma^a_r|j_L>|
    std::vector<DistanceMismatch> zz_by_distance;
    std::vector<KlEntry> entries; ///< sorted by decreasing diag mismatch
};

/// Weight-1 Knill-Laflamme analysis over {I} u {sigma^a_r}.
ViolationReport kl_check(const CodePair &code);

/// |full KL metrics - metrics from sigma^z sigma^z correlators alone|, maxed
/// over the diagonal and off-diagonal metrics. Zero when both code states are
/// singlets.
double singlet_reduction_check(const CodePair &code, const ViolationReport &full);
double singlet_reduction_check(const CodePair &code);

bool nearest_neighbours(const LatticeSpec &lattice, int a, int b);

/// Minimal-image distance between two sites.
double site_distance(const LatticeSpec &lattice, int a, int b);

struct PatternBond {
    int site_i = 0;
    int site_j = 0;
    Direction dir = Direction::x;
    double phi0 = 0.0;
    double phi1 = 0.0;
    double err0 = 0.0; ///< zero for exact maps
    double err1 = 0.0;
};

/// <sigma^z_i sigma^z_j> on every bond (site, site + b x) and (site, site + b y).
std::vector<PatternBond> pattern_map(const StateVector &phi0, const StateVector &phi1);
std::vector<PatternBond> pattern_map_vmc(const LatticeSpec &lattice, const VmcSchedule &schedule);

} // namespace csl

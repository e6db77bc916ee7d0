#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "csl/lattice.hpp"

namespace csl {

/// Which site pairs may form a bond. Bounds are in magnetic lengths.
struct BondRule {
    double max_dx = 2.0 * kSpacing;
    double max_dy = 2.0 * kSpacing;
    bool axis_aligned = false; ///< forbid bonds with both dx and dy nonzero

    static BondRule nearest_neighbour() { return {kSpacing, kSpacing, true}; }
};

/// A singlet bond between sites a and b. `steps` is the signed number of
/// columns walked from a to b; pairs that the rule reaches through more than
/// one x image give distinct bonds. dy is the minimal periodic image.
struct Bond {
    int a = 0;
    int b = 0;
    int steps = 0;
    Displacement d;
};

struct DimerCovering {
    std::vector<Bond> bonds;
};

/// Candidate bonds from each site under a rule, in canonical order.
class BondGraph {
  public:
    BondGraph(const LatticeSpec &lattice, const BondRule &rule);

    [[nodiscard]] const LatticeSpec &lattice() const noexcept { return lattice_; }
    [[nodiscard]] const BondRule &rule() const noexcept { return rule_; }
    /// Bonds with a == site.
    [[nodiscard]] const std::vector<Bond> &from(int site) const { return adj_[site]; }
    /// Number of distinct bonds joining a and b.
    [[nodiscard]] int multiplicity(int a, int b) const;

  private:
    LatticeSpec lattice_;
    BondRule rule_;
    std::vector<std::vector<Bond>> adj_;
};

/// Calls visit(covering) for every perfect matching, backtracking over the
/// first uncovered site in index order. Stops early when visit returns false
/// or after `limit` coverings (0 = no limit). Returns the number visited.
std::uint64_t enumerate_coverings(const BondGraph &graph,
                                  const std::function<bool(const DimerCovering &)> &visit,
                                  std::uint64_t limit = 0);

/// Number of perfect matchings, counting until `limit` (0 = no limit).
std::uint64_t count_coverings(const BondGraph &graph, std::uint64_t limit = 0);

/// A covering built by randomized backtracking; ErrorKind::invalid_argument
/// if the graph has none.
DimerCovering random_covering(const BondGraph &graph, std::mt19937_64 &rng);

/// Throws ErrorKind::invalid_argument unless every site is in exactly one bond
/// and every bond is allowed by the graph.
void validate_covering(const BondGraph &graph, const DimerCovering &cov);

/// Number of bonds crossing each vertical gap. Gap g lies between column g
/// and g+1; gap N1-1 is the seam.
std::vector<int> gap_crossings(const LatticeSpec &lattice, const DimerCovering &cov);

/// Parities of gap_crossings.
std::vector<int> gap_parities(const LatticeSpec &lattice, const DimerCovering &cov);

/// "eoeoeo"-style string of gap parities.
std::string gap_parity_string(const LatticeSpec &lattice, const DimerCovering &cov);

/// gamma: bonds crossing the seam.
int seam_crossings(const LatticeSpec &lattice, const DimerCovering &cov);

/// (-1)^gamma.
int seam_parity(const LatticeSpec &lattice, const DimerCovering &cov);

enum class ParityPattern { alternating, uniform, other };
ParityPattern classify(const std::vector<int> &parities);

/// <alpha| U_LSM |alpha> = prod_bonds cos(pi (x_a - x_b) / L1), with x taken
/// from the canonical labels.
double ulsm_vb_expectation(const LatticeSpec &lattice, const DimerCovering &cov);

/// Bound on |<alpha|U|alpha> - (-1)^gamma|: 0.5 pi^2 sum_b dx_b'^2 / L1^2 with
/// dx_b' the bond's x extent along the path it takes.
double ulsm_vb_bound(const LatticeSpec &lattice, const DimerCovering &cov);

/// Covering from explicit (site, site, steps) triples.
DimerCovering make_covering(const LatticeSpec &lattice, const std::vector<std::array<int, 3>> &bonds);

struct ReferenceCovering {
    std::string name;
    LatticeSpec lattice;
    DimerCovering covering;
    int gamma; ///< expected seam count
};

/// The four illustrative coverings: two on 6x3 (gamma 2, 1) and two on 6x4
/// (gamma 1, 2).
std::vector<ReferenceCovering> reference_coverings();

} // namespace csl

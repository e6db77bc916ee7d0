#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <memory>
#include <span>
#include <vector>

#include "csl/configuration_space.hpp"
#include "csl/lattice.hpp"
#include "csl/wavefunction.hpp"

namespace csl {

inline constexpr std::uint64_t kDefaultBudget = 3'000'000;

/// Normalized amplitudes over the Sz = 0 sector, indexed by colex rank.
struct StateVector {
    LatticeSpec lattice;
    int sector = -1; ///< wave-function sector, -1 for other vectors
    std::shared_ptr<const ConfigurationSpace> space;
    std::vector<std::complex<double>> amplitudes;

    [[nodiscard]] std::size_t dimension() const noexcept { return amplitudes.size(); }
};

/// The half-filled configuration space of a lattice, or ErrorKind::budget_exceeded
/// if it has more than `budget` configurations.
std::shared_ptr<const ConfigurationSpace> half_filled_space(const LatticeSpec &lattice,
                                                            std::uint64_t budget = kDefaultBudget);

/// Materializes Phi_n. Log amplitudes are shifted by their maximum before
/// exponentiation, then the vector is normalized.
StateVector build_state(const WaveFunctionSpec &spec, std::uint64_t budget = kDefaultBudget,
                        std::shared_ptr<const ConfigurationSpace> space = nullptr);

/// Vector with amplitude fn(mask) per configuration, normalized.
StateVector state_from_function(const LatticeSpec &lattice,
                                std::shared_ptr<const ConfigurationSpace> space,
                                const std::function<std::complex<double>(std::uint64_t)> &fn);

double norm(const StateVector &sv);
void normalize(StateVector &sv);

/// <a|b>. Throws ErrorKind::lattice_mismatch for different lattices.
std::complex<double> overlap(const StateVector &a, const StateVector &b);

/// ||S^- |sv>||, accumulated into the Sz = -1 sector.
double singlet_defect(const StateVector &sv);

/// <S^2> = ||S^+ |sv>||^2, valid at Sz = 0.
double total_spin(const StateVector &sv);

/// <sv| sigma^z_i sigma^z_j |sv>.
double zz_correlator(const StateVector &sv, int i, int j);

/// <a| sigma^z_i sigma^z_j |b>.
std::complex<double> cross_zz(const StateVector &a, const StateVector &b, int i, int j);

enum class Pauli : char { x = 'x', y = 'y', z = 'z' };

struct PauliOp {
    int site;
    Pauli axis;
};

/// Product of single-site Paulis on distinct sites.
using PauliString = std::vector<PauliOp>;

/// <a|P|b>, applying P to every configuration of b. Images that leave the
/// Sz = 0 sector have no overlap with a and contribute nothing.
std::complex<double> pauli_matrix_element(const StateVector &a, const PauliString &p,
                                          const StateVector &b);

std::complex<double> single_pauli_expectation(const StateVector &a, const StateVector &b, int site,
                                              Pauli axis);

/// <states[k]| sigma^alpha_i sigma^beta_j |states[l]> for every k, l and
/// alpha, beta in {x, y, z}, from one pass over the configurations.
/// Result index: [k * n + l][3 * alpha + beta].
std::vector<std::array<std::complex<double>, 9>>
two_site_pauli_blocks(std::span<const StateVector *const> states, int i, int j);

/// <a| T_dir |b> with T moving every up spin one lattice vector along dir.
std::complex<double> translation_overlap(const StateVector &a, const StateVector &b, Direction dir);

/// <sv| U_LSM |sv> from the diagonal eigenvalue per configuration.
std::complex<double> ulsm_expectation_exact(const StateVector &sv);

/// <sv| sigma_1 . (sigma_2 x sigma_3) |sv>.
double chiral_order(const StateVector &sv, const std::array<int, 3> &triangle);

/// Binary dump: int32 N1, int32 N2, int32 sector, uint64 dimension, then
/// (re, im) float64 pairs in rank order; all little-endian.
void write_state(const StateVector &sv, std::ostream &out);
StateVector read_state(std::istream &in);

} // namespace csl

#include "csl/exact.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <istream>
#include <limits>
#include <numbers>
#include <ostream>

#include "csl/detail/parallel.hpp"
#include "csl/error.hpp"

namespace csl {

namespace {

using cplx = std::complex<double>;
constexpr cplx kI{0.0, 1.0};

void require_same_lattice(const StateVector &a, const StateVector &b) {
    if (!(a.lattice == b.lattice) || a.dimension() != b.dimension())
        fail(ErrorKind::lattice_mismatch, a.lattice.label() + " vs " + b.lattice.label());
}

void require_site(const StateVector &sv, int site) {
    if (site < 0 || site >= sv.lattice.sites())
        fail(ErrorKind::invalid_argument, "site index out of range: " + std::to_string(site));
}

bool bit(std::uint64_t mask, int s) noexcept { return (mask >> s) & 1u; }

// Phase picked up by sigma^axis acting on a spin that is up (true) or down.
cplx pauli_phase(Pauli axis, bool up) noexcept {
    switch (axis) {
    case Pauli::x: return 1.0;
    case Pauli::y: return up ? kI : -kI;
    case Pauli::z: return up ? 1.0 : -1.0;
    }
    return 0.0;
}

bool flips(Pauli axis) noexcept { return axis != Pauli::z; }

// ||A|sv>||^2 where A moves the state into the sector with `target_ups` up
// spins and <c'|A|c> = 1 whenever c' and c differ by one site. Evaluated as a
// gather over the target sector so the reduction stays deterministic.
double ladder_norm2(const StateVector &sv, int target_ups) {
    const int m = sv.lattice.sites();
    if (target_ups < 0 || target_ups > m)
        return 0.0;
    const ConfigurationSpace target(m, target_ups);
    const bool lowering = target_ups < sv.space->ups();
    return detail::chunked_sum<double>(target.size(), [&](std::size_t begin, std::size_t end) {
        double acc = 0.0;
        for (std::size_t r = begin; r < end; ++r) {
            const std::uint64_t t = target.mask(r);
            // sources: add one up spin (lowering) or remove one (raising)
            std::uint64_t candidates = lowering ? (~t & ((m == 64) ? ~0ull : ((1ull << m) - 1))) : t;
            cplx sum{};
            for (; candidates != 0; candidates &= candidates - 1) {
                const std::uint64_t s = std::uint64_t{1} << std::countr_zero(candidates);
                sum += sv.amplitudes[sv.space->rank(t ^ s)];
            }
            acc += std::norm(sum);
        }
        return acc;
    });
}

struct PauliAction {
    std::uint64_t flip = 0;
};

} // namespace

std::shared_ptr<const ConfigurationSpace> half_filled_space(const LatticeSpec &lattice,
                                                            std::uint64_t budget) {
    const int m = lattice.sites();
    const std::uint64_t dim = m <= 64 ? binomial(m, m / 2) : std::numeric_limits<std::uint64_t>::max();
    if (m > 63 || dim > budget)
        fail(ErrorKind::budget_exceeded,
             lattice.label() + " has " +
                 (m <= 64 ? std::to_string(dim) : std::string("more than 2^63")) +
                 " configurations (budget " + std::to_string(budget) +
                 "); use the Monte Carlo engine for this lattice");
    return std::make_shared<const ConfigurationSpace>(m, m / 2);
}

StateVector build_state(const WaveFunctionSpec &spec, std::uint64_t budget,
                        std::shared_ptr<const ConfigurationSpace> space) {
    if (!space)
        space = half_filled_space(spec.lattice, budget);
    else if (space->sites() != spec.lattice.sites() || space->ups() != spec.lattice.bosons())
        fail(ErrorKind::lattice_mismatch, "configuration space does not match " + spec.lattice.label());

    const PhiEvaluator phi(spec);
    const std::size_t dim = space->size();
    std::vector<LogAmplitude> logs(dim);
    std::vector<double> chunk_max(detail::chunk_count(dim), -std::numeric_limits<double>::infinity());
    detail::parallel_chunks(dim, [&](std::size_t c, std::size_t begin, std::size_t end) {
        double mx = -std::numeric_limits<double>::infinity();
        for (std::size_t r = begin; r < end; ++r) {
            logs[r] = phi.log_phi_mask(space->mask(r));
            mx = std::max(mx, logs[r].log_mag);
        }
        chunk_max[c] = mx;
    });
    const double shift = *std::max_element(chunk_max.begin(), chunk_max.end());
    if (!std::isfinite(shift))
        fail(ErrorKind::degenerate, "wave function vanishes on every configuration");

    StateVector sv{spec.lattice, spec.sector, space, std::vector<cplx>(dim)};
    detail::parallel_chunks(dim, [&](std::size_t, std::size_t begin, std::size_t end) {
        for (std::size_t r = begin; r < end; ++r)
            sv.amplitudes[r] = logs[r].to_complex_scaled(shift);
    });
    normalize(sv);
    return sv;
}

StateVector state_from_function(const LatticeSpec &lattice,
                                std::shared_ptr<const ConfigurationSpace> space,
                                const std::function<cplx(std::uint64_t)> &fn) {
    if (!space)
        space = half_filled_space(lattice);
    StateVector sv{lattice, -1, space, std::vector<cplx>(space->size())};
    for (std::size_t r = 0; r < space->size(); ++r)
        sv.amplitudes[r] = fn(space->mask(r));
    normalize(sv);
    return sv;
}

double norm(const StateVector &sv) {
    return std::sqrt(detail::chunked_sum<double>(sv.dimension(), [&](std::size_t b, std::size_t e) {
        double acc = 0.0;
        for (std::size_t r = b; r < e; ++r)
            acc += std::norm(sv.amplitudes[r]);
        return acc;
    }));
}

void normalize(StateVector &sv) {
    const double n = norm(sv);
    if (!(n > 0.0))
        fail(ErrorKind::degenerate, "cannot normalize a zero vector");
    for (auto &a : sv.amplitudes)
        a /= n;
}

cplx overlap(const StateVector &a, const StateVector &b) {
    require_same_lattice(a, b);
    return detail::chunked_sum<cplx>(a.dimension(), [&](std::size_t begin, std::size_t end) {
        cplx acc{};
        for (std::size_t r = begin; r < end; ++r)
            acc += std::conj(a.amplitudes[r]) * b.amplitudes[r];
        return acc;
    });
}

double singlet_defect(const StateVector &sv) {
    return std::sqrt(ladder_norm2(sv, sv.space->ups() - 1));
}

double total_spin(const StateVector &sv) { return ladder_norm2(sv, sv.space->ups() + 1); }

double zz_correlator(const StateVector &sv, int i, int j) { return cross_zz(sv, sv, i, j).real(); }

cplx cross_zz(const StateVector &a, const StateVector &b, int i, int j) {
    require_same_lattice(a, b);
    require_site(a, i);
    require_site(a, j);
    if (i == j)
        fail(ErrorKind::invalid_argument, "zz correlator needs two distinct sites");
    const std::size_t dim = a.dimension();
    return detail::chunked_sum<cplx>(dim, [&](std::size_t begin, std::size_t end) {
        cplx acc{};
        for (std::size_t r = begin; r < end; ++r) {
            const std::uint64_t m = a.space->mask(r);
            const double s = (bit(m, i) == bit(m, j)) ? 1.0 : -1.0;
            acc += s * std::conj(a.amplitudes[r]) * b.amplitudes[r];
        }
        return acc;
    });
}

cplx pauli_matrix_element(const StateVector &a, const PauliString &p, const StateVector &b) {
    require_same_lattice(a, b);
    std::uint64_t flip = 0;
    std::uint64_t seen = 0;
    for (const auto &op : p) {
        require_site(a, op.site);
        const std::uint64_t s = std::uint64_t{1} << op.site;
        if (seen & s)
            fail(ErrorKind::invalid_argument, "Pauli string repeats a site");
        seen |= s;
        if (flips(op.axis))
            flip |= s;
    }
    const ConfigurationSpace &space = *a.space;
    return detail::chunked_sum<cplx>(b.dimension(), [&](std::size_t begin, std::size_t end) {
        cplx acc{};
        for (std::size_t r = begin; r < end; ++r) {
            const std::uint64_t m = space.mask(r);
            const std::uint64_t image = m ^ flip;
            if (!space.contains(image))
                continue;
            cplx phase = 1.0;
            for (const auto &op : p)
                phase *= pauli_phase(op.axis, bit(m, op.site));
            acc += std::conj(a.amplitudes[space.rank(image)]) * phase * b.amplitudes[r];
        }
        return acc;
    });
}

cplx single_pauli_expectation(const StateVector &a, const StateVector &b, int site, Pauli axis) {
    return pauli_matrix_element(a, PauliString{{site, axis}}, b);
}

std::vector<std::array<cplx, 9>> two_site_pauli_blocks(std::span<const StateVector *const> states,
                                                       int i, int j) {
    if (states.empty())
        return {};
    const StateVector &first = *states.front();
    for (const auto *s : states)
        require_same_lattice(first, *s);
    require_site(first, i);
    require_site(first, j);
    if (i == j)
        fail(ErrorKind::invalid_argument, "two-site block needs distinct sites");

    const std::size_t n = states.size();
    const ConfigurationSpace &space = *first.space;
    const std::uint64_t bi = std::uint64_t{1} << i;
    const std::uint64_t bj = std::uint64_t{1} << j;

    // At fixed Sz only zz (diagonal) and the four {x,y}{x,y} products (both
    // spins flipped, needs antiparallel spins) survive. With the pair
    // antiparallel, xx = yy = 1 and xy = -yx = (v ? i : -i) where v is spin j.
    struct Acc {
        std::vector<cplx> zz, flip, twist; // [k * n + l]
        Acc &operator+=(const Acc &o) {
            if (zz.empty()) {
                *this = o;
                return *this;
            }
            for (std::size_t q = 0; q < zz.size(); ++q) {
                zz[q] += o.zz[q];
                flip[q] += o.flip[q];
                twist[q] += o.twist[q];
            }
            return *this;
        }
    };

    Acc total = detail::chunked_sum<Acc>(space.size(), [&](std::size_t begin, std::size_t end) {
        Acc acc{std::vector<cplx>(n * n), std::vector<cplx>(n * n), std::vector<cplx>(n * n)};
        for (std::size_t r = begin; r < end; ++r) {
            const std::uint64_t m = space.mask(r);
            const bool ui = m & bi;
            const bool uj = m & bj;
            const double s = (ui == uj) ? 1.0 : -1.0;
            if (ui == uj) {
                for (std::size_t k = 0; k < n; ++k) {
                    const cplx left = std::conj(states[k]->amplitudes[r]);
                    for (std::size_t l = 0; l < n; ++l)
                        acc.zz[k * n + l] += left * states[l]->amplitudes[r];
                }
                continue;
            }
            const std::size_t rr = space.rank(m ^ bi ^ bj);
            const cplx ph = uj ? kI : -kI;
            for (std::size_t k = 0; k < n; ++k) {
                const cplx left = std::conj(states[k]->amplitudes[r]);
                const cplx image = std::conj(states[k]->amplitudes[rr]);
                for (std::size_t l = 0; l < n; ++l) {
                    const cplx right = states[l]->amplitudes[r];
                    acc.zz[k * n + l] += s * left * right;
                    acc.flip[k * n + l] += image * right;
                    acc.twist[k * n + l] += ph * image * right;
                }
            }
        }
        return acc;
    });

    std::vector<std::array<cplx, 9>> out(n * n);
    if (total.zz.empty())
        return out;
    for (std::size_t q = 0; q < n * n; ++q) {
        out[q][0] = total.flip[q];   // xx
        out[q][1] = total.twist[q];  // xy
        out[q][3] = -total.twist[q]; // yx
        out[q][4] = total.flip[q];   // yy
        out[q][8] = total.zz[q];     // zz
    }
    return out;
}

cplx translation_overlap(const StateVector &a, const StateVector &b, Direction dir) {
    require_same_lattice(a, b);
    const std::vector<int> perm = translation_permutation(a.lattice, dir);
    const ConfigurationSpace &space = *a.space;
    return detail::chunked_sum<cplx>(b.dimension(), [&](std::size_t begin, std::size_t end) {
        cplx acc{};
        for (std::size_t r = begin; r < end; ++r) {
            std::uint64_t image = 0;
            for (auto m = space.mask(r); m != 0; m &= m - 1)
                image |= std::uint64_t{1} << perm[std::countr_zero(m)];
            acc += std::conj(a.amplitudes[space.rank(image)]) * b.amplitudes[r];
        }
        return acc;
    });
}

cplx ulsm_expectation_exact(const StateVector &sv) {
    const LatticeSpec &lat = sv.lattice;
    std::vector<cplx> phase_of_sum(lat.N1());
    for (int k = 0; k < lat.N1(); ++k)
        phase_of_sum[k] = std::polar(1.0, 2.0 * std::numbers::pi * k / lat.N1() -
                                              std::numbers::pi / 2.0 * (lat.N2() % 4));
    return detail::chunked_sum<cplx>(sv.dimension(), [&](std::size_t begin, std::size_t end) {
        cplx acc{};
        for (std::size_t r = begin; r < end; ++r) {
            int label_sum = 0;
            for (auto m = sv.space->mask(r); m != 0; m &= m - 1)
                label_sum += lat.column(std::countr_zero(m)) + lat.n1_min();
            const int k = ((label_sum % lat.N1()) + lat.N1()) % lat.N1();
            acc += phase_of_sum[k] * std::norm(sv.amplitudes[r]);
        }
        return acc;
    });
}

double chiral_order(const StateVector &sv, const std::array<int, 3> &t) {
    if (t[0] == t[1] || t[1] == t[2] || t[0] == t[2])
        fail(ErrorKind::invalid_argument, "chiral order needs three distinct sites");
    struct Term {
        Pauli a, b, c;
        double sign;
    };
    constexpr Term terms[6] = {
        {Pauli::x, Pauli::y, Pauli::z, 1.0},  {Pauli::y, Pauli::z, Pauli::x, 1.0},
        {Pauli::z, Pauli::x, Pauli::y, 1.0},  {Pauli::x, Pauli::z, Pauli::y, -1.0},
        {Pauli::z, Pauli::y, Pauli::x, -1.0}, {Pauli::y, Pauli::x, Pauli::z, -1.0},
    };
    cplx acc{};
    for (const auto &term : terms)
        acc += term.sign *
               pauli_matrix_element(sv, {{t[0], term.a}, {t[1], term.b}, {t[2], term.c}}, sv);
    return acc.real();
}

namespace {

template <class T> void put_le(std::ostream &out, T value) {
    static_assert(sizeof(T) <= 8);
    std::uint64_t bits = 0;
    std::memcpy(&bits, &value, sizeof(T));
    char bytes[sizeof(T)];
    for (std::size_t k = 0; k < sizeof(T); ++k)
        bytes[k] = static_cast<char>((bits >> (8 * k)) & 0xffu);
    out.write(bytes, sizeof(T));
}

template <class T> T get_le(std::istream &in) {
    unsigned char bytes[sizeof(T)];
    in.read(reinterpret_cast<char *>(bytes), sizeof(T));
    if (!in)
        fail(ErrorKind::io, "truncated state dump");
    std::uint64_t bits = 0;
    for (std::size_t k = 0; k < sizeof(T); ++k)
        bits |= std::uint64_t{bytes[k]} << (8 * k);
    T value;
    std::memcpy(&value, &bits, sizeof(T));
    return value;
}

} // namespace

void write_state(const StateVector &sv, std::ostream &out) {
    put_le<std::int32_t>(out, sv.lattice.N1());
    put_le<std::int32_t>(out, sv.lattice.N2());
    put_le<std::int32_t>(out, sv.sector);
    put_le<std::uint64_t>(out, sv.dimension());
    for (const auto &a : sv.amplitudes) {
        put_le<double>(out, a.real());
        put_le<double>(out, a.imag());
    }
    if (!out)
        fail(ErrorKind::io, "failed writing state dump");
}

StateVector read_state(std::istream &in) {
    const int n1 = get_le<std::int32_t>(in);
    const int n2 = get_le<std::int32_t>(in);
    const int sector = get_le<std::int32_t>(in);
    const auto dim = get_le<std::uint64_t>(in);
    LatticeSpec lattice = build_lattice(n1, n2);
    auto space = half_filled_space(lattice, std::numeric_limits<std::uint64_t>::max());
    if (space->size() != dim)
        fail(ErrorKind::io, "state dump dimension does not match its lattice");
    StateVector sv{lattice, sector, space, std::vector<cplx>(dim)};
    for (auto &a : sv.amplitudes) {
        const double re = get_le<double>(in);
        const double im = get_le<double>(in);
        a = {re, im};
    }
    return sv;
}

} // namespace csl

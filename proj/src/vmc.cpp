#include "csl/vmc.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <random>

#include "csl/detail/parallel.hpp"
#include "csl/error.hpp"

namespace csl {

void VmcSchedule::validate() const {
    if (n_chains < 2)
        fail(ErrorKind::invalid_argument, "need at least 2 chains");
    if (sweeps_warmup < 0 || sweeps_measure <= 0 || block_size <= 0)
        fail(ErrorKind::invalid_argument, "sweep counts must be positive");
    if (sweeps_measure % block_size != 0)
        fail(ErrorKind::invalid_argument, "measure sweeps must be a multiple of the block size");
}

Observable Observable::from_pauli(std::string name, PauliString ops) {
    for (const auto &op : ops)
        if (op.axis != Pauli::z)
            fail(ErrorKind::invalid_argument,
                 "observable " + name + " is not diagonal in the sigma^z basis");
    return {std::move(name), std::move(ops), false};
}

Observable Observable::zz(std::string name, int i, int j) {
    if (i == j)
        fail(ErrorKind::invalid_argument, "zz observable needs two distinct sites");
    return from_pauli(std::move(name), {{i, Pauli::z}, {j, Pauli::z}});
}

Observable Observable::twist() { return {"ulsm", {}, true}; }

namespace {

using cplx = std::complex<double>;

struct ChainOutput {
    std::vector<std::vector<cplx>> blocks; // [observable][block]
    long warm_accepted = 0, warm_proposed = 0;
    long accepted = 0, proposed = 0;
};

class Chain {
  public:
    Chain(const PhiEvaluator &phi, std::mt19937_64 &rng) : phi_(phi), rng_(rng) {
        const LatticeSpec &lat = phi.spec().lattice;
        m_ = lat.sites();
        n_ = lat.bosons();
        occ_.assign(m_, 0);
        std::vector<int> sites(m_);
        std::iota(sites.begin(), sites.end(), 0);
        for (int attempt = 0;; ++attempt) {
            if (attempt > 1000)
                fail(ErrorKind::stuck_chain, "no configuration with nonzero amplitude found");
            std::shuffle(sites.begin(), sites.end(), rng_);
            up_.assign(sites.begin(), sites.begin() + n_);
            down_.assign(sites.begin() + n_, sites.end());
            s1_ = s2_ = 0;
            for (int s : up_) {
                s1_ += phi_.label1(s);
                s2_ += phi_.label2(s);
            }
            com_ = phi_.log_com(s1_, s2_);
            if (!com_.is_zero())
                break;
        }
        for (int s : up_)
            occ_[s] = 1;
    }

    bool step() {
        std::uniform_int_distribution<int> pick_up(0, n_ - 1);
        std::uniform_int_distribution<int> pick_down(0, m_ - n_ - 1);
        const int iu = pick_up(rng_);
        const int id = pick_down(rng_);
        const double u = uniform_(rng_);
        const int from = up_[iu];
        const int to = down_[id];
        const int t1 = s1_ - phi_.label1(from) + phi_.label1(to);
        const int t2 = s2_ - phi_.label2(from) + phi_.label2(to);
        const LogAmplitude com_new = phi_.log_com(t1, t2);
        if (com_new.is_zero())
            return false;
        double lr = phi_.single(to).log_mag - phi_.single(from).log_mag + com_new.log_mag - com_.log_mag;
        for (int k : up_) {
            if (k == from)
                continue;
            lr += phi_.pair(to, k).log_mag - phi_.pair(from, k).log_mag;
        }
        if (lr < 0.0 && std::log(u) >= 2.0 * lr)
            return false;
        up_[iu] = to;
        down_[id] = from;
        occ_[from] = 0;
        occ_[to] = 1;
        s1_ = t1;
        s2_ = t2;
        com_ = com_new;
        return true;
    }

    long sweep() {
        long acc = 0;
        for (int k = 0; k < m_; ++k)
            acc += step();
        return acc;
    }

    [[nodiscard]] const std::vector<char> &occupation() const noexcept { return occ_; }
    [[nodiscard]] int label_sum() const noexcept { return s1_; }
    [[nodiscard]] int sites() const noexcept { return m_; }

  private:
    const PhiEvaluator &phi_;
    std::mt19937_64 &rng_;
    std::uniform_real_distribution<double> uniform_{0.0, 1.0};
    int m_ = 0, n_ = 0;
    std::vector<int> up_, down_;
    std::vector<char> occ_;
    int s1_ = 0, s2_ = 0;
    LogAmplitude com_;
};

ChainOutput run_chain(const PhiEvaluator &phi, const VmcSchedule &sch,
                      const std::vector<Observable> &obs, int chain) {
    const LatticeSpec &lat = phi.spec().lattice;
    std::seed_seq seq{static_cast<std::uint32_t>(sch.seed), static_cast<std::uint32_t>(sch.seed >> 32),
                      static_cast<std::uint32_t>(lat.N1()), static_cast<std::uint32_t>(lat.N2()),
                      static_cast<std::uint32_t>(phi.spec().sector), static_cast<std::uint32_t>(chain)};
    std::mt19937_64 rng(seq);
    Chain c(phi, rng);

    ChainOutput out;
    for (int s = 0; s < sch.sweeps_warmup; ++s)
        out.warm_accepted += c.sweep();
    out.warm_proposed = static_cast<long>(sch.sweeps_warmup) * c.sites();

    std::vector<cplx> twist_phase(lat.N1());
    for (int k = 0; k < lat.N1(); ++k)
        twist_phase[k] = std::polar(1.0, 2.0 * std::numbers::pi * k / lat.N1() -
                                             std::numbers::pi / 2.0 * (lat.N2() % 4));

    const int n_blocks = sch.sweeps_measure / sch.block_size;
    out.blocks.assign(obs.size(), std::vector<cplx>(n_blocks));
    std::vector<cplx> sum(obs.size());
    for (int b = 0; b < n_blocks; ++b) {
        std::fill(sum.begin(), sum.end(), cplx{});
        for (int s = 0; s < sch.block_size; ++s) {
            out.accepted += c.sweep();
            const auto &occ = c.occupation();
            for (std::size_t o = 0; o < obs.size(); ++o) {
                if (obs[o].ulsm) {
                    const int k = ((c.label_sum() % lat.N1()) + lat.N1()) % lat.N1();
                    sum[o] += twist_phase[k];
                } else {
                    int sign = 1;
                    for (const auto &op : obs[o].ops)
                        sign *= occ[op.site] ? 1 : -1;
                    sum[o] += static_cast<double>(sign);
                }
            }
        }
        for (std::size_t o = 0; o < obs.size(); ++o)
            out.blocks[o][b] = sum[o] / static_cast<double>(sch.block_size);
    }
    out.proposed = static_cast<long>(sch.sweeps_measure) * c.sites();
    return out;
}

double mean_of(const std::vector<double> &v) {
    return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

// standard error of the mean of v, treating entries as independent
double stderr_of(const std::vector<double> &v) {
    if (v.size() < 2)
        return 0.0;
    const double m = mean_of(v);
    double ss = 0.0;
    for (double x : v)
        ss += (x - m) * (x - m);
    return std::sqrt(ss / static_cast<double>(v.size() - 1) / static_cast<double>(v.size()));
}

struct Blocking {
    double mean = 0.0, stderr = 0.0, doubling = 1.0, interchain = 1.0;
};

// per_chain[c][b]: block means of one real component
Blocking analyse(const std::vector<std::vector<double>> &per_chain) {
    Blocking r;
    std::vector<double> pooled, doubled, chain_means;
    for (const auto &blocks : per_chain) {
        pooled.insert(pooled.end(), blocks.begin(), blocks.end());
        for (std::size_t b = 0; b + 1 < blocks.size(); b += 2)
            doubled.push_back(0.5 * (blocks[b] + blocks[b + 1]));
        chain_means.push_back(mean_of(blocks));
    }
    r.mean = mean_of(pooled);
    r.stderr = stderr_of(pooled);
    if (r.stderr > 0.0) {
        if (doubled.size() >= 2)
            r.doubling = stderr_of(doubled) / r.stderr;
        // chain means scatter by stderr * sqrt(n_chains) if the blocks are honest
        const double predicted = r.stderr * std::sqrt(static_cast<double>(per_chain.size()));
        r.interchain = stderr_of(chain_means) * std::sqrt(static_cast<double>(chain_means.size())) / predicted;
    }
    return r;
}

} // namespace

VmcResult run_vmc(const WaveFunctionSpec &spec, const VmcSchedule &schedule,
                  const std::vector<Observable> &observables) {
    schedule.validate();
    for (const auto &o : observables) {
        for (const auto &op : o.ops) {
            if (op.axis != Pauli::z)
                fail(ErrorKind::invalid_argument, "observable " + o.name + " is not diagonal");
            if (op.site < 0 || op.site >= spec.lattice.sites())
                fail(ErrorKind::invalid_argument, "observable " + o.name + " has a site out of range");
        }
    }
    const PhiEvaluator phi(spec);
    std::vector<ChainOutput> chains(schedule.n_chains);
    detail::parallel_tasks(chains.size(), [&](std::size_t c) {
        chains[c] = run_chain(phi, schedule, observables, static_cast<int>(c));
    });

    VmcResult res;
    long wa = 0, wp = 0, a = 0, p = 0;
    for (const auto &c : chains) {
        wa += c.warm_accepted;
        wp += c.warm_proposed;
        a += c.accepted;
        p += c.proposed;
        res.chain_acceptance.push_back(static_cast<double>(c.accepted) / static_cast<double>(c.proposed));
    }
    res.warmup_acceptance = wp > 0 ? static_cast<double>(wa) / static_cast<double>(wp) : 1.0;
    res.acceptance = static_cast<double>(a) / static_cast<double>(p);
    if (wp > 0 && res.warmup_acceptance < 0.01)
        fail(ErrorKind::stuck_chain, spec.lattice.label() + " sector " + std::to_string(spec.sector) +
                                         ": warmup acceptance " + std::to_string(res.warmup_acceptance));

    for (std::size_t o = 0; o < observables.size(); ++o) {
        std::vector<std::vector<double>> re(chains.size()), im(chains.size());
        for (std::size_t c = 0; c < chains.size(); ++c) {
            for (const cplx &v : chains[c].blocks[o]) {
                re[c].push_back(v.real());
                im[c].push_back(v.imag());
            }
        }
        const Blocking br = analyse(re);
        const Blocking bi = analyse(im);
        VmcEstimate e;
        e.mean = {br.mean, bi.mean};
        e.stderr = br.stderr;
        e.stderr_im = bi.stderr;
        e.n_blocks = static_cast<int>(chains.size()) * (schedule.sweeps_measure / schedule.block_size);
        e.doubling_ratio = br.doubling;
        e.interchain_ratio = br.interchain;
        res.doubling_ok = res.doubling_ok && std::abs(br.doubling - 1.0) <= 0.3;
        res.interchain_ok = res.interchain_ok && br.interchain >= 1.0 / 3.0 && br.interchain <= 3.0;
        res.estimates.push_back(e);
    }
    return res;
}

OriginBonds origin_bonds(const LatticeSpec &lattice) {
    return {lattice.wrapped_index(0, 1), lattice.wrapped_index(1, 1), lattice.wrapped_index(0, 2)};
}

int ulsm_limit(int n2_count, int sector) {
    if (sector != 0 && sector != 1)
        fail(ErrorKind::invalid_argument, "sector must be 0 or 1");
    const int e = (n2_count % 2 == 0) ? (n2_count + 2) / 2 : (n2_count + 1) / 2;
    return ((sector + e) % 2 == 0) ? 1 : -1;
}

std::vector<UlsmPoint> ulsm_scan(int n2_count, const std::vector<int> &n1_list, int sector,
                                 const VmcSchedule &schedule) {
    std::vector<UlsmPoint> out;
    for (int n1 : n1_list) {
        const LatticeSpec lat = build_lattice(n1, n2_count);
        const VmcResult r = run_vmc(make_wavefunction(lat, sector), schedule, {Observable::twist()});
        out.push_back({n1, n2_count, sector, r.estimates.front(), r.acceptance, ulsm_limit(n2_count, sector)});
    }
    return out;
}

bool ulsm_trend_ok(const std::vector<UlsmPoint> &points) {
    for (std::size_t k = 1; k < points.size(); ++k) {
        if (points[k].N1 <= points[k - 1].N1)
            return false;
        const double before = std::abs(points[k - 1].estimate.mean.real() - points[k - 1].limit);
        const double after = std::abs(points[k].estimate.mean.real() - points[k].limit);
        if (!(after < before))
            return false;
    }
    return true;
}

} // namespace csl

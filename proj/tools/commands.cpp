#include "commands.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include "json.hpp"

#include "csl/error.hpp"
#include "csl/exact.hpp"
#include "csl/qec.hpp"
#include "csl/table1.hpp"
#include "csl/valence_bond.hpp"
#include "csl/vmc.hpp"

#ifndef CSL_VERSION
#define CSL_VERSION "unknown"
#endif

namespace cli {

using json = nlohmann::ordered_json;
namespace fs = std::filesystem;

namespace {

constexpr double kStateTol = 1e-8;
constexpr double kKlTol = 1e-10;

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

std::string cell(const json &v) {
    if (v.is_string())
        return v.get<std::string>();
    if (v.is_number_float())
        return fmt(v.get<double>());
    if (v.is_boolean())
        return v.get<bool>() ? "true" : "false";
    return v.dump();
}

void write_csv(std::ostream &out, const json &rows) {
    if (rows.empty())
        return;
    bool first = true;
    for (const auto &[key, _] : rows.front().items()) {
        out << (first ? "" : ",") << key;
        first = false;
    }
    out << '\n';
    for (const auto &row : rows) {
        first = true;
        for (const auto &[key, v] : row.items()) {
            out << (first ? "" : ",") << cell(v);
            first = false;
        }
        out << '\n';
    }
}

std::string default_path(const RunConfig &cfg, const std::string &stem, const std::string &ext) {
    return cfg.out.empty() ? stem + "." + ext : cfg.out;
}

void write_rows(const std::string &path, const std::string &format, const json &rows) {
    std::ofstream f(path);
    if (!f)
        csl::fail(csl::ErrorKind::io, "cannot write " + path);
    if (format == "json")
        f << rows.dump(2) << '\n';
    else
        write_csv(f, rows);
}

json config_json(const RunConfig &cfg) {
    return {{"command", cfg.command}, {"lattice", cfg.lattice},   {"sector", cfg.sector},
            {"seed", cfg.seed},       {"chains", cfg.chains},     {"sweeps", cfg.sweeps},
            {"warmup", cfg.warmup},   {"block", cfg.block},       {"budget", cfg.budget},
            {"max_dx", cfg.max_dx},   {"max_dy", cfg.max_dy},     {"axis_aligned", cfg.axis_aligned},
            {"limit", cfg.limit},     {"rows", cfg.rows},         {"n2", cfg.n2},
            {"n1_list", cfg.n1_list}, {"out", cfg.out},           {"format", cfg.format}};
}

void write_sidecar(const std::string &path, const RunConfig &cfg, json extra) {
    json meta = {{"config", config_json(cfg)},
                 {"version", CSL_VERSION},
                 {"rng", csl::kRngName},
                 {"origin", "r0 = (n1=0, n2=1)"},
                 {"output", path}};
    for (auto &[k, v] : extra.items())
        meta[k] = v;
    std::ofstream f(path + ".meta.json");
    if (!f)
        csl::fail(csl::ErrorKind::io, "cannot write " + path + ".meta.json");
    f << meta.dump(2) << '\n';
}

csl::LatticeSpec require_lattice(const RunConfig &cfg) {
    if (cfg.lattice.empty())
        csl::fail(csl::ErrorKind::invalid_argument, "--lattice is required");
    return csl::parse_lattice(cfg.lattice);
}

void print_check(const std::string &what, double value, double tol, bool pass) {
    std::printf("%-4s %-40s %.3e (tol %.0e)\n", pass ? "PASS" : "FAIL", what.c_str(), value, tol);
}

} // namespace

csl::VmcSchedule schedule_of(const RunConfig &cfg) {
    csl::VmcSchedule s;
    s.n_chains = cfg.chains;
    s.sweeps_measure = cfg.sweeps;
    s.sweeps_warmup = cfg.warmup;
    s.block_size = cfg.block;
    s.seed = cfg.seed;
    s.validate();
    return s;
}

double parse_length(const std::string &text) {
    std::string t = text;
    double unit = 1.0;
    if (!t.empty() && t.back() == 'b') {
        t.pop_back();
        unit = csl::kSpacing;
        if (t.empty())
            t = "1";
    }
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(t, &used);
    } catch (const std::exception &) {
        used = 0;
    }
    if (used != t.size() || !(v >= 0.0))
        csl::fail(csl::ErrorKind::invalid_argument, "bad length '" + text + "' (use e.g. 2b or 5.0)");
    return v * unit;
}

std::vector<int> parse_sectors(const std::string &text) {
    if (text == "0")
        return {0};
    if (text == "1")
        return {1};
    if (text == "both")
        return {0, 1};
    csl::fail(csl::ErrorKind::invalid_argument, "sector must be 0, 1 or both");
}

int cmd_verify(const RunConfig &cfg) {
    const csl::LatticeSpec lat = require_lattice(cfg);
    const auto sectors = parse_sectors(cfg.sector);
    auto space = csl::half_filled_space(lat, cfg.budget);
    const csl::StateVector phi[2] = {csl::build_state(csl::make_wavefunction(lat, 0), cfg.budget, space),
                                     csl::build_state(csl::make_wavefunction(lat, 1), cfg.budget, space)};
    json rows = json::array();
    bool ok = true;
    auto check = [&](int n, const std::string &name, double value, double tol) {
        const bool pass = std::abs(value) <= tol;
        ok = ok && pass;
        print_check(lat.label() + " phi" + std::to_string(n) + " " + name, value, tol, pass);
        rows.push_back({{"lattice", lat.label()}, {"sector", n}, {"check", name},
                        {"value", value}, {"tolerance", tol}, {"pass", pass}});
    };
    const bool odd = lat.N2() % 2 != 0;
    for (int n : sectors) {
        check(n, "singlet_defect", csl::singlet_defect(phi[n]), kStateTol);
        check(n, "total_spin", csl::total_spin(phi[n]), kStateTol);
        const auto tx = csl::translation_overlap(phi[odd ? 1 - n : n], phi[n], csl::Direction::x);
        check(n, odd ? "tx_swap_modulus_minus_1" : "tx_fixed_modulus_minus_1", std::abs(tx) - 1.0, kStateTol);
        const auto ty = csl::translation_overlap(phi[n], phi[n], csl::Direction::y);
        check(n, "ty_fixed_modulus_minus_1", std::abs(ty) - 1.0, kStateTol);
        const auto spec = csl::make_wavefunction(lat, n);
        check(n, "boundary_x_residual", csl::boundary_residual(spec, csl::Direction::x, 20, cfg.seed), kStateTol);
        check(n, "boundary_y_residual", csl::boundary_residual(spec, csl::Direction::y, 20, cfg.seed), kStateTol);
    }
    const std::string path = default_path(cfg, "verify-" + lat.label(), cfg.format);
    write_rows(path, cfg.format, rows);
    const auto ov = csl::overlap(phi[0], phi[1]);
    write_sidecar(path, cfg, {{"dimension", phi[0].dimension()}, {"overlap_abs", std::abs(ov)}, {"all_pass", ok}});
    return ok ? kOk : kValidation;
}

int cmd_table1(const RunConfig &cfg) {
    const csl::VmcSchedule sch = schedule_of(cfg);
    std::vector<csl::CorrelatorEntry> entries;
    if (!cfg.lattice.empty()) {
        const csl::LatticeSpec lat = csl::parse_lattice(cfg.lattice);
        const auto *row = csl::find_reference(lat.N1(), lat.N2());
        if (!row)
            csl::fail(csl::ErrorKind::invalid_argument, lat.label() + " is not a row of the reference table");
        entries = csl::table1_row(*row, sch);
    } else {
        entries = csl::table1_report(sch, [](const csl::ReferenceRow &r) {
            std::fprintf(stderr, "table1: %dx%d done\n", r.N1, r.N2);
        });
    }
    json rows = json::array();
    int within3 = 0;
    double worst = 0.0;
    for (const auto &e : entries) {
        const std::string label = std::to_string(e.N1) + "x" + std::to_string(e.N2);
        rows.push_back({{"lattice", label},
                        {"sector", e.sector},
                        {"observable", e.dir == csl::Direction::x ? "zz_x" : "zz_y"},
                        {"mean_re", e.estimate.mean.real()},
                        {"mean_im", e.estimate.mean.imag()},
                        {"stderr", e.estimate.stderr},
                        {"n_blocks", e.estimate.n_blocks},
                        {"acceptance", e.acceptance},
                        {"seed", cfg.seed},
                        {"stderr_im", e.estimate.stderr_im},
                        {"reference", e.reference},
                        {"reference_err", e.reference_err},
                        {"pull", e.pull}});
        within3 += e.pull <= 3.0;
        worst = std::max(worst, e.pull);
        std::printf("%-5s phi%d %s  %8.4f +- %.4f  reference %7.3f(%03.0f)  pull %.2f\n", label.c_str(),
                    e.sector, e.dir == csl::Direction::x ? "x" : "y", e.estimate.mean.real(),
                    e.estimate.stderr, e.reference, e.reference_err * 1000, e.pull);
    }
    const double frac = entries.empty() ? 0.0 : static_cast<double>(within3) / entries.size();
    std::printf("pull <= 3: %d/%zu (%.1f%%), max pull %.2f\n", within3, entries.size(), 100 * frac, worst);
    const std::string path = default_path(cfg, "table1", cfg.format);
    write_rows(path, cfg.format, rows);
    write_sidecar(path, cfg, {{"fraction_pull_le_3", frac}, {"max_pull", worst}});
    return worst > 4.0 ? kValidation : kOk;
}

int cmd_fig1(const RunConfig &cfg) {
    const csl::VmcSchedule sch = schedule_of(cfg);
    for (int n1 : cfg.n1_list)
        if (n1 < 2 || n1 % 2 != 0)
            csl::fail(csl::ErrorKind::invalid_argument, "N1 values must be even and >= 2");
    json rows = json::array();
    json trends = json::object();
    bool ok = true;
    for (int n : parse_sectors(cfg.sector)) {
        const auto pts = csl::ulsm_scan(cfg.n2, cfg.n1_list, n, sch);
        for (const auto &p : pts) {
            rows.push_back({{"inv_n1", 1.0 / p.N1},
                            {"n1", p.N1},
                            {"n2", p.N2},
                            {"sector", p.sector},
                            {"re_ulsm", p.estimate.mean.real()},
                            {"stderr", p.estimate.stderr},
                            {"im_ulsm", p.estimate.mean.imag()},
                            {"stderr_im", p.estimate.stderr_im},
                            {"limit", p.limit},
                            {"acceptance", p.acceptance},
                            {"seed", cfg.seed}});
            std::printf("N1=%-3d N2=%d phi%d  Re<U> = %8.4f +- %.4f  (limit %+d)\n", p.N1, p.N2, n,
                        p.estimate.mean.real(), p.estimate.stderr, p.limit);
        }
        const bool trend = csl::ulsm_trend_ok(pts);
        if (!trend)
            std::printf("TREND phi%d: sequence moves away from its limit\n", n);
        trends["phi" + std::to_string(n)] = trend;
        ok = ok && trend;
    }
    const std::string path = default_path(cfg, "fig1-n2_" + std::to_string(cfg.n2), cfg.format);
    write_rows(path, cfg.format, rows);
    write_sidecar(path, cfg, {{"monotone_toward_limit", trends}});
    return ok ? kOk : kValidation;
}

int cmd_vb(const RunConfig &cfg) {
    const csl::LatticeSpec lat = require_lattice(cfg);
    csl::BondRule rule{parse_length(cfg.max_dx), parse_length(cfg.max_dy), cfg.axis_aligned};
    const csl::BondGraph graph(lat, rule);
    const csl::ParityPattern expected =
        lat.N2() % 2 != 0 ? csl::ParityPattern::alternating : csl::ParityPattern::uniform;

    json rows = json::array();
    std::map<std::string, std::uint64_t> histogram;
    std::uint64_t violations = 0, sign_mismatch = 0, id = 0;
    csl::enumerate_coverings(
        graph,
        [&](const csl::DimerCovering &cov) {
            const auto parities = csl::gap_parities(lat, cov);
            const std::string pstr = csl::gap_parity_string(lat, cov);
            const int gamma = csl::seam_crossings(lat, cov);
            const double u = csl::ulsm_vb_expectation(lat, cov);
            ++histogram[pstr];
            violations += csl::classify(parities) != expected;
            sign_mismatch += (u > 0.0 ? 1 : -1) != (gamma % 2 == 0 ? 1 : -1);
            if (id < cfg.rows)
                rows.push_back({{"id", id}, {"gamma", gamma}, {"seam_parity", gamma % 2 == 0 ? 1 : -1},
                                {"gap_parities", pstr}, {"ulsm", u}});
            ++id;
            return true;
        },
        cfg.limit);

    std::printf("%s: %llu coverings%s\n", lat.label().c_str(), static_cast<unsigned long long>(id),
                (cfg.limit != 0 && id >= cfg.limit) ? " (limit reached)" : "");
    json hist = json::object();
    for (const auto &[k, v] : histogram) {
        std::printf("  %s  %llu\n", k.c_str(), static_cast<unsigned long long>(v));
        hist[k] = v;
    }
    std::printf("pattern violations: %llu, U sign != (-1)^gamma: %llu\n",
                static_cast<unsigned long long>(violations), static_cast<unsigned long long>(sign_mismatch));
    const std::string path = default_path(cfg, "vb-" + lat.label(), cfg.format);
    write_rows(path, cfg.format, rows);
    write_sidecar(path, cfg, {{"coverings", id}, {"histogram", hist}, {"pattern_violations", violations},
                              {"sign_mismatches", sign_mismatch},
                              {"expected_pattern", expected == csl::ParityPattern::alternating ? "alternating" : "uniform"}});
    return violations == 0 ? kOk : kValidation;
}

namespace {

json entry_json(const csl::LatticeSpec &lat, const csl::KlEntry &e) {
    json j = {{"operator", e.label}, {"diag_mismatch", e.diag_mismatch()}, {"offdiag", e.offdiag()}};
    if (e.site_i >= 0 && e.site_j >= 0) {
        j["nearest_neighbour"] = csl::nearest_neighbours(lat, e.site_i, e.site_j);
        j["distance"] = csl::site_distance(lat, e.site_i, e.site_j);
    }
    return j;
}

} // namespace

int cmd_qec(const RunConfig &cfg) {
    const csl::LatticeSpec lat = require_lattice(cfg);
    auto space = csl::half_filled_space(lat, cfg.budget);
    const csl::StateVector phi0 = csl::build_state(csl::make_wavefunction(lat, 0), cfg.budget, space);
    const csl::StateVector phi1 = csl::build_state(csl::make_wavefunction(lat, 1), cfg.budget, space);
    const csl::CodePair code = csl::build_code(phi0, phi1);
    const csl::ViolationReport rep = csl::kl_check(code);
    const double disc = csl::singlet_reduction_check(code, rep);

    json report = {{"lattice", lat.label()},
                   {"raw_overlap", {{"re", code.raw_overlap.real()}, {"im", code.raw_overlap.imag()},
                                    {"abs", std::abs(code.raw_overlap)}}},
                   {"max_diag_mismatch", rep.max_diag_mismatch},
                   {"argmax_diag", entry_json(lat, rep.argmax_diag)},
                   {"max_offdiag", rep.max_offdiag},
                   {"argmax_offdiag", entry_json(lat, rep.argmax_offdiag)},
                   {"max_single_pauli", rep.max_single_pauli},
                   {"singlet_reduction_discrepancy", disc}};
    json dist = json::array();
    for (const auto &d : rep.zz_by_distance)
        dist.push_back({{"distance", d.distance}, {"max_zz_mismatch", d.max_mismatch}});
    report["zz_by_distance"] = dist;
    json top = json::array();
    for (std::size_t k = 0; k < rep.entries.size() && k < 50; ++k)
        top.push_back(entry_json(lat, rep.entries[k]));
    report["largest_entries"] = top;

    const std::string path = default_path(cfg, "qec-" + lat.label(), "json");
    {
        std::ofstream f(path);
        if (!f)
            csl::fail(csl::ErrorKind::io, "cannot write " + path);
        f << report.dump(2) << '\n';
    }
    const std::string pattern_path = fs::path(path).replace_extension(".pattern.csv").string();
    json rows = json::array();
    for (const auto &b : csl::pattern_map(phi0, phi1))
        rows.push_back({{"site_i", b.site_i}, {"site_j", b.site_j}, {"dir", b.dir == csl::Direction::x ? "x" : "y"}, {"value_phi0", b.phi0}, {"value_phi1", b.phi1}});
    write_rows(pattern_path, "csv", rows);

    const bool singles_ok = rep.max_single_pauli <= kKlTol;
    const bool reduction_ok = disc <= kKlTol;
    std::printf("%s |<Phi0|Phi1>| = %.6f\n", lat.label().c_str(), std::abs(code.raw_overlap));
    std::printf("max_diag_mismatch %.6f on %s\n", rep.max_diag_mismatch, rep.argmax_diag.label.c_str());
    std::printf("max_offdiag       %.6f on %s\n", rep.max_offdiag, rep.argmax_offdiag.label.c_str());
    print_check("single Pauli elements", rep.max_single_pauli, kKlTol, singles_ok);
    print_check("singlet reduction discrepancy", disc, kKlTol, reduction_ok);
    write_sidecar(path, cfg, {{"pattern_csv", pattern_path}});
    return singles_ok && reduction_ok ? kOk : kValidation;
}

int cmd_reproduce(const RunConfig &cfg) {
    const fs::path dir = cfg.out.empty() ? fs::path("reproduce-paper") : fs::path(cfg.out);
    fs::create_directories(dir);
    int worst = kOk;
    auto run = [&](int (*body)(const RunConfig &), RunConfig sub, const std::string &name) {
        sub.out = (dir / name).string();
        std::printf("== %s %s\n", sub.command.c_str(), sub.lattice.c_str());
        std::fflush(stdout);
        const int code = guarded(body, sub);
        if (code != kOk)
            worst = std::max(worst, code);
    };
    const std::string ext = cfg.format;
    for (const char *l : {"4x2", "6x2", "8x2", "4x3", "6x3", "8x3", "4x4", "6x4", "4x5", "4x6"}) {
        RunConfig c = cfg;
        c.command = "verify";
        c.lattice = l;
        c.sector = "both";
        run(cmd_verify, c, std::string("verify-") + l + "." + ext);
    }
    {
        RunConfig c = cfg;
        c.command = "table1";
        c.lattice.clear();
        run(cmd_table1, c, "table1." + ext);
    }
    for (int n2 : {3, 4}) {
        RunConfig c = cfg;
        c.command = "fig1";
        c.n2 = n2;
        c.sector = "both";
        run(cmd_fig1, c, "fig1-n2_" + std::to_string(n2) + "." + ext);
    }
    for (const char *l : {"6x3", "6x4"}) {
        RunConfig c = cfg;
        c.command = "vb";
        c.lattice = l;
        if (c.limit == 0)
            c.limit = 2'000'000;
        run(cmd_vb, c, std::string("vb-") + l + "." + ext);
    }
    for (const char *l : {"4x2", "4x3", "4x4", "6x2", "6x3", "8x2", "4x5", "8x3", "6x4", "4x6"}) {
        RunConfig c = cfg;
        c.command = "qec";
        c.lattice = l;
        run(cmd_qec, c, std::string("qec-") + l + ".json");
    }
    std::printf("reproduce-paper finished, exit code %d\n", worst);
    return worst;
}

int guarded(int (*body)(const RunConfig &), const RunConfig &cfg) {
    try {
        return body(cfg);
    } catch (const csl::Error &e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        switch (e.kind()) {
        case csl::ErrorKind::invalid_argument:
        case csl::ErrorKind::lattice_mismatch:
            return kBadArguments;
        case csl::ErrorKind::budget_exceeded:
        case csl::ErrorKind::ambiguous:
        case csl::ErrorKind::degenerate:
        case csl::ErrorKind::stuck_chain:
            return kInfeasible;
        case csl::ErrorKind::io:
            return kFailure;
        }
        return kFailure;
    } catch (const std::exception &e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kFailure;
    }
}

} // namespace cli

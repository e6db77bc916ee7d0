#include <cstdio>
#include <map>

#include "CLI11.hpp"
#include "commands.hpp"

int main(int argc, char **argv) {
    cli::RunConfig cfg;
    CLI::App app{"Chiral spin liquid lattice wave functions: exact checks, VMC, valence bonds, code properties", "csl"};
    app.set_version_flag("--version", CSL_VERSION);
    app.set_config("--config", "", "key = value file; command-line flags win");
    app.require_subcommand(1);

    app.add_option("--lattice", cfg.lattice, "lattice as N1xN2, e.g. 6x4");
    app.add_option("--sector", cfg.sector, "0, 1 or both")->check(CLI::IsMember({"0", "1", "both"}));
    app.add_option("--seed", cfg.seed, "base RNG seed");
    app.add_option("--chains", cfg.chains, "independent Markov chains")->check(CLI::Range(2, 1024));
    app.add_option("--sweeps", cfg.sweeps, "measurement sweeps per chain")->check(CLI::PositiveNumber);
    app.add_option("--warmup", cfg.warmup, "warmup sweeps per chain")->check(CLI::NonNegativeNumber);
    app.add_option("--block", cfg.block, "sweeps per block")->check(CLI::PositiveNumber);
    app.add_option("--budget", cfg.budget, "largest configuration space to enumerate");
    app.add_option("--max-dx", cfg.max_dx, "vb: longest bond x extent (e.g. 2b, 5.0)");
    app.add_option("--max-dy", cfg.max_dy, "vb: longest bond y extent");
    app.add_flag("--axis-aligned", cfg.axis_aligned, "vb: forbid diagonal bonds");
    app.add_option("--limit", cfg.limit, "vb: stop after this many coverings (0 = all)");
    app.add_option("--rows", cfg.rows, "vb: coverings written to the output file");
    app.add_option("--n2", cfg.n2, "fig1: number of rows")->check(CLI::Range(2, 64));
    app.add_option("--n1", cfg.n1_list, "fig1: N1 values")->delimiter(',');
    app.add_option("--out", cfg.out, "output file (directory for reproduce-paper)");
    app.add_option("--format", cfg.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));

    const std::map<std::string, std::pair<int (*)(const cli::RunConfig &), std::string>> commands = {
        {"verify", {cli::cmd_verify, "exact singlet, translation and boundary checks"}},
        {"table1", {cli::cmd_table1, "VMC nearest-neighbour correlators vs the reference table"}},
        {"fig1", {cli::cmd_fig1, "slow-twist expectation against 1/N1"}},
        {"vb", {cli::cmd_vb, "enumerate dimer coverings and their seam parities"}},
        {"qec", {cli::cmd_qec, "Knill-Laflamme analysis of the two-state code"}},
        {"reproduce-paper", {cli::cmd_reproduce, "run every command into one directory"}},
    };
    std::map<std::string, CLI::App *> subs;
    std::string positional;
    for (const auto &[name, entry] : commands) {
        CLI::App *sub = app.add_subcommand(name, entry.second);
        sub->fallthrough();
        if (name != "table1" && name != "fig1" && name != "reproduce-paper")
            sub->add_option("lattice", positional, "lattice as N1xN2");
        subs[name] = sub;
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp &e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        app.exit(e);
        return cli::kBadArguments;
    }

    if (!positional.empty())
        cfg.lattice = positional;
    for (const auto &[name, sub] : subs) {
        if (sub->parsed()) {
            cfg.command = name;
            return cli::guarded(commands.at(name).first, cfg);
        }
    }
    return cli::kBadArguments;
}

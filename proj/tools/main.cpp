#include "riembed/cli.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <string>

using riembed::cli::CommandResult;
using riembed::cli::RunConfig;

namespace {

void add_common(CLI::App* cmd, RunConfig& cfg, std::string& window_spec) {
    cmd->add_option("--grid-eps", cfg.grid_eps, "left endpoint of the log grid");
    cmd->add_option("--grid-density", cfg.grid_density, "grid cells per decade");
    cmd->add_option("--window", window_spec, "fit window lo:hi");
    cmd->add_option("--format", cfg.format, "output format: json|csv")
        ->check(CLI::IsMember({"json", "csv"}));
    cmd->add_option("--seed", cfg.seed, "seed for randomized self checks");
}

bool apply_window(const std::string& spec, RunConfig& cfg) {
    if (spec.empty()) return true;
    const size_t colon = spec.find(':');
    if (colon == std::string::npos) return false;
    try {
        cfg.window_lo = std::stod(spec.substr(0, colon));
        cfg.window_hi = std::stod(spec.substr(colon + 1));
    } catch (...) {
        return false;
    }
    return cfg.window_lo > 0.0 && cfg.window_lo < cfg.window_hi;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"numerical analyzer for embeddings into Morrey/Campanato-type spaces"};
    app.require_subcommand(1);

    RunConfig cfg;
    std::string window_spec;
    std::string command;

    auto* check = app.add_subcommand("check", "evaluate an embedding criterion");
    check->add_option("--space", cfg.space, "domain space, e.g. L:2, Lw:3, Zyg:2:1")->required();
    check->add_option("--weight", cfg.weight, "target weight, e.g. pow:-0.5")->required();
    check->add_option("--n", cfg.n, "dimension")->required();
    check->add_option("--m", cfg.m, "derivative order")->required();
    check->add_option("--k", cfg.k, "Campanato order (omit for Morrey)");
    check->add_flag("--vanishing", cfg.vanishing, "check the vanishing variant");
    add_common(check, cfg, window_spec);

    auto* target = app.add_subcommand("target", "compute the optimal target weight");
    target->add_option("kind", cfg.target_kind, "morrey|campanato")
        ->required()
        ->check(CLI::IsMember({"morrey", "campanato"}));
    target->add_option("--space", cfg.space)->required();
    target->add_option("--n", cfg.n)->required();
    target->add_option("--m", cfg.m)->required();
    target->add_option("--k", cfg.k);
    add_common(target, cfg, window_spec);

    auto* domain = app.add_subcommand("domain-norm", "optimal domain norm of a profile");
    domain->add_option("--weight", cfg.weight)->required();
    domain->add_option("--f", cfg.profile, "profile: const:c | ind:a | pow:e")->required();
    domain->add_option("--n", cfg.n)->required();
    domain->add_option("--m", cfg.m)->required();
    domain->add_option("--k", cfg.k);
    add_common(domain, cfg, window_spec);

    auto* table = app.add_subcommand("table", "reproduce the asymptotic exponent tables");
    table->add_option("--only", cfg.only, "row-key substring filter");
    table->add_option("--table", cfg.table_path, "table file (versioned JSON)");
    add_common(table, cfg, window_spec);

    auto* witness = app.add_subcommand("witness", "extremal lower-bound witnesses");
    witness->add_option("--space", cfg.space)->required();
    witness->add_option("--weight", cfg.weight)->required();
    witness->add_option("--n", cfg.n)->required();
    witness->add_option("--m", cfg.m)->required();
    add_common(witness, cfg, window_spec);

    auto* selftest = app.add_subcommand("selftest", "run the deterministic suite twice");
    add_common(selftest, cfg, window_spec);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 64;
    }

    if (!apply_window(window_spec, cfg)) {
        std::fprintf(stderr, "invalid --window, expected lo:hi with 0 < lo < hi\n");
        return 64;
    }

    if (check->parsed()) command = "check";
    if (target->parsed()) command = "target";
    if (domain->parsed()) command = "domain-norm";
    if (table->parsed()) command = "table";
    if (witness->parsed()) command = "witness";
    if (selftest->parsed()) command = "selftest";

    const CommandResult result = riembed::cli::run_command(command, cfg);
    std::fputs(result.output.c_str(), result.exit_code == 64 ? stderr : stdout);
    return result.exit_code;
}

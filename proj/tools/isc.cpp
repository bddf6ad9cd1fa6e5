#include <iostream>

#include <CLI11.hpp>

#include "isc/pipeline.hpp"

int main(int argc, char** argv) {
    CLI::App app{"isc - compiles maximum-independent-set instances onto a "
                 "nearest-neighbor Ising lattice and X-pulse schedules"};
    app.require_subcommand(1);

    isc::PipelineConfig cfg;
    std::string ham_path, sched_path;
    int budget = -1;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("input", cfg.input, "edge-list graph file")->required();
    };
    auto add_budget = [&](CLI::App* cmd) {
        cmd->add_option("--c", cfg.c, "ferromagnetic coupling strength (default 9)");
        cmd->add_option("--budget", budget, "square grid budget (default n x n)")
            ->check(CLI::PositiveNumber);
        cmd->add_option("--budget-rows", cfg.budget_rows, "grid row budget");
        cmd->add_option("--budget-cols", cfg.budget_cols, "grid column budget");
        cmd->add_option("--out", cfg.out_dir, "output directory (default ./out)");
    };

    auto* validate = app.add_subcommand("validate", "degree and planarity screening");
    add_common(validate);

    auto* oracle = app.add_subcommand("oracle", "exhaustive maximum-independent-set witness");
    add_common(oracle);
    oracle->add_option("--oracle-limit", cfg.oracle_limit, "exhaustive-search vertex limit");

    auto* compile = app.add_subcommand(
        "compile", "embed, build the lattice Hamiltonian, compile and verify the schedule");
    add_common(compile);
    add_budget(compile);
    compile->add_option("--oracle-limit", cfg.oracle_limit, "exhaustive-search vertex limit");

    auto* solve = app.add_subcommand("solve", "adiabatic simulation with seeded measurements");
    add_common(solve);
    add_budget(solve);
    solve->add_option("--T", cfg.T, "total runtime in nominal units (default 100)");
    solve->add_option("--dt", cfg.dt, "integrator step (default T/1000)");
    solve->add_option("--seed", cfg.seed, "measurement RNG seed (default 1)");
    solve->add_option("--shots", cfg.shots, "measurement count (default 200)");
    solve->add_option("--oracle-limit", cfg.oracle_limit, "exhaustive-search vertex limit");
    solve->add_flag("--dump-amplitudes", cfg.dump_amplitudes,
                    "write final amplitudes as little-endian complex doubles");

    auto* verify = app.add_subcommand("verify-schedule",
                                      "re-verify a schedule file against a Hamiltonian file");
    verify->add_option("hamiltonian", ham_path, "lattice Hamiltonian JSON")->required();
    verify->add_option("schedule", sched_path, "pulse schedule JSON")->required();

    CLI11_PARSE(app, argc, argv);

    if (budget > 0) {
        if (cfg.budget_rows < 0) cfg.budget_rows = budget;
        if (cfg.budget_cols < 0) cfg.budget_cols = budget;
    }

    isc::CommandOutcome outcome;
    try {
        if (validate->parsed()) outcome = isc::run_validate(cfg, std::cout);
        else if (oracle->parsed()) outcome = isc::run_oracle(cfg, std::cout);
        else if (compile->parsed()) outcome = isc::run_compile(cfg, std::cout);
        else if (solve->parsed()) outcome = isc::run_solve(cfg, std::cout);
        else if (verify->parsed())
            outcome = isc::run_verify_schedule(ham_path, sched_path, std::cout);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return isc::kExitIo;
    }
    if (outcome.exit_code != isc::kExitOk) std::cerr << outcome.message << "\n";
    return outcome.exit_code;
}

// lzqed: command-line front end: single runs and parameter sweeps

#include <CLI11.hpp>

#include <iostream>

#include "lzqed/app.hpp"

int main(int argc, char** argv) {
    using namespace lzqed::app;

    CLI::App cli{"Dissipative Landau-Zener sweeps of a qubit coupled to a damped oscillator"};
    cli.set_version_flag("--version", code_version());
    cli.require_subcommand(1);

    RunOptions run;
    auto* run_cmd = cli.add_subcommand("run", "integrate one configuration, write timeseries.csv and summary.json");
    run_cmd->add_option("--config", run.config_path, "key = value parameter file")->required();
    run_cmd->add_option("--out", run.out_dir, "output directory")->capture_default_str();
    run_cmd->add_option("--samples", run.samples, "uniform output samples")->check(CLI::Range(2, 10'000'000))->capture_default_str();

    SweepOptions sweep;
    std::string axis = "T";
    auto* sweep_cmd = cli.add_subcommand("sweep", "scan one parameter, write sweep.csv and sweep_manifest.json");
    sweep_cmd->add_option("--config", sweep.config_path, "key = value parameter file")->required();
    sweep_cmd->add_option("--out", sweep.out_dir, "output directory")->capture_default_str();
    sweep_cmd->add_option("--axis", axis, "T, gamma, v or g")->check(CLI::IsMember({"T", "gamma", "v", "g"}))->required();
    sweep_cmd->add_option("--from", sweep.from, "first grid value")->required();
    sweep_cmd->add_option("--to", sweep.to, "last grid value")->required();
    sweep_cmd->add_option("--points", sweep.points, "grid points (>= 2)")->required();
    sweep_cmd->add_flag("--oracle", sweep.oracle, "add the Fock-basis Redfield result where n_trunc <= 12");
    sweep_cmd->add_option("--threads", sweep.threads, "worker threads")->capture_default_str();
    sweep_cmd->add_option("--samples", sweep.samples, "uniform samples per run")->check(CLI::Range(2, 10'000'000))->capture_default_str();

    try {
        cli.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = cli.exit(e);
        return rc == 0 ? Ok : ConfigFailure;
    }

    if (*run_cmd) return cmd_run(run, std::cerr);
    sweep.axis = sweep_axis_from_string(axis);
    return cmd_sweep(sweep, std::cerr);
}

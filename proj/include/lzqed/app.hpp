// app.hpp: batch commands behind the lzqed executable
//
// Output files
//   timeseries.csv  t,p_up,p_down,p_up_n0,p_up_n1,trace_residual,herm_residual
//   summary.json    final spin-flip probability, analytic references, diagnostics, manifest
//   sweep.csv       <axis>,p_numeric,pud_finite_T,pud_zero_T_dissipative,lz_generalized,
//                   [p_oracle,]trace_residual,herm_residual,status
//   sweep_manifest.json  config snapshot and per-row diagnostics
// CSV files start with '#'-prefixed metadata lines followed by one header row.

#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "lzqed/params.hpp"

namespace lzqed::app {

enum ExitCode : int { Ok = 0, ConfigFailure = 1, SolverFailure = 2, PartialFailure = 3 };

const char* code_version();

enum class SweepAxis { Temperature, Gamma, Velocity, Coupling };

/// Accepts T, gamma, v, g.
SweepAxis sweep_axis_from_string(const std::string& name);
const char* column_name(SweepAxis axis);

struct RunOptions {
    std::string config_path;
    std::string out_dir{"."};
    int samples{2001};
};

struct SweepOptions {
    std::string config_path;
    std::string out_dir{"."};
    SweepAxis axis{SweepAxis::Temperature};
    double from{0.0};
    double to{1.0};
    int points{2};
    bool oracle{false};
    int threads{1};
    int samples{2001};
};

/// Oracle columns are only computed up to this oscillator truncation.
inline constexpr int oracle_max_n_trunc = 12;

struct SweepRow {
    double axis_value{0.0};
    SystemParams params;
    double p_numeric{0.0};
    double pud_finite_T{0.0};
    double pud_zero_T_dissipative{0.0};
    double lz_generalized{0.0};
    std::optional<double> p_oracle;
    double trace_residual{0.0};
    double herm_residual{0.0};
    double max_spill{0.0};
    double wall_seconds{0.0};
    long rhs_calls{0};
    bool ok{false};
    std::string status;
};

/// Linear grid; throws std::invalid_argument for fewer than two points.
std::vector<double> linear_grid(double from, double to, int points);

/// Parameters of one grid point, with window and truncation defaults refreshed.
SystemParams sweep_point(const ParsedConfig& config, SweepAxis axis, double value);

/// Runs every grid point on `threads` workers; rows come back in grid order.
std::vector<SweepRow> run_sweep(const ParsedConfig& config, const SweepOptions& options);

int cmd_run(const RunOptions& options, std::ostream& err);
int cmd_sweep(const SweepOptions& options, std::ostream& err);

}  // namespace lzqed::app

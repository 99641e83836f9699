#include "lzqed/app.hpp"

#include <atomic>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "lzqed/analytic.hpp"
#include "lzqed/fock_oracle.hpp"
#include "lzqed/phase_space.hpp"

#ifndef LZQED_VERSION
#define LZQED_VERSION "0.0.0"
#endif

namespace lzqed::app {

using json = nlohmann::json;
namespace fs = std::filesystem;

const char* code_version() { return LZQED_VERSION; }

SweepAxis sweep_axis_from_string(const std::string& name) {
    if (name == "T" || name == "temperature") return SweepAxis::Temperature;
    if (name == "gamma") return SweepAxis::Gamma;
    if (name == "v") return SweepAxis::Velocity;
    if (name == "g") return SweepAxis::Coupling;
    throw std::invalid_argument("unknown sweep axis '" + name + "' (expected T, gamma, v or g)");
}

const char* column_name(SweepAxis axis) {
    switch (axis) {
        case SweepAxis::Temperature: return "T";
        case SweepAxis::Gamma: return "gamma";
        case SweepAxis::Velocity: return "v";
        case SweepAxis::Coupling: return "g";
    }
    return "?";
}

std::vector<double> linear_grid(double from, double to, int points) {
    if (points < 2) throw std::invalid_argument("sweep grid needs at least two points");
    std::vector<double> grid(points);
    for (int i = 0; i < points; ++i) grid[i] = from + (to - from) * double(i) / double(points - 1);
    grid.back() = to;
    return grid;
}

SystemParams sweep_point(const ParsedConfig& config, SweepAxis axis, double value) {
    SystemParams p = config.params;
    switch (axis) {
        case SweepAxis::Temperature: p.temperature = value; break;
        case SweepAxis::Gamma: p.gamma = value; break;
        case SweepAxis::Velocity: p.v = value; break;
        case SweepAxis::Coupling: p.g = value; break;
    }
    return apply_defaults(p, config.explicit_keys);
}

namespace {

std::string fmt(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.15g", x);
    return buf;
}

json params_json(const SystemParams& p) {
    return {{"g", p.g},
            {"omega", p.omega},
            {"v", p.v},
            {"gamma", p.gamma},
            {"temperature", p.temperature},
            {"drude_cutoff", p.drude_cutoff},
            {"n_trunc", p.n_trunc},
            {"t_start", p.t_start},
            {"t_end", p.t_end},
            {"matsubara_terms", p.matsubara_terms},
            {"dxp_policy", to_string(p.dxp_policy)}};
}

json warnings_json(const ValidatedParams& vp) {
    json out = json::array();
    for (auto w : vp.warnings()) out.push_back(to_string(w));
    return out;
}

void write_metadata(std::ostream& os, const SystemParams& p, const std::string& kind) {
    os << "# lzqed " << kind << '\n';
    os << "# code_version = " << code_version() << '\n';
    std::istringstream cfg(to_config_string(p));
    std::string line;
    while (std::getline(cfg, line)) os << "# " << line << '\n';
}

std::ofstream open_output(const fs::path& path) {
    std::ofstream os(path);
    if (!os) throw std::runtime_error("cannot write '" + path.string() + "'");
    return os;
}

void report_validation(const ValidationError& e, std::ostream& err) {
    for (const auto& fe : e.errors()) err << "error: " << fe.field << ": " << fe.message << '\n';
}

double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

SweepRow evaluate_point(const SystemParams& p, double axis_value, bool oracle, int samples) {
    SweepRow row;
    row.axis_value = axis_value;
    row.params = p;
    const auto start = std::chrono::steady_clock::now();
    try {
        const ValidatedParams vp = validate(p);
        row.lz_generalized = analytic::lz_generalized(p.g, p.v);
        row.pud_finite_T = analytic::pud_finite_T(p.g, p.v, p.temperature);
        row.pud_zero_T_dissipative = analytic::pud_zero_T_dissipative(p.g, p.v, p.gamma);
        IntegrateOptions opt;
        opt.samples = samples;
        opt.fock_levels = 0;
        const SweepResult res = integrate(vp, opt);
        row.p_numeric = res.p_flip_final;
        row.trace_residual = res.trace_residual;
        row.herm_residual = res.hermiticity_residual;
        row.max_spill = res.max_spill;
        row.rhs_calls = res.stats.rhs_calls;
        if (oracle && p.n_trunc <= oracle_max_n_trunc) {
            const RedfieldResult o = redfield_propagate(vp, 2);
            row.p_oracle = 1.0 - o.p_up.back();
        }
        row.ok = true;
        row.status = "ok";
    } catch (const std::exception& e) {
        row.ok = false;
        std::string msg = e.what();
        for (char& ch : msg)
            if (ch == ',' || ch == '\n') ch = ';';
        row.status = "failed: " + msg;
    }
    row.wall_seconds = seconds_since(start);
    return row;
}

}  // namespace

std::vector<SweepRow> run_sweep(const ParsedConfig& config, const SweepOptions& options) {
    const std::vector<double> grid = linear_grid(options.from, options.to, options.points);
    std::vector<SweepRow> rows(grid.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < grid.size(); i = next++)
            rows[i] = evaluate_point(sweep_point(config, options.axis, grid[i]), grid[i], options.oracle,
                                     options.samples);
    };
    const int threads = std::max(1, std::min<int>(options.threads, int(grid.size())));
    std::vector<std::thread> pool;
    for (int k = 1; k < threads; ++k) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();
    return rows;
}

int cmd_run(const RunOptions& options, std::ostream& err) {
    SystemParams p;
    std::optional<ValidatedParams> vp;
    try {
        p = load_config(options.config_path);
        vp = validate(p);
    } catch (const ConfigError& e) {
        err << "error: " << e.what() << '\n';
        return ConfigFailure;
    } catch (const ValidationError& e) {
        report_validation(e, err);
        return ConfigFailure;
    }
    for (auto w : vp->warnings()) err << "warning: " << to_string(w) << '\n';

    const auto start = std::chrono::steady_clock::now();
    SweepResult res;
    try {
        IntegrateOptions opt;
        opt.samples = options.samples;
        res = integrate(*vp, opt);
    } catch (const std::exception& e) {
        err << "error: solver failure: " << e.what() << '\n';
        return SolverFailure;
    }
    const double wall = seconds_since(start);

    try {
        fs::create_directories(options.out_dir);
        const fs::path dir(options.out_dir);
        {
            std::ofstream os = open_output(dir / "timeseries.csv");
            write_metadata(os, p, "timeseries");
            os << "# p_flip_final = " << fmt(res.p_flip_final) << '\n';
            os << "t,p_up,p_down,p_up_n0,p_up_n1,trace_residual,herm_residual\n";
            const bool has_n1 = res.fock_levels >= 2;
            for (std::size_t i = 0; i < res.times.size(); ++i) {
                os << fmt(res.times[i]) << ',' << fmt(res.p_up[i]) << ',' << fmt(res.p_down[i]) << ','
                   << fmt(res.p_up_n(0)[i]) << ',' << (has_n1 ? fmt(res.p_up_n(1)[i]) : std::string("nan")) << ','
                   << fmt(res.trace_residuals[i]) << ',' << fmt(res.herm_residuals[i]) << '\n';
            }
        }
        const DiffusionCoefficients diff = diffusion_coefficients(p);
        json summary = {
            {"p_flip_final", res.p_flip_final},
            {"analytic",
             {{"lz_generalized", analytic::lz_generalized(p.g, p.v)},
              {"pud_finite_T", analytic::pud_finite_T(p.g, p.v, p.temperature)},
              {"pud_zero_T_dissipative", analytic::pud_zero_T_dissipative(p.g, p.v, p.gamma)}}},
            {"diagnostics",
             {{"trace_residual", res.trace_residual},
              {"hermiticity_residual", res.hermiticity_residual},
              {"max_spill", res.max_spill},
              {"min_qubit_eigenvalue", res.min_qubit_eigenvalue},
              {"accepted_steps", res.stats.accepted},
              {"rejected_steps", res.stats.rejected},
              {"rhs_calls", res.stats.rhs_calls},
              {"dpp", diff.dpp},
              {"dxp", diff.dxp},
              {"dxp_converged", diff.dxp_converged}}},
            {"warnings", warnings_json(*vp)},
            {"manifest", {{"config", params_json(p)}, {"code_version", code_version()}, {"wall_time_s", wall}}}};
        std::ofstream os = open_output(dir / "summary.json");
        os << summary.dump(2) << '\n';
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return SolverFailure;
    }
    return Ok;
}

int cmd_sweep(const SweepOptions& options, std::ostream& err) {
    ParsedConfig config;
    try {
        config = load_config_detailed(options.config_path);
        if (options.points < 2) throw ConfigError("sweep grid needs at least two points");
        if (options.threads < 1) throw ConfigError("--threads must be >= 1");
        // Reject the grid up front if its end points are invalid.
        validate(sweep_point(config, options.axis, options.from));
        validate(sweep_point(config, options.axis, options.to));
    } catch (const ConfigError& e) {
        err << "error: " << e.what() << '\n';
        return ConfigFailure;
    } catch (const ValidationError& e) {
        report_validation(e, err);
        return ConfigFailure;
    }

    const auto start = std::chrono::steady_clock::now();
    const std::vector<SweepRow> rows = run_sweep(config, options);
    const double wall = seconds_since(start);

    bool any_failed = false;
    try {
        fs::create_directories(options.out_dir);
        const fs::path dir(options.out_dir);
        std::ofstream os = open_output(dir / "sweep.csv");
        write_metadata(os, config.params, "sweep");
        os << "# axis = " << column_name(options.axis) << '\n';
        os << "# manifest = sweep_manifest.json\n";
        os << column_name(options.axis) << ",p_numeric,pud_finite_T,pud_zero_T_dissipative,lz_generalized,";
        if (options.oracle) os << "p_oracle,";
        os << "trace_residual,herm_residual,status\n";
        json runs = json::array();
        for (std::size_t i = 0; i < rows.size(); ++i) {
            const SweepRow& r = rows[i];
            any_failed = any_failed || !r.ok;
            os << fmt(r.axis_value) << ',' << (r.ok ? fmt(r.p_numeric) : "nan") << ',' << fmt(r.pud_finite_T) << ','
               << fmt(r.pud_zero_T_dissipative) << ',' << fmt(r.lz_generalized) << ',';
            if (options.oracle) os << (r.p_oracle ? fmt(*r.p_oracle) : std::string("nan")) << ',';
            os << fmt(r.trace_residual) << ',' << fmt(r.herm_residual) << ',' << r.status << '\n';
            runs.push_back({{"row", i},
                            {"config", params_json(r.params)},
                            {"status", r.status},
                            {"trace_residual", r.trace_residual},
                            {"hermiticity_residual", r.herm_residual},
                            {"max_spill", r.max_spill},
                            {"rhs_calls", r.rhs_calls},
                            {"wall_time_s", r.wall_seconds}});
        }
        json manifest = {{"code_version", code_version()},
                         {"config", params_json(config.params)},
                         {"axis", column_name(options.axis)},
                         {"from", options.from},
                         {"to", options.to},
                         {"points", options.points},
                         {"threads", options.threads},
                         {"wall_time_s", wall},
                         {"runs", runs}};
        std::ofstream ms = open_output(dir / "sweep_manifest.json");
        ms << manifest.dump(2) << '\n';
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return SolverFailure;
    }
    for (const auto& r : rows)
        if (!r.ok) err << "error: " << column_name(options.axis) << " = " << fmt(r.axis_value) << ": " << r.status << '\n';
    return any_failed ? PartialFailure : Ok;
}

}  // namespace lzqed::app

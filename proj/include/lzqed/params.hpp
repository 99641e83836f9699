// params.hpp: dimensionless model parameters, validation and the key = value config format

#pragma once

#include <iosfwd>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace lzqed {

// Natural units throughout: hbar = 1, Omega = 1. Frequencies and rates are in units of
// Omega, times in 1/Omega, temperature as kB*T/(hbar*Omega), sweep velocity in Omega^2.

enum class DxpPolicy { Zero, MatsubaraSum };

const char* to_string(DxpPolicy policy);
DxpPolicy dxp_policy_from_string(const std::string& text);

struct SystemParams {
    double g{0.04};             // qubit-oscillator coupling
    double omega{1.0};          // oscillator frequency, fixed to 1
    double v{0.01};             // sweep velocity, E_J(t) = v t
    double gamma{0.0};          // oscillator-bath damping rate
    double temperature{0.0};    // kB T
    double drude_cutoff{50.0};  // omega_D, only used by DxpPolicy::MatsubaraSum
    int n_trunc{16};            // oscillator basis size N
    double t_start{-2000.0};
    double t_end{2000.0};
    int matsubara_terms{10000};
    DxpPolicy dxp_policy{DxpPolicy::Zero};

    bool operator==(const SystemParams&) const = default;
};

/// Symmetric sweep window [-T, T] with T = max(20/v, 10 tau_LZ) and
/// tau_LZ = max(1, sqrt(Delta_0^2 / v)) / sqrt(v), Delta_0 = 2g.
double default_half_window(double g, double v);

/// 16 states up to kB T = 2, then enough to hold the thermal tail.
int default_n_trunc(double temperature);

/// Parameter set with the default window and truncation filled in.
SystemParams make_params(double g, double v, double gamma, double temperature);

struct FieldError {
    std::string field;
    std::string message;
};

class ValidationError : public std::invalid_argument {
public:
    explicit ValidationError(std::vector<FieldError> errors);
    const std::vector<FieldError>& errors() const noexcept { return errors_; }

private:
    std::vector<FieldError> errors_;
};

enum class ParamWarning {
    IndependentCrossingUntrusted,  // kB T >= Omega^2 / g
    ThermalTailTruncation,         // n_trunc < 4 + 6 kB T
};

const char* to_string(ParamWarning warning);

class ValidatedParams {
public:
    const SystemParams& params() const noexcept { return params_; }
    const std::vector<ParamWarning>& warnings() const noexcept { return warnings_; }
    bool has_warning(ParamWarning w) const noexcept;

    bool operator==(const ValidatedParams&) const = default;

private:
    friend ValidatedParams validate(const SystemParams& params);
    ValidatedParams(SystemParams p, std::vector<ParamWarning> w)
        : params_(p), warnings_(std::move(w)) {}

    SystemParams params_;
    std::vector<ParamWarning> warnings_;
};

/// Checks every invariant and reports all violations at once through ValidationError.
ValidatedParams validate(const SystemParams& params);
ValidatedParams validate(const ValidatedParams& params);

// ---------------------------------------------------------------------------
// Config files: one `key = value` per line, `#` starts a comment, keys are the
// SystemParams field names. Unknown or repeated keys are errors. Missing
// t_start/t_end/n_trunc fall back to the defaults above.

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct ParsedConfig {
    SystemParams params;
    std::set<std::string> explicit_keys;  // keys present in the file
};

ParsedConfig parse_config_detailed(std::istream& in);
SystemParams parse_config(std::istream& in);
ParsedConfig load_config_detailed(const std::string& path);

/// Recomputes the window and truncation defaults for every key not listed in explicit_keys.
SystemParams apply_defaults(SystemParams params, const std::set<std::string>& explicit_keys);
SystemParams load_config(const std::string& path);
std::string to_config_string(const SystemParams& params);

}  // namespace lzqed

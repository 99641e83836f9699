#include "lzqed/params.hpp"

#include "lzqed/bath.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <map>
#include <set>
#include <sstream>

namespace lzqed {

const char* to_string(DxpPolicy policy) {
    switch (policy) {
        case DxpPolicy::Zero: return "Zero";
        case DxpPolicy::MatsubaraSum: return "MatsubaraSum";
    }
    return "?";
}

DxpPolicy dxp_policy_from_string(const std::string& text) {
    if (text == "Zero") return DxpPolicy::Zero;
    if (text == "MatsubaraSum") return DxpPolicy::MatsubaraSum;
    throw std::invalid_argument("unknown dxp_policy '" + text + "' (expected Zero or MatsubaraSum)");
}

const char* to_string(ParamWarning warning) {
    switch (warning) {
        case ParamWarning::IndependentCrossingUntrusted:
            return "temperature >= omega^2/g: independent-crossing formula untrustworthy";
        case ParamWarning::ThermalTailTruncation:
            return "n_trunc < 4 + 6*temperature: thermal tail may be truncated";
    }
    return "?";
}

double default_half_window(double g, double v) {
    const double delta0 = 2.0 * g;
    const double tau_lz = std::max(1.0, std::sqrt(delta0 * delta0 / v)) / std::sqrt(v);
    return std::max(20.0 / v, 10.0 * tau_lz);
}

int default_n_trunc(double temperature) {
    if (temperature <= 2.0) return 16;
    return static_cast<int>(std::ceil(4.0 + 6.0 * temperature));
}

SystemParams make_params(double g, double v, double gamma, double temperature) {
    SystemParams p;
    p.g = g;
    p.v = v;
    p.gamma = gamma;
    p.temperature = temperature;
    p.n_trunc = default_n_trunc(temperature);
    const double half = default_half_window(g, v);
    p.t_start = -half;
    p.t_end = half;
    return p;
}

namespace {

std::string join_errors(const std::vector<FieldError>& errors) {
    std::string out = "invalid parameters:";
    for (const auto& e : errors) out += " [" + e.field + "] " + e.message + ";";
    return out;
}

}  // namespace

ValidationError::ValidationError(std::vector<FieldError> errors)
    : std::invalid_argument(join_errors(errors)), errors_(std::move(errors)) {}

bool ValidatedParams::has_warning(ParamWarning w) const noexcept {
    return std::find(warnings_.begin(), warnings_.end(), w) != warnings_.end();
}

ValidatedParams validate(const SystemParams& p) {
    std::vector<FieldError> errors;
    auto require = [&](bool ok, const char* field, const std::string& message) {
        if (!ok) errors.push_back({field, message});
    };
    auto finite = [](double x) { return std::isfinite(x); };

    require(finite(p.g) && p.g >= 0.0, "g", "coupling must be finite and >= 0");
    require(p.omega == 1.0, "omega", "natural units require omega = 1");
    require(finite(p.v) && p.v > 0.0, "v", "sweep velocity must be > 0");
    require(finite(p.gamma) && p.gamma >= 0.0, "gamma", "damping must be >= 0");
    require(!(p.gamma >= 2.0 * p.omega), "gamma", "overdamped regime excluded (gamma must be < 2 omega)");
    require(finite(p.temperature) && p.temperature >= 0.0, "temperature", "temperature must be >= 0");
    require(p.n_trunc >= 2, "n_trunc", "oscillator truncation must be >= 2");
    require(finite(p.t_start) && p.t_start < 0.0, "t_start", "sweep must start at t < 0");
    require(finite(p.t_end) && p.t_end > 0.0, "t_end", "sweep must end at t > 0");
    if (finite(p.v) && p.v > 0.0) {
        require(std::abs(p.v * p.t_start) >= 10.0 * p.omega, "t_start",
                "|v t_start| must be >= 10 omega to cover the avoided crossings");
        require(std::abs(p.v * p.t_end) >= 10.0 * p.omega, "t_end",
                "|v t_end| must be >= 10 omega to cover the avoided crossings");
    }
    if (p.dxp_policy == DxpPolicy::MatsubaraSum) {
        require(finite(p.drude_cutoff) && p.drude_cutoff >= 10.0 * p.omega, "drude_cutoff",
                "Matsubara evaluation needs drude_cutoff >= 10 omega");
        require(p.matsubara_terms >= 1, "matsubara_terms", "need at least one Matsubara term");
        if (errors.empty()) {
            const double d = dpp(p.temperature) +
                             p.gamma * dxp(p.temperature, p.drude_cutoff, p.matsubara_terms, p.dxp_policy).value;
            require(d > 0.0, "dxp_policy", "dpp + gamma * dxp must be > 0 (stationary <X^2> would be negative)");
        }
    }
    if (!errors.empty()) throw ValidationError(std::move(errors));

    std::vector<ParamWarning> warnings;
    if (p.g > 0.0 && p.temperature >= p.omega * p.omega / p.g)
        warnings.push_back(ParamWarning::IndependentCrossingUntrusted);
    if (p.n_trunc < 4.0 + 6.0 * p.temperature) warnings.push_back(ParamWarning::ThermalTailTruncation);
    return ValidatedParams(p, std::move(warnings));
}

ValidatedParams validate(const ValidatedParams& params) { return validate(params.params()); }

// ---------------------------------------------------------------------------

namespace {

std::string trim(const std::string& s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

double parse_double(const std::string& key, const std::string& text, int line) {
    double value = 0.0;
    const auto* begin = text.data();
    const auto* end = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc() || ptr != end)
        throw ConfigError("line " + std::to_string(line) + ": '" + key + "' expects a number, got '" + text + "'");
    return value;
}

int parse_int(const std::string& key, const std::string& text, int line) {
    int value = 0;
    const auto* begin = text.data();
    const auto* end = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc() || ptr != end)
        throw ConfigError("line " + std::to_string(line) + ": '" + key + "' expects an integer, got '" + text + "'");
    return value;
}

}  // namespace

SystemParams apply_defaults(SystemParams p, const std::set<std::string>& seen) {
    if (p.v > 0.0 && std::isfinite(p.v)) {
        const double half = default_half_window(p.g, p.v);
        if (!seen.count("t_start")) p.t_start = -half;
        if (!seen.count("t_end")) p.t_end = half;
    }
    if (!seen.count("n_trunc")) p.n_trunc = default_n_trunc(p.temperature);
    return p;
}

ParsedConfig parse_config_detailed(std::istream& in) {
    SystemParams p;
    std::set<std::string> seen;
    std::string raw;
    int line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        const auto hash = raw.find('#');
        const std::string line = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("line " + std::to_string(line_no) + ": expected 'key = value'");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (!seen.insert(key).second)
            throw ConfigError("line " + std::to_string(line_no) + ": duplicate key '" + key + "'");

        if (key == "g") p.g = parse_double(key, value, line_no);
        else if (key == "omega") p.omega = parse_double(key, value, line_no);
        else if (key == "v") p.v = parse_double(key, value, line_no);
        else if (key == "gamma") p.gamma = parse_double(key, value, line_no);
        else if (key == "temperature") p.temperature = parse_double(key, value, line_no);
        else if (key == "drude_cutoff") p.drude_cutoff = parse_double(key, value, line_no);
        else if (key == "n_trunc") p.n_trunc = parse_int(key, value, line_no);
        else if (key == "t_start") p.t_start = parse_double(key, value, line_no);
        else if (key == "t_end") p.t_end = parse_double(key, value, line_no);
        else if (key == "matsubara_terms") p.matsubara_terms = parse_int(key, value, line_no);
        else if (key == "dxp_policy") {
            try {
                p.dxp_policy = dxp_policy_from_string(value);
            } catch (const std::invalid_argument& e) {
                throw ConfigError("line " + std::to_string(line_no) + ": " + e.what());
            }
        } else {
            throw ConfigError("line " + std::to_string(line_no) + ": unknown key '" + key + "'");
        }
    }

    return {apply_defaults(p, seen), seen};
}

SystemParams parse_config(std::istream& in) { return parse_config_detailed(in).params; }

ParsedConfig load_config_detailed(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    return parse_config_detailed(in);
}

SystemParams load_config(const std::string& path) { return load_config_detailed(path).params; }

std::string to_config_string(const SystemParams& p) {
    std::ostringstream out;
    out << std::setprecision(17);
    out << "g = " << p.g << '\n'
        << "omega = " << p.omega << '\n'
        << "v = " << p.v << '\n'
        << "gamma = " << p.gamma << '\n'
        << "temperature = " << p.temperature << '\n'
        << "drude_cutoff = " << p.drude_cutoff << '\n'
        << "n_trunc = " << p.n_trunc << '\n'
        << "t_start = " << p.t_start << '\n'
        << "t_end = " << p.t_end << '\n'
        << "matsubara_terms = " << p.matsubara_terms << '\n'
        << "dxp_policy = " << to_string(p.dxp_policy) << '\n';
    return out.str();
}

}  // namespace lzqed

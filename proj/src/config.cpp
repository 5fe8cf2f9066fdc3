#include "univalence/config.hpp"

#include <algorithm>
#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <limits>

namespace univalence {

std::string_view to_string(Emit e) {
    switch (e) {
        case Emit::Report: return "report";
        case Emit::Heatmap1: return "heatmap1";
        case Emit::Heatmap2: return "heatmap2";
        case Emit::Domain: return "domain";
        case Emit::Beltrami: return "beltrami";
        case Emit::Diagnostics: return "diagnostics";
    }
    return "report";
}

bool RunConfig::emits(Emit e) const { return std::find(emit.begin(), emit.end(), e) != emit.end(); }

const std::vector<std::string>& config_keys() {
    static const std::vector<std::string> keys{
        "criterion", "f", "f-coeffs", "g", "g-coeffs", "alpha", "beta", "A", "B", "k", "nr", "ntheta",
        "rmax", "tol", "refine", "out-dir", "emit", "threads", "fault-rhs-scale"};
    return keys;
}

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        const auto pos = s.find(sep, start);
        out.push_back(trim(s.substr(start, pos == std::string::npos ? std::string::npos : pos - start)));
        if (pos == std::string::npos) break;
        start = pos + 1;
    }
    return out;
}

double parse_double(const std::string& text) {
    const std::string t = trim(text);
    if (t.empty()) throw Error(ErrorKind::Config, "empty number");
    errno = 0;
    char* end = nullptr;
    const double v = std::strtod(t.c_str(), &end);
    if (end != t.c_str() + t.size() || errno == ERANGE || !std::isfinite(v))
        throw Error(ErrorKind::Config, "not a finite number: '" + t + "'");
    return v;
}

long parse_integer(const std::string& text, long lo, long hi) {
    const std::string t = trim(text);
    errno = 0;
    char* end = nullptr;
    const long v = std::strtol(t.c_str(), &end, 10);
    if (t.empty() || end != t.c_str() + t.size() || errno == ERANGE)
        throw Error(ErrorKind::Config, "not an integer: '" + t + "'");
    if (v < lo || v > hi)
        throw Error(ErrorKind::Config, "integer " + t + " outside [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
    return v;
}

Emit parse_emit(const std::string& s) {
    for (Emit e : {Emit::Report, Emit::Heatmap1, Emit::Heatmap2, Emit::Domain, Emit::Beltrami, Emit::Diagnostics})
        if (s == to_string(e)) return e;
    throw Error(ErrorKind::Config, "unknown emit target '" + s + "'");
}

void set_echo(RunConfig& config, const std::string& key, const std::string& value) {
    for (auto& [k, v] : config.echo) {
        if (k == key) {
            v = value;
            return;
        }
    }
    config.echo.emplace_back(key, value);
}

}  // namespace

Complex parse_complex(const std::string& text) {
    const auto parts = split(text, ',');
    if (parts.size() == 1) return {parse_double(parts[0]), 0.0};
    if (parts.size() == 2) return {parse_double(parts[0]), parse_double(parts[1])};
    throw Error(ErrorKind::Config, "complex value must be 're' or 're,im': '" + text + "'");
}

std::vector<Complex> parse_complex_list(const std::string& text) {
    std::vector<Complex> out;
    for (const auto& item : split(text, ';')) out.push_back(parse_complex(item));
    return out;
}

FunctionSpec parse_function_spec(const std::string& text) {
    FunctionSpec spec;
    const auto colon = text.find(':');
    spec.name = trim(text.substr(0, colon));
    if (spec.name.empty()) throw Error(ErrorKind::Config, "empty function name");
    if (colon != std::string::npos) spec.params = parse_complex_list(text.substr(colon + 1));
    return spec;
}

void apply_setting(RunConfig& config, const std::string& raw_key, const std::string& raw_value,
                   const std::string& origin) {
    std::string key = trim(raw_key);
    std::replace(key.begin(), key.end(), '_', '-');
    const std::string value = trim(raw_value);
    try {
        if (key == "criterion") {
            preset_criterion(value);  // throws UnknownName
            config.criterion = value;
        } else if (key == "f") {
            const FunctionSpec spec = parse_function_spec(value);
            config.f.name = spec.name;
            config.f.params = spec.params;
        } else if (key == "f-coeffs") {
            if (value.empty()) config.f.coefficients.reset();
            else config.f.coefficients = parse_complex_list(value);
        } else if (key == "g") {
            if (value.empty()) {
                if (config.g && !config.g->coefficients) config.g.reset();
            } else {
                const FunctionSpec spec = parse_function_spec(value);
                if (!config.g) config.g = FunctionSpec{};
                config.g->name = spec.name;
                config.g->params = spec.params;
            }
        } else if (key == "g-coeffs") {
            if (value.empty()) {
                if (config.g) config.g->coefficients.reset();
                if (config.g && config.g->name.empty()) config.g.reset();
            } else {
                if (!config.g) config.g = FunctionSpec{};
                config.g->coefficients = parse_complex_list(value);
            }
        } else if (key == "alpha") {
            config.params.alpha = parse_complex(value);
        } else if (key == "beta") {
            config.params.beta = parse_complex(value);
        } else if (key == "A") {
            config.params.A = parse_complex(value);
        } else if (key == "B") {
            config.params.B = parse_complex(value);
        } else if (key == "k") {
            config.params.k = parse_double(value);
        } else if (key == "nr") {
            config.grid.n_r = static_cast<int>(parse_integer(value, 2, 1 << 16));
        } else if (key == "ntheta") {
            config.grid.n_theta = static_cast<int>(parse_integer(value, 8, 1 << 16));
        } else if (key == "rmax") {
            const double r = parse_double(value);
            if (!(r > 0.0 && r < 1.0)) throw Error(ErrorKind::Config, "rmax must lie in (0, 1)");
            config.grid.r_max = r;
        } else if (key == "tol") {
            const double t = parse_double(value);
            if (!(t > 0.0)) throw Error(ErrorKind::Config, "tol must be positive");
            config.tol = t;
        } else if (key == "refine") {
            config.refine = static_cast<int>(parse_integer(value, 0, 20));
        } else if (key == "out-dir") {
            if (value.empty()) throw Error(ErrorKind::Config, "empty output directory");
            config.out_dir = value;
        } else if (key == "emit") {
            std::vector<Emit> list;
            if (!value.empty())
                for (const auto& item : split(value, ',')) {
                    const Emit e = parse_emit(item);
                    if (std::find(list.begin(), list.end(), e) == list.end()) list.push_back(e);
                }
            config.emit = list;
        } else if (key == "threads") {
            config.threads = static_cast<unsigned>(parse_integer(value, 0, 1024));
        } else if (key == "fault-rhs-scale") {
            const double s = parse_double(value);
            if (!(s > 0.0)) throw Error(ErrorKind::Config, "fault-rhs-scale must be positive");
            config.fault_rhs_scale = s;
        } else {
            throw Error(ErrorKind::Config, "unknown key '" + key + "'");
        }
    } catch (const Error& e) {
        throw Error(ErrorKind::Config, origin + ": " + e.what());
    }
    set_echo(config, key, value);
}

void apply_config_file(RunConfig& config, const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::Config, path.string() + ": cannot open config file");
    std::string line;
    for (int number = 1; std::getline(in, line); ++number) {
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        if (trim(line).empty()) continue;
        const std::string origin = path.string() + ":" + std::to_string(number);
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw Error(ErrorKind::Config, origin + ": expected 'key = value'");
        apply_setting(config, line.substr(0, eq), line.substr(eq + 1), origin);
    }
}

RunConfig default_config() {
    RunConfig config;
    config.echo = {{"criterion", "becker"}, {"f", "identity"}, {"f-coeffs", ""}, {"g", ""},
                   {"g-coeffs", ""},        {"alpha", "1"},    {"beta", "0"},     {"A", "1"},
                   {"B", "1"},              {"k", "0.5"},      {"nr", "128"},     {"ntheta", "256"},
                   {"rmax", "0.999"},       {"tol", "1e-9"},   {"refine", "0"},   {"out-dir", "."},
                   {"emit", "report,diagnostics"}, {"threads", "0"}, {"fault-rhs-scale", "1"}};
    return config;
}

AnalyticFunction build_function(const FunctionSpec& spec, ClassTag tag) {
    if (spec.coefficients) return from_coefficients(*spec.coefficients, tag);
    return preset(spec.name, spec.params);
}

}  // namespace univalence

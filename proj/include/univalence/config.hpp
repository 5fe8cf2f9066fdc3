#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "univalence/criteria.hpp"

namespace univalence {

/// Catalog name with parameters, or an explicit coefficient list.
struct FunctionSpec {
    std::string name;
    std::vector<Complex> params;
    std::optional<std::vector<Complex>> coefficients;

    bool operator==(const FunctionSpec&) const = default;
};

enum class Emit { Report, Heatmap1, Heatmap2, Domain, Beltrami, Diagnostics };

std::string_view to_string(Emit e);

struct RunConfig {
    std::string criterion = "becker";
    FunctionSpec f{"identity", {}, std::nullopt};
    std::optional<FunctionSpec> g;  // empty: the preset's default
    CriterionParams params;
    DiskGrid grid;
    double tol = 1e-9;
    int refine = 0;
    std::filesystem::path out_dir = ".";
    std::vector<Emit> emit{Emit::Report, Emit::Diagnostics};
    unsigned threads = 0;
    double fault_rhs_scale = 1.0;

    // key -> verbatim value, in the fixed key order of config_keys()
    std::vector<std::pair<std::string, std::string>> echo;

    bool emits(Emit e) const;
};

/// Keys accepted in config files; each is also a CLI flag "--<key>".
const std::vector<std::string>& config_keys();

/// "re" or "re,im".
Complex parse_complex(const std::string& text);
/// ';'-separated complex values.
std::vector<Complex> parse_complex_list(const std::string& text);
/// "name" or "name:p1;p2".
FunctionSpec parse_function_spec(const std::string& text);

/// Applies one setting; errors are Config errors prefixed by `origin`.
void apply_setting(RunConfig& config, const std::string& key, const std::string& value,
                   const std::string& origin);

/// Reads flat `key = value` lines; `#` starts a comment.
void apply_config_file(RunConfig& config, const std::filesystem::path& path);

/// Default configuration with its echo filled in.
RunConfig default_config();

AnalyticFunction build_function(const FunctionSpec& spec, ClassTag tag);

}  // namespace univalence

#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "univalence/extension.hpp"
#include "univalence/oracle.hpp"

namespace univalence {

inline constexpr const char* kToolName = "univalence-check";
inline constexpr const char* kToolVersion = "0.1.0";

struct FieldSummary {
    double worst_margin = 0.0;
    Complex worst_point;
    std::size_t worst_index = 0;

    bool operator==(const FieldSummary&) const = default;
};

FieldSummary summarize(const MarginField& field);

/// The serialized part of a CriterionReport; the margin arrays go to the
/// heatmaps instead.
struct CriterionSummary {
    std::string id;
    CriterionParams params;
    double r1 = 0.0;
    double r2 = 0.0;
    Complex center;
    double tol = 0.0;
    Verdict verdict = Verdict::Inapplicable;
    DiskGrid grid;
    FieldSummary condition1;
    std::optional<FieldSummary> condition2;
    std::optional<Refinement> refine1;
    std::optional<Refinement> refine2;
    std::optional<Complex> witness;
    std::string message;
    std::vector<NamedCheck> checks;

    bool operator==(const CriterionSummary&) const = default;
};

CriterionSummary summarize(const CriterionReport& report);

struct BeltramiSummary {
    Annulus annulus;
    double h = 0.0;
    double sup_abs_mu = 0.0;
    Complex worst_point;
    std::size_t failed_points = 0;
    bool reliable = true;
    std::optional<double> criterion_k;
    bool criterion_satisfied = false;
    double max_w_transfer = 0.0;
    double max_w_becker = 0.0;

    bool operator==(const BeltramiSummary&) const = default;
};

BeltramiSummary summarize(const BeltramiEstimate& estimate);

enum class RunStatus { Pass, Violation, Inapplicable, Error, Inconsistent };

std::string_view to_string(RunStatus s);
int exit_code(RunStatus s);

struct RunReport {
    std::string tool = kToolName;
    std::string version = kToolVersion;
    std::vector<std::pair<std::string, std::string>> config;
    std::string f_name;
    std::string g_name;
    std::optional<CriterionSummary> criterion;
    std::optional<ChainDiagnostics> diagnostics;
    std::vector<OracleReport> oracles;
    std::optional<BeltramiSummary> beltrami;
    std::optional<SeamReport> seam;
    std::optional<std::size_t> domain_error_pixels;
    RunStatus status = RunStatus::Error;
    std::string message;

    bool operator==(const RunReport&) const = default;
};

/// Deterministic JSON text: fixed key order, two-space indent, doubles as
/// %.16e, non-finite doubles as the strings "Infinity", "-Infinity", "NaN".
std::string report_to_text(const RunReport& report);
RunReport report_from_text(const std::string& text);

void write_report(const RunReport& report, const std::filesystem::path& path);

}  // namespace univalence

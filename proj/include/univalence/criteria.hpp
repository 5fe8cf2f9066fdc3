#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "univalence/function.hpp"

namespace univalence {

enum class Mode { Univalence, Quasiconformal };

std::string_view to_string(Mode mode);

struct CriterionParams {
    Complex alpha{1.0, 0.0};
    Complex beta{0.0, 0.0};
    Complex A{1.0, 0.0};
    Complex B{1.0, 0.0};
    double k = 0.5;
    Mode mode = Mode::Univalence;

    bool operator==(const CriterionParams&) const = default;
};

enum class ParamViolation {
    ReAlphaNotAboveHalf,
    APlusBZero,
    AMinusBTooLarge,
    AbsATooLarge,
    AbsBTooLarge,
    KAMinusBTooLarge,
    KOutOfRange,
    BetaEqualsOne,
};

/// Stable identifier, e.g. "re_alpha_le_half".
std::string_view to_string(ParamViolation v);

struct ParamError {
    ParamViolation violation;
    std::string message;
};

/// Empty result means the parameters are admissible for their mode.
std::vector<ParamError> validate_params(const CriterionParams& p);

/// Throws Error(Validation) naming every violated constraint.
void require_valid(const CriterionParams& p);

struct RhsBounds {
    double r1 = 0.0;   // bound of the first inequality
    double r2 = 0.0;   // bound of the second inequality
    Complex center;    // term subtracted inside the second modulus
};

RhsBounds rhs_bounds(Complex A, Complex B, double k, Mode mode);

enum class Clustering { Uniform, Chebyshev };

std::string_view to_string(Clustering c);

/// Polar sampling of the closed disk |z| <= r_max. Radius index 0 is the
/// origin and the last radius index is r_max exactly.
struct DiskGrid {
    int n_r = 128;
    int n_theta = 256;
    double r_max = 0.999;
    Clustering clustering = Clustering::Chebyshev;

    void validate() const;
    std::size_t size() const { return static_cast<std::size_t>(n_r) * n_theta; }
    double radius(int i) const;
    double angle(int j) const;
    Complex point(int i, int j) const;
    Complex point(std::size_t flat) const;

    bool operator==(const DiskGrid&) const = default;
};

struct MarginField {
    DiskGrid grid;
    std::vector<double> margins;   // flat index i_r * n_theta + i_theta
    double worst_margin = 0.0;
    Complex worst_point;
    std::size_t worst_index = 0;   // smallest flat index attaining the minimum
};

MarginField make_margin_field(const DiskGrid& grid, std::vector<double> margins);

enum class Verdict { NoViolationFound, Violation, Inapplicable };

std::string_view to_string(Verdict v);

struct NamedCheck {
    std::string name;
    bool passed = false;
    std::string detail;

    bool operator==(const NamedCheck&) const = default;
};

struct Refinement {
    int rounds = 0;
    double worst_margin = 0.0;
    Complex worst_point;
    int skipped_points = 0;

    bool operator==(const Refinement&) const = default;
};

enum class GRule { User, Derivative, OverZ, None };

std::string_view to_string(GRule r);

/// Parameter substitutions and g binding of one named criterion.
struct PresetRule {
    std::string id;
    Mode mode = Mode::Univalence;
    std::optional<Complex> alpha, beta, A, B;
    GRule g_rule = GRule::User;
    bool real_part_check = false;  // Re f'(z) > 0 instead of the two inequalities
};

PresetRule preset_criterion(std::string_view id);
const std::vector<std::string>& preset_ids();

/// A criterion ready to be checked: f, the bound g (absent for the
/// real-part check), and fully substituted parameters.
struct CriterionSetup {
    std::string preset_id;
    AnalyticFunction f;
    std::optional<AnalyticFunction> g;
    CriterionParams params;
    GRule g_rule = GRule::User;
    bool real_part_check = false;
};

/// Applies the preset to user inputs. `user_g` defaults to constant_one
/// where the preset leaves g free. Validates the resulting parameters.
CriterionSetup resolve_preset(std::string_view id, const AnalyticFunction& f,
                              const std::optional<AnalyticFunction>& user_g,
                              const CriterionParams& user);

/// R1 - |(1/alpha)(f'/(g - beta) - 1)|.
double margin_condition1(const AnalyticFunction& f, const AnalyticFunction& g,
                         const CriterionParams& p, Complex z);

/// The complex quantity inside the modulus of the second inequality
/// (center term already subtracted).
Complex condition2_expression(const AnalyticFunction& f, const AnalyticFunction& g,
                              const CriterionParams& p, Complex z);

/// R2 - |condition2_expression|.
double margin_condition2(const AnalyticFunction& f, const AnalyticFunction& g,
                         const CriterionParams& p, Complex z);

struct CheckOptions {
    double tol = 1e-9;
    int refine_rounds = 0;
    unsigned threads = 0;
    double rhs_scale = 1.0;  // fault injection only; 1 in every real run
};

struct CriterionReport {
    std::string criterion_id;
    CriterionParams params;
    RhsBounds rhs;
    double tol = 0.0;
    Verdict verdict = Verdict::Inapplicable;
    MarginField field1;
    std::optional<MarginField> field2;
    std::optional<Refinement> refine1;
    std::optional<Refinement> refine2;
    std::optional<Complex> witness;
    std::string message;
    std::vector<NamedCheck> diagnostics;
};

CriterionReport check_criterion(const CriterionSetup& setup, const DiskGrid& grid,
                                const CheckOptions& options = {});

}  // namespace univalence

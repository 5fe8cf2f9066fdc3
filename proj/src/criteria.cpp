#include "univalence/criteria.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "univalence/parallel.hpp"

namespace univalence {

std::string_view to_string(Mode mode) {
    return mode == Mode::Univalence ? "univalence" : "quasiconformal";
}

std::string_view to_string(ParamViolation v) {
    switch (v) {
        case ParamViolation::ReAlphaNotAboveHalf: return "re_alpha_le_half";
        case ParamViolation::APlusBZero: return "a_plus_b_zero";
        case ParamViolation::AMinusBTooLarge: return "abs_a_minus_b_ge_2";
        case ParamViolation::AbsATooLarge: return "abs_a_gt_1";
        case ParamViolation::AbsBTooLarge: return "abs_b_gt_1";
        case ParamViolation::KAMinusBTooLarge: return "k_abs_a_minus_b_ge_2";
        case ParamViolation::KOutOfRange: return "k_out_of_range";
        case ParamViolation::BetaEqualsOne: return "beta_equals_one";
    }
    return "unknown";
}

std::string_view to_string(Clustering c) {
    return c == Clustering::Uniform ? "uniform" : "chebyshev";
}

std::string_view to_string(Verdict v) {
    switch (v) {
        case Verdict::NoViolationFound: return "no-violation-found";
        case Verdict::Violation: return "violation";
        case Verdict::Inapplicable: return "inapplicable";
    }
    return "inapplicable";
}

std::string_view to_string(GRule r) {
    switch (r) {
        case GRule::User: return "user";
        case GRule::Derivative: return "f_prime";
        case GRule::OverZ: return "f_over_z";
        case GRule::None: return "none";
    }
    return "none";
}

std::vector<ParamError> validate_params(const CriterionParams& p) {
    std::vector<ParamError> errors;
    auto fail = [&](ParamViolation v, std::string msg) { errors.push_back({v, std::move(msg)}); };
    const double a_minus_b = std::abs(p.A - p.B);
    if (!(p.alpha.real() > 0.5)) fail(ParamViolation::ReAlphaNotAboveHalf, "Re(alpha) > 1/2 violated");
    if (std::abs(p.A + p.B) == 0.0) fail(ParamViolation::APlusBZero, "A + B != 0 violated");
    if (!(a_minus_b < 2.0)) fail(ParamViolation::AMinusBTooLarge, "|A - B| < 2 violated");
    if (!(std::abs(p.A) <= 1.0)) fail(ParamViolation::AbsATooLarge, "|A| <= 1 violated");
    if (!(std::abs(p.B) <= 1.0)) fail(ParamViolation::AbsBTooLarge, "|B| <= 1 violated");
    if (!(p.k >= 0.0 && p.k < 1.0)) fail(ParamViolation::KOutOfRange, "k in [0, 1) violated");
    if (p.mode == Mode::Quasiconformal && !(p.k * a_minus_b < 2.0))
        fail(ParamViolation::KAMinusBTooLarge, "k|A - B| < 2 violated");
    if (!(std::abs(1.0 - p.beta) > 1e-12)) fail(ParamViolation::BetaEqualsOne, "beta != 1 violated");
    return errors;
}

void require_valid(const CriterionParams& p) {
    const auto errors = validate_params(p);
    if (errors.empty()) return;
    std::string msg = "invalid criterion parameters:";
    for (const auto& e : errors) msg += " [" + std::string(to_string(e.violation)) + "] " + e.message + ";";
    throw Error(ErrorKind::Validation, msg);
}

RhsBounds rhs_bounds(Complex A, Complex B, double k, Mode mode) {
    const double s = std::abs(A + B);
    const double d = std::abs(A - B);
    const Complex cross = std::conj(A - B) * (A + B);
    if (mode == Mode::Univalence) {
        return {s / (2.0 - d), 2.0 * s / (4.0 - d * d), cross / (4.0 - d * d)};
    }
    const double kd = k * d;
    return {k * s / (2.0 - kd), 2.0 * k * s / (4.0 - kd * kd), k * k * cross / (4.0 - kd * kd)};
}

void DiskGrid::validate() const {
    if (n_r < 2) throw Error(ErrorKind::Validation, "grid needs n_r >= 2");
    if (n_theta < 8) throw Error(ErrorKind::Validation, "grid needs n_theta >= 8");
    if (!(r_max > 0.0 && r_max < 1.0)) throw Error(ErrorKind::Validation, "grid needs 0 < r_max < 1");
}

double DiskGrid::radius(int i) const {
    if (i == n_r - 1) return r_max;
    const double s = static_cast<double>(i) / (n_r - 1);
    if (clustering == Clustering::Uniform) return r_max * s;
    return r_max * std::sin(0.5 * std::numbers::pi * s);
}

double DiskGrid::angle(int j) const { return 2.0 * std::numbers::pi * j / n_theta; }

Complex DiskGrid::point(int i, int j) const { return std::polar(radius(i), angle(j)); }

Complex DiskGrid::point(std::size_t flat) const {
    return point(static_cast<int>(flat / n_theta), static_cast<int>(flat % n_theta));
}

MarginField make_margin_field(const DiskGrid& grid, std::vector<double> margins) {
    MarginField field{grid, std::move(margins), 0.0, {}, 0};
    if (field.margins.empty()) return field;
    std::size_t best = 0;
    for (std::size_t i = 1; i < field.margins.size(); ++i)
        if (field.margins[i] < field.margins[best]) best = i;
    field.worst_index = best;
    field.worst_margin = field.margins[best];
    field.worst_point = grid.point(best);
    return field;
}

PresetRule preset_criterion(std::string_view id) {
    PresetRule r;
    r.id = std::string(id);
    const Complex one{1.0, 0.0}, zero{0.0, 0.0};
    if (id == "general") {
        r.g_rule = GRule::User;
    } else if (id == "c1") {
        r.alpha = one;
    } else if (id == "c2") {
        r.alpha = one;
        r.beta = zero;
    } else if (id == "c3" || id == "becker-general") {
        r.alpha = one;
        r.beta = zero;
        r.g_rule = GRule::Derivative;
    } else if (id == "c4") {
        r.alpha = one;
        r.g_rule = GRule::Derivative;
    } else if (id == "becker") {
        r.alpha = one;
        r.beta = zero;
        r.A = one;
        r.B = one;
        r.g_rule = GRule::Derivative;
    } else if (id == "pascu") {
        r.alpha = one;
        r.A = one;
        r.B = one;
        r.g_rule = GRule::Derivative;
    } else if (id == "starlike") {
        r.alpha = one;
        r.beta = zero;
        r.g_rule = GRule::OverZ;
    } else if (id == "noshiro") {
        r.g_rule = GRule::None;
        r.real_part_check = true;
    } else if (id == "qc-general") {
        r.mode = Mode::Quasiconformal;
    } else if (id == "qc-becker") {
        r.mode = Mode::Quasiconformal;
        r.alpha = one;
        r.beta = zero;
        r.A = one;
        r.B = one;
        r.g_rule = GRule::Derivative;
    } else if (id == "qc-c6") {
        r.mode = Mode::Quasiconformal;
        r.alpha = one;
        r.beta = zero;
        r.g_rule = GRule::Derivative;
    } else {
        throw Error(ErrorKind::UnknownName, "unknown criterion preset '" + std::string(id) + "'");
    }
    return r;
}

const std::vector<std::string>& preset_ids() {
    static const std::vector<std::string> ids = {
        "general", "c1", "c2", "c3", "c4", "becker", "pascu", "starlike",
        "noshiro", "qc-general", "qc-becker", "qc-c6",
    };
    return ids;
}

CriterionSetup resolve_preset(std::string_view id, const AnalyticFunction& f,
                              const std::optional<AnalyticFunction>& user_g,
                              const CriterionParams& user) {
    const PresetRule rule = preset_criterion(id);
    CriterionParams p = user;
    p.mode = rule.mode;
    if (rule.alpha) p.alpha = *rule.alpha;
    if (rule.beta) p.beta = *rule.beta;
    if (rule.A) p.A = *rule.A;
    if (rule.B) p.B = *rule.B;

    if (f.class_tag() != ClassTag::ClassA)
        throw Error(ErrorKind::Validation, "criteria require f in class A (f(0) = 0, f'(0) = 1)");

    std::optional<AnalyticFunction> g;
    switch (rule.g_rule) {
        case GRule::User: g = user_g ? *user_g : preset("constant_one"); break;
        case GRule::Derivative: g = derivative_of(f); break;
        case GRule::OverZ: g = over_z(f); break;
        case GRule::None: break;
    }
    if (g && g->class_tag() != ClassTag::UnitConstantTerm)
        throw Error(ErrorKind::Validation, "criteria require g(0) = 1");
    if (!rule.real_part_check) require_valid(p);
    return CriterionSetup{rule.id, f, std::move(g), p, rule.g_rule, rule.real_part_check};
}

namespace {

constexpr double kDivisionGuard = 1e-14;

struct PointTerms {
    Complex quotient;   // f'(z) / (g(z) - beta)
    Complex expression; // second-inequality expression before the center term
};

PointTerms point_terms(const AnalyticFunction& f, const AnalyticFunction& g,
                       const CriterionParams& p, Complex z) {
    const Jet2 fj = eval_jet(f, z);
    const Jet2 gj = eval_jet(g, z);
    const Complex shifted = gj.value - p.beta;
    if (std::abs(shifted) < kDivisionGuard)
        throw Error(ErrorKind::Inapplicable, "g(z) - beta vanishes", z);
    const Complex quotient = fj.d1 / shifted;
    const double r2 = std::norm(z);
    Complex bracket = z * gj.d1 / shifted;
    if (p.alpha != Complex(1.0, 0.0)) {
        const Complex zf_over_f = fj.d1 / ratio_over_z(f, z);
        bracket += (1.0 - p.alpha) / p.alpha * zf_over_f;
    }
    return {quotient, (quotient - 1.0) * r2 + (1.0 - r2) * bracket};
}

double margin1_from(const PointTerms& t, const CriterionParams& p, const RhsBounds& rhs) {
    return rhs.r1 - std::abs((t.quotient - 1.0) / p.alpha);
}

double margin2_from(const PointTerms& t, const RhsBounds& rhs) {
    return rhs.r2 - std::abs(t.expression - rhs.center);
}

RhsBounds scaled_bounds(const CriterionParams& p, double scale) {
    RhsBounds rhs = rhs_bounds(p.A, p.B, p.k, p.mode);
    rhs.r1 *= scale;
    rhs.r2 *= scale;
    return rhs;
}

struct PointResult {
    double m1 = 0.0;
    double m2 = 0.0;
    bool failed = false;
    ErrorKind kind = ErrorKind::Inapplicable;
    std::string message;
};

PointResult evaluate(const CriterionSetup& s, const RhsBounds& rhs, Complex z) {
    PointResult out;
    try {
        if (s.real_part_check) {
            out.m1 = eval_jet(s.f, z).d1.real();
        } else {
            const PointTerms t = point_terms(s.f, *s.g, s.params, z);
            out.m1 = margin1_from(t, s.params, rhs);
            out.m2 = margin2_from(t, rhs);
        }
        if (!std::isfinite(out.m1) || !std::isfinite(out.m2)) {
            out.failed = true;
            out.kind = ErrorKind::Inapplicable;
            out.message = "non-finite margin";
        }
    } catch (const Error& e) {
        out.failed = true;
        out.kind = e.kind();
        out.message = e.what();
    }
    return out;
}

// Local 4x refinement around the worst point of one field; `which` selects
// the margin (1 or 2).
Refinement refine(const CriterionSetup& s, const RhsBounds& rhs, const DiskGrid& grid,
                  const MarginField& field, int which, int rounds) {
    Refinement out{rounds, field.worst_margin, field.worst_point, 0};
    const int i0 = static_cast<int>(field.worst_index / grid.n_theta);
    double r_c = grid.radius(i0);
    double th_c = grid.angle(static_cast<int>(field.worst_index % grid.n_theta));
    double dr = std::max(i0 > 0 ? r_c - grid.radius(i0 - 1) : 0.0,
                         i0 + 1 < grid.n_r ? grid.radius(i0 + 1) - r_c : 0.0);
    double dth = 2.0 * std::numbers::pi / grid.n_theta;
    constexpr int kHalf = 4;
    for (int round = 0; round < rounds; ++round) {
        double best_r = r_c, best_th = th_c;
        for (int a = -kHalf; a <= kHalf; ++a) {
            for (int b = -kHalf; b <= kHalf; ++b) {
                const double r = std::clamp(r_c + a * dr / kHalf, 0.0, grid.r_max);
                const double th = th_c + b * dth / kHalf;
                const Complex z = std::polar(r, th);
                const PointResult pr = evaluate(s, rhs, z);
                if (pr.failed) {
                    ++out.skipped_points;
                    continue;
                }
                const double m = which == 1 ? pr.m1 : pr.m2;
                if (m < out.worst_margin) {
                    out.worst_margin = m;
                    out.worst_point = z;
                    best_r = r;
                    best_th = th;
                }
            }
        }
        r_c = best_r;
        th_c = best_th;
        dr /= kHalf;
        dth /= kHalf;
    }
    return out;
}

}  // namespace

double margin_condition1(const AnalyticFunction& f, const AnalyticFunction& g,
                         const CriterionParams& p, Complex z) {
    const Jet2 fj = eval_jet(f, z);
    const Complex shifted = eval_jet(g, z).value - p.beta;
    if (std::abs(shifted) < kDivisionGuard)
        throw Error(ErrorKind::Inapplicable, "g(z) - beta vanishes", z);
    const RhsBounds rhs = rhs_bounds(p.A, p.B, p.k, p.mode);
    return rhs.r1 - std::abs((fj.d1 / shifted - 1.0) / p.alpha);
}

Complex condition2_expression(const AnalyticFunction& f, const AnalyticFunction& g,
                              const CriterionParams& p, Complex z) {
    const RhsBounds rhs = rhs_bounds(p.A, p.B, p.k, p.mode);
    return point_terms(f, g, p, z).expression - rhs.center;
}

double margin_condition2(const AnalyticFunction& f, const AnalyticFunction& g,
                         const CriterionParams& p, Complex z) {
    const RhsBounds rhs = rhs_bounds(p.A, p.B, p.k, p.mode);
    return margin2_from(point_terms(f, g, p, z), rhs);
}

CriterionReport check_criterion(const CriterionSetup& setup, const DiskGrid& grid,
                                const CheckOptions& options) {
    grid.validate();
    CriterionReport report;
    report.criterion_id = setup.preset_id;
    report.params = setup.params;
    report.tol = options.tol;
    const RhsBounds rhs = setup.real_part_check ? RhsBounds{} : scaled_bounds(setup.params, options.rhs_scale);
    report.rhs = rhs;

    const std::size_t n = grid.size();
    std::vector<PointResult> results(n);
    parallel_for(n, options.threads, [&](std::size_t i) { results[i] = evaluate(setup, rhs, grid.point(i)); });

    std::vector<double> m1(n), m2(n);
    std::optional<std::size_t> first_failure;
    for (std::size_t i = 0; i < n; ++i) {
        if (results[i].failed && !first_failure) first_failure = i;
        m1[i] = results[i].failed ? 0.0 : results[i].m1;
        m2[i] = results[i].failed ? 0.0 : results[i].m2;
    }
    report.field1 = make_margin_field(grid, std::move(m1));
    if (!setup.real_part_check) report.field2 = make_margin_field(grid, std::move(m2));

    if (!setup.real_part_check) {
        // |w(0,t)| is largest at t = 0 where it equals |1/(alpha(1-beta)) - 1|.
        const CriterionParams& p = setup.params;
        const double w0 = std::abs(1.0 / (p.alpha * (1.0 - p.beta)) - 1.0);
        std::ostringstream detail;
        detail.precision(17);
        detail << "|1/(alpha(1-beta)) - 1| = " << w0 << ", R1 = " << rhs.r1;
        report.diagnostics.push_back({"origin_transfer_bound", w0 < rhs.r1, detail.str()});
    }

    if (first_failure) {
        const PointResult& bad = results[*first_failure];
        report.verdict = Verdict::Inapplicable;
        report.witness = grid.point(*first_failure);
        report.message = std::string(to_string(bad.kind)) + ": " + bad.message;
        return report;
    }

    double worst1 = report.field1.worst_margin;
    double worst2 = report.field2 ? report.field2->worst_margin : 0.0;
    if (options.refine_rounds > 0) {
        report.refine1 = refine(setup, rhs, grid, report.field1, 1, options.refine_rounds);
        worst1 = std::min(worst1, report.refine1->worst_margin);
        if (report.field2) {
            report.refine2 = refine(setup, rhs, grid, *report.field2, 2, options.refine_rounds);
            worst2 = std::min(worst2, report.refine2->worst_margin);
        }
    }

    const bool ok1 = worst1 > options.tol;
    const bool ok2 = !report.field2 || worst2 >= -options.tol;
    if (ok1 && ok2) {
        report.verdict = Verdict::NoViolationFound;
    } else {
        report.verdict = Verdict::Violation;
        const bool first = !ok1;
        const Refinement* ref = first ? (report.refine1 ? &*report.refine1 : nullptr)
                                      : (report.refine2 ? &*report.refine2 : nullptr);
        const MarginField& field = first ? report.field1 : *report.field2;
        report.witness = (ref && ref->worst_margin < field.worst_margin) ? ref->worst_point : field.worst_point;
        report.message = first ? "condition 1 violated" : "condition 2 violated";
    }
    return report;
}

}  // namespace univalence

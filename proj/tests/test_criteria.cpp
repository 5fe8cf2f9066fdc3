#include <gtest/gtest.h>

#include <cmath>
#include <set>
#include <vector>

#include "univalence/criteria.hpp"

namespace univalence {
namespace {

using namespace std::complex_literals;

AnalyticFunction poly(std::vector<Complex> c) { return from_coefficients(c, ClassTag::ClassA); }

CriterionParams becker_params() { return CriterionParams{}; }

TEST(Validation, BeckerParametersAccepted) { EXPECT_TRUE(validate_params(becker_params()).empty()); }

TEST(Validation, AlphaBoundaryExcluded) {
    CriterionParams p;
    p.alpha = 0.5;
    const auto errors = validate_params(p);
    ASSERT_EQ(errors.size(), 1u);
    EXPECT_EQ(to_string(errors[0].violation), "re_alpha_le_half");
}

TEST(Validation, OppositeAB) {
    CriterionParams p;
    p.B = -1.0;
    const auto errors = validate_params(p);
    ASSERT_FALSE(errors.empty());
    EXPECT_EQ(errors[0].violation, ParamViolation::APlusBZero);
}

TEST(Validation, RequireValidThrows) {
    CriterionParams p;
    p.beta = 1.0;
    try {
        require_valid(p);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::Validation);
        EXPECT_NE(std::string(e.what()).find("beta_equals_one"), std::string::npos);
    }
}

TEST(RhsBounds, Becker) {
    const RhsBounds b = rhs_bounds(1.0, 1.0, 0.5, Mode::Univalence);
    EXPECT_DOUBLE_EQ(b.r1, 1.0);
    EXPECT_DOUBLE_EQ(b.r2, 1.0);
    EXPECT_EQ(b.center, Complex(0.0));
}

TEST(RhsBounds, ABOneZero) {
    const RhsBounds b = rhs_bounds(1.0, 0.0, 0.5, Mode::Univalence);
    EXPECT_NEAR(b.r1, 1.0, 1e-15);
    EXPECT_NEAR(b.r2, 2.0 / 3.0, 1e-15);
    EXPECT_NEAR(std::abs(b.center - 1.0 / 3.0), 0.0, 1e-15);
}

TEST(RhsBounds, QuasiconformalBecker) {
    const RhsBounds b = rhs_bounds(1.0, 1.0, 0.25, Mode::Quasiconformal);
    EXPECT_NEAR(b.r1, 0.25, 1e-15);
    EXPECT_NEAR(b.r2, 0.25, 1e-15);
    EXPECT_EQ(b.center, Complex(0.0));
}

TEST(Margins, IdentityConstantOne) {
    const auto f = preset("identity"), g = preset("constant_one");
    EXPECT_DOUBLE_EQ(margin_condition1(f, g, becker_params(), 0.3 - 0.2i), 1.0);
    EXPECT_DOUBLE_EQ(margin_condition2(f, g, becker_params(), 0.0), 1.0);
}

TEST(Margins, DerivativeCancels) {
    const auto f = poly({0.0, 1.0, 0.1});
    EXPECT_NEAR(margin_condition1(f, derivative_of(f), becker_params(), 0.7i), 1.0, 1e-15);
}

TEST(Margins, QuadraticWithConstantOne) {
    const auto f = poly({0.0, 1.0, 0.1});
    EXPECT_NEAR(margin_condition1(f, preset("constant_one"), becker_params(), 0.9), 0.82, 1e-15);
}

TEST(Margins, KoebeBeckerAtNineTenths) {
    const auto f = preset("koebe");
    EXPECT_NEAR(margin_condition2(f, derivative_of(f), becker_params(), 0.9), 1.0 - 5.22, 1e-12);
}

TEST(Margins, QuadraticBeckerAtHalf) {
    const auto f = poly({0.0, 1.0, 0.1});
    EXPECT_NEAR(margin_condition2(f, derivative_of(f), becker_params(), 0.5), 1.0 - 0.75 * 0.1 / 1.1, 1e-15);
}

TEST(Grid, LastRadiusExact) {
    DiskGrid g;
    EXPECT_EQ(g.radius(0), 0.0);
    EXPECT_EQ(g.radius(g.n_r - 1), g.r_max);
    g.clustering = Clustering::Uniform;
    EXPECT_EQ(g.radius(g.n_r - 1), g.r_max);
}

TEST(Check, IdentityBecker) {
    const auto setup = resolve_preset("becker", preset("identity"), std::nullopt, {});
    const CriterionReport r = check_criterion(setup, DiskGrid{});
    EXPECT_EQ(r.verdict, Verdict::NoViolationFound);
    EXPECT_DOUBLE_EQ(r.field1.worst_margin, 1.0);
    ASSERT_TRUE(r.field2);
    EXPECT_NEAR(r.field2->worst_margin, 1.0, 1e-15);
}

TEST(Check, KoebeBeckerWitness) {
    const auto setup = resolve_preset("becker", preset("koebe"), std::nullopt, {});
    const CriterionReport r = check_criterion(setup, DiskGrid{});
    EXPECT_EQ(r.verdict, Verdict::Violation);
    ASSERT_TRUE(r.witness);
    EXPECT_NEAR(r.witness->real(), 0.999, 1e-12);
    EXPECT_NEAR(r.witness->imag(), 0.0, 1e-12);
}

TEST(Check, QuadraticQuasiconformal) {
    CriterionParams p;
    p.k = 0.25;
    const auto setup = resolve_preset("qc-becker", poly({0.0, 1.0, 0.1}), std::nullopt, p);
    EXPECT_EQ(check_criterion(setup, DiskGrid{}).verdict, Verdict::NoViolationFound);
}

TEST(Presets, QuadraticBecker) {
    const auto setup = resolve_preset("becker", poly({0.0, 1.0, 0.1}), std::nullopt, {});
    EXPECT_EQ(check_criterion(setup, DiskGrid{}).verdict, Verdict::NoViolationFound);
}

TEST(Presets, StarlikeExponential) {
    const auto setup = resolve_preset("starlike", preset("z_exp_cz", std::vector<Complex>{0.5}), std::nullopt, {});
    const CriterionReport r = check_criterion(setup, DiskGrid{});
    EXPECT_EQ(r.verdict, Verdict::NoViolationFound);
    EXPECT_NEAR(r.field1.worst_margin, 1.0 - 0.5 * 0.999, 1e-12);
}

TEST(Presets, NoshiroHalfQuadratic) {
    const auto setup = resolve_preset("noshiro", poly({0.0, 1.0, 0.5}), std::nullopt, {});
    EXPECT_EQ(check_criterion(setup, DiskGrid{}).verdict, Verdict::NoViolationFound);
}

TEST(Presets, EveryIdResolves) {
    for (const auto& id : preset_ids()) EXPECT_NO_THROW(resolve_preset(id, preset("identity"), std::nullopt, {})) << id;
}

// Property: with alpha = 1, beta = 0, A = B = 1, g = f', the second expression
// is the Becker quantity. Oracle: closed-form z f''/f' of each test function.
TEST(CriteriaProperty, BeckerReduction) {
    struct Case {
        AnalyticFunction f;
        Complex (*zf2_over_f1)(Complex);
    };
    const std::vector<Case> cases{
        {preset("koebe"), [](Complex z) { return 2.0 * z * (2.0 + z) / ((1.0 - z) * (1.0 + z)); }},
        {poly({0.0, 1.0, 0.25}), [](Complex z) { return 0.5 * z / (1.0 + 0.5 * z); }},
    };
    const DiskGrid grid{32, 64, 0.999, Clustering::Chebyshev};
    for (const auto& c : cases) {
        const auto g = derivative_of(c.f);
        for (std::size_t k = 0; k < grid.size(); ++k) {
            const Complex z = grid.point(k);
            const double ref = (1.0 - std::norm(z)) * std::abs(c.zf2_over_f1(z));
            const double got = std::abs(condition2_expression(c.f, g, becker_params(), z));
            EXPECT_NEAR(got, ref, 1e-12 * std::max(1.0, ref));
        }
    }
}

TEST(CriteriaProperty, StarlikeReduction) {
    const auto f = preset("z_exp_cz", std::vector<Complex>{0.5});
    const auto g = over_z(f);
    const DiskGrid grid{16, 32, 0.999, Clustering::Uniform};
    for (std::size_t k = 1; k < grid.size(); ++k) {
        const Complex z = grid.point(k);
        // z f'/f - 1 = 0.5 z for this function
        EXPECT_NEAR(margin_condition1(f, g, becker_params(), z), 1.0 - 0.5 * std::abs(z), 1e-12);
    }
}

TEST(CriteriaProperty, CenterModulusPhaseInvariant) {
    const Complex A = 0.6 + 0.2i, B = 0.3 - 0.5i;
    for (Mode mode : {Mode::Univalence, Mode::Quasiconformal}) {
        const RhsBounds base = rhs_bounds(A, B, 0.4, mode);
        for (double th : {0.3, 1.7, 3.0, 5.5}) {
            const Complex rot = std::polar(1.0, th);
            const RhsBounds r = rhs_bounds(rot * A, rot * B, 0.4, mode);
            EXPECT_NEAR(r.r1, base.r1, 1e-15);
            EXPECT_NEAR(r.r2, base.r2, 1e-15);
            EXPECT_NEAR(std::abs(r.center), std::abs(base.center), 1e-15);
        }
    }
}

TEST(CriteriaProperty, MonotoneInK) {
    const std::vector<AnalyticFunction> corpus{poly({0.0, 1.0, 0.1}), poly({0.0, 1.0, 0.05, 0.02}),
                                               preset("z_exp_cz", std::vector<Complex>{0.1})};
    const DiskGrid grid{24, 48, 0.999, Clustering::Chebyshev};
    const std::vector<double> ks{0.05, 0.1, 0.2, 0.3, 0.5, 0.8};
    for (const auto& f : corpus) {
        bool passed_before = false;
        std::vector<double> prev;
        for (double k : ks) {
            CriterionParams p;
            p.k = k;
            const auto setup = resolve_preset("qc-becker", f, std::nullopt, p);
            const CriterionReport r = check_criterion(setup, grid);
            const bool passed = r.verdict == Verdict::NoViolationFound;
            EXPECT_FALSE(passed_before && !passed) << "k = " << k;
            passed_before = passed;
            if (!prev.empty())
                for (std::size_t i = 0; i < prev.size(); ++i) EXPECT_GE(r.field2->margins[i], prev[i] - 1e-15);
            prev = r.field2->margins;
        }
    }
}

TEST(CriteriaProperty, DeterministicAcrossThreads) {
    const auto setup = resolve_preset("becker", preset("koebe"), std::nullopt, {});
    CheckOptions one, many;
    one.threads = 1;
    many.threads = 8;
    const CriterionReport a = check_criterion(setup, DiskGrid{}, one);
    const CriterionReport b = check_criterion(setup, DiskGrid{}, many);
    EXPECT_EQ(a.field1.margins, b.field1.margins);
    EXPECT_EQ(a.field2->margins, b.field2->margins);
    EXPECT_EQ(a.field2->worst_index, b.field2->worst_index);
}

TEST(CriteriaProperty, WorstIsMinimum) {
    const auto setup = resolve_preset("becker", poly({0.0, 1.0, 0.2}), std::nullopt, {});
    CheckOptions o;
    o.refine_rounds = 3;
    const CriterionReport r = check_criterion(setup, DiskGrid{}, o);
    for (const MarginField* field : {&r.field1, &*r.field2}) {
        const auto it = std::min_element(field->margins.begin(), field->margins.end());
        EXPECT_EQ(*it, field->worst_margin);
        EXPECT_EQ(static_cast<std::size_t>(it - field->margins.begin()), field->worst_index);
    }
    ASSERT_TRUE(r.refine2);
    EXPECT_LE(r.refine2->worst_margin, r.field2->worst_margin);
}

}  // namespace
}  // namespace univalence

#include <gtest/gtest.h>

#include <cmath>
#include <vector>

#include "univalence/loewner.hpp"

namespace univalence {
namespace {

using namespace std::complex_literals;

AnalyticFunction poly(std::vector<Complex> c) { return from_coefficients(c, ClassTag::ClassA); }

ChainContext identity_chain(CriterionParams p = {}) {
    return ChainContext::make(preset("identity"), preset("constant_one"), p);
}

ChainContext becker_chain(const AnalyticFunction& f) {
    return ChainContext::make(f, derivative_of(f), CriterionParams{});
}

TEST(Phi2, OriginAtLogTwo) {
    EXPECT_NEAR(std::abs(phi2(identity_chain(), 0.0, std::log(2.0)) - 4.0), 0.0, 1e-14);
}

TEST(Phi2, UnitAtTimeZero) {
    const auto ctx = becker_chain(poly({0.0, 1.0, 0.3}));
    EXPECT_EQ(phi2(ctx, 0.4 - 0.3i, 0.0), Complex(1.0));
}

TEST(Phi2, IdentityIsZIndependent) {
    EXPECT_NEAR(std::abs(phi2(identity_chain(), 0.5, 1.0) - std::exp(2.0)), 0.0, 1e-13);
}

TEST(Phi3, AlphaOneIsPhi2) {
    const auto ctx = becker_chain(poly({0.0, 1.0, 0.2}));
    for (Complex z : {Complex(0.3), 0.5i, Complex(-0.2, 0.6)})
        for (double t : {0.0, 0.5, 2.0}) EXPECT_EQ(phi3(ctx, z, t), phi2(ctx, z, t));
}

TEST(Phi3, SquareAtOrigin) {
    CriterionParams p;
    p.alpha = 2.0;
    EXPECT_NEAR(std::abs(phi3(identity_chain(p), 0.0, std::log(2.0)) - 16.0), 0.0, 1e-13);
}

TEST(Phi3, FractionalAtOrigin) {
    CriterionParams p;
    p.alpha = 0.75;
    EXPECT_NEAR(std::abs(phi3(identity_chain(p), 0.0, 1.0) - std::exp(1.5)), 0.0, 1e-13);
}

TEST(Chain, TimeZeroIsF) {
    const auto f = poly({0.0, 1.0, 0.2, 0.05i});
    const auto ctx = becker_chain(f);
    for (Complex z : {Complex(0.3), 0.5i, Complex(-0.7, 0.6)}) EXPECT_EQ(chain_value(ctx, z, 0.0), eval_jet(f, z).value);
}

TEST(Chain, OriginFixed) {
    const auto ctx = becker_chain(poly({0.0, 1.0, 0.2}));
    for (double t : default_t_samples()) EXPECT_EQ(chain_value(ctx, 0.0, t), Complex(0.0));
}

TEST(Coefficient, Examples) {
    CriterionParams p;
    p.alpha = 0.8 + 0.1i;
    p.beta = 0.3i;
    EXPECT_NEAR(std::abs(coefficient_a1(p, 0.0) - 1.0), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(coefficient_a1(CriterionParams{}, 1.0) - std::exp(1.0)), 0.0, 1e-14);
    CriterionParams half;
    half.beta = 0.5;
    EXPECT_NEAR(std::abs(coefficient_a1(half, 1.0) - std::exp(1.0) * (0.5 * std::exp(-2.0) + 0.5)), 0.0, 1e-14);
}

TEST(Transition, TimeZero) {
    const auto f = poly({0.0, 1.0, 0.2});
    const auto g = preset("constant_one");
    CriterionParams p;
    p.alpha = 2.0;
    const auto ctx = ChainContext::make(f, g, p);
    const Complex z = 0.3 + 0.4i;
    EXPECT_NEAR(std::abs(transition_phi(ctx, z, 0.0) - (0.5 * eval_jet(f, z).d1 - 1.0)), 0.0, 1e-15);
}

TEST(Transition, IdentityVanishes) {
    const auto ctx = identity_chain();
    for (double t : default_t_samples()) EXPECT_NEAR(std::abs(transition_phi(ctx, 0.6 - 0.2i, t)), 0.0, 1e-15);
}

TEST(Transition, OriginVanishesForBecker) {
    EXPECT_NEAR(std::abs(transition_phi(becker_chain(preset("koebe")), 0.0, 1.0)), 0.0, 1e-15);
}

TEST(Transfer, Examples) {
    CriterionParams p;
    Transfer t = transfer_w(p, 0.0);
    EXPECT_EQ(t.w, Complex(0.0));
    EXPECT_EQ(t.p, Complex(1.0));
    t = transfer_w(p, 0.3);
    EXPECT_NEAR(std::abs(t.w + 0.3), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(t.p - 0.7 / 1.3), 0.0, 1e-15);
    p.B = 0.0;
    t = transfer_w(p, 0.2);
    EXPECT_NEAR(std::abs(t.w + 1.0 / 3.0), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(t.p - 2.0 / 3.0), 0.0, 1e-15);
}

TEST(Diagnostics, IdentityAllPass) {
    const ChainDiagnostics d = chain_diagnostics(identity_chain(), DiskGrid{16, 32}, default_t_samples(), 1e-9);
    EXPECT_TRUE(d.all_passed());
    EXPECT_EQ(d.max_abs_w, 0.0);
}

TEST(Diagnostics, QuadraticBeckerPasses) {
    const ChainDiagnostics d =
        chain_diagnostics(becker_chain(poly({0.0, 1.0, 0.1})), DiskGrid{}, default_t_samples(), 1e-9);
    for (const auto& item : d.items) EXPECT_TRUE(item.passed) << item.name << ": " << item.detail;
}

TEST(Diagnostics, KoebeTransferFails) {
    const ChainDiagnostics d = chain_diagnostics(becker_chain(preset("koebe")), DiskGrid{}, default_t_samples(), 1e-9);
    EXPECT_FALSE(d.passed("transfer_bounds"));
    EXPECT_GT(d.max_abs_w, 1.0);
}

TEST(Winding, Circle) {
    std::vector<Complex> circle;
    for (int j = 0; j < 64; ++j) circle.push_back(std::polar(1.0, 2.0 * M_PI * j / 64));
    EXPECT_EQ(winding_number(circle, 0.2i), 1);
    EXPECT_EQ(winding_number(circle, 2.0), 0);
}

// Property: |w(z,0)| equals |(1/alpha)(f'/(g - beta) - 1)| when A = B, |A| = 1.
// The identity needs alpha = 1; otherwise w(z,0) follows the transition
// function, whose t = 0 value is (1/alpha) f'/(g - beta) - 1.
TEST(LoewnerProperty, TimeZeroTransferModulus) {
    const auto f = poly({0.0, 1.0, 0.15, -0.03});
    const AnalyticFunction g = over_z(poly({0.0, 1.0, 0.1}));
    for (Complex alpha : {Complex(1.0), 0.9 + 0.2i}) {
        for (Complex a : {Complex(1.0), std::polar(1.0, 0.7)}) {
            CriterionParams p;
            p.alpha = alpha;
            p.beta = 0.1;
            p.A = a;
            p.B = a;
            const auto ctx = ChainContext::make(f, g, p);
            for (Complex z : {Complex(0.2), 0.5i, Complex(-0.6, -0.3)}) {
                const Complex q = eval_jet(f, z).d1 / (eval_jet(g, z).value - p.beta);
                const double ref = alpha == 1.0 ? std::abs((q - 1.0) / alpha) : std::abs(q / alpha - 1.0);
                EXPECT_NEAR(std::abs(transfer_w(ctx, z, 0.0).w), ref, 1e-12);
            }
        }
    }
}

TEST(LoewnerProperty, IntegerAlphaIsRepeatedProduct) {
    const auto f = poly({0.0, 1.0, 0.2});
    for (int n : {2, 3, 5}) {
        CriterionParams p;
        p.alpha = double(n);
        const auto ctx = ChainContext::make(f, derivative_of(f), p);
        for (Complex z : {Complex(0.3), Complex(-0.5, 0.4)})
            for (double t : {0.1, 1.0, 2.0}) {
                const Complex base = phi2(ctx, z, t);
                Complex prod = 1.0;
                for (int k = 0; k < n; ++k) prod *= base;
                EXPECT_LE(std::abs(phi3(ctx, z, t) - prod), 1e-12 * std::max(1.0, std::abs(prod)));
            }
    }
}

TEST(LoewnerProperty, IdentityChainIsExponential) {
    const auto ctx = identity_chain();
    const DiskGrid grid{16, 32, 0.999, Clustering::Chebyshev};
    for (double t : default_t_samples()) {
        EXPECT_NEAR(std::abs(coefficient_a1(ctx.params, t) - std::exp(t)), 0.0, 1e-12 * std::exp(t));
        for (std::size_t k = 0; k < grid.size(); ++k) {
            const Complex z = grid.point(k);
            const Complex ref = std::exp(t) * z;
            EXPECT_LE(std::abs(chain_value(ctx, z, t) - ref), 1e-12 * std::max(1.0, std::abs(ref)));
        }
    }
}

TEST(LoewnerProperty, LeadingCoefficientMatches) {
    CriterionParams p;
    p.alpha = 0.8 + 0.1i;
    p.beta = 0.2;
    p.A = 0.9;
    p.B = 0.7;
    const auto f = poly({0.0, 1.0, 0.1});
    const auto ctx = ChainContext::make(f, derivative_of(f), p);
    const double r = 1e-3;
    for (double t : {0.1, 0.5, 1.0, 2.0}) {
        // a1 = (1/2 pi i) \oint L(z,t)/z^2 dz over |z| = r
        Complex acc = 0.0;
        const int n = 64;
        for (int j = 0; j < n; ++j) {
            const Complex z = std::polar(r, 2.0 * M_PI * j / n);
            acc += chain_value(ctx, z, t) / z;
        }
        const Complex a1 = acc / double(n);
        const Complex ref = coefficient_a1(p, t);
        EXPECT_LE(std::abs(a1 - ref), 1e-6 * std::abs(ref)) << "t = " << t;
    }
}

TEST(LoewnerProperty, TransferRoundtrip) {
    CriterionParams p;
    p.A = 0.7 + 0.2i;
    p.B = -0.3 + 0.5i;
    for (Complex phi : {Complex(0.1), Complex(-0.2, 0.3), Complex(0.05, -0.4)}) {
        const Transfer t = transfer_w(p, phi);
        const Complex back = (t.p - 1.0) / (p.A + p.B * t.p);
        EXPECT_LE(std::abs(back - t.w), 1e-14 * std::max(1.0, std::abs(t.w)));
    }
}

}  // namespace
}  // namespace univalence

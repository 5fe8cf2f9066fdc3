#pragma once

#include <optional>
#include <vector>

#include "univalence/criteria.hpp"

namespace univalence {

/// f (class A), g (g(0) = 1) and the criterion parameters that define the
/// chain L(z,t) = f(e^{-t}z) [phi2(z,t)]^alpha. Immutable; branch tracking
/// state lives on the stack of each evaluation.
struct ChainContext {
    AnalyticFunction f;
    AnalyticFunction g;
    CriterionParams params;

    static ChainContext make(AnalyticFunction f, AnalyticFunction g, CriterionParams params);
};

/// Chain context of a resolved criterion; empty for the real-part check,
/// which has no g.
std::optional<ChainContext> chain_context(const CriterionSetup& setup);

struct ChainSample {
    Complex z;
    double t = 0.0;
    Complex L;
    Complex w;
    Complex p;
};

Complex phi2(const ChainContext& ctx, Complex z, double t);

/// phi2^alpha along the branch seeded by the principal logarithm at z = 0
/// and continued radially out to z.
Complex phi3(const ChainContext& ctx, Complex z, double t);

Complex chain_value(const ChainContext& ctx, Complex z, double t);

/// Leading coefficient of z -> L(z,t), branch equal to 1 at t = 0.
Complex coefficient_a1(const CriterionParams& params, double t);

Complex transition_phi(const ChainContext& ctx, Complex z, double t);

struct Transfer {
    Complex w;
    Complex p;
};

Transfer transfer_w(const CriterionParams& params, Complex phi);
Transfer transfer_w(const ChainContext& ctx, Complex z, double t);

ChainSample sample_chain(const ChainContext& ctx, Complex z, double t);

/// t in {0, 0.1, 0.25, 0.5, 1, 2, 5, 10, 20}.
const std::vector<double>& default_t_samples();

struct ChainDiagnostics {
    std::vector<NamedCheck> items;
    double max_abs_w = 0.0;
    double min_re_p = 0.0;
    Complex worst_w_z;
    double worst_w_t = 0.0;
    double max_origin_mismatch = 0.0;  // |w(0,t)| against its closed form
    std::size_t samples = 0;

    bool passed(std::string_view item) const;
    bool all_passed() const;
    bool operator==(const ChainDiagnostics&) const = default;
};

/// Runs the chain-hypothesis checks: initial value, growth of a1,
/// |w| < 1 and Re p > 0, the origin closed form of w, and a subordination
/// spot check. Failures are reported, never thrown.
ChainDiagnostics chain_diagnostics(const ChainContext& ctx, const DiskGrid& grid,
                                   const std::vector<double>& t_samples, double tol,
                                   unsigned threads = 0);

/// Winding number of the closed polygon `curve` around `point`.
int winding_number(const std::vector<Complex>& curve, Complex point);

}  // namespace univalence

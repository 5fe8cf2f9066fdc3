#include "univalence/loewner.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "univalence/parallel.hpp"

namespace univalence {

namespace {

constexpr double kGuard = 1e-14;
constexpr double kMinStep = 1e-12;
constexpr double kMaxStep = 1.0 / 16.0;

bool is_integer_exponent(Complex alpha, int& n) {
    if (alpha.imag() != 0.0) return false;
    const double r = std::round(alpha.real());
    if (r != alpha.real() || std::abs(r) > 64) return false;
    n = static_cast<int>(r);
    return true;
}

Complex integer_power(Complex base, int n) {
    Complex out{1.0, 0.0};
    const Complex factor = n < 0 ? 1.0 / base : base;
    for (int i = 0; i < std::abs(n); ++i) out *= factor;
    return out;
}

// Continuous logarithm of phi2(., t) along the segment [0, z].
Complex continued_log_phi2(const ChainContext& ctx, Complex z, double t) {
    Complex prev = phi2(ctx, Complex(0.0), t);
    if (std::abs(prev) < kGuard) throw Error(ErrorKind::Branch, "phi2 vanishes at the origin", Complex(0.0));
    Complex log = std::log(prev);
    if (z == Complex(0.0)) return log;
    double s = 0.0;
    double ds = kMaxStep;
    while (s < 1.0) {
        const double step = std::min(ds, 1.0 - s);
        const Complex at = (s + step >= 1.0) ? z : (s + step) * z;
        const Complex next = phi2(ctx, at, t);
        if (std::abs(next) < kGuard) throw Error(ErrorKind::Branch, "phi2 vanishes on the continuation path", at);
        const double darg = std::arg(next / prev);
        if (std::abs(darg) >= 0.5 * std::numbers::pi) {
            ds = 0.5 * step;
            if (ds < kMinStep) throw Error(ErrorKind::Branch, "branch continuation step underflow", at);
            continue;
        }
        log = Complex(std::log(std::abs(next)), log.imag() + darg);
        prev = next;
        s += step;
        ds = std::min(kMaxStep, 2.0 * step);
    }
    return log;
}

std::string fmt(double v) {
    std::ostringstream out;
    out.precision(17);
    out << v;
    return out.str();
}

std::string fmt(Complex v) {
    std::ostringstream out;
    out.precision(17);
    out << "(" << v.real() << "," << v.imag() << ")";
    return out.str();
}

}  // namespace

ChainContext ChainContext::make(AnalyticFunction f, AnalyticFunction g, CriterionParams params) {
    if (f.class_tag() != ClassTag::ClassA) throw Error(ErrorKind::Validation, "chain requires f in class A");
    if (g.class_tag() != ClassTag::UnitConstantTerm) throw Error(ErrorKind::Validation, "chain requires g(0) = 1");
    require_valid(params);
    return ChainContext{std::move(f), std::move(g), params};
}

std::optional<ChainContext> chain_context(const CriterionSetup& setup) {
    if (setup.real_part_check || !setup.g) return std::nullopt;
    return ChainContext::make(setup.f, *setup.g, setup.params);
}

Complex phi2(const ChainContext& ctx, Complex z, double t) {
    const Complex u = std::exp(-t) * z;
    const Complex q = ratio_over_z(ctx.f, u);
    const Complex gu = eval_jet(ctx.g, u).value;
    // (e^t - e^{-t}) z / f(u) = (e^{2t} - 1) / (f(u)/u)
    return 1.0 + std::expm1(2.0 * t) * (gu - ctx.params.beta) / q;
}

Complex phi3(const ChainContext& ctx, Complex z, double t) {
    const Complex alpha = ctx.params.alpha;
    int n = 0;
    if (is_integer_exponent(alpha, n)) {
        const Complex base = phi2(ctx, z, t);
        if (n < 0 && std::abs(base) < kGuard) throw Error(ErrorKind::Branch, "phi2 vanishes", z);
        return n == 1 ? base : integer_power(base, n);
    }
    return std::exp(alpha * continued_log_phi2(ctx, z, t));
}

Complex chain_value(const ChainContext& ctx, Complex z, double t) {
    const Complex u = std::exp(-t) * z;
    return eval_jet(ctx.f, u).value * phi3(ctx, z, t);
}

Complex coefficient_a1(const CriterionParams& params, double t) {
    const Complex beta = params.beta;
    const Complex alpha = params.alpha;
    // the bracket runs along the segment from 1 to 1 - beta; it meets zero
    // only for real beta >= 1
    if (beta.imag() == 0.0 && beta.real() >= 1.0) {
        const double crossing = beta.real() == 1.0 ? std::numeric_limits<double>::infinity()
                                                   : -0.5 * std::log1p(-1.0 / beta.real());
        if (beta.real() == 1.0 || t >= crossing)
            throw Error(ErrorKind::Branch, "a1 bracket vanishes for t = " + fmt(crossing));
    }
    const Complex bracket = beta * std::exp(-2.0 * t) + 1.0 - beta;
    if (std::abs(bracket) < kGuard) throw Error(ErrorKind::Branch, "a1 bracket vanishes");
    return std::exp((2.0 * alpha - 1.0) * t + alpha * std::log(bracket));
}

Complex transition_phi(const ChainContext& ctx, Complex z, double t) {
    const CriterionParams& p = ctx.params;
    const Complex u = std::exp(-t) * z;
    const Jet2 fj = eval_jet(ctx.f, u);
    const Jet2 gj = eval_jet(ctx.g, u);
    const Complex shifted = gj.value - p.beta;
    if (std::abs(shifted) < kGuard) throw Error(ErrorKind::Inapplicable, "g(u) - beta vanishes", z);
    const double decay = std::exp(-2.0 * t);
    const double grow = -std::expm1(-2.0 * t);
    Complex bracket = u * gj.d1 / shifted;
    if (p.alpha != Complex(1.0, 0.0)) {
        bracket += (1.0 - p.alpha) / p.alpha * (fj.d1 / ratio_over_z(ctx.f, u));
    }
    return (fj.d1 / (p.alpha * shifted) - 1.0) * decay + grow * bracket;
}

Transfer transfer_w(const CriterionParams& params, Complex phi) {
    const Complex A = params.A, B = params.B;
    const Complex den = (A - B) * phi + A + B;
    if (std::abs(den) < kGuard) throw Error(ErrorKind::Pole, "(A-B)phi + A + B vanishes");
    const Complex w = -2.0 * phi / den;
    const Complex den_p = 1.0 - B * w;
    if (std::abs(den_p) < kGuard) throw Error(ErrorKind::Pole, "1 - B w vanishes");
    return {w, (1.0 + A * w) / den_p};
}

Transfer transfer_w(const ChainContext& ctx, Complex z, double t) {
    try {
        return transfer_w(ctx.params, transition_phi(ctx, z, t));
    } catch (const Error& e) {
        if (e.witness()) throw;
        throw Error(e.kind(), e.what(), z);
    }
}

ChainSample sample_chain(const ChainContext& ctx, Complex z, double t) {
    const Transfer tr = transfer_w(ctx, z, t);
    return {z, t, chain_value(ctx, z, t), tr.w, tr.p};
}

const std::vector<double>& default_t_samples() {
    static const std::vector<double> ts = {0.0, 0.1, 0.25, 0.5, 1.0, 2.0, 5.0, 10.0, 20.0};
    return ts;
}

int winding_number(const std::vector<Complex>& curve, Complex point) {
    double total = 0.0;
    const std::size_t n = curve.size();
    for (std::size_t j = 0; j < n; ++j) {
        const Complex a = curve[j] - point;
        const Complex b = curve[(j + 1) % n] - point;
        total += std::arg(b / a);
    }
    return static_cast<int>(std::lround(total / (2.0 * std::numbers::pi)));
}

bool ChainDiagnostics::passed(std::string_view item) const {
    for (const auto& c : items)
        if (c.name == item) return c.passed;
    return false;
}

bool ChainDiagnostics::all_passed() const {
    for (const auto& c : items)
        if (!c.passed) return false;
    return true;
}

ChainDiagnostics chain_diagnostics(const ChainContext& ctx, const DiskGrid& grid,
                                   const std::vector<double>& t_samples, double tol,
                                   unsigned threads) {
    grid.validate();
    ChainDiagnostics out;
    const std::size_t n = grid.size();

    // f nonvanishing on the sampling set minus the origin
    {
        std::optional<Complex> bad;
        for (std::size_t i = 0; i < n && !bad; ++i) {
            const Complex z = grid.point(i);
            try {
                ratio_over_z(ctx.f, z);
            } catch (const Error&) {
                bad = z;
            }
        }
        out.items.push_back({"f_nonvanishing", !bad, bad ? "f(z)/z vanishes at " + fmt(*bad) : "ok"});
    }

    struct PointStats {
        double initial_gap = 0.0;
        double max_w = 0.0;
        double min_re_p = std::numeric_limits<double>::infinity();
        double worst_t = 0.0;
        bool failed = false;
        std::string message;
    };
    std::vector<PointStats> stats(n);
    parallel_for(n, threads, [&](std::size_t i) {
        PointStats& s = stats[i];
        const Complex z = grid.point(i);
        try {
            s.initial_gap = std::abs(chain_value(ctx, z, 0.0) - eval_jet(ctx.f, z).value);
            for (double t : t_samples) {
                const Transfer tr = transfer_w(ctx, z, t);
                const double aw = std::abs(tr.w);
                if (aw > s.max_w) {
                    s.max_w = aw;
                    s.worst_t = t;
                }
                s.min_re_p = std::min(s.min_re_p, tr.p.real());
            }
        } catch (const Error& e) {
            s.failed = true;
            s.message = e.what();
        }
    });

    double initial_gap = 0.0;
    std::optional<std::size_t> failure;
    std::size_t worst = 0;
    out.min_re_p = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n; ++i) {
        const PointStats& s = stats[i];
        if (s.failed) {
            if (!failure) failure = i;
            continue;
        }
        initial_gap = std::max(initial_gap, s.initial_gap);
        if (s.max_w > out.max_abs_w) {
            out.max_abs_w = s.max_w;
            worst = i;
        }
        out.min_re_p = std::min(out.min_re_p, s.min_re_p);
    }
    out.samples = n * t_samples.size();
    out.worst_w_z = grid.point(worst);
    out.worst_w_t = stats[worst].worst_t;
    if (!std::isfinite(out.min_re_p)) out.min_re_p = 0.0;

    out.items.push_back({"initial_value", !failure && initial_gap <= tol,
                         "max |L(z,0) - f(z)| = " + fmt(initial_gap)});

    // (b) growth of |a1|
    {
        bool ok = !t_samples.empty();
        std::string detail;
        try {
            double prev = -1.0;
            for (double t : t_samples) {
                const double a = std::abs(coefficient_a1(ctx.params, t));
                if (!(a > prev)) ok = false;
                prev = a;
            }
            const double t_max = t_samples.empty() ? 0.0 : t_samples.back();
            const double last = std::abs(coefficient_a1(ctx.params, t_max));
            if (!(last > 1e6)) ok = false;
            detail = "|a1(" + fmt(t_max) + ")| = " + fmt(last);
        } catch (const Error& e) {
            ok = false;
            detail = e.what();
        }
        out.items.push_back({"a1_growth", ok, detail});
    }

    // (c) |w| < 1 and Re p > 0
    {
        const bool ok = !failure && out.max_abs_w < 1.0 && out.min_re_p > 0.0;
        std::string detail = "max |w| = " + fmt(out.max_abs_w) + " at z = " + fmt(out.worst_w_z) +
                             ", t = " + fmt(out.worst_w_t) + "; min Re p = " + fmt(out.min_re_p);
        if (failure) detail += "; evaluation failed at " + fmt(grid.point(*failure)) + ": " + stats[*failure].message;
        out.items.push_back({"transfer_bounds", ok, detail});
    }

    // (d) w(0,t) against (1/(alpha(1-beta)) - 1) e^{-2t} pushed through the w map
    {
        const CriterionParams& p = ctx.params;
        const Complex phi0 = 1.0 / (p.alpha * (1.0 - p.beta)) - 1.0;
        const bool literal = p.A == p.B && std::abs(std::abs(p.A) - 1.0) < 1e-15;
        bool ok = true;
        std::string detail;
        try {
            for (double t : t_samples) {
                const Complex phi_t = phi0 * std::exp(-2.0 * t);
                const double measured = std::abs(transfer_w(ctx, Complex(0.0), t).w);
                const double expected = literal ? std::abs(phi_t) : std::abs(transfer_w(p, phi_t).w);
                out.max_origin_mismatch = std::max(out.max_origin_mismatch, std::abs(measured - expected));
            }
            ok = out.max_origin_mismatch <= tol;
            detail = std::string(literal ? "literal" : "mapped") + " form, max mismatch " + fmt(out.max_origin_mismatch);
        } catch (const Error& e) {
            ok = false;
            detail = e.what();
        }
        out.items.push_back({"origin_closed_form", ok, detail});
    }

    // (e) L(0.9 e^{i theta}, t) inside the curve L(0.999 e^{i theta}, s) for t < s
    {
        constexpr int kOuter = 2048;
        constexpr int kInner = 64;
        int checked = 0, outside = 0;
        std::string detail;
        bool ok = true;
        try {
            for (std::size_t a = 0; a + 1 < t_samples.size(); ++a) {
                const double t = t_samples[a], s = t_samples[a + 1];
                std::vector<Complex> curve(kOuter);
                parallel_for(kOuter, threads, [&](std::size_t j) {
                    curve[j] = chain_value(ctx, std::polar(0.999, 2.0 * std::numbers::pi * j / kOuter), s);
                });
                for (int j = 0; j < kInner; ++j) {
                    const Complex inner = chain_value(ctx, std::polar(0.9, 2.0 * std::numbers::pi * j / kInner), t);
                    ++checked;
                    if (winding_number(curve, inner) == 0) ++outside;
                }
            }
            ok = outside == 0;
            detail = std::to_string(outside) + " of " + std::to_string(checked) + " inner points outside";
        } catch (const Error& e) {
            ok = false;
            detail = e.what();
        }
        out.items.push_back({"subordination", ok, detail});
    }
    return out;
}

}  // namespace univalence

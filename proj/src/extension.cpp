#include "univalence/extension.hpp"

#include <cmath>
#include <numbers>

#include "univalence/parallel.hpp"

namespace univalence {

Complex extend_point(const ChainContext& ctx, Complex z) {
    const double r = std::abs(z);
    if (r < 1.0) return eval_jet(ctx.f, z).value;
    return chain_value(ctx, z / r, std::log(r));
}

double default_step(Complex z) {
    return std::clamp(1e-4 * std::max(1.0, std::abs(z)), 1e-7, 1e-3);
}

Complex beltrami_at(const ChainContext& ctx, Complex z, double h) {
    if (!(h >= 1e-7 && h <= 1e-3)) throw Error(ErrorKind::Validation, "finite-difference step outside [1e-7, 1e-3]");
    const double r = std::abs(z);
    if (r > 1.0 - 2.0 * h && r < 1.0 + 2.0 * h)
        throw Error(ErrorKind::Validation, "point inside the seam exclusion band", z);
    const Complex ih{0.0, h};
    const Complex fx = (extend_point(ctx, z + h) - extend_point(ctx, z - h)) / (2.0 * h);
    const Complex fy = (extend_point(ctx, z + ih) - extend_point(ctx, z - ih)) / (2.0 * h);
    const Complex i{0.0, 1.0};
    const Complex fz = 0.5 * (fx - i * fy);
    const Complex fzbar = 0.5 * (fx + i * fy);
    if (std::abs(fz) < 1e-10) throw Error(ErrorKind::Degenerate, "|F_z| below 1e-10", z);
    return fzbar / fz;
}

BeltramiEstimate dilatation_report(const ChainContext& ctx, const Annulus& annulus, double h,
                                   unsigned threads) {
    if (annulus.n_r < 1 || annulus.n_theta < 1 || !(annulus.r_out >= annulus.r_in))
        throw Error(ErrorKind::Validation, "annulus needs n_r, n_theta >= 1 and r_out >= r_in");
    if (!(annulus.r_in > 1.0 + 2.0 * h)) throw Error(ErrorKind::Validation, "annulus must start beyond 1 + 2h");

    BeltramiEstimate est;
    est.annulus = annulus;
    est.h = h;
    if (ctx.params.mode == Mode::Quasiconformal) est.criterion_k = ctx.params.k;

    const std::size_t n = static_cast<std::size_t>(annulus.n_r) * annulus.n_theta;
    auto point = [&](std::size_t flat) {
        const int i = static_cast<int>(flat / annulus.n_theta);
        const int j = static_cast<int>(flat % annulus.n_theta);
        const double r = annulus.n_r == 1 ? annulus.r_in
                                          : annulus.r_in + (annulus.r_out - annulus.r_in) * i / (annulus.n_r - 1);
        return std::polar(r, 2.0 * std::numbers::pi * j / annulus.n_theta);
    };

    struct Slot {
        Complex mu;
        double w_transfer = 0.0;
        double w_becker = 0.0;
        bool failed = false;
    };
    std::vector<Slot> slots(n);
    parallel_for(n, threads, [&](std::size_t k) {
        Slot& s = slots[k];
        const Complex z = point(k);
        try {
            s.mu = beltrami_at(ctx, z, h);
        } catch (const Error&) {
            s.failed = true;
        }
        try {
            const double r = std::abs(z);
            const Transfer tr = transfer_w(ctx, z / r, std::log(r));
            s.w_transfer = std::abs(tr.w);
            s.w_becker = std::abs((tr.p - 1.0) / (tr.p + 1.0));
        } catch (const Error&) {
        }
    });

    est.mu_values.resize(n);
    std::size_t worst = 0;
    bool any = false;
    for (std::size_t k = 0; k < n; ++k) {
        const Slot& s = slots[k];
        est.max_w_transfer = std::max(est.max_w_transfer, s.w_transfer);
        est.max_w_becker = std::max(est.max_w_becker, s.w_becker);
        if (s.failed) {
            ++est.failed_points;
            continue;
        }
        est.mu_values[k] = s.mu;
        if (!any || std::abs(s.mu) > est.sup_abs_mu) {
            est.sup_abs_mu = std::abs(s.mu);
            worst = k;
            any = true;
        }
    }
    est.worst_point = point(worst);
    est.reliable = est.failed_points * 100 < n;
    return est;
}

SeamReport seam_continuity(const ChainContext& ctx, int n_theta, double eps) {
    if (!(eps >= 1e-8 && eps <= 1e-3)) throw Error(ErrorKind::Validation, "seam eps outside [1e-8, 1e-3]");
    if (n_theta < 1) throw Error(ErrorKind::Validation, "seam check needs n_theta >= 1");
    SeamReport out;
    out.eps = eps;
    out.gaps.resize(n_theta);
    for (int j = 0; j < n_theta; ++j) {
        const double th = 2.0 * std::numbers::pi * j / n_theta;
        const double gap = std::abs(extend_point(ctx, std::polar(1.0 - eps, th)) -
                                    extend_point(ctx, std::polar(1.0 + eps, th)));
        out.gaps[j] = gap;
        out.max_gap = std::max(out.max_gap, gap);
    }
    return out;
}

}  // namespace univalence

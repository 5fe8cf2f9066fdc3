#pragma once

#include <optional>
#include <vector>

#include "univalence/loewner.hpp"

namespace univalence {

struct Annulus {
    double r_in = 1.05;
    double r_out = 3.0;
    int n_r = 128;
    int n_theta = 256;

    bool operator==(const Annulus&) const = default;
};

struct BeltramiEstimate {
    Annulus annulus;
    double h = 1e-4;
    std::vector<Complex> mu_values;   // flat index i_r * n_theta + i_theta
    double sup_abs_mu = 0.0;
    Complex worst_point;
    std::size_t failed_points = 0;
    bool reliable = true;             // false once 1% or more of the points failed
    std::optional<double> criterion_k;
    bool criterion_satisfied = false;
    // |w| at the matched chain points (e^{i theta}, log r), once from the
    // A,B transfer map and once as |(p-1)/(p+1)|
    double max_w_transfer = 0.0;
    double max_w_becker = 0.0;
};

/// F(z) = L(z,0) = f(z) inside the unit disk, L(z/|z|, log|z|) outside.
Complex extend_point(const ChainContext& ctx, Complex z);

/// Default finite-difference step 1e-4 max(1, |z|), clamped to [1e-7, 1e-3].
double default_step(Complex z);

/// mu = F_zbar / F_z from central differences; z must avoid the seam band
/// 1 - 2h < |z| < 1 + 2h.
Complex beltrami_at(const ChainContext& ctx, Complex z, double h);

BeltramiEstimate dilatation_report(const ChainContext& ctx, const Annulus& annulus, double h,
                                   unsigned threads = 0);

struct SeamReport {
    double eps = 0.0;
    std::vector<double> gaps;  // per angle 2 pi j / n_theta
    double max_gap = 0.0;

    bool operator==(const SeamReport&) const = default;
};

SeamReport seam_continuity(const ChainContext& ctx, int n_theta, double eps);

}  // namespace univalence

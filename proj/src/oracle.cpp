#include "univalence/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <sstream>

#include "univalence/parallel.hpp"

namespace univalence {

std::string_view to_string(OracleMethod m) {
    switch (m) {
        case OracleMethod::Pairwise: return "pairwise";
        case OracleMethod::ArgumentPrinciple: return "argument-principle";
        case OracleMethod::Local: return "local";
    }
    return "pairwise";
}

std::string_view to_string(OracleVerdict v) {
    switch (v) {
        case OracleVerdict::ConsistentWithUnivalent: return "consistent-with-univalent";
        case OracleVerdict::NonUnivalent: return "non-univalent";
        case OracleVerdict::Inconclusive: return "inconclusive";
    }
    return "inconclusive";
}

namespace {

constexpr std::size_t kPairwiseLimit = 10000;
constexpr double kContourClearance = 1e-8;
constexpr int kMaxNodes = 1 << 22;
constexpr int kShrinkRetries = 50;

std::string fmt(Complex v) {
    std::ostringstream out;
    out.precision(17);
    out << "(" << v.real() << "," << v.imag() << ")";
    return out.str();
}

// Trapezoid approximation of (1/2 pi i) \oint h'/h dz; empty when the
// contour comes closer than the clearance to a zero or leaves the domain.
std::optional<Complex> contour_sum(const JetFn& h, Complex center, double r, int n) {
    Complex acc{0.0, 0.0};
    for (int j = 0; j < n; ++j) {
        const Complex offset = std::polar(r, 2.0 * std::numbers::pi * j / n);
        std::pair<Complex, Complex> v;
        try {
            v = h(center + offset);
        } catch (const Error&) {
            return std::nullopt;
        }
        if (std::abs(v.first) < kContourClearance) return std::nullopt;
        acc += offset * v.second / v.first;
    }
    return acc / double(n);
}

JetFn derivative_jet(const AnalyticFunction& f) {
    return [&f](Complex z) {
        const Jet2 j = eval_jet(f, z);
        return std::pair{j.d1, j.d2};
    };
}

}  // namespace

DiskGrid oracle_grid(double r_max) { return DiskGrid{40, 128, r_max, Clustering::Uniform}; }

OracleReport pairwise_injectivity(const AnalyticFunction& f, const DiskGrid& grid, const OracleOptions& options) {
    grid.validate();
    const std::size_t n = grid.size();
    if (n > kPairwiseLimit) throw Error(ErrorKind::Validation, "pairwise injectivity needs at most 1e4 grid points");
    OracleReport report;
    report.method = OracleMethod::Pairwise;
    report.samples_used = n;

    std::vector<Complex> z(n), w(n);
    std::vector<char> ok(n, 1);
    for (std::size_t i = 0; i < n; ++i) {
        z[i] = grid.point(i);
        try {
            w[i] = eval_jet(f, z[i]).value;
        } catch (const Error&) {
            ok[i] = 0;
        }
    }
    const double tol = options.tol;
    std::vector<std::size_t> partner(n, n);
    parallel_for(n, options.threads, [&](std::size_t i) {
        if (!ok[i]) return;
        for (std::size_t j = i + 1; j < n; ++j) {
            if (!ok[j] || std::abs(z[i] - z[j]) <= 10.0 * tol) continue;
            if (std::abs(w[i] - w[j]) < tol) {
                partner[i] = j;
                return;
            }
        }
    });
    const auto skipped = static_cast<std::size_t>(std::count(ok.begin(), ok.end(), 0));
    for (std::size_t i = 0; i < n; ++i) {
        if (partner[i] == n) continue;
        report.verdict = OracleVerdict::NonUnivalent;
        report.witness_points = {z[i], z[partner[i]]};
        report.witness_target = w[i];
        report.detail = "f" + fmt(z[i]) + " = f" + fmt(z[partner[i]]);
        return report;
    }
    report.verdict = OracleVerdict::ConsistentWithUnivalent;
    report.detail = "no collisions among " + std::to_string(n - skipped) + " evaluated points";
    return report;
}

std::optional<ZeroCount> count_zeros(const JetFn& h, Complex center, double r, int n) {
    double radius = r;
    for (int attempt = 0; attempt <= kShrinkRetries; ++attempt, radius *= 0.99) {
        auto raw = contour_sum(h, center, radius, n);
        if (!raw) continue;
        long prev = std::lround(raw->real());
        for (int nodes = 2 * n; nodes <= kMaxNodes; nodes *= 2) {
            raw = contour_sum(h, center, radius, nodes);
            if (!raw) break;
            const long c = std::lround(raw->real());
            if (c == prev && std::abs(raw->real() - double(c)) < 0.1 && std::abs(raw->imag()) < 0.1)
                return ZeroCount{static_cast<int>(c), radius, nodes};
            prev = c;
        }
        if (raw) return std::nullopt;  // ran out of nodes without agreement
    }
    return std::nullopt;
}

std::optional<ZeroCount> argument_principle_count(const AnalyticFunction& f, Complex target, double r, int n) {
    const JetFn h = [&f, target](Complex z) {
        const Jet2 j = eval_jet(f, z);
        return std::pair{j.value - target, j.d1};
    };
    return count_zeros(h, Complex(0.0), r, n);
}

OracleReport argument_principle_oracle(const AnalyticFunction& f, const DiskGrid& grid, const OracleOptions& options) {
    grid.validate();
    OracleReport report;
    report.method = OracleMethod::ArgumentPrinciple;
    const double contour = grid.r_max;

    // up to 8 radii (excluding the origin and the contour itself) x 16 angles
    std::vector<Complex> sources;
    const int r_stride = std::max(1, (grid.n_r - 2) / 8);
    const int t_stride = std::max(1, grid.n_theta / 16);
    for (int i = 1; i < grid.n_r; i += r_stride) {
        if (grid.radius(i) > 0.95 * contour) break;
        for (int j = 0; j < grid.n_theta; j += t_stride) sources.push_back(grid.point(i, j));
    }
    if (sources.empty()) sources.push_back(Complex(0.5 * contour, 0.0));

    struct Slot {
        std::optional<Complex> target;
        std::optional<ZeroCount> count;
    };
    std::vector<Slot> slots(sources.size());
    parallel_for(sources.size(), options.threads, [&](std::size_t k) {
        try {
            const Complex target = eval_jet(f, sources[k]).value;
            slots[k].target = target;
            slots[k].count = argument_principle_count(f, target, contour);
        } catch (const Error&) {
        }
    });

    std::size_t inconclusive = 0;
    for (std::size_t k = 0; k < slots.size(); ++k) {
        const Slot& s = slots[k];
        if (s.count) report.samples_used += static_cast<std::size_t>(s.count->nodes);
        if (!s.target || !s.count || s.count->count < 1) {
            ++inconclusive;
            continue;
        }
        if (s.count->count >= 2 && report.verdict != OracleVerdict::NonUnivalent) {
            report.verdict = OracleVerdict::NonUnivalent;
            report.witness_points = {sources[k]};
            report.witness_target = *s.target;
            report.preimage_count = s.count->count;
            report.contour_radius = s.count->radius;
            std::ostringstream d;
            d << "target f" << fmt(sources[k]) << " has " << s.count->count << " preimages in |z| < "
              << s.count->radius;
            report.detail = d.str();
        }
    }
    if (report.verdict == OracleVerdict::NonUnivalent) return report;
    if (inconclusive == slots.size()) {
        report.verdict = OracleVerdict::Inconclusive;
        report.detail = "no conclusive preimage count";
        return report;
    }
    report.verdict = OracleVerdict::ConsistentWithUnivalent;
    report.detail = std::to_string(slots.size() - inconclusive) + " targets with a single preimage, " +
                    std::to_string(inconclusive) + " inconclusive";
    return report;
}

OracleReport local_univalence(const AnalyticFunction& f, const DiskGrid& grid, const OracleOptions& options) {
    grid.validate();
    OracleReport report;
    report.method = OracleMethod::Local;
    const std::size_t n = grid.size();
    const double limit = std::min(1.0, f.radius());

    std::vector<double> mag(n, std::numeric_limits<double>::infinity());
    for (std::size_t i = 0; i < n; ++i) {
        try {
            mag[i] = std::abs(eval_jet(f, grid.point(i)).d1);
        } catch (const Error&) {
        }
    }
    report.samples_used = n;

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return mag[a] < mag[b]; });

    constexpr std::size_t kSeeds = 32;
    std::vector<Complex> tried;
    for (std::size_t s = 0, used = 0; s < n && used < kSeeds; ++s) {
        Complex z = grid.point(order[s]);
        if (!std::isfinite(mag[order[s]])) break;
        if (std::any_of(tried.begin(), tried.end(), [&](Complex t) { return std::abs(t - z) < 1e-12; })) continue;
        tried.push_back(z);
        ++used;
        bool inside = true;
        try {
            for (int it = 0; it < 60; ++it) {
                const Jet2 j = eval_jet(f, z);
                ++report.samples_used;
                if (std::abs(j.d1) < 1e-3 * options.tol) break;
                if (std::abs(j.d2) == 0.0) {
                    inside = false;
                    break;
                }
                const Complex step = j.d1 / j.d2;
                z -= step;
                if (!(std::abs(z) < limit)) {
                    inside = false;
                    break;
                }
                if (std::abs(step) < 1e-16 * std::max(1.0, std::abs(z))) break;
            }
            if (!inside) continue;
            if (!(std::abs(eval_jet(f, z).d1) < options.tol)) continue;
        } catch (const Error&) {
            continue;
        }
        const double rho = std::min(1e-3, 0.5 * (limit - std::abs(z)));
        if (!(rho > 0.0)) continue;
        const auto certificate = count_zeros(derivative_jet(f), z, rho);
        if (!certificate || certificate->count < 1) continue;
        report.samples_used += static_cast<std::size_t>(certificate->nodes);
        report.verdict = OracleVerdict::NonUnivalent;
        report.witness_points = {z};
        std::ostringstream d;
        d << "f'" << fmt(z) << " = 0, " << certificate->count << " zero(s) of f' within " << certificate->radius;
        report.detail = d.str();
        return report;
    }
    report.verdict = OracleVerdict::ConsistentWithUnivalent;
    report.detail = "no critical point found from " + std::to_string(tried.size()) + " seeds";
    return report;
}

bool witness_reproduces(const AnalyticFunction& f, const OracleReport& report, double tol) {
    if (report.verdict != OracleVerdict::NonUnivalent) return false;
    try {
        switch (report.method) {
            case OracleMethod::Pairwise: {
                if (report.witness_points.size() != 2) return false;
                const Complex a = report.witness_points[0], b = report.witness_points[1];
                return std::abs(a - b) > 10.0 * tol &&
                       std::abs(eval_jet(f, a).value - eval_jet(f, b).value) < tol;
            }
            case OracleMethod::ArgumentPrinciple: {
                if (!report.witness_target || report.witness_points.empty()) return false;
                const Complex z = report.witness_points[0];
                if (std::abs(eval_jet(f, z).value - *report.witness_target) > tol) return false;
                if (!report.contour_radius) return false;
                const auto again = argument_principle_count(f, *report.witness_target, *report.contour_radius);
                return again && again->count >= 2;
            }
            case OracleMethod::Local: {
                if (report.witness_points.size() != 1) return false;
                return std::abs(eval_jet(f, report.witness_points[0]).d1) < tol;
            }
        }
    } catch (const Error&) {
        return false;
    }
    return false;
}

}  // namespace univalence

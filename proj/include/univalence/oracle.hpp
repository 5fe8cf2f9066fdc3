#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "univalence/criteria.hpp"

namespace univalence {

enum class OracleMethod { Pairwise, ArgumentPrinciple, Local };
enum class OracleVerdict { ConsistentWithUnivalent, NonUnivalent, Inconclusive };

std::string_view to_string(OracleMethod m);
std::string_view to_string(OracleVerdict v);

/// A non-univalent verdict always carries a witness: two colliding points
/// (pairwise), a target with its preimage count and a sample preimage
/// (argument principle), or a critical point of f (local).
struct OracleReport {
    OracleMethod method = OracleMethod::Pairwise;
    OracleVerdict verdict = OracleVerdict::Inconclusive;
    std::vector<Complex> witness_points;
    std::optional<Complex> witness_target;
    std::optional<int> preimage_count;
    std::optional<double> contour_radius;
    std::size_t samples_used = 0;
    std::string detail;

    bool operator==(const OracleReport&) const = default;
};

struct OracleOptions {
    double tol = 1e-9;
    unsigned threads = 0;
};

/// Pairwise collision scan over at most 1e4 grid points.
OracleReport pairwise_injectivity(const AnalyticFunction& f, const DiskGrid& grid,
                                  const OracleOptions& options = {});

struct ZeroCount {
    int count = 0;
    double radius = 0.0;  // contour radius actually used
    int nodes = 0;        // trapezoid nodes at convergence
};

/// Value and derivative of the map whose zeros are counted.
using JetFn = std::function<std::pair<Complex, Complex>(Complex)>;

/// Zeros of h inside |z - center| < r by the trapezoid rule on the argument
/// principle integral. n doubles until two consecutive rounded counts agree;
/// the contour shrinks by 0.99 (up to 50 times) while it passes within 1e-8
/// of a zero. Empty when no conclusive count was reached.
std::optional<ZeroCount> count_zeros(const JetFn& h, Complex center, double r, int n = 1024);

/// Number of preimages of `target` under f in |z| < r.
std::optional<ZeroCount> argument_principle_count(const AnalyticFunction& f, Complex target, double r,
                                                  int n = 1024);

/// Counts preimages of f(z_k) for a subsample of grid points z_k inside the
/// contour |z| = grid.r_max; two or more refute injectivity.
OracleReport argument_principle_oracle(const AnalyticFunction& f, const DiskGrid& grid,
                                       const OracleOptions& options = {});

/// Searches for a zero of f' in the disk: Newton from the grid points with
/// the smallest |f'|, certified by counting zeros of f' around the limit.
OracleReport local_univalence(const AnalyticFunction& f, const DiskGrid& grid,
                              const OracleOptions& options = {});

/// Re-evaluates the witness of a non-univalent report; true when it
/// reproduces the failure.
bool witness_reproduces(const AnalyticFunction& f, const OracleReport& report, double tol = 1e-9);

/// Grid used for the oracle cross-checks of a run: uniform, 40 x 128, same r_max.
DiskGrid oracle_grid(double r_max);

}  // namespace univalence

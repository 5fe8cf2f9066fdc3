#include "univalence/run.hpp"

#include <chrono>
#include <cstdio>
#include <fstream>

#include "univalence/extension.hpp"
#include "univalence/render.hpp"

namespace univalence {

bool is_execution_key(const std::string& key) { return key == "threads" || key == "out-dir"; }

namespace {

constexpr double kBeltramiStep = 1e-4;
constexpr double kSeamEps = 1e-6;
constexpr int kDomainPixels = 256;

class Stopwatch {
public:
    explicit Stopwatch(std::vector<PhaseTiming>& sink) : sink_(sink) {}

    template <class F>
    auto time(const std::string& phase, F&& body) {
        const auto start = std::chrono::steady_clock::now();
        struct Record {
            std::vector<PhaseTiming>& sink;
            std::string phase;
            std::chrono::steady_clock::time_point start;
            ~Record() {
                sink.push_back({phase, std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count()});
            }
        } record{sink_, phase, start};
        return body();
    }

private:
    std::vector<PhaseTiming>& sink_;
};

AnalyticFunction build_g(const FunctionSpec& spec, const AnalyticFunction& f) {
    if (!spec.coefficients) {
        if (spec.name == "f_prime") return derivative_of(f);
        if (spec.name == "f_over_z") return over_z(f);
    }
    return build_function(spec, ClassTag::UnitConstantTerm);
}

std::string describe(const FunctionSpec& spec) {
    if (spec.coefficients) return "coefficients";
    return spec.name;
}

void write_timings(const std::vector<PhaseTiming>& timings, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw Error(ErrorKind::Io, "cannot open " + path.string() + " for writing");
    for (const auto& t : timings) {
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.6f", t.seconds);
        out << t.phase << " " << buf << "\n";
    }
}

RunStatus status_of(Verdict v) {
    switch (v) {
        case Verdict::NoViolationFound: return RunStatus::Pass;
        case Verdict::Violation: return RunStatus::Violation;
        case Verdict::Inapplicable: return RunStatus::Inapplicable;
    }
    return RunStatus::Error;
}

}  // namespace

RunOutcome run(const RunConfig& config) {
    RunOutcome outcome;
    RunReport& report = outcome.report;
    Stopwatch clock(outcome.timings);
    for (const auto& kv : config.echo)
        if (!is_execution_key(kv.first)) report.config.push_back(kv);

    std::optional<CriterionReport> criterion;
    std::optional<CriterionSetup> setup;
    std::optional<ChainContext> ctx;
    std::optional<BeltramiEstimate> beltrami;

    try {
        std::filesystem::create_directories(config.out_dir);

        clock.time("validate", [&] {
            const AnalyticFunction f = build_function(config.f, ClassTag::ClassA);
            std::optional<AnalyticFunction> g;
            if (config.g) g = build_g(*config.g, f);
            setup = resolve_preset(config.criterion, f, g, config.params);
            report.f_name = describe(config.f);
            if (setup->g) report.g_name = setup->g_rule == GRule::User && config.g ? describe(*config.g)
                                                                                  : std::string(to_string(setup->g_rule));
            return 0;
        });

        CheckOptions options;
        options.tol = config.tol;
        options.refine_rounds = config.refine;
        options.threads = config.threads;
        options.rhs_scale = config.fault_rhs_scale;
        criterion = clock.time("criterion", [&] { return check_criterion(*setup, config.grid, options); });
        report.criterion = summarize(*criterion);
        report.status = status_of(criterion->verdict);
        report.message = criterion->message;

        ctx = chain_context(*setup);
        const bool passed = criterion->verdict == Verdict::NoViolationFound;

        if (passed && ctx && config.emits(Emit::Diagnostics)) {
            report.diagnostics = clock.time("diagnostics", [&] {
                return chain_diagnostics(*ctx, config.grid, default_t_samples(), config.tol, config.threads);
            });
        }

        if (ctx && (setup->params.mode == Mode::Quasiconformal || config.emits(Emit::Beltrami))) {
            try {
                clock.time("extension", [&] {
                    beltrami = dilatation_report(*ctx, Annulus{}, kBeltramiStep, config.threads);
                    beltrami->criterion_satisfied = passed;
                    report.beltrami = summarize(*beltrami);
                    report.seam = seam_continuity(*ctx, config.grid.n_theta, kSeamEps);
                    return 0;
                });
            } catch (const Error& e) {
                report.message += std::string(report.message.empty() ? "" : "; ") + "extension: " + e.what();
            }
        }

        clock.time("oracles", [&] {
            OracleOptions oo{config.tol, config.threads};
            const DiskGrid og = oracle_grid(config.grid.r_max);
            report.oracles.push_back(pairwise_injectivity(setup->f, og, oo));
            report.oracles.push_back(argument_principle_oracle(setup->f, og, oo));
            report.oracles.push_back(local_univalence(setup->f, config.grid, oo));
            return 0;
        });

        if (passed) {
            for (const auto& o : report.oracles) {
                if (o.verdict == OracleVerdict::NonUnivalent) {
                    report.status = RunStatus::Inconsistent;
                    report.message = "criterion passed but the " + std::string(to_string(o.method)) +
                                     " oracle refutes univalence: " + o.detail;
                    break;
                }
            }
            if (report.status == RunStatus::Pass && report.diagnostics && !report.diagnostics->passed("transfer_bounds")) {
                report.status = RunStatus::Inconsistent;
                report.message = "criterion passed but the transfer function leaves the unit disk (max |w| = " +
                                 std::to_string(report.diagnostics->max_abs_w) + ")";
            }
        }

        clock.time("render", [&] {
            if (config.emits(Emit::Heatmap1)) render_margin_heatmap(criterion->field1, config.out_dir / "heatmap1.ppm");
            if (config.emits(Emit::Heatmap2) && criterion->field2)
                render_margin_heatmap(*criterion->field2, config.out_dir / "heatmap2.ppm");
            if (config.emits(Emit::Domain)) {
                const AnalyticFunction& f = setup->f;
                std::function<Complex(Complex)> map;
                Window window;
                window.pixels = kDomainPixels;
                if (ctx) {
                    map = [&](Complex z) { return extend_point(*ctx, z); };
                    window.half_width = 3.0;
                } else {
                    map = [&](Complex z) { return eval_jet(f, z).value; };
                    window.half_width = 1.0;
                }
                report.domain_error_pixels =
                    render_domain_coloring(map, window, config.out_dir / "domain.ppm", config.threads);
            }
            if (config.emits(Emit::Beltrami) && beltrami) {
                std::vector<double> mags(beltrami->mu_values.size());
                for (std::size_t i = 0; i < mags.size(); ++i) mags[i] = std::abs(beltrami->mu_values[i]);
                write_ppm(unit_heatmap(mags, beltrami->annulus.n_theta, beltrami->annulus.n_r),
                          config.out_dir / "beltrami.ppm");
            }
            return 0;
        });
    } catch (const Error& e) {
        report.status = e.kind() == ErrorKind::Inapplicable ? RunStatus::Inapplicable : RunStatus::Error;
        report.message = std::string(to_string(e.kind())) + ": " + e.what();
    } catch (const std::exception& e) {
        report.status = RunStatus::Error;
        report.message = e.what();
    }

    try {
        if (config.emits(Emit::Report)) {
            std::filesystem::create_directories(config.out_dir);
            write_report(report, config.out_dir / "run.report");
            write_timings(outcome.timings, config.out_dir / "run.timing");
        }
    } catch (const std::exception& e) {
        report.status = RunStatus::Error;
        report.message = std::string("writing report: ") + e.what();
    }
    return outcome;
}

}  // namespace univalence

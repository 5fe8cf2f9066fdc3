#include "univalence/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <initializer_list>

#include "json.hpp"

namespace univalence {

using Json = nlohmann::ordered_json;

std::string_view to_string(RunStatus s) {
    switch (s) {
        case RunStatus::Pass: return "pass";
        case RunStatus::Violation: return "violation";
        case RunStatus::Inapplicable: return "inapplicable";
        case RunStatus::Error: return "error";
        case RunStatus::Inconsistent: return "inconsistent";
    }
    return "error";
}

int exit_code(RunStatus s) {
    switch (s) {
        case RunStatus::Pass: return 0;
        case RunStatus::Violation: return 1;
        case RunStatus::Inapplicable:
        case RunStatus::Error: return 2;
        case RunStatus::Inconsistent: return 3;
    }
    return 2;
}

FieldSummary summarize(const MarginField& field) {
    return {field.worst_margin, field.worst_point, field.worst_index};
}

CriterionSummary summarize(const CriterionReport& r) {
    CriterionSummary s;
    s.id = r.criterion_id;
    s.params = r.params;
    s.r1 = r.rhs.r1;
    s.r2 = r.rhs.r2;
    s.center = r.rhs.center;
    s.tol = r.tol;
    s.verdict = r.verdict;
    s.grid = r.field1.grid;
    s.condition1 = summarize(r.field1);
    if (r.field2) s.condition2 = summarize(*r.field2);
    s.refine1 = r.refine1;
    s.refine2 = r.refine2;
    s.witness = r.witness;
    s.message = r.message;
    s.checks = r.diagnostics;
    return s;
}

BeltramiSummary summarize(const BeltramiEstimate& e) {
    return {e.annulus,    e.h,           e.sup_abs_mu,          e.worst_point,    e.failed_points,
            e.reliable,   e.criterion_k, e.criterion_satisfied, e.max_w_transfer, e.max_w_becker};
}

namespace {

// ---- encoding ----

Json num(double v) {
    if (std::isnan(v)) return "NaN";
    if (std::isinf(v)) return v > 0 ? "Infinity" : "-Infinity";
    return v;
}

Json cplx(Complex z) { return Json::array({num(z.real()), num(z.imag())}); }

template <class T, class F>
Json opt(const std::optional<T>& v, F&& encode) {
    return v ? encode(*v) : Json(nullptr);
}

Json encode(const CriterionParams& p) {
    Json j;
    j["alpha"] = cplx(p.alpha);
    j["beta"] = cplx(p.beta);
    j["A"] = cplx(p.A);
    j["B"] = cplx(p.B);
    j["k"] = num(p.k);
    j["mode"] = to_string(p.mode);
    return j;
}

Json encode(const DiskGrid& g) {
    Json j;
    j["n_r"] = g.n_r;
    j["n_theta"] = g.n_theta;
    j["r_max"] = num(g.r_max);
    j["clustering"] = to_string(g.clustering);
    return j;
}

Json encode(const FieldSummary& f) {
    Json j;
    j["worst_margin"] = num(f.worst_margin);
    j["worst_point"] = cplx(f.worst_point);
    j["worst_index"] = f.worst_index;
    return j;
}

Json encode(const Refinement& r) {
    Json j;
    j["rounds"] = r.rounds;
    j["worst_margin"] = num(r.worst_margin);
    j["worst_point"] = cplx(r.worst_point);
    j["skipped_points"] = r.skipped_points;
    return j;
}

Json encode(const std::vector<NamedCheck>& checks) {
    Json arr = Json::array();
    for (const auto& c : checks) {
        Json j;
        j["name"] = c.name;
        j["passed"] = c.passed;
        j["detail"] = c.detail;
        arr.push_back(j);
    }
    return arr;
}

Json encode(const CriterionSummary& s) {
    Json j;
    j["id"] = s.id;
    j["params"] = encode(s.params);
    j["rhs"] = Json{{"r1", num(s.r1)}, {"r2", num(s.r2)}, {"center", cplx(s.center)}};
    j["tol"] = num(s.tol);
    j["verdict"] = to_string(s.verdict);
    j["grid"] = encode(s.grid);
    j["condition1"] = encode(s.condition1);
    j["condition2"] = opt(s.condition2, [](const FieldSummary& f) { return encode(f); });
    j["refine1"] = opt(s.refine1, [](const Refinement& r) { return encode(r); });
    j["refine2"] = opt(s.refine2, [](const Refinement& r) { return encode(r); });
    j["witness"] = opt(s.witness, cplx);
    j["message"] = s.message;
    j["checks"] = encode(s.checks);
    return j;
}

Json encode(const ChainDiagnostics& d) {
    Json j;
    j["items"] = encode(d.items);
    j["max_abs_w"] = num(d.max_abs_w);
    j["min_re_p"] = num(d.min_re_p);
    j["worst_w_z"] = cplx(d.worst_w_z);
    j["worst_w_t"] = num(d.worst_w_t);
    j["max_origin_mismatch"] = num(d.max_origin_mismatch);
    j["samples"] = d.samples;
    return j;
}

Json encode(const OracleReport& o) {
    Json j;
    j["method"] = to_string(o.method);
    j["verdict"] = to_string(o.verdict);
    Json pts = Json::array();
    for (Complex z : o.witness_points) pts.push_back(cplx(z));
    j["witness_points"] = pts;
    j["witness_target"] = opt(o.witness_target, cplx);
    j["preimage_count"] = opt(o.preimage_count, [](int c) { return Json(c); });
    j["contour_radius"] = opt(o.contour_radius, num);
    j["samples_used"] = o.samples_used;
    j["detail"] = o.detail;
    return j;
}

Json encode(const BeltramiSummary& b) {
    Json j;
    j["annulus"] = Json{{"r_in", num(b.annulus.r_in)},
                        {"r_out", num(b.annulus.r_out)},
                        {"n_r", b.annulus.n_r},
                        {"n_theta", b.annulus.n_theta}};
    j["h"] = num(b.h);
    j["sup_abs_mu"] = num(b.sup_abs_mu);
    j["worst_point"] = cplx(b.worst_point);
    j["failed_points"] = b.failed_points;
    j["reliable"] = b.reliable;
    j["criterion_k"] = opt(b.criterion_k, num);
    j["criterion_satisfied"] = b.criterion_satisfied;
    j["max_w_transfer"] = num(b.max_w_transfer);
    j["max_w_becker"] = num(b.max_w_becker);
    return j;
}

Json encode(const SeamReport& s) {
    Json j;
    j["eps"] = num(s.eps);
    j["max_gap"] = num(s.max_gap);
    Json gaps = Json::array();
    for (double g : s.gaps) gaps.push_back(num(g));
    j["gaps"] = gaps;
    return j;
}

Json encode(const RunReport& r) {
    Json j;
    j["tool"] = r.tool;
    j["version"] = r.version;
    Json cfg = Json::object();
    for (const auto& [k, v] : r.config) cfg[k] = v;
    j["config"] = cfg;
    j["f"] = r.f_name;
    j["g"] = r.g_name;
    j["criterion"] = opt(r.criterion, [](const CriterionSummary& s) { return encode(s); });
    j["diagnostics"] = opt(r.diagnostics, [](const ChainDiagnostics& d) { return encode(d); });
    Json oracles = Json::array();
    for (const auto& o : r.oracles) oracles.push_back(encode(o));
    j["oracles"] = oracles;
    j["beltrami"] = opt(r.beltrami, [](const BeltramiSummary& b) { return encode(b); });
    j["seam"] = opt(r.seam, [](const SeamReport& s) { return encode(s); });
    j["domain_error_pixels"] = opt(r.domain_error_pixels, [](std::size_t n) { return Json(n); });
    j["status"] = to_string(r.status);
    j["exit_code"] = exit_code(r.status);
    j["message"] = r.message;
    return j;
}

void dump(const Json& j, int indent, std::string& out) {
    const std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
    const std::string inner(static_cast<std::size_t>(indent + 1) * 2, ' ');
    if (j.is_object()) {
        if (j.empty()) {
            out += "{}";
            return;
        }
        out += "{\n";
        bool first = true;
        for (auto it = j.begin(); it != j.end(); ++it) {
            if (!first) out += ",\n";
            first = false;
            out += inner + Json(it.key()).dump() + ": ";
            dump(it.value(), indent + 1, out);
        }
        out += "\n" + pad + "}";
    } else if (j.is_array()) {
        if (j.empty()) {
            out += "[]";
            return;
        }
        const bool flat = std::all_of(j.begin(), j.end(), [](const Json& e) { return e.is_primitive(); });
        if (flat) {
            out += "[";
            for (std::size_t i = 0; i < j.size(); ++i) {
                if (i) out += ", ";
                dump(j[i], indent + 1, out);
            }
            out += "]";
            return;
        }
        out += "[\n";
        for (std::size_t i = 0; i < j.size(); ++i) {
            if (i) out += ",\n";
            out += inner;
            dump(j[i], indent + 1, out);
        }
        out += "\n" + pad + "]";
    } else if (j.is_number_float()) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.16e", j.get<double>());
        out += buf;
    } else {
        out += j.dump();
    }
}

// ---- decoding ----

[[noreturn]] void bad(const std::string& what) { throw Error(ErrorKind::Validation, "malformed report: " + what); }

const Json& at(const Json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) bad(std::string("missing key '") + key + "'");
    return j.at(key);
}

double dnum(const Json& j) {
    if (j.is_number()) return j.get<double>();
    if (j.is_string()) {
        const auto s = j.get<std::string>();
        if (s == "NaN") return std::nan("");
        if (s == "Infinity") return INFINITY;
        if (s == "-Infinity") return -INFINITY;
    }
    bad("expected a number");
}

Complex dcplx(const Json& j) {
    if (!j.is_array() || j.size() != 2) bad("expected [re, im]");
    return {dnum(j[0]), dnum(j[1])};
}

template <class E>
E denum(const Json& j, std::initializer_list<E> values) {
    const auto s = j.get<std::string>();
    for (E e : values)
        if (to_string(e) == s) return e;
    bad("unknown enum value '" + s + "'");
}

template <class T, class F>
std::optional<T> dopt(const Json& j, F&& decode) {
    if (j.is_null()) return std::nullopt;
    return decode(j);
}

CriterionParams dparams(const Json& j) {
    CriterionParams p;
    p.alpha = dcplx(at(j, "alpha"));
    p.beta = dcplx(at(j, "beta"));
    p.A = dcplx(at(j, "A"));
    p.B = dcplx(at(j, "B"));
    p.k = dnum(at(j, "k"));
    p.mode = denum(at(j, "mode"), {Mode::Univalence, Mode::Quasiconformal});
    return p;
}

DiskGrid dgrid(const Json& j) {
    DiskGrid g;
    g.n_r = at(j, "n_r").get<int>();
    g.n_theta = at(j, "n_theta").get<int>();
    g.r_max = dnum(at(j, "r_max"));
    g.clustering = denum(at(j, "clustering"), {Clustering::Uniform, Clustering::Chebyshev});
    return g;
}

FieldSummary dfield(const Json& j) {
    return {dnum(at(j, "worst_margin")), dcplx(at(j, "worst_point")), at(j, "worst_index").get<std::size_t>()};
}

Refinement drefine(const Json& j) {
    Refinement r;
    r.rounds = at(j, "rounds").get<int>();
    r.worst_margin = dnum(at(j, "worst_margin"));
    r.worst_point = dcplx(at(j, "worst_point"));
    r.skipped_points = at(j, "skipped_points").get<int>();
    return r;
}

std::vector<NamedCheck> dchecks(const Json& j) {
    std::vector<NamedCheck> out;
    for (const auto& c : j)
        out.push_back({at(c, "name").get<std::string>(), at(c, "passed").get<bool>(), at(c, "detail").get<std::string>()});
    return out;
}

CriterionSummary dcriterion(const Json& j) {
    CriterionSummary s;
    s.id = at(j, "id").get<std::string>();
    s.params = dparams(at(j, "params"));
    const Json& rhs = at(j, "rhs");
    s.r1 = dnum(at(rhs, "r1"));
    s.r2 = dnum(at(rhs, "r2"));
    s.center = dcplx(at(rhs, "center"));
    s.tol = dnum(at(j, "tol"));
    s.verdict = denum(at(j, "verdict"), {Verdict::NoViolationFound, Verdict::Violation, Verdict::Inapplicable});
    s.grid = dgrid(at(j, "grid"));
    s.condition1 = dfield(at(j, "condition1"));
    s.condition2 = dopt<FieldSummary>(at(j, "condition2"), dfield);
    s.refine1 = dopt<Refinement>(at(j, "refine1"), drefine);
    s.refine2 = dopt<Refinement>(at(j, "refine2"), drefine);
    s.witness = dopt<Complex>(at(j, "witness"), dcplx);
    s.message = at(j, "message").get<std::string>();
    s.checks = dchecks(at(j, "checks"));
    return s;
}

ChainDiagnostics ddiagnostics(const Json& j) {
    ChainDiagnostics d;
    d.items = dchecks(at(j, "items"));
    d.max_abs_w = dnum(at(j, "max_abs_w"));
    d.min_re_p = dnum(at(j, "min_re_p"));
    d.worst_w_z = dcplx(at(j, "worst_w_z"));
    d.worst_w_t = dnum(at(j, "worst_w_t"));
    d.max_origin_mismatch = dnum(at(j, "max_origin_mismatch"));
    d.samples = at(j, "samples").get<std::size_t>();
    return d;
}

OracleReport doracle(const Json& j) {
    OracleReport o;
    o.method = denum(at(j, "method"), {OracleMethod::Pairwise, OracleMethod::ArgumentPrinciple, OracleMethod::Local});
    o.verdict = denum(at(j, "verdict"), {OracleVerdict::ConsistentWithUnivalent, OracleVerdict::NonUnivalent,
                                         OracleVerdict::Inconclusive});
    for (const auto& p : at(j, "witness_points")) o.witness_points.push_back(dcplx(p));
    o.witness_target = dopt<Complex>(at(j, "witness_target"), dcplx);
    o.preimage_count = dopt<int>(at(j, "preimage_count"), [](const Json& v) { return v.get<int>(); });
    o.contour_radius = dopt<double>(at(j, "contour_radius"), dnum);
    o.samples_used = at(j, "samples_used").get<std::size_t>();
    o.detail = at(j, "detail").get<std::string>();
    return o;
}

BeltramiSummary dbeltrami(const Json& j) {
    BeltramiSummary b;
    const Json& a = at(j, "annulus");
    b.annulus = {dnum(at(a, "r_in")), dnum(at(a, "r_out")), at(a, "n_r").get<int>(), at(a, "n_theta").get<int>()};
    b.h = dnum(at(j, "h"));
    b.sup_abs_mu = dnum(at(j, "sup_abs_mu"));
    b.worst_point = dcplx(at(j, "worst_point"));
    b.failed_points = at(j, "failed_points").get<std::size_t>();
    b.reliable = at(j, "reliable").get<bool>();
    b.criterion_k = dopt<double>(at(j, "criterion_k"), dnum);
    b.criterion_satisfied = at(j, "criterion_satisfied").get<bool>();
    b.max_w_transfer = dnum(at(j, "max_w_transfer"));
    b.max_w_becker = dnum(at(j, "max_w_becker"));
    return b;
}

SeamReport dseam(const Json& j) {
    SeamReport s;
    s.eps = dnum(at(j, "eps"));
    s.max_gap = dnum(at(j, "max_gap"));
    for (const auto& g : at(j, "gaps")) s.gaps.push_back(dnum(g));
    return s;
}

}  // namespace

std::string report_to_text(const RunReport& report) {
    std::string out;
    dump(encode(report), 0, out);
    out += "\n";
    return out;
}

RunReport report_from_text(const std::string& text) {
    Json j;
    try {
        j = Json::parse(text);
    } catch (const Json::exception& e) {
        bad(e.what());
    }
    try {
        RunReport r;
        r.tool = at(j, "tool").get<std::string>();
        r.version = at(j, "version").get<std::string>();
        for (auto it = at(j, "config").begin(); it != at(j, "config").end(); ++it)
            r.config.emplace_back(it.key(), it.value().get<std::string>());
        r.f_name = at(j, "f").get<std::string>();
        r.g_name = at(j, "g").get<std::string>();
        r.criterion = dopt<CriterionSummary>(at(j, "criterion"), dcriterion);
        r.diagnostics = dopt<ChainDiagnostics>(at(j, "diagnostics"), ddiagnostics);
        for (const auto& o : at(j, "oracles")) r.oracles.push_back(doracle(o));
        r.beltrami = dopt<BeltramiSummary>(at(j, "beltrami"), dbeltrami);
        r.seam = dopt<SeamReport>(at(j, "seam"), dseam);
        r.domain_error_pixels =
            dopt<std::size_t>(at(j, "domain_error_pixels"), [](const Json& v) { return v.get<std::size_t>(); });
        r.status = denum(at(j, "status"), {RunStatus::Pass, RunStatus::Violation, RunStatus::Inapplicable,
                                           RunStatus::Error, RunStatus::Inconsistent});
        r.message = at(j, "message").get<std::string>();
        return r;
    } catch (const Json::exception& e) {
        bad(e.what());
    }
}

void write_report(const RunReport& report, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorKind::Io, "cannot open " + path.string() + " for writing");
    out << report_to_text(report);
    if (!out) throw Error(ErrorKind::Io, "failed writing " + path.string());
}

}  // namespace univalence

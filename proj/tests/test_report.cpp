#include <gtest/gtest.h>

#include <array>
#include <cmath>
#include <map>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "univalence/render.hpp"
#include "univalence/run.hpp"

namespace univalence {
namespace {

using namespace std::complex_literals;
namespace fs = std::filesystem;

fs::path scratch(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() / ("univalence_test_" + name);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

RunConfig config_for(const std::string& criterion, const std::string& f, const fs::path& dir) {
    RunConfig c = default_config();
    apply_setting(c, "criterion", criterion, "test");
    apply_setting(c, "f", f, "test");
    apply_setting(c, "out-dir", dir.string(), "test");
    return c;
}

TEST(Config, ComplexParsing) {
    EXPECT_EQ(parse_complex("0.5"), Complex(0.5));
    EXPECT_EQ(parse_complex(" 0.5 , -2 "), Complex(0.5, -2.0));
    EXPECT_THROW(parse_complex("1,2,3"), Error);
    EXPECT_THROW(parse_complex("abc"), Error);
    const auto list = parse_complex_list("0;1;0.1,0.2");
    ASSERT_EQ(list.size(), 3u);
    EXPECT_EQ(list[2], Complex(0.1, 0.2));
}

TEST(Config, FunctionSpec) {
    const FunctionSpec s = parse_function_spec("z_exp_cz:0.5,0.1");
    EXPECT_EQ(s.name, "z_exp_cz");
    ASSERT_EQ(s.params.size(), 1u);
    EXPECT_EQ(s.params[0], Complex(0.5, 0.1));
}

TEST(Config, FlagProvenance) {
    RunConfig c = default_config();
    try {
        apply_setting(c, "alpha", "x", "--alpha");
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::Config);
        EXPECT_EQ(std::string(e.what()).rfind("--alpha: ", 0), 0u);
    }
}

TEST(Config, FileLineProvenance) {
    const fs::path dir = scratch("config_line");
    std::ofstream(dir / "bad.cfg") << "# comment\ncriterion = becker\n\nnr = many\n";
    RunConfig c = default_config();
    try {
        apply_config_file(c, dir / "bad.cfg");
        FAIL();
    } catch (const Error& e) {
        EXPECT_NE(std::string(e.what()).find("bad.cfg:4: "), std::string::npos) << e.what();
    }
}

TEST(Config, FlagOverridesFile) {
    const fs::path dir = scratch("config_override");
    std::ofstream(dir / "run.cfg") << "criterion = starlike  # trailing comment\nk = 0.3\nf_coeffs = 0;1;0.1\n";
    RunConfig c = default_config();
    apply_config_file(c, dir / "run.cfg");
    EXPECT_EQ(c.criterion, "starlike");
    EXPECT_EQ(c.params.k, 0.3);
    ASSERT_TRUE(c.f.coefficients);
    apply_setting(c, "k", "0.4", "--k");
    EXPECT_EQ(c.params.k, 0.4);
    for (const auto& [key, value] : c.echo)
        if (key == "k") EXPECT_EQ(value, "0.4");
}

TEST(Config, EveryKeyAccepted) {
    const std::map<std::string, std::string> sample{
        {"criterion", "becker"}, {"f", "koebe"},     {"f-coeffs", "0;1"},  {"g", "constant_one"},
        {"g-coeffs", "1;0.1"},   {"alpha", "1,0"},   {"beta", "0"},        {"A", "1"},
        {"B", "1"},              {"k", "0.5"},       {"nr", "16"},         {"ntheta", "32"},
        {"rmax", "0.9"},         {"tol", "1e-9"},    {"refine", "1"},      {"out-dir", "out"},
        {"emit", "report,domain"}, {"threads", "2"}, {"fault-rhs-scale", "1"}};
    for (const auto& key : config_keys()) {
        RunConfig c = default_config();
        EXPECT_NO_THROW(apply_setting(c, key, sample.at(key), "test")) << key;
    }
}

TEST(Report, RoundtripOfRealRun) {
    const fs::path dir = scratch("roundtrip");
    RunConfig c = config_for("qc-becker", "z_exp_cz:0.1", dir);
    apply_setting(c, "k", "0.5", "test");
    apply_setting(c, "nr", "16", "test");
    apply_setting(c, "ntheta", "32", "test");
    const RunReport r = run(c).report;
    ASSERT_TRUE(r.criterion);
    ASSERT_TRUE(r.beltrami);
    const std::string text = report_to_text(r);
    EXPECT_EQ(report_from_text(text), r);
    EXPECT_EQ(report_to_text(report_from_text(text)), text);
    EXPECT_EQ(slurp(dir / "run.report"), text);
}

TEST(Report, RoundtripOfSyntheticValues) {
    RunReport r;
    r.config = {{"criterion", "becker"}, {"f", "identity"}};
    r.f_name = "identity";
    r.g_name = "f_prime";
    OracleReport o;
    o.method = OracleMethod::ArgumentPrinciple;
    o.verdict = OracleVerdict::NonUnivalent;
    o.witness_points = {0.1 + 0.2i};
    o.witness_target = -0.0;
    o.preimage_count = 2;
    o.contour_radius = 0.1 + 0.2;
    o.detail = "quote \" and newline\n";
    r.oracles.push_back(o);
    ChainDiagnostics d;
    d.max_abs_w = std::numeric_limits<double>::infinity();
    d.min_re_p = 5e-324;
    d.items = {{"transfer_bounds", false, "x"}};
    r.diagnostics = d;
    r.status = RunStatus::Inconsistent;
    EXPECT_EQ(report_from_text(report_to_text(r)), r);
}

TEST(Report, FloatFormatting) {
    RunReport r;
    r.status = RunStatus::Pass;
    CriterionSummary s;
    s.tol = 0.1;
    r.criterion = s;
    const std::string text = report_to_text(r);
    EXPECT_NE(text.find("\"tol\": 1.0000000000000001e-01"), std::string::npos);
    EXPECT_NE(text.find("\"verdict\": \"inapplicable\""), std::string::npos);
}

TEST(Report, MalformedRejected) { EXPECT_THROW(report_from_text("{\"tool\": 1}"), Error); }

TEST(Run, IdentityBeckerExitZero) {
    const RunReport r = run(config_for("becker", "identity", scratch("run_identity"))).report;
    EXPECT_EQ(exit_code(r.status), 0);
    EXPECT_EQ(r.criterion->verdict, Verdict::NoViolationFound);
}

TEST(Run, KoebeBeckerExitOne) {
    const RunReport r = run(config_for("becker", "koebe", scratch("run_koebe"))).report;
    EXPECT_EQ(exit_code(r.status), 1);
    ASSERT_TRUE(r.criterion->witness);
    EXPECT_NEAR(r.criterion->witness->imag(), 0.0, 1e-12);
    EXPECT_GT(r.criterion->witness->real(), 0.99);
}

TEST(Run, ParameterErrorExitTwo) {
    RunConfig c = config_for("general", "identity", scratch("run_invalid"));
    apply_setting(c, "alpha", "0.25", "test");
    const RunReport r = run(c).report;
    EXPECT_EQ(exit_code(r.status), 2);
    EXPECT_NE(r.message.find("re_alpha_le_half"), std::string::npos);
}

TEST(Run, ExecutionKeysNotEchoed) {
    const RunReport r = run(config_for("becker", "identity", scratch("run_echo"))).report;
    for (const auto& kv : r.config) EXPECT_FALSE(is_execution_key(kv.first)) << kv.first;
}

TEST(Render, PositiveFieldHasNoRed) {
    const DiskGrid g{4, 8};
    MarginField f = make_margin_field(g, std::vector<double>(g.size(), 0.5));
    f.margins[3] = 1.0;
    const Image img = margin_heatmap(f);
    EXPECT_EQ(img.width, 8);
    EXPECT_EQ(img.height, 4);
    for (std::size_t k = 0; k < img.rgb.size(); k += 3) EXPECT_LE(img.rgb[k], img.rgb[k + 2]);
    // the maximum maps to the blue end, zero would map to white
    EXPECT_EQ(img.rgb[9], 0);
    EXPECT_EQ(img.rgb[10], 64);
    EXPECT_EQ(img.rgb[11], 192);
}

TEST(Render, NegativeEndIsRed) {
    const DiskGrid g{2, 8};
    std::vector<double> m(g.size(), 0.0);
    m[5] = -2.0;
    m[6] = -1.0;
    const Image img = margin_heatmap(make_margin_field(g, m));
    EXPECT_EQ(img.rgb[15], 200);
    EXPECT_EQ(img.rgb[16], 16);
    EXPECT_EQ(img.rgb[17], 16);
    EXPECT_EQ(img.rgb[18], 228);  // halfway: lround(255 - 0.5 * 55)
    EXPECT_EQ(img.rgb[0], 255);
}

TEST(Render, KoebeRedBandAtPositiveAxisBoundary) {
    const auto setup = resolve_preset("becker", preset("koebe"), std::nullopt, {});
    const CriterionReport r = check_criterion(setup, DiskGrid{});
    const Image img = margin_heatmap(*r.field2);
    const std::size_t last_row = static_cast<std::size_t>(img.height - 1) * img.width;
    EXPECT_GT(img.rgb[3 * last_row], img.rgb[3 * last_row + 2]);         // theta = 0 is red
    EXPECT_LE(img.rgb[3 * (img.width / 2)], img.rgb[3 * (img.width / 2) + 2]);  // origin row is not red
}

TEST(Render, PpmHeader) {
    const Image img{3, 2, std::vector<std::uint8_t>(18, 7)};
    const auto bytes = encode_ppm(img);
    const std::string header(bytes.begin(), bytes.begin() + 11);
    EXPECT_EQ(header, "P6\n3 2\n255\n");
    EXPECT_EQ(bytes.size(), 11u + 18u);
}

TEST(Render, IdentityHueWheel) {
    const DomainColoring dc = domain_coloring([](Complex z) { return z; }, Window{0.0, 1.0, 64});
    EXPECT_EQ(dc.error_pixels, 0u);
    const auto pixel = [&](int x, int y) {
        const std::size_t k = 3 * (static_cast<std::size_t>(y) * 64 + x);
        return std::array<int, 3>{dc.image.rgb[k], dc.image.rgb[k + 1], dc.image.rgb[k + 2]};
    };
    // arg 0 on the right is red-dominant, arg pi on the left is cyan-dominant
    const auto right = pixel(60, 32), left = pixel(3, 32);
    EXPECT_GT(right[0], right[2]);
    EXPECT_LT(left[0], left[2]);
}

TEST(Render, ExtensionOfIdentityMatchesIdentity) {
    const auto ctx = ChainContext::make(preset("identity"), preset("constant_one"), {});
    const Window w{0.0, 3.0, 48};
    const DomainColoring a = domain_coloring([](Complex z) { return z; }, w);
    const DomainColoring b = domain_coloring([&](Complex z) { return extend_point(ctx, z); }, w);
    std::size_t differing = 0;
    for (std::size_t k = 0; k < a.image.rgb.size(); ++k)
        if (std::abs(int(a.image.rgb[k]) - int(b.image.rgb[k])) > 1) ++differing;
    EXPECT_EQ(differing, 0u);
}

TEST(Render, ErrorPixelsCounted) {
    const auto f = preset("koebe");
    const DomainColoring dc = domain_coloring([&](Complex z) { return eval_jet(f, z).value; }, Window{0.0, 1.0, 32});
    EXPECT_GT(dc.error_pixels, 0u);
    EXPECT_LT(dc.error_pixels, 32u * 32u);
}

}  // namespace
}  // namespace univalence

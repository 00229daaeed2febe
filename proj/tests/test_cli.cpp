#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "iifsdim/cli.hpp"
#include "iifsdim/emit.hpp"

using namespace iifsdim;

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in);
    std::stringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

struct TempFile {
    std::string path;
    explicit TempFile(std::string name) : path("cli_test_" + std::move(name)) {}
    ~TempFile() { std::remove(path.c_str()); }
};

}  // namespace

TEST_CASE("cli: usage errors exit 2") {
    CHECK(run({"bogus"}) == 2);
    CHECK(run({}) == 2);
    CHECK(run({"curve", "--family", "seq"}) == 2);            // missing required flags
    CHECK(run({"fbm", "--h", "0.3", "--alpha", "1.5"}) == 2); // alpha out of range
    CHECK(run({"curve", "--family", "seq", "--p", "-1", "--h", "0.2", "--out", "x.csv"}) == 2);
    CHECK(run({"--help"}) == 0);
}

TEST_CASE("cli: lattice curve has value 2/3 at theta = 1") {
    TempFile csv("lattice.csv");
    CHECK(run({"curve", "--family", "lattice", "--p", "2", "--d", "2", "--h", "0",
               "--out", csv.path}) == 0);
    DimCurve curve = parse_curve_csv(slurp(csv.path));
    CHECK(curve.thetas.back() == doctest::Approx(1.0));
    CHECK(curve.values.back().upper == doctest::Approx(2.0 / 3).epsilon(1e-12));
    CHECK(curve.values.front().upper == doctest::Approx(0.0));
    for (const auto& v : curve.values) CHECK(v.lower <= v.upper + 1e-15);
}

TEST_CASE("cli: deterministic output bytes") {
    TempFile a("det_a.csv"), b("det_b.csv");
    std::vector<std::string> args = {"curve", "--family", "seq", "--p",   "2",
                                     "--h",   "0.26",     "--out", ""};
    args.back() = a.path;
    CHECK(run(args) == 0);
    args.back() = b.path;
    CHECK(run(args) == 0);
    CHECK(slurp(a.path) == slurp(b.path));
}

TEST_CASE("cli: holder emits CSV and SVG with four polylines") {
    TempFile csv("fig1.csv"), svg("fig1.svg");
    CHECK(run({"holder", "--p", "2", "--q", "2.9", "--hp", "0.26", "--hq", "0.22",
               "--out", csv.path, "--svg", svg.path}) == 0);
    std::string svg_text = slurp(svg.path);
    std::size_t polylines = 0, pos = 0;
    while ((pos = svg_text.find("<polyline", pos)) != std::string::npos) {
        ++polylines;
        ++pos;
    }
    CHECK(polylines == 4);

    std::string csv_text = slurp(csv.path);
    CHECK(csv_text.rfind("theta,lower,upper,alpha_bound\n", 0) == 0);
}

TEST_CASE("cli: pressure on a system file") {
    TempFile sys("sys.json"), out("pressure.json");
    write_text_file(sys.path, R"({"kind":"cf-real","digits":{"type":"explicit","digits":[2]}})");
    CHECK(run({"pressure", "--system", sys.path, "--t", "1", "--level", "1",
               "--out", out.path}) == 0);
    auto j = nlohmann::json::parse(slurp(out.path));
    CHECK(j["lower"].get<double>() == doctest::Approx(std::log(1.0 / 9)).epsilon(1e-12));
    CHECK(j["upper"].get<double>() == doctest::Approx(std::log(1.0 / 4)).epsilon(1e-12));
}

TEST_CASE("cli: hausdorff on a similarity system file") {
    TempFile sys("sim.json"), out("h.json");
    write_text_file(sys.path,
                    R"({"kind":"similarity","d":1,"maps":[
                        {"ratio":0.25,"translation":[0.0]},
                        {"ratio":0.25,"translation":[0.75]}]})");
    CHECK(run({"hausdorff", "--system", sys.path, "--level", "1", "--out", out.path}) == 0);
    auto j = nlohmann::json::parse(slurp(out.path));
    CHECK(j["lower"].get<double>() == doctest::Approx(0.5).epsilon(1e-8));
    CHECK(j["upper"].get<double>() == doctest::Approx(0.5).epsilon(1e-8));
}

TEST_CASE("cli: fbm reports the branch flags") {
    TempFile out("fbm.json");
    CHECK(run({"fbm", "--h", "0.3", "--alpha", "0.5", "--out", out.path}) == 0);
    auto j = nlohmann::json::parse(slurp(out.path));
    CHECK(j["hausdorffImage"].get<double>() == doctest::Approx(0.6));
    CHECK(j["boxStrictlyBelowAmbient"].get<bool>());
    CHECK_FALSE(j["allEqualAmbient"].get<bool>());
}

TEST_CASE("cli: boxdim runs on a shallow grid") {
    TempFile out("boxdim.csv");
    CHECK(run({"boxdim", "--set", "seq", "--deltas", "1e-1:1e-3", "--ndeltas", "9",
               "--out", out.path}) == 0);
    std::string text = slurp(out.path);
    CHECK(text.rfind("delta,count\n", 0) == 0);
    // 9 data rows + header
    CHECK(std::count(text.begin(), text.end(), '\n') == 10);
}

TEST_CASE("cli: plot renders parsed curves") {
    TempFile csv("toplot.csv"), svg("plotted.svg");
    CHECK(run({"curve", "--family", "seq", "--p", "2", "--h", "0.3", "--out", csv.path}) == 0);
    CHECK(run({"plot", "--in", csv.path, "--label", "curve", "--svg", svg.path}) == 0);
    CHECK(slurp(svg.path).find("<svg") != std::string::npos);
}

TEST_CASE("emit: csv round-trip is lossless") {
    DimCurve curve;
    curve.thetas = {0.0, 0.125, 1.0 / 3, 1.0};
    curve.values = {DimBracket{0.3, 0.3}, DimBracket{0.3, 0.31},
                    DimBracket{1.0 / 3, 0.34}, DimBracket{0.5, 0.5}};
    DimCurve back = parse_curve_csv(curve_csv(curve));
    REQUIRE(back.thetas.size() == curve.thetas.size());
    for (std::size_t i = 0; i < curve.thetas.size(); ++i) {
        CHECK(back.thetas[i] == curve.thetas[i]);
        CHECK(back.values[i].lower == curve.values[i].lower);
        CHECK(back.values[i].upper == curve.values[i].upper);
    }
}

TEST_CASE("emit: svg validation") {
    PlotSpec empty;
    CHECK_THROWS_AS(render_svg(empty), std::invalid_argument);

    PlotSpec single;
    single.series.push_back({"pt", {0.5}, {0.25}, ""});
    std::string svg = render_svg(single);
    CHECK(svg.find("<svg") != std::string::npos);
    CHECK(svg.find("</svg>") != std::string::npos);

    PlotSpec bad;
    bad.series.push_back({"nan", {0.5}, {std::nan("")}, ""});
    CHECK_THROWS_AS(render_svg(bad), std::invalid_argument);
}

TEST_CASE("cli: cf report with supplied h") {
    TempFile out("cf.json"), csv("cf.csv");
    CHECK(run({"cf", "--digits", R"({"type":"power","p":2,"l":5})", "--h", "0.3",
               "--out", out.path, "--csv", csv.path}) == 0);
    auto j = nlohmann::json::parse(slurp(out.path));
    CHECK(j["thetaS"].get<double>() == doctest::Approx(0.25));
    CHECK(j["fixedPointBoxDim"].get<double>() == doctest::Approx(1.0 / 3));
    CHECK(j["hBracket"]["lower"].get<double>() == doctest::Approx(0.3));
    CHECK(j["curve"].back()["upper"].get<double>() == doctest::Approx(1.0 / 3));
    CHECK(slurp(csv.path).rfind("theta,lower,upper\n", 0) == 0);

    // complex digit sets are routed to cf-complex
    CHECK(run({"cf", "--digits", R"({"type":"complex-power","p":2,"R":10})", "--h", "0.55"}) == 2);
}

TEST_CASE("cli: cf-complex quick report") {
    TempFile out("cfc.json");
    CHECK(run({"cf-complex", "--p", "2", "--R", "10", "--level", "1", "--truncate", "128",
               "--h", "0.55", "--out", out.path}) == 0);
    auto j = nlohmann::json::parse(slurp(out.path));
    CHECK(j["thetaS"].get<double>() == doctest::Approx(0.5));
    CHECK(j["curve"].back()["upper"].get<double>() == doctest::Approx(2.0 / 3));
}

TEST_CASE("cli: lattice single point and cover-fit") {
    TempFile out("fit.json");
    CHECK(run({"cover-fit", "--p", "2", "--d", "1", "--theta", "0.5", "--out", out.path}) == 0);
    auto j = nlohmann::json::parse(slurp(out.path));
    CHECK(j["closedForm"].get<double>() == doctest::Approx(0.2));
    CHECK(std::abs(j["s"].get<double>() - 0.2) <= 0.03);

    CHECK(run({"lattice", "--p", "2", "--d", "2", "--theta", "1"}) == 0);
    CHECK(run({"cover-fit", "--p", "2", "--theta", "1.5"}) == 2);
}

TEST_CASE("cli: generic experiment on a small d=1 ensemble") {
    TempFile a("gen_a.json"), b("gen_b.json");
    std::vector<std::string> args = {"generic", "--d", "1", "--maps", "64", "--samples", "30000",
                                     "--seeds", "2", "--deltas", "1/2:1/256", "--depth", "30",
                                     "--density-delta", "1/16", "--density-samples", "10000",
                                     "--seed", "7", "--out", a.path};
    CHECK(run(args) == 0);
    args.back() = b.path;
    CHECK(run(args) == 0);
    CHECK(slurp(a.path) == slurp(b.path));   // deterministic given flags + seed

    auto j = nlohmann::json::parse(slurp(a.path));
    CHECK(j["seeds"].size() == 2);
    CHECK(j["boxPassFraction"].get<double>() >= 0.0);

    // guard violation reported as a usage error
    CHECK(run({"generic", "--d", "2", "--maps", "64", "--samples", "1000", "--seeds", "1",
               "--deltas", "1/2:1/256"}) == 2);
}

TEST_CASE("cli: results do not depend on the worker cap") {
    TempFile a("thr_a.json"), b("thr_b.json");
    std::vector<std::string> args = {"generic", "--d", "1", "--maps", "32", "--samples", "30000",
                                     "--seeds", "2", "--deltas", "1/2:1/256", "--depth", "25",
                                     "--density-delta", "1/8", "--density-samples", "5000",
                                     "--seed", "3", "--out", a.path};
    setenv("IIFS_DIM_THREADS", "1", 1);
    CHECK(run(args) == 0);
    args.back() = b.path;
    setenv("IIFS_DIM_THREADS", "5", 1);
    CHECK(run(args) == 0);
    unsetenv("IIFS_DIM_THREADS");
    CHECK(slurp(a.path) == slurp(b.path));
}

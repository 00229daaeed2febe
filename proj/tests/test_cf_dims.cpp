#include <doctest.h>

#include <cmath>

#include "iifsdim/cf_dims.hpp"

using namespace iifsdim;

namespace {

double curve_upper_at(const DimCurve& curve, double theta) {
    for (std::size_t i = 0; i < curve.thetas.size(); ++i)
        if (std::abs(curve.thetas[i] - theta) < 1e-12) return curve.values[i].upper;
    FAIL("theta not on grid");
    return 0.0;
}

}  // namespace

TEST_CASE("cf_report with supplied h: power family curve") {
    CfReportOptions opt;
    opt.supplied_h = 0.3;
    auto report = cf_report(PowerFamily{2.0, 64}, opt);

    CHECK(report.theta_s == doctest::Approx(0.25));
    CHECK(report.fixed_point_box_dim == doctest::Approx(1.0 / 3).epsilon(1e-12));
    CHECK(curve_upper_at(report.curve, 0.0) == doctest::Approx(0.3));
    CHECK(curve_upper_at(report.curve, 1.0) == doctest::Approx(1.0 / 3).epsilon(1e-12));

    // transition inserted exactly at 2h/(1-h) = 6/7
    double star = 6.0 / 7;
    CHECK(curve_upper_at(report.curve, star) == doctest::Approx(0.3).epsilon(1e-9));
    auto brk = find_slope_break(report.curve);
    REQUIRE(brk.found);
    CHECK(std::abs(brk.theta - star) <= 1.0 / 512 + 1e-12);

    // curve value at theta=1 is max(h, box dim of fixed points)
    CHECK(curve_upper_at(report.curve, 1.0) ==
          doctest::Approx(std::max(0.3, report.fixed_point_box_dim)));
}

TEST_CASE("cf_report: one-map attractor is a point") {
    auto report = cf_report(ExplicitDigits{{2}}, CfReportOptions{});
    CHECK(report.h_bracket.lower == 0.0);
    CHECK(report.h_bracket.upper == 0.0);
    CHECK(report.fixed_point_box_dim == 0.0);
    for (const auto& v : report.curve.values) CHECK(v.upper == 0.0);
}

TEST_CASE("cf_report with supplied h: complex family curve") {
    CfReportOptions opt;
    opt.supplied_h = 0.55;
    auto report = cf_report(ComplexPowerFamily{2.0, 10.0}, opt);
    CHECK(report.theta_s == doctest::Approx(0.5));
    CHECK(report.fixed_point_box_dim == doctest::Approx(2.0 / 3).epsilon(1e-12));
    CHECK(curve_upper_at(report.curve, 1.0) == doctest::Approx(2.0 / 3).epsilon(1e-12));
    CHECK(curve_upper_at(report.curve, 0.0) == doctest::Approx(0.55));
}

TEST_CASE("cf_report: computed brackets are continuous at zero") {
    CfReportOptions opt;
    opt.level = 1;
    auto report = cf_report(PowerFamily{2.0, 5}, opt);
    CHECK(report.h_bracket.lower > 0.25);   // above the finiteness parameter
    CHECK(report.h_bracket.upper < 0.5);
    auto cont = continuity_at_zero_check(report.curve, report.h_bracket);
    CHECK(cont.continuous_at_zero);
}

TEST_CASE("cf_fixed_points") {
    auto pts = cf_fixed_points(PowerFamily{2.0, 2}, 3);
    REQUIRE(pts.size() == 3);
    CHECK(pts[0].real() == doctest::Approx(1.0 / 4));
    CHECK(pts[1].real() == doctest::Approx(1.0 / 9));
    CHECK(pts[2].real() == doctest::Approx(1.0 / 16));

    auto two = cf_fixed_points(ExplicitDigits{{2, 5}}, 2);
    CHECK(two[0].real() == doctest::Approx(0.5));
    CHECK(two[1].real() == doctest::Approx(0.2));

    // smallest complex digit is 1+i; reciprocal (1-i)/2
    auto cpx = cf_fixed_points(ComplexPowerFamily{2.0, 0.0}, 1);
    CHECK(cpx[0].real() == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(cpx[0].imag() == doctest::Approx(-0.5).epsilon(1e-12));
}

TEST_CASE("cf_sample_points: convergence to the single fixed point") {
    auto pts = cf_sample_points(ExplicitDigits{{2}}, 64, 12, 7);
    double fix = std::sqrt(2.0) - 1.0;
    for (const auto& z : pts) {
        CHECK(z.imag() == 0.0);
        CHECK(std::abs(z.real() - fix) < std::pow(0.25, 10));
    }
}

TEST_CASE("cf_sample_points: containment in the unit interval and first cylinder") {
    std::vector<std::size_t> firsts;
    auto pts = cf_sample_points(ExplicitDigits{{1, 2}}, 512, 20, 11, 64, &firsts);
    auto letters = cf_real_alphabet(ExplicitDigits{{1, 2}}, 8);
    REQUIRE(firsts.size() == pts.size());
    for (std::size_t i = 0; i < pts.size(); ++i) {
        double x = pts[i].real();
        CHECK(x > 0.0);
        CHECK(x < 1.0);
        // exact first-level cylinder from the recorded outermost letter
        const auto& L = letters[firsts[i]];
        double lo, hi;
        if (L.prefixed) {   // S_{1b}([0,1]) = [1/(b+1), (and) 1/(b+1/2)]
            lo = 1.0 / (L.digit + 1.0);
            hi = 1.0 / (L.digit + 0.5);
        } else {            // S_b([0,1]) = [1/(b+1), 1/b]
            lo = 1.0 / (L.digit + 1.0);
            hi = 1.0 / L.digit;
        }
        CHECK(x >= lo - 1e-12);
        CHECK(x <= hi + 1e-12);
    }
}

TEST_CASE("cf_sample_points: level-1 cylinders of the power family") {
    auto pts = cf_sample_points(PowerFamily{2.0, 2}, 128, 1, 3);
    for (const auto& z : pts) {
        CHECK(z.real() > 0.0);
        CHECK(z.real() <= 0.25);   // 1/(floor(n^2)+x) <= 1/4 for n >= 2
    }
}

TEST_CASE("cf_sample_points: complex samples stay in the disc") {
    auto pts = cf_sample_points(ComplexPowerFamily{2.0, 0.0}, 128, 8, 5);
    for (const auto& z : pts) CHECK(std::abs(z - std::complex<double>(0.5, 0.0)) <= 0.5 + 1e-9);
}

TEST_CASE("power-family brackets decrease toward the finiteness parameter in l") {
    double prev = 1.0;
    for (std::int64_t l : {2, 4, 8, 16}) {
        auto b = hausdorff_bracket(SystemSpec{CfRealSystem{PowerFamily{2.0, l}}}, 1);
        CHECK(b.upper < prev);
        CHECK(b.upper > 0.25);
        prev = b.upper;
    }
}

TEST_CASE("find_l_for_phase_transition returns a genuine transition point") {
    std::int64_t l = find_l_for_phase_transition(2.0, 1);
    auto b = hausdorff_bracket(SystemSpec{CfRealSystem{PowerFamily{2.0, l}}}, 1);
    CHECK(b.upper < 1.0 / 3 - 0.01);
    if (l > 2) {
        auto before = hausdorff_bracket(SystemSpec{CfRealSystem{PowerFamily{2.0, l / 2}}}, 1);
        CHECK(before.upper >= 1.0 / 3 - 0.01);
    }
}

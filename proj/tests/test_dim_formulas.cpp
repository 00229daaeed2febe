#include <doctest.h>

#include <cmath>

#include "iifsdim/dim_formulas.hpp"

using namespace iifsdim;

TEST_CASE("seq and lattice closed forms") {
    CHECK(seq_dim_theta(1.0, 1.0) == doctest::Approx(0.5));
    CHECK(seq_dim_theta(2.0, 0.0) == 0.0);
    CHECK(seq_dim_theta(2.0, 0.5) == doctest::Approx(0.2));
    CHECK_THROWS_AS(seq_dim_theta(2.0, 1.5), std::domain_error);
    CHECK_THROWS_AS(seq_dim_theta(0.0, 0.5), std::domain_error);

    CHECK(lattice_dim_theta(2.0, 2, 1.0) == doctest::Approx(2.0 / 3));
    CHECK(lattice_dim_theta(1.0, 2, 1.0) == doctest::Approx(1.0));
    CHECK(lattice_dim_theta(3.0, 2, 0.0) == 0.0);
}

TEST_CASE("combine_max endpoints") {
    auto grid = make_theta_grid(257);
    auto seq = exact_curve(grid, [](double th) { return seq_dim_theta(2.0, th); }, "seq p=2");

    auto c = combine_max(DimBracket{0.3, 0.3}, seq);
    CHECK(c.values.front().upper == doctest::Approx(0.3));
    CHECK(c.values.front().lower == doctest::Approx(0.3));
    CHECK(c.values.back().upper == doctest::Approx(1.0 / 3));
    CHECK(c.values.back().lower == doctest::Approx(1.0 / 3));

    auto zero = combine_max(DimBracket{0.0, 0.0}, seq);
    for (std::size_t i = 0; i < grid.size(); ++i)
        CHECK(zero.values[i].upper == doctest::Approx(seq.values[i].upper));

    auto sat = combine_max(DimBracket{1.0, 1.0}, seq);
    for (const auto& v : sat.values) CHECK(v.upper == doctest::Approx(1.0));
}

TEST_CASE("combine_max keeps brackets monotone in theta") {
    auto grid = make_theta_grid(513);
    auto seq = exact_curve(grid, [](double th) { return seq_dim_theta(2.0, th); }, "seq");
    auto c = combine_max(DimBracket{0.28, 0.32}, seq);
    for (std::size_t i = 1; i < c.values.size(); ++i) {
        CHECK(c.values[i].upper >= c.values[i - 1].upper - 1e-15);
        CHECK(c.values[i].lower >= c.values[i - 1].lower - 1e-15);
        CHECK(c.values[i].lower <= c.values[i].upper);
    }
}

TEST_CASE("phase transition") {
    CHECK(phase_transition_theta(0.25, 2.0, 1) == doctest::Approx(2.0 / 3).epsilon(1e-14));
    double h = 0.3;
    CHECK(phase_transition_theta(h, 2.0, 1) == doctest::Approx(2 * h / (1 - h)).epsilon(1e-14));
    CHECK(phase_transition_theta(1e-9, 2.0, 1) == doctest::Approx(0.0).epsilon(1e-6));
    CHECK_THROWS_AS(phase_transition_theta(0.4, 2.0, 1), std::domain_error);
}

TEST_CASE("banaji lower bound") {
    CHECK(banaji_lower_bound(1.0, 1.7, 0.4) == doctest::Approx(0.4).epsilon(1e-14));
    CHECK(banaji_lower_bound(0.5, 2.0, 1.0) == doctest::Approx(2.0 / 3).epsilon(1e-14));
    CHECK_THROWS_AS(banaji_lower_bound(0.0, 2.0, 1.0), std::domain_error);
    CHECK_THROWS_AS(banaji_lower_bound(0.5, 1.0, 2.0), std::domain_error);

    // identity with the lattice curve on the full grid
    auto grid = make_theta_grid(513);
    for (double p : {1.0, 2.0, 3.0}) {
        for (int d : {1, 2}) {
            for (double th : grid) {
                if (th == 0.0) continue;
                double lhs = banaji_lower_bound(th, d, d / (p + 1.0));
                CHECK(std::abs(lhs - lattice_dim_theta(p, d, th)) < 1e-12);
            }
        }
    }
}

TEST_CASE("slope break lands on the inserted transition") {
    double h = 0.3, p = 2.0;
    double star = phase_transition_theta(h, p, 1);
    const double extras[] = {star};
    auto grid = make_theta_grid(513, extras);
    auto curve = combine_max(DimBracket{h, h},
                             exact_curve(grid, [&](double th) { return seq_dim_theta(p, th); }, "seq"));
    auto brk = find_slope_break(curve);
    REQUIRE(brk.found);
    // within one grid step of 6/7
    double step = 1.0 / 512;
    CHECK(std::abs(brk.theta - 6.0 / 7) <= step + 1e-12);
}

TEST_CASE("value jump detection distinguishes the theta=0 cases") {
    auto grid = make_theta_grid(513);
    auto cont = combine_max(DimBracket{0.3, 0.3},
                            exact_curve(grid, [](double th) { return seq_dim_theta(2.0, th); }, "seq"));
    CHECK_FALSE(has_value_jump(cont));

    // fixed-point curve constant at 0.9 with h = 0.3: jump at theta = 0
    auto jumpy = combine_max(DimBracket{0.3, 0.3},
                             exact_curve(grid, [](double th) { return th == 0.0 ? 0.0 : 0.9; }, "const"));
    CHECK(has_value_jump(jumpy));
}

TEST_CASE("holder bounds: reference parameters") {
    auto r = holder_bounds(2.0, 2.9, 0.26, 0.22);
    double closed = (2.0 - 2.0 * 0.22 + 2.9 * 0.22) / 2.9;
    CHECK(r.bound_intermediate == doctest::Approx(closed).epsilon(1e-6));
    CHECK(r.bound_box == doctest::Approx(3.0 / 3.9).epsilon(1e-12));
    CHECK(r.bound_hausdorff == doctest::Approx(0.22 / 0.26).epsilon(1e-12));
    CHECK(r.theta_opt == doctest::Approx(2.9 * 0.22 / 0.78).epsilon(1e-12));
    CHECK(r.bound_intermediate < r.bound_box);
    CHECK(r.bound_box < r.bound_hausdorff);

    // grid minimum sits at the inserted optimum
    std::size_t argmin = 0;
    for (std::size_t i = 0; i < r.alpha_bound.size(); ++i)
        if (r.alpha_bound[i] < r.alpha_bound[argmin]) argmin = i;
    CHECK(std::abs(r.thetas[argmin] - r.theta_opt) < 1e-12);
}

TEST_CASE("holder bounds: regime errors name the inequality") {
    CHECK_THROWS_WITH_AS(holder_bounds(2.0, 3.2, 0.26, 0.22),
                         doctest::Contains("q < 2p-1"), std::domain_error);
    CHECK_THROWS_WITH_AS(holder_bounds(2.0, 2.9, 0.2, 0.22),
                         doctest::Contains("h_p > 1/(2p)"), std::domain_error);
    CHECK_THROWS_WITH_AS(holder_bounds(2.0, 2.9, 0.26, 0.3),
                         doctest::Contains("h_q < 1/(q+1)"), std::domain_error);
    CHECK_THROWS_WITH_AS(holder_bounds(2.0, 2.9, 0.26, 0.19),
                         doctest::Contains("h_q > p*h_p"), std::domain_error);
}

TEST_CASE("fbm image dimensions") {
    auto a = fbm_image_dims(0.3, 0.5, 1);
    CHECK(a.hausdorff_image == doctest::Approx(0.6).epsilon(1e-12));
    CHECK(a.box_strictly_below_ambient);
    CHECK_FALSE(a.all_equal_ambient);

    auto b = fbm_image_dims(0.3, 0.2, 1);
    CHECK(b.all_equal_ambient);
    CHECK(b.hausdorff_image == doctest::Approx(1.0));

    auto c = fbm_image_dims(0.8, 0.5, 2);
    CHECK(c.hausdorff_image == doctest::Approx(1.6).epsilon(1e-12));
    CHECK(c.box_strictly_below_ambient);

    // threshold continuity: the formula value matches the ambient branch
    auto t1 = fbm_image_dims(0.4, 0.4, 1);
    CHECK(t1.all_equal_ambient);
    CHECK(0.4 / 0.4 == doctest::Approx(t1.hausdorff_image));
    auto t2 = fbm_image_dims(0.8, 0.4, 2);
    CHECK(t2.all_equal_ambient);
    CHECK(0.8 / 0.4 == doctest::Approx(t2.hausdorff_image));

    CHECK_THROWS_AS(fbm_image_dims(0.3, 1.2, 1), std::domain_error);
    CHECK_THROWS_AS(fbm_image_dims(0.0, 0.5, 1), std::domain_error);
    CHECK_THROWS_AS(fbm_image_dims(0.5, 0.5, 3), std::domain_error);
}

TEST_CASE("continuity at zero") {
    auto grid = make_theta_grid(513);
    DimBracket h{0.3, 0.3};
    auto seq = exact_curve(grid, [](double th) { return seq_dim_theta(2.0, th); }, "seq");
    CHECK(continuity_at_zero_check(combine_max(h, seq), h).continuous_at_zero);

    auto flat = exact_curve(grid, [](double) { return 0.9; }, "flat");
    CHECK_FALSE(continuity_at_zero_check(flat, h).continuous_at_zero);

    DimBracket zero{0.0, 0.0};
    auto lattice = exact_curve(grid, [](double th) { return lattice_dim_theta(2.0, 2, th); }, "lat");
    CHECK(continuity_at_zero_check(lattice, zero).continuous_at_zero);
}

TEST_CASE("curve shape: increasing and concave on (0,1]") {
    auto grid = make_theta_grid(1025);
    for (auto f : {+[](double th) { return seq_dim_theta(2.0, th); },
                   +[](double th) { return lattice_dim_theta(1.5, 2, th); }}) {
        double prev_val = 0.0, prev_slope = std::numeric_limits<double>::infinity();
        for (std::size_t i = 1; i < grid.size(); ++i) {
            double v = f(grid[i]);
            CHECK(v > prev_val);
            double slope = (v - prev_val) / (grid[i] - grid[i - 1]);
            CHECK(slope <= prev_slope + 1e-9);
            prev_val = v;
            prev_slope = slope;
        }
    }
}

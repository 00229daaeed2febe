#include <doctest.h>

#include <cmath>

#include "iifsdim/cover_estimator.hpp"

using namespace iifsdim;

TEST_CASE("box_count: reciprocal sequence at delta = 0.1") {
    CHECK(box_count(SequenceSet{1.0}, 0.1) == 6);
    std::vector<double> single = {0.37};
    CHECK(box_count(single, 0.05) == 1);
    CHECK_THROWS_AS(box_count(std::span<const double>{}, 0.1), std::invalid_argument);
    CHECK_THROWS_AS(box_count(single, 1.5), std::invalid_argument);
}

TEST_CASE("box_count: lattice inversion count near its scaling law") {
    double delta = 1e-4;
    auto count = box_count(LatticeInversionSet{2.0, 1}, delta);
    double law = std::pow(delta, -1.0 / 3);
    CHECK(count >= static_cast<std::uint64_t>(law / 4));
    CHECK(count <= static_cast<std::uint64_t>(law * 4));
}

TEST_CASE("box_count: monotone under scale halving") {
    for (double base : {0.2, 0.1}) {
        std::uint64_t prev = 0;
        for (int k = 0; k < 6; ++k) {
            auto c = box_count(SequenceSet{1.0}, base / (1 << k));
            CHECK(c >= prev);
            prev = c;
        }
    }
}

TEST_CASE("box_count: finite stability under unions") {
    std::vector<double> a = {0.11, 0.52, 0.73};
    std::vector<double> b = {0.18, 0.33, 0.92};
    std::vector<double> u = a;
    u.insert(u.end(), b.begin(), b.end());
    for (double d : {0.1, 0.07, 0.03})
        CHECK(box_count(u, d) <= box_count(std::span<const double>(a), d) +
                                     box_count(std::span<const double>(b), d));
}

TEST_CASE("box_dim_regression: exact power law collapses the bracket") {
    BoxCountSeries series;
    for (int k = 0; k <= 8; ++k) {
        series.deltas.push_back(std::pow(4.0, -k - 1));
        series.counts.push_back(1ull << (k + 1));   // counts = delta^{-1/2}
    }
    auto fit = box_dim_regression(series);
    CHECK(fit.bracket.lower == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(fit.bracket.upper == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(fit.least_squares == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("box_dim_regression: reference sets bracket their dimensions") {
    std::vector<double> deltas;
    for (int i = 0; i < 13; ++i) deltas.push_back(std::pow(10.0, -2.0 - 0.25 * i));

    auto seq = box_dim_regression(box_count_series(SequenceSet{1.0}, deltas));
    CHECK(seq.bracket.lower <= 0.5);
    CHECK(seq.bracket.upper >= 0.5);

    auto lat = box_dim_regression(box_count_series(LatticeInversionSet{2.0, 1}, deltas));
    CHECK(lat.bracket.lower <= 1.0 / 3);
    CHECK(lat.bracket.upper >= 1.0 / 3);
}

TEST_CASE("box_dim_regression: precondition errors") {
    BoxCountSeries tiny;
    tiny.deltas = {0.1, 0.05, 0.02};
    tiny.counts = {2, 4, 8};
    CHECK_THROWS_AS(box_dim_regression(tiny), std::invalid_argument);

    BoxCountSeries narrow;
    for (int k = 0; k < 5; ++k) {
        narrow.deltas.push_back(0.1 / (1 + k));
        narrow.counts.push_back(10 * (1 + k));
    }
    CHECK_THROWS_AS(box_dim_regression(narrow), std::invalid_argument);
}

TEST_CASE("lattice_cover_cost: bounded at the closed-form exponent") {
    double p = 2, theta = 0.5;
    int d = 1;
    double s = d * theta / (p + theta);
    double c3 = lattice_cover_cost(p, d, theta, s, 1e-3).cost;
    double c6 = lattice_cover_cost(p, d, theta, s, 1e-6).cost;
    const double C = 32.0;   // 2^{pd+d+1} for p=2, d=1
    CHECK(c3 / c6 < C);
    CHECK(c6 / c3 < C);

    // above the critical exponent the cost decays
    double prev = std::numeric_limits<double>::infinity();
    for (double delta : {1e-3, 1e-6, 1e-9}) {
        double c = lattice_cover_cost(p, d, theta, s + 0.1, delta).cost;
        CHECK(c < prev);
        prev = c;
    }

    // theta = 1 degenerates to the single-scale box budget
    double s1 = d / (p + 1.0);
    double delta = 1e-4;
    double n = std::ceil(std::pow(delta, -1.0 / (p + 1.0)));
    double budget = std::pow(n, d) * std::pow(delta, s1);
    double cost1 = lattice_cover_cost(p, d, 1.0, s1, delta).cost;
    CHECK(cost1 >= budget);
    CHECK(cost1 <= (1.0 + std::pow(2.0, p * d) + 1.0) * budget);
}

TEST_CASE("lattice_cover_cost: stays flat in log-log at the closed form") {
    for (double p : {1.0, 2.0, 3.0}) {
        for (double theta : {0.25, 0.5, 0.75, 1.0}) {
            double s = theta / (p + theta);
            double cost = lattice_cover_cost(p, 1, theta, s, 1e-9).cost;
            CHECK(std::abs(std::log(cost)) / std::abs(std::log(1e-9)) < 0.05);
        }
    }
    // planar case: the normalised log-cost still tends to zero with depth
    for (double theta : {0.25, 0.5, 1.0}) {
        double s = 2 * theta / (2.0 + theta);
        double shallow = std::abs(std::log(lattice_cover_cost(2.0, 2, theta, s, 1e-6).cost)) /
                         std::abs(std::log(1e-6));
        double deep = std::abs(std::log(lattice_cover_cost(2.0, 2, theta, s, 1e-12).cost)) /
                      std::abs(std::log(1e-12));
        CHECK(deep < shallow);
        CHECK(deep < 0.05);
    }
}

TEST_CASE("fit_dim_theta: agrees with the closed form") {
    CHECK(std::abs(fit_dim_theta(2, 1, 0.5) - 0.2) <= 0.03);
    CHECK(std::abs(fit_dim_theta(2, 2, 1.0) - 2.0 / 3) <= 0.03);
    CHECK(fit_dim_theta(2, 1, 1.0 / 64) <= 0.05);
    CHECK(fit_dim_theta(3, 2, 1.0 / 64) <= 0.05);
}

TEST_CASE("fit_dim_theta: monotone in theta") {
    double prev = 0.0;
    for (double theta : {0.25, 0.5, 0.75, 1.0}) {
        double s = fit_dim_theta(2, 1, theta);
        CHECK(s >= prev - 1e-12);
        prev = s;
    }
}

TEST_CASE("fit_dim_theta: rejects shallow grids") {
    std::vector<double> shallow = {1e-2, 2e-3, 1e-3, 5e-4};
    CHECK_THROWS_AS(fit_dim_theta(2, 1, 0.5, shallow), std::invalid_argument);
}

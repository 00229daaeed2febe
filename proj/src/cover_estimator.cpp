#include "iifsdim/cover_estimator.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace iifsdim {

namespace {

void check_delta(double delta) {
    if (!(delta > 0.0 && delta < 1.0)) throw std::invalid_argument("box count: delta must lie in (0,1)");
}

std::int64_t cell_index(double x, double delta, std::int64_t clamp_max) {
    auto k = static_cast<std::int64_t>(std::floor(x / delta));
    return std::min(k, clamp_max);
}

std::int64_t clamp_index(double max_coord, double delta) {
    // the maximal coordinate lands in the last cell instead of opening a new one
    return static_cast<std::int64_t>(std::ceil(max_coord / delta)) - 1;
}

}  // namespace

// ---------------------------------------------------------------- box counts

std::uint64_t box_count(std::span<const double> points, double delta) {
    check_delta(delta);
    if (points.empty()) throw std::invalid_argument("box count: empty input");
    double max_coord = *std::max_element(points.begin(), points.end());
    std::int64_t clamp = clamp_index(max_coord, delta);
    std::vector<std::int64_t> cells;
    cells.reserve(points.size());
    for (double x : points) cells.push_back(cell_index(x, delta, clamp));
    std::sort(cells.begin(), cells.end());
    cells.erase(std::unique(cells.begin(), cells.end()), cells.end());
    return cells.size();
}

std::uint64_t box_count(std::span<const std::array<double, 2>> points, double delta) {
    check_delta(delta);
    if (points.empty()) throw std::invalid_argument("box count: empty input");
    double mx = points[0][0], my = points[0][1];
    for (const auto& p : points) {
        mx = std::max(mx, p[0]);
        my = std::max(my, p[1]);
    }
    std::int64_t cx = clamp_index(mx, delta), cy = clamp_index(my, delta);
    std::vector<std::pair<std::int64_t, std::int64_t>> cells;
    cells.reserve(points.size());
    for (const auto& p : points)
        cells.emplace_back(cell_index(p[0], delta, cx), cell_index(p[1], delta, cy));
    std::sort(cells.begin(), cells.end());
    cells.erase(std::unique(cells.begin(), cells.end()), cells.end());
    return cells.size();
}

std::uint64_t box_count(const SequenceSet& set, double delta) {
    check_delta(delta);
    if (!(set.p > 0.0)) throw std::invalid_argument("box count: sequence exponent must be positive");
    // points below delta/2 share cell 0 with the accumulation point, so
    // enumerating n^{-p} >= delta/2 gives the exact count
    double n_max = std::pow(2.0 / delta, 1.0 / set.p) + 1.0;
    if (n_max > 6e7) throw std::invalid_argument("box count: delta too small for exact enumeration");
    std::vector<double> pts;
    pts.reserve(static_cast<std::size_t>(n_max) + 2);
    pts.push_back(0.0);
    for (std::int64_t n = 1; n <= static_cast<std::int64_t>(n_max); ++n)
        pts.push_back(std::pow(static_cast<double>(n), -set.p));
    return box_count(pts, delta);
}

std::uint64_t box_count(const LatticeInversionSet& set, double delta) {
    check_delta(delta);
    if (!(set.p > 0.0)) throw std::invalid_argument("box count: lattice exponent must be positive");
    if (set.d < 1 || set.d > 2) throw std::invalid_argument("box count: lattice d must be 1 or 2");
    if (set.d == 1) return box_count(SequenceSet{set.p}, delta);

    // G_{p,2}: lattice points with norm >= delta/2; the rest lie in cell (0,0)
    double m_max = std::pow(2.0 / delta, 1.0 / set.p) + 1.0;
    if (m_max * m_max > 4e7) throw std::invalid_argument("box count: delta too small for exact enumeration");
    std::vector<std::array<double, 2>> pts;
    pts.push_back({0.0, 0.0});
    for (std::int64_t m = 1; m <= static_cast<std::int64_t>(m_max); ++m) {
        double a = std::pow(static_cast<double>(m), set.p);
        for (std::int64_t n = 1; n <= static_cast<std::int64_t>(m_max); ++n) {
            double b = std::pow(static_cast<double>(n), set.p);
            double norm2 = a * a + b * b;
            if (1.0 / std::sqrt(norm2) < 0.5 * delta) continue;
            pts.push_back({a / norm2, b / norm2});
        }
    }
    return box_count(std::span<const std::array<double, 2>>(pts), delta);
}

namespace {

template <typename Set>
BoxCountSeries make_series(const Set& set, std::span<const double> deltas) {
    if (deltas.size() < 2) throw std::invalid_argument("box series: need at least 2 scales");
    BoxCountSeries series;
    for (std::size_t i = 0; i < deltas.size(); ++i) {
        if (i > 0 && !(deltas[i] < deltas[i - 1]))
            throw std::invalid_argument("box series: deltas must be strictly decreasing");
        series.deltas.push_back(deltas[i]);
        series.counts.push_back(box_count(set, deltas[i]));
    }
    return series;
}

}  // namespace

BoxCountSeries box_count_series(const SequenceSet& set, std::span<const double> deltas) {
    return make_series(set, deltas);
}

BoxCountSeries box_count_series(const LatticeInversionSet& set, std::span<const double> deltas) {
    return make_series(set, deltas);
}

// ---------------------------------------------------------------- regression

BoxDimFit box_dim_regression(const BoxCountSeries& series) {
    const std::size_t n = series.deltas.size();
    if (n < 4) throw std::invalid_argument("box regression: need at least 4 entries");
    if (series.counts.size() != n) throw std::invalid_argument("box regression: malformed series");
    double span = std::log10(series.deltas.front() / series.deltas.back());
    if (span < 2.0 - 1e-9)
        throw std::invalid_argument("box regression: scales must span at least 2 decades");
    for (std::size_t i = 0; i < n; ++i) {
        if (series.counts[i] == 0) throw std::invalid_argument("box regression: zero count");
        if (i > 0 && !(series.deltas[i] < series.deltas[i - 1]))
            throw std::invalid_argument("box regression: deltas must be strictly decreasing");
    }

    // certified output: pairwise chord slopes over the deepest half
    std::size_t k = (n + 1) / 2;
    std::size_t start = n - k;
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    for (std::size_t i = start; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            double slope = (std::log(static_cast<double>(series.counts[j])) -
                            std::log(static_cast<double>(series.counts[i]))) /
                           (std::log(series.deltas[i]) - std::log(series.deltas[j]));
            lo = std::min(lo, slope);
            hi = std::max(hi, slope);
        }
    }

    // least squares over the whole series, convenience only
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        double x = -std::log(series.deltas[i]);
        double y = std::log(static_cast<double>(series.counts[i]));
        sx += x; sy += y; sxx += x * x; sxy += x * y;
    }
    double dn = static_cast<double>(n);
    double ls = (dn * sxy - sx * sy) / (dn * sxx - sx * sx);

    BoxDimFit fit;
    fit.bracket.lower = lo;
    fit.bracket.upper = hi;
    fit.midpoint = 0.5 * (lo + hi);
    fit.least_squares = ls;
    return fit;
}

// ---------------------------------------------------------------- cover cost

CoverCost lattice_cover_cost(double p, int d, double theta, double s, double delta) {
    if (!(p > 0.0)) throw std::domain_error("cover cost: p must be positive");
    if (d < 1) throw std::domain_error("cover cost: d must be >= 1");
    if (!(theta > 0.0 && theta <= 1.0)) throw std::domain_error("cover cost: theta must lie in (0,1]");
    if (!(s > 0.0)) throw std::domain_error("cover cost: s must be positive");
    if (!(delta > 0.0 && delta < 0.1)) throw std::domain_error("cover cost: delta must lie in (0, 1/10)");

    double n = std::ceil(std::pow(delta, -theta / (p + theta)));
    double fine = std::pow(std::pow(n, -p) / std::pow(delta, theta) + 1.0, d) * std::pow(delta, theta * s);
    double coarse = std::pow(n, d) * std::pow(delta, s);

    CoverCost cost;
    cost.p = p;
    cost.d = d;
    cost.theta = theta;
    cost.s = s;
    cost.delta = delta;
    cost.cost = fine + coarse;
    return cost;
}

std::vector<double> default_fit_delta_grid() {
    // the boundedness classifier resolves s to about 3/decades, so the default
    // grid goes deep; the cost is a closed formula, depth is free
    std::vector<double> grid;
    const int points = 40;
    const double e0 = -2.0, e1 = -152.0;
    for (int i = 0; i < points; ++i)
        grid.push_back(std::pow(10.0, e0 + (e1 - e0) * i / (points - 1)));
    return grid;
}

double fit_dim_theta(double p, int d, double theta, std::span<const double> delta_grid) {
    std::vector<double> fallback;
    if (delta_grid.empty()) {
        fallback = default_fit_delta_grid();
        delta_grid = fallback;
    }
    if (delta_grid.size() < 4) throw std::invalid_argument("fit: need at least 4 deltas");
    double span = std::log10(delta_grid.front() / delta_grid.back());
    if (std::abs(span) < 3.0) throw std::invalid_argument("fit: delta grid must span >= 3 decades");

    constexpr double kStep = 0.005;
    constexpr double kRatioThreshold = 1e3;
    for (double s = kStep; s <= static_cast<double>(d) + 1e-9; s += kStep) {
        double lo = std::numeric_limits<double>::infinity();
        double hi = 0.0;
        for (double delta : delta_grid) {
            double c = lattice_cover_cost(p, d, theta, s, delta).cost;
            lo = std::min(lo, c);
            hi = std::max(hi, c);
        }
        if (hi / lo < kRatioThreshold) return s;
    }
    throw std::runtime_error("fit: search grid exhausted without a bounded cost");
}

}  // namespace iifsdim

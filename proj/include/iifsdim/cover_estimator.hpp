#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "iifsdim/pressure.hpp"

namespace iifsdim {

// ---------------------------------------------------------------- box counts

struct BoxCountSeries {
    std::vector<double> deltas;          // strictly decreasing, in (0,1)
    std::vector<std::uint64_t> counts;   // non-decreasing as delta decreases
    std::string grid_convention = "origin-anchored half-open cells, max coordinate clamped";
};

// Grid-cell count: origin-anchored half-open cells of side delta; the maximal
// coordinate of the input is clamped into the last cell instead of opening a
// new one.
std::uint64_t box_count(std::span<const double> points, double delta);
std::uint64_t box_count(std::span<const std::array<double, 2>> points, double delta);

// Analytic reference sets with exact counts (enumeration plus a tail block of
// cells that provably all contain points).
struct SequenceSet {
    double p = 1.0;   // { n^{-p} : n in N } together with 0
};
struct LatticeInversionSet {
    double p = 2.0;   // G_{p,d} = { x/||x||^2 : x in {1^p,2^p,...}^d }
    int d = 1;
};

std::uint64_t box_count(const SequenceSet& set, double delta);
std::uint64_t box_count(const LatticeInversionSet& set, double delta);

BoxCountSeries box_count_series(const SequenceSet& set, std::span<const double> deltas);
BoxCountSeries box_count_series(const LatticeInversionSet& set, std::span<const double> deltas);

// ---------------------------------------------------------------- regression

struct BoxDimFit {
    DimBracket bracket;        // [min, max] pairwise chord slopes, deepest half
    double midpoint = 0;
    double least_squares = 0;  // convenience only
};

// Requires >= 4 entries spanning >= 2 decades.
BoxDimFit box_dim_regression(const BoxCountSeries& series);

// ---------------------------------------------------------------- cover cost

struct CoverCost {
    double p = 0, d = 0, theta = 0, s = 0, delta = 0;
    double cost = 0;
};

// Two-scale constrained-cover budget for the lattice inversion set:
//   (n^{-p}/delta^theta + 1)^d delta^{theta s} + n^d delta^s,
// n = ceil(delta^{-theta/(p+theta)}).
CoverCost lattice_cover_cost(double p, int d, double theta, double s, double delta);

// Smallest s on a 0.005-step grid whose cover cost stays bounded
// (max/min ratio < 1e3) across the delta grid. The default grid is very deep
// (1e-2 down to 1e-152); resolving s to ~0.025 requires it, and the cost is a
// closed formula so depth is free.
std::vector<double> default_fit_delta_grid();
double fit_dim_theta(double p, int d, double theta, std::span<const double> delta_grid = {});

}  // namespace iifsdim

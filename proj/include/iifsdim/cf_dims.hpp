#pragma once

#include <complex>
#include <cstdint>
#include <optional>

#include "iifsdim/dim_formulas.hpp"

namespace iifsdim {

// End-to-end dimension report for a continued-fraction set with restricted
// digits: Hausdorff bracket, finiteness parameter, box dimension of the
// fixed-point set {1/b}, and the full theta-curve max{h, dim_theta {1/b}}.
struct CfReport {
    DigitSet digits;
    DimBracket h_bracket;
    double theta_s = 0;
    double fixed_point_box_dim = 0;
    DimCurve curve;
};

struct CfReportOptions {
    int level = 2;
    std::int64_t truncation = 0;          // 0 = level defaults
    double tol = 1e-9;
    std::size_t grid_points = 513;
    std::optional<double> supplied_h;     // skip the pressure computation
};

CfReport cf_report(const DigitSet& digits, const CfReportOptions& options = {});

// First `count` reciprocals 1/b in enumeration order; real digit sets give
// points with zero imaginary part.
std::vector<std::complex<double>> cf_fixed_points(const DigitSet& digits, std::size_t count);

// Points S_w(anchor) for uniformly sampled words of the truncated alphabet.
// first_letters, when given, receives each word's outermost alphabet index so
// callers can verify first-level cylinder containment exactly.
std::vector<std::complex<double>> cf_sample_points(const DigitSet& digits, std::size_t num_points,
                                                   int depth, std::uint64_t seed,
                                                   std::size_t truncation = 64,
                                                   std::vector<std::size_t>* first_letters = nullptr);

// Smallest power-of-two l with hausdorff upper endpoint < 1/(p+1) - margin,
// i.e. l large enough that the curve has a genuine phase transition.
std::int64_t find_l_for_phase_transition(double p, int level = 1, std::int64_t truncation = 0,
                                         double margin = 0.01);

}  // namespace iifsdim

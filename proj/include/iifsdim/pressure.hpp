#pragma once

#include <cstdint>
#include <functional>
#include <span>

#include "iifsdim/ifs_core.hpp"

namespace iifsdim {

// ---------------------------------------------------------------- brackets

struct DimBracket {
    double lower = 0;
    double upper = 0;
    int witness_level = 0;
    std::int64_t witness_truncation = 0;
    bool warning = false;   // saturated endpoint or tolerance not reached

    double midpoint() const { return 0.5 * (lower + upper); }
    double width() const { return upper - lower; }
    bool contains(double x) const { return lower <= x && x <= upper; }
};

// ---------------------------------------------------------------- phi sums

// Level-n sums of cylinder-bound powers over the N-letter truncated alphabet.
// Truncation only drops positive terms, so both sums are lower estimates of
// their full-alphabet counterparts; callers enlarge N until stable.
struct PhiSums {
    double lower_sum = 0;   // sum of lower-bound^t
    double upper_sum = 0;   // sum of upper-bound^t
    int level = 1;
    std::int64_t truncation = 0;   // letters actually used
};

PhiSums phi_level(const SystemSpec& system, int level, double t, std::int64_t truncation);

// ---------------------------------------------------------------- pressure

struct PressureEstimate {
    double t = 0;
    int level = 1;
    std::int64_t truncation = 0;
    double lower_value = 0;   // (1/n) log lowerSum
    double upper_value = 0;   // (1/n) log upperSum at the stable truncation
};

// Truncation policy for infinite digit sets: N doubles until the level-n sum
// changes by < 1e-12 relative or the cap is hit. truncation_cap = 0 uses the
// level defaults (1e6 / 1e4 / 1e3 letters at level 1 / 2 / >=3); an overall
// word budget additionally keeps N^level enumerable.
PressureEstimate pressure_estimate(const SystemSpec& system, double t, int level,
                                   std::int64_t truncation_cap = 0);

// theta_S: 0 for finite sets, 1/(2p) for PowerFamily (1/2 at the degenerate
// p = 1 full alphabet), 1/p for ComplexPowerFamily.
double finiteness_parameter(const DigitSet& digits);

// ---------------------------------------------------------------- h bracket

// Certified bracket for the Hausdorff-dimension parameter h:
//   upper = bisection root of (upper phi sum at stable truncation) = 1,
//   lower = root of the lower phi sum at the largest truncation
// (a finite-subsystem similarity-type lower bound). For CF-real systems the
// sums are evaluated with Lipschitz bounds over the invariant hull of the
// limit set, which tightens both endpoints without losing validity.
DimBracket hausdorff_bracket(const SystemSpec& system, int level,
                             std::int64_t truncation = 0, double tol = 1e-10);

// ---------------------------------------------------------------- similarity

struct SimilarityDim {
    double value = 0;
    bool saturated = false;   // sum still >= 1 at the ambient dimension
};

// inf { t > 0 : sum c_i^t < 1 } by bisection on the monotone sum.
SimilarityDim similarity_h(std::span<const double> ratios, double ambient = 1.0);

// Same, with the sum given as a function of t (parametric families).
SimilarityDim similarity_h(const std::function<double(double)>& sum_at_t, double ambient = 1.0);

}  // namespace iifsdim

#pragma once

#include <span>
#include <string>
#include <vector>

#include "iifsdim/pressure.hpp"

namespace iifsdim {

// ---------------------------------------------------------------- curves

struct DimCurve {
    std::vector<double> thetas;       // increasing grid in [0,1]
    std::vector<DimBracket> values;   // one bracket per theta
    std::string source;

    std::size_t size() const { return thetas.size(); }
};

// 513 uniform points on [0,1] plus any extra values inserted exactly
// (phase transitions, Holder optima) so grid minima land on grid points.
std::vector<double> make_theta_grid(std::size_t points = 513,
                                    std::span<const double> extra = {});

// dim_theta of the sequence set { i^{-p} }: theta/(p+theta).
double seq_dim_theta(double p, double theta);

// dim_theta of the lattice inversion G_{p,d}: d*theta/(p+theta).
double lattice_dim_theta(double p, int d, double theta);

// Curve whose value at every theta is the given closed form (exact bracket).
DimCurve exact_curve(std::span<const double> thetas,
                     const std::function<double(double)>& f, std::string source);

// max{h, curve(theta)} endpointwise; lower endpoints follow the lower-bound
// combination, so the result stays a bracket, never a claimed exact value.
DimCurve combine_max(const DimBracket& h, const DimCurve& fixed_point_curve);

// theta* = p h / (d - h), the solution of d theta/(p+theta) = h.
// Requires 0 < h < d/(p+1); otherwise there is no transition.
double phase_transition_theta(double h, double p, int d);

// theta dimA dimB / (dimA - (1-theta) dimB).
double banaji_lower_bound(double theta, double dim_a, double dim_b);

// Index of the grid point with the largest slope change; used to locate the
// phase transition of a combined curve.
struct SlopeBreak {
    bool found = false;
    double theta = 0;
    double slope_change = 0;
};
SlopeBreak find_slope_break(const DimCurve& curve);

// Value-jump detection (theta -> 0 discontinuity classification): a jump
// larger than 10 x (grid step x local slope scale) counts as discontinuous.
bool has_value_jump(const DimCurve& curve);

// ---------------------------------------------------------------- Holder

struct HolderReport {
    double theta_opt = 0;
    double bound_intermediate = 0;   // min over grid of dim F_q / dim F_p
    double bound_hausdorff = 0;      // h_q / h_p
    double bound_box = 0;            // (p+1)/(q+1)
    std::vector<double> thetas;
    std::vector<double> dim_p;       // dim_theta F_{I_p}
    std::vector<double> dim_q;       // dim_theta F_{I_q}
    std::vector<double> alpha_bound; // dim_q / dim_p
};

// Best Holder-exponent bound for maps f with f(F_{I_q}) containing F_{I_p}.
// Throws std::domain_error naming the violated inequality when the parameter
// regime does not apply.
HolderReport holder_bounds(double p, double q, double h_p, double h_q,
                           std::span<const double> theta_grid = {});

// ---------------------------------------------------------------- fBm

struct FbmImageReport {
    int ambient = 1;
    double hausdorff_image = 0;
    bool box_strictly_below_ambient = false;
    bool all_equal_ambient = false;
};

// Almost-sure dimensions of the image under index-alpha fractional Brownian
// motion. Real case threshold alpha > h; planar case alpha > h/2.
FbmImageReport fbm_image_dims(double h, double alpha, int ambient);

// ---------------------------------------------------------------- continuity

struct ContinuitySample {
    double theta = 0;
    double gap = 0;   // |curve.upper(theta) - h.upper|
};

struct ContinuityReport {
    bool continuous_at_zero = false;
    std::vector<ContinuitySample> samples;
};

// Checks that curve upper endpoints converge to h.upper as theta -> 0+ along
// the grid: gaps sampled at the eps thresholds must be non-increasing and the
// final one below tol.
ContinuityReport continuity_at_zero_check(const DimCurve& curve, const DimBracket& h,
                                          std::span<const double> eps_grid = {},
                                          double tol = 0.01);

}  // namespace iifsdim

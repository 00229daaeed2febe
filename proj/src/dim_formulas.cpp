#include "iifsdim/dim_formulas.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace iifsdim {

namespace {

void check_theta(double theta) {
    if (!(theta >= 0.0 && theta <= 1.0))
        throw std::domain_error("theta must lie in [0,1]");
}

}  // namespace

std::vector<double> make_theta_grid(std::size_t points, std::span<const double> extra) {
    if (points < 2) throw std::invalid_argument("theta grid needs at least 2 points");
    std::vector<double> grid;
    grid.reserve(points + extra.size());
    for (std::size_t i = 0; i < points; ++i)
        grid.push_back(static_cast<double>(i) / static_cast<double>(points - 1));
    for (double x : extra)
        if (x > 0.0 && x < 1.0) grid.push_back(x);
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end(),
                           [](double a, double b) { return std::abs(a - b) < 1e-15; }),
               grid.end());
    return grid;
}

double seq_dim_theta(double p, double theta) {
    if (!(p > 0.0)) throw std::domain_error("seq_dim_theta: p must be positive");
    check_theta(theta);
    return theta / (p + theta);
}

double lattice_dim_theta(double p, int d, double theta) {
    if (!(p > 0.0)) throw std::domain_error("lattice_dim_theta: p must be positive");
    if (d < 1) throw std::domain_error("lattice_dim_theta: d must be >= 1");
    check_theta(theta);
    return d * theta / (p + theta);
}

DimCurve exact_curve(std::span<const double> thetas, const std::function<double(double)>& f,
                     std::string source) {
    DimCurve curve;
    curve.source = std::move(source);
    curve.thetas.assign(thetas.begin(), thetas.end());
    curve.values.reserve(thetas.size());
    for (double th : thetas) {
        double v = f(th);
        curve.values.push_back(DimBracket{v, v});
    }
    return curve;
}

DimCurve combine_max(const DimBracket& h, const DimCurve& fixed_point_curve) {
    if (fixed_point_curve.thetas.size() != fixed_point_curve.values.size() ||
        fixed_point_curve.thetas.empty())
        throw std::invalid_argument("combine_max: malformed curve");
    DimCurve out;
    out.thetas = fixed_point_curve.thetas;
    out.source = "max(h, " + fixed_point_curve.source + ")";
    out.values.reserve(fixed_point_curve.values.size());
    for (const DimBracket& v : fixed_point_curve.values) {
        DimBracket b;
        b.lower = std::max(h.lower, v.lower);
        b.upper = std::max(h.upper, v.upper);
        b.witness_level = h.witness_level;
        b.witness_truncation = h.witness_truncation;
        b.warning = h.warning || v.warning;
        out.values.push_back(b);
    }
    return out;
}

double phase_transition_theta(double h, double p, int d) {
    if (!(p > 0.0) || d < 1) throw std::domain_error("phase transition: bad p or d");
    if (h < 0.0) throw std::domain_error("phase transition: h must be >= 0");
    if (h == 0.0) return 0.0;
    if (!(h < static_cast<double>(d) / (p + 1.0)))
        throw std::domain_error("phase transition: none exists, h >= d/(p+1)");
    return p * h / (static_cast<double>(d) - h);
}

double banaji_lower_bound(double theta, double dim_a, double dim_b) {
    if (!(theta > 0.0 && theta <= 1.0))
        throw std::domain_error("banaji bound: theta must lie in (0,1]");
    if (!(dim_b > 0.0 && dim_b <= dim_a))
        throw std::domain_error("banaji bound: need 0 < dimB <= dimA");
    double denom = dim_a - (1.0 - theta) * dim_b;
    if (!(denom > 0.0)) throw std::domain_error("banaji bound: non-positive denominator");
    return theta * dim_a * dim_b / denom;
}

SlopeBreak find_slope_break(const DimCurve& curve) {
    SlopeBreak out;
    const auto& ths = curve.thetas;
    if (ths.size() < 3) return out;
    double best = 0.0;
    for (std::size_t i = 1; i + 1 < ths.size(); ++i) {
        double sl = (curve.values[i].upper - curve.values[i - 1].upper) / (ths[i] - ths[i - 1]);
        double sr = (curve.values[i + 1].upper - curve.values[i].upper) / (ths[i + 1] - ths[i]);
        double change = std::abs(sr - sl);
        if (change > best) {
            best = change;
            out.theta = ths[i];
        }
    }
    out.slope_change = best;
    out.found = best > 1e-9;
    return out;
}

bool has_value_jump(const DimCurve& curve) {
    const auto& ths = curve.thetas;
    if (ths.size() < 2) return false;
    double vmin = curve.values.front().upper, vmax = vmin;
    for (const auto& v : curve.values) {
        vmin = std::min(vmin, v.upper);
        vmax = std::max(vmax, v.upper);
    }
    double slope_scale = std::max(1.0, vmax - vmin);
    for (std::size_t i = 0; i + 1 < ths.size(); ++i) {
        double step = ths[i + 1] - ths[i];
        double jump = std::abs(curve.values[i + 1].upper - curve.values[i].upper);
        if (jump > 10.0 * step * slope_scale) return true;
    }
    return false;
}

// ---------------------------------------------------------------- Holder

HolderReport holder_bounds(double p, double q, double h_p, double h_q,
                           std::span<const double> theta_grid) {
    auto require = [](bool ok, const char* ineq) {
        if (!ok) throw std::domain_error(std::string("holder bounds: regime violated: ") + ineq);
    };
    require(p > 1.0, "p > 1");
    require(q > p, "q > p");
    require(q < 2.0 * p - 1.0, "q < 2p-1");
    require(h_p > 1.0 / (2.0 * p), "h_p > 1/(2p)");
    require(h_p < 1.0 / (p + 1.0), "h_p < 1/(p+1)");
    require(h_q > p * h_p / (q - q * h_p + p * h_p), "h_q > p*h_p/(q - q*h_p + p*h_p)");
    require(h_q < 1.0 / (q + 1.0), "h_q < 1/(q+1)");

    HolderReport report;
    report.theta_opt = q * h_q / (1.0 - h_q);
    report.bound_hausdorff = h_q / h_p;
    report.bound_box = (p + 1.0) / (q + 1.0);

    std::vector<double> grid;
    if (theta_grid.empty()) {
        const double extras[] = {report.theta_opt, p * h_p / (1.0 - h_p)};
        grid = make_theta_grid(513, extras);
    } else {
        grid.assign(theta_grid.begin(), theta_grid.end());
    }

    report.thetas = grid;
    report.dim_p.reserve(grid.size());
    report.dim_q.reserve(grid.size());
    report.alpha_bound.reserve(grid.size());
    double best = std::numeric_limits<double>::infinity();
    for (double th : grid) {
        double dp = std::max(h_p, seq_dim_theta(p, th));
        double dq = std::max(h_q, seq_dim_theta(q, th));
        double bound = dq / dp;
        report.dim_p.push_back(dp);
        report.dim_q.push_back(dq);
        report.alpha_bound.push_back(bound);
        best = std::min(best, bound);
    }
    report.bound_intermediate = best;
    return report;
}

// ---------------------------------------------------------------- fBm

FbmImageReport fbm_image_dims(double h, double alpha, int ambient) {
    if (ambient != 1 && ambient != 2)
        throw std::domain_error("fbm: ambient dimension must be 1 or 2");
    if (!(h > 0.0 && h <= static_cast<double>(ambient)))
        throw std::domain_error("fbm: h must lie in (0, ambient]");
    if (!(alpha > 0.0 && alpha < 1.0)) throw std::domain_error("fbm: alpha must lie in (0,1)");

    FbmImageReport report;
    report.ambient = ambient;
    const double threshold = h / static_cast<double>(ambient);
    if (alpha > threshold) {
        report.hausdorff_image = std::min(h / alpha, static_cast<double>(ambient));
        report.box_strictly_below_ambient = true;
        report.all_equal_ambient = false;
    } else {
        report.hausdorff_image = static_cast<double>(ambient);
        report.box_strictly_below_ambient = false;
        report.all_equal_ambient = true;
    }
    return report;
}

// ---------------------------------------------------------------- continuity

ContinuityReport continuity_at_zero_check(const DimCurve& curve, const DimBracket& h,
                                          std::span<const double> eps_grid, double tol) {
    if (curve.thetas.empty()) throw std::invalid_argument("continuity check: empty curve");
    std::vector<double> eps;
    if (eps_grid.empty())
        eps = {1.0 / 8, 1.0 / 32, 1.0 / 128, 1.0 / 512};
    else
        eps.assign(eps_grid.begin(), eps_grid.end());
    std::sort(eps.rbegin(), eps.rend());

    ContinuityReport report;
    for (double e : eps) {
        // largest positive grid theta <= e
        double theta = -1.0;
        std::size_t idx = 0;
        for (std::size_t i = 0; i < curve.thetas.size(); ++i) {
            if (curve.thetas[i] > 0.0 && curve.thetas[i] <= e) {
                theta = curve.thetas[i];
                idx = i;
            }
        }
        if (theta < 0.0) continue;
        report.samples.push_back({theta, std::abs(curve.values[idx].upper - h.upper)});
    }
    if (report.samples.empty()) throw std::invalid_argument("continuity check: grid has no point near 0");

    bool decreasing = true;
    for (std::size_t i = 1; i < report.samples.size(); ++i)
        if (report.samples[i].gap > report.samples[i - 1].gap + 1e-12) decreasing = false;
    report.continuous_at_zero = decreasing && report.samples.back().gap <= tol;
    return report;
}

}  // namespace iifsdim

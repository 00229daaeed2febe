#pragma once

#include <string>
#include <vector>

#include "iifsdim/cover_estimator.hpp"
#include "iifsdim/dim_formulas.hpp"

namespace iifsdim {

// ---------------------------------------------------------------- plotting

struct PlotSeries {
    std::string label;
    std::vector<double> x;
    std::vector<double> y;
    std::string color;   // stroke; assigned from a palette when empty
};

struct PlotSpec {
    std::vector<PlotSeries> series;
    std::string x_label = "theta";
    std::string y_label = "dimension";
    std::string title;
    bool x_is_theta = true;   // enforce x in [0,1]
};

// Standalone 800x600 SVG: linear axes with tick labels, one polyline per
// series, legend from labels. Throws std::invalid_argument on empty series
// or non-finite values.
std::string render_svg(const PlotSpec& spec);
void emit_svg(const PlotSpec& spec, const std::string& path);

// ---------------------------------------------------------------- CSV

// theta,lower,upper rows; full-precision decimal, deterministic bytes.
std::string curve_csv(const DimCurve& curve);
void emit_csv(const DimCurve& curve, const std::string& path);

// delta,count rows.
std::string series_csv(const BoxCountSeries& series);
void emit_csv(const BoxCountSeries& series, const std::string& path);

// theta,lower,upper,alpha_bound rows (lower = dim F_q, upper = dim F_p).
std::string holder_csv(const HolderReport& report);
void emit_csv(const HolderReport& report, const std::string& path);

// Parse theta,lower,upper back (round-trip checks and the plot subcommand).
DimCurve parse_curve_csv(const std::string& text);

std::string format_full(double v);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace iifsdim

#include "iifsdim/emit.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace iifsdim {

std::string format_full(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out << text;
    if (!out) throw std::runtime_error("write failed: " + path);
}

// ---------------------------------------------------------------- CSV

std::string curve_csv(const DimCurve& curve) {
    std::string out = "theta,lower,upper\n";
    for (std::size_t i = 0; i < curve.thetas.size(); ++i) {
        out += format_full(curve.thetas[i]);
        out += ',';
        out += format_full(curve.values[i].lower);
        out += ',';
        out += format_full(curve.values[i].upper);
        out += '\n';
    }
    return out;
}

void emit_csv(const DimCurve& curve, const std::string& path) {
    write_text_file(path, curve_csv(curve));
}

std::string series_csv(const BoxCountSeries& series) {
    std::string out = "delta,count\n";
    for (std::size_t i = 0; i < series.deltas.size(); ++i) {
        out += format_full(series.deltas[i]);
        out += ',';
        out += std::to_string(series.counts[i]);
        out += '\n';
    }
    return out;
}

void emit_csv(const BoxCountSeries& series, const std::string& path) {
    write_text_file(path, series_csv(series));
}

std::string holder_csv(const HolderReport& report) {
    std::string out = "theta,lower,upper,alpha_bound\n";
    for (std::size_t i = 0; i < report.thetas.size(); ++i) {
        out += format_full(report.thetas[i]);
        out += ',';
        out += format_full(report.dim_q[i]);   // lower of the two set curves
        out += ',';
        out += format_full(report.dim_p[i]);
        out += ',';
        out += format_full(report.alpha_bound[i]);
        out += '\n';
    }
    return out;
}

void emit_csv(const HolderReport& report, const std::string& path) {
    write_text_file(path, holder_csv(report));
}

DimCurve parse_curve_csv(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error("csv parse: empty input");
    DimCurve curve;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream row(line);
        std::string cell;
        std::vector<double> vals;
        while (std::getline(row, cell, ',')) vals.push_back(std::stod(cell));
        if (vals.size() < 3) throw std::runtime_error("csv parse: malformed row: " + line);
        curve.thetas.push_back(vals[0]);
        curve.values.push_back(DimBracket{vals[1], vals[2]});
    }
    if (curve.thetas.empty()) throw std::runtime_error("csv parse: no data rows");
    return curve;
}

// ---------------------------------------------------------------- SVG

namespace {

constexpr int kWidth = 800;
constexpr int kHeight = 600;
constexpr int kMarginLeft = 70;
constexpr int kMarginRight = 20;
constexpr int kMarginTop = 40;
constexpr int kMarginBottom = 50;

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                          "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"};

std::string fmt_tick(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.4g", v);
    return buf;
}

}  // namespace

std::string render_svg(const PlotSpec& spec) {
    if (spec.series.empty()) throw std::invalid_argument("svg: no series to plot");
    double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin;
    double ymin = xmin, ymax = -xmin;
    for (const auto& s : spec.series) {
        if (s.x.empty() || s.x.size() != s.y.size())
            throw std::invalid_argument("svg: series '" + s.label + "' is empty or ragged");
        for (std::size_t i = 0; i < s.x.size(); ++i) {
            if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i]))
                throw std::invalid_argument("svg: non-finite value in series '" + s.label + "'");
            if (spec.x_is_theta && (s.x[i] < 0.0 || s.x[i] > 1.0))
                throw std::invalid_argument("svg: theta values must lie in [0,1]");
            xmin = std::min(xmin, s.x[i]);
            xmax = std::max(xmax, s.x[i]);
            ymin = std::min(ymin, s.y[i]);
            ymax = std::max(ymax, s.y[i]);
        }
    }
    if (xmax == xmin) { xmax += 1.0; xmin -= 1.0; }
    if (ymax == ymin) { ymax += 1.0; ymin -= 1.0; }
    // pad the y range a little
    double ypad = 0.05 * (ymax - ymin);
    ymin -= ypad;
    ymax += ypad;

    const double plot_w = kWidth - kMarginLeft - kMarginRight;
    const double plot_h = kHeight - kMarginTop - kMarginBottom;
    auto X = [&](double x) { return kMarginLeft + (x - xmin) / (xmax - xmin) * plot_w; };
    auto Y = [&](double y) { return kMarginTop + (ymax - y) / (ymax - ymin) * plot_h; };

    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\""
        << kHeight << "\" viewBox=\"0 0 " << kWidth << " " << kHeight << "\">\n";
    svg << "<rect width=\"" << kWidth << "\" height=\"" << kHeight << "\" fill=\"white\"/>\n";
    if (!spec.title.empty())
        svg << "<text x=\"" << kWidth / 2 << "\" y=\"24\" text-anchor=\"middle\" "
            << "font-family=\"sans-serif\" font-size=\"16\">" << spec.title << "</text>\n";

    // axes
    svg << "<line x1=\"" << kMarginLeft << "\" y1=\"" << kMarginTop + plot_h << "\" x2=\""
        << kMarginLeft + plot_w << "\" y2=\"" << kMarginTop + plot_h
        << "\" stroke=\"black\"/>\n";
    svg << "<line x1=\"" << kMarginLeft << "\" y1=\"" << kMarginTop << "\" x2=\"" << kMarginLeft
        << "\" y2=\"" << kMarginTop + plot_h << "\" stroke=\"black\"/>\n";

    const int n_ticks = 5;
    for (int i = 0; i <= n_ticks; ++i) {
        double fx = xmin + (xmax - xmin) * i / n_ticks;
        double px = X(fx);
        svg << "<line x1=\"" << px << "\" y1=\"" << kMarginTop + plot_h << "\" x2=\"" << px
            << "\" y2=\"" << kMarginTop + plot_h + 5 << "\" stroke=\"black\"/>\n";
        svg << "<text x=\"" << px << "\" y=\"" << kMarginTop + plot_h + 20
            << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">"
            << fmt_tick(fx) << "</text>\n";
        double fy = ymin + (ymax - ymin) * i / n_ticks;
        double py = Y(fy);
        svg << "<line x1=\"" << kMarginLeft - 5 << "\" y1=\"" << py << "\" x2=\"" << kMarginLeft
            << "\" y2=\"" << py << "\" stroke=\"black\"/>\n";
        svg << "<text x=\"" << kMarginLeft - 8 << "\" y=\"" << py + 4
            << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">"
            << fmt_tick(fy) << "</text>\n";
    }
    svg << "<text x=\"" << kMarginLeft + plot_w / 2 << "\" y=\"" << kHeight - 10
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">" << spec.x_label
        << "</text>\n";
    svg << "<text x=\"18\" y=\"" << kMarginTop + plot_h / 2
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\" "
        << "transform=\"rotate(-90 18 " << kMarginTop + plot_h / 2 << ")\">" << spec.y_label
        << "</text>\n";

    // series
    for (std::size_t si = 0; si < spec.series.size(); ++si) {
        const auto& s = spec.series[si];
        std::string color = s.color.empty() ? kPalette[si % 8] : s.color;
        svg << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.6\" points=\"";
        for (std::size_t i = 0; i < s.x.size(); ++i) {
            if (i) svg << ' ';
            svg << X(s.x[i]) << ',' << Y(s.y[i]);
        }
        svg << "\"/>\n";
    }

    // legend
    double lx = kMarginLeft + plot_w - 220, ly = kMarginTop + 10;
    for (std::size_t si = 0; si < spec.series.size(); ++si) {
        const auto& s = spec.series[si];
        std::string color = s.color.empty() ? kPalette[si % 8] : s.color;
        svg << "<line x1=\"" << lx << "\" y1=\"" << ly + 16.0 * si << "\" x2=\"" << lx + 24
            << "\" y2=\"" << ly + 16.0 * si << "\" stroke=\"" << color
            << "\" stroke-width=\"2\"/>\n";
        svg << "<text x=\"" << lx + 30 << "\" y=\"" << ly + 16.0 * si + 4
            << "\" font-family=\"sans-serif\" font-size=\"12\">" << s.label << "</text>\n";
    }

    svg << "</svg>\n";
    return svg.str();
}

void emit_svg(const PlotSpec& spec, const std::string& path) {
    write_text_file(path, render_svg(spec));
}

}  // namespace iifsdim

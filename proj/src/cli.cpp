#include "iifsdim/cli.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "iifsdim/cf_dims.hpp"
#include "iifsdim/cover_estimator.hpp"
#include "iifsdim/emit.hpp"
#include "iifsdim/generic_sim.hpp"

namespace iifsdim {

namespace {

using Json = nlohmann::ordered_json;

Json bracket_json(const DimBracket& b) {
    return Json{{"lower", b.lower},
                {"upper", b.upper},
                {"level", b.witness_level},
                {"truncation", b.witness_truncation},
                {"warning", b.warning}};
}

void deliver(const Json& j, const std::string& out_path) {
    std::string text = j.dump(2) + "\n";
    if (out_path.empty())
        std::cout << text;
    else
        write_text_file(out_path, text);
}

SystemSpec load_system(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open system file: " + path);
    nlohmann::json j;
    in >> j;
    SystemSpec system;
    from_json(j, system);
    return system;
}

DigitSet parse_digits(const std::string& text) {
    DigitSet digits;
    from_json(nlohmann::json::parse(text), digits);
    return digits;
}

double parse_number(const std::string& token) {
    auto slash = token.find('/');
    if (slash != std::string::npos) {
        double num = std::stod(token.substr(0, slash));
        double den = std::stod(token.substr(slash + 1));
        if (den == 0.0) throw std::invalid_argument("bad fraction: " + token);
        return num / den;
    }
    return std::stod(token);
}

// "a:b' ranges become log-spaced scale ladders from a down to b
std::vector<double> parse_delta_range(const std::string& range, int ndeltas) {
    auto colon = range.find(':');
    if (colon == std::string::npos) return {parse_number(range)};
    double a = parse_number(range.substr(0, colon));
    double b = parse_number(range.substr(colon + 1));
    if (!(a > 0.0 && b > 0.0)) throw std::invalid_argument("deltas must be positive");
    if (a < b) std::swap(a, b);
    int n = ndeltas;
    if (n <= 0) {
        // dyadic endpoints get a halving ladder, otherwise 13 points
        double k = std::log2(a / b);
        n = (std::abs(k - std::round(k)) < 1e-9) ? static_cast<int>(std::round(k)) + 1 : 13;
    }
    if (n < 2) n = 2;
    std::vector<double> out;
    out.reserve(n);
    for (int i = 0; i < n; ++i)
        out.push_back(a * std::pow(b / a, static_cast<double>(i) / (n - 1)));
    return out;
}

Json curve_json(const DimCurve& curve) {
    Json rows = Json::array();
    for (std::size_t i = 0; i < curve.thetas.size(); ++i)
        rows.push_back(Json{{"theta", curve.thetas[i]},
                            {"lower", curve.values[i].lower},
                            {"upper", curve.values[i].upper}});
    return rows;
}

struct Cli {
    CLI::App app{"iifs-dim: dimension computations for infinitely generated attractors"};
    std::function<void()> action;

    CLI::App* sub(const char* name, const char* desc) {
        auto* cmd = app.add_subcommand(name, desc);
        cmd->set_help_flag("--help", "print help");
        return cmd;
    }

    Cli() {
        app.set_help_flag("--help", "print help");
        app.require_subcommand(1);
        add_pressure();
        add_hausdorff();
        add_curve();
        add_lattice();
        add_cf();
        add_cf_complex();
        add_holder();
        add_fbm();
        add_cover_fit();
        add_boxdim();
        add_generic();
        add_plot();
    }

    void add_pressure() {
        auto* cmd = sub("pressure", "level-n pressure estimate at a given t");
        auto system_path = std::make_shared<std::string>();
        auto t = std::make_shared<double>(0.5);
        auto level = std::make_shared<int>(2);
        auto truncate = std::make_shared<std::int64_t>(0);
        auto out = std::make_shared<std::string>();
        cmd->add_option("--system", *system_path, "system spec JSON file")->required();
        cmd->add_option("--t", *t, "pressure argument t > 0")->required();
        cmd->add_option("--level", *level, "word length n >= 1");
        cmd->add_option("--truncate", *truncate, "alphabet truncation cap (0 = defaults)");
        cmd->add_option("--out", *out, "output JSON path (default stdout)");
        cmd->callback([=, this] {
            action = [=] {
                if (*t <= 0.0) throw std::domain_error("--t must be positive");
                if (*level < 1) throw std::domain_error("--level must be >= 1");
                PressureEstimate est = pressure_estimate(load_system(*system_path), *t, *level, *truncate);
                deliver(Json{{"t", est.t},
                             {"level", est.level},
                             {"truncation", est.truncation},
                             {"lower", est.lower_value},
                             {"upper", est.upper_value}},
                        *out);
            };
        });
    }

    void add_hausdorff() {
        auto* cmd = sub("hausdorff", "certified bracket for the dimension parameter h");
        auto system_path = std::make_shared<std::string>();
        auto level = std::make_shared<int>(2);
        auto truncate = std::make_shared<std::int64_t>(0);
        auto tol = std::make_shared<double>(1e-10);
        auto out = std::make_shared<std::string>();
        cmd->add_option("--system", *system_path, "system spec JSON file")->required();
        cmd->add_option("--level", *level, "word length n >= 1");
        cmd->add_option("--truncate", *truncate, "alphabet truncation cap (0 = defaults)");
        cmd->add_option("--tol", *tol, "bisection tolerance");
        cmd->add_option("--out", *out, "output JSON path (default stdout)");
        cmd->callback([=, this] {
            action = [=] {
                if (*level < 1) throw std::domain_error("--level must be >= 1");
                if (!(*tol > 0.0)) throw std::domain_error("--tol must be positive");
                DimBracket b = hausdorff_bracket(load_system(*system_path), *level, *truncate, *tol);
                deliver(bracket_json(b), *out);
            };
        });
    }

    void add_curve() {
        auto* cmd = sub("curve", "theta-intermediate dimension curve max{h, family}");
        auto family = std::make_shared<std::string>();
        auto p = std::make_shared<double>(2.0);
        auto d = std::make_shared<int>(1);
        auto h = std::make_shared<double>(0.0);
        auto grid_points = std::make_shared<std::size_t>(513);
        auto out = std::make_shared<std::string>();
        auto svg = std::make_shared<std::string>();
        cmd->add_option("--family", *family, "seq | lattice")->required()
            ->check(CLI::IsMember({"seq", "lattice"}));
        cmd->add_option("--p", *p, "family exponent p > 0")->required();
        cmd->add_option("--d", *d, "lattice ambient dimension");
        cmd->add_option("--h", *h, "Hausdorff value to combine with")->required();
        cmd->add_option("--grid-points", *grid_points, "uniform grid size");
        cmd->add_option("--out", *out, "CSV output path")->required();
        cmd->add_option("--svg", *svg, "optional SVG output path");
        cmd->callback([=, this] {
            action = [=] {
                if (!(*p > 0.0)) throw std::domain_error("--p must be positive");
                if (*d < 1) throw std::domain_error("--d must be >= 1");
                if (*h < 0.0) throw std::domain_error("--h must be >= 0");
                int dd = (*family == "seq") ? 1 : *d;
                std::vector<double> extras;
                if (*h > 0.0 && *h < dd / (*p + 1.0))
                    extras.push_back(phase_transition_theta(*h, *p, dd));
                auto grid = make_theta_grid(*grid_points, extras);
                DimCurve fam =
                    (*family == "seq")
                        ? exact_curve(grid, [&](double th) { return seq_dim_theta(*p, th); }, "seq")
                        : exact_curve(grid, [&](double th) { return lattice_dim_theta(*p, *d, th); },
                                      "lattice");
                DimCurve curve = combine_max(DimBracket{*h, *h}, fam);
                emit_csv(curve, *out);
                if (!svg->empty()) {
                    PlotSpec plot;
                    plot.title = "intermediate dimensions";
                    plot.series.push_back({curve.source, curve.thetas, {}, ""});
                    for (const auto& v : curve.values) plot.series[0].y.push_back(v.upper);
                    emit_svg(plot, *svg);
                }
            };
        });
    }

    void add_lattice() {
        auto* cmd = sub("lattice", "lattice-inversion curve d*theta/(p+theta)");
        auto p = std::make_shared<double>(2.0);
        auto d = std::make_shared<int>(1);
        auto theta = std::make_shared<double>(-1.0);
        auto out = std::make_shared<std::string>();
        cmd->add_option("--p", *p, "exponent p > 0")->required();
        cmd->add_option("--d", *d, "ambient dimension");
        cmd->add_option("--theta", *theta, "single theta (prints JSON instead of CSV)");
        cmd->add_option("--out", *out, "CSV output path");
        cmd->callback([=, this] {
            action = [=] {
                if (!(*p > 0.0)) throw std::domain_error("--p must be positive");
                if (*d < 1) throw std::domain_error("--d must be >= 1");
                if (*theta >= 0.0) {
                    deliver(Json{{"p", *p},
                                 {"d", *d},
                                 {"theta", *theta},
                                 {"value", lattice_dim_theta(*p, *d, *theta)}},
                            "");
                    return;
                }
                auto grid = make_theta_grid(513);
                DimCurve curve = exact_curve(
                    grid, [&](double th) { return lattice_dim_theta(*p, *d, th); }, "lattice");
                if (out->empty())
                    std::cout << curve_csv(curve);
                else
                    emit_csv(curve, *out);
            };
        });
    }

    struct CfCommon {
        std::shared_ptr<int> level = std::make_shared<int>(2);
        std::shared_ptr<std::int64_t> truncate = std::make_shared<std::int64_t>(0);
        std::shared_ptr<double> tol = std::make_shared<double>(1e-9);
        std::shared_ptr<double> h = std::make_shared<double>(-1.0);
        std::shared_ptr<std::size_t> grid_points = std::make_shared<std::size_t>(513);
        std::shared_ptr<std::string> out = std::make_shared<std::string>();
        std::shared_ptr<std::string> csv = std::make_shared<std::string>();

        void attach(CLI::App* cmd) {
            cmd->add_option("--level", *level, "pressure word length");
            cmd->add_option("--truncate", *truncate, "truncation cap (0 = defaults)");
            cmd->add_option("--tol", *tol, "bisection tolerance");
            cmd->add_option("--h", *h, "supply h instead of computing it");
            cmd->add_option("--grid-points", *grid_points, "theta grid size");
            cmd->add_option("--out", *out, "report JSON path (default stdout)");
            cmd->add_option("--csv", *csv, "optional curve CSV path");
        }

        void run(const DigitSet& digits) const {
            if (*level < 1) throw std::domain_error("--level must be >= 1");
            if (!(*tol > 0.0)) throw std::domain_error("--tol must be positive");
            CfReportOptions options;
            options.level = *level;
            options.truncation = *truncate;
            options.tol = *tol;
            options.grid_points = *grid_points;
            if (*h >= 0.0) options.supplied_h = *h;
            CfReport report = cf_report(digits, options);
            nlohmann::json digits_json;
            to_json(digits_json, report.digits);
            deliver(Json{{"digits", Json(digits_json)},
                         {"hBracket", bracket_json(report.h_bracket)},
                         {"thetaS", report.theta_s},
                         {"fixedPointBoxDim", report.fixed_point_box_dim},
                         {"curve", curve_json(report.curve)}},
                    *out);
            if (!csv->empty()) emit_csv(report.curve, *csv);
        }
    };

    void add_cf() {
        auto* cmd = sub("cf", "real continued-fraction dimension report");
        auto digits_text = std::make_shared<std::string>();
        auto common = std::make_shared<CfCommon>();
        cmd->add_option("--digits", *digits_text, "digit set JSON, e.g. {\"type\":\"power\",\"p\":2,\"l\":5}")
            ->required();
        common->attach(cmd);
        cmd->callback([=, this] {
            action = [=] {
                DigitSet digits = parse_digits(*digits_text);
                if (is_complex(digits))
                    throw std::domain_error("cf: use cf-complex for complex digit sets");
                common->run(digits);
            };
        });
    }

    void add_cf_complex() {
        auto* cmd = sub("cf-complex", "complex continued-fraction dimension report");
        auto p = std::make_shared<double>(2.0);
        auto R = std::make_shared<double>(0.0);
        auto common = std::make_shared<CfCommon>();
        cmd->add_option("--p", *p, "power family exponent p > 1")->required();
        cmd->add_option("--R", *R, "excluded-ball radius R >= 0");
        common->attach(cmd);
        cmd->callback([=, this] {
            action = [=] { common->run(ComplexPowerFamily{*p, *R}); };
        });
    }

    void add_holder() {
        auto* cmd = sub("holder", "Holder-exponent bounds between CF sets");
        auto p = std::make_shared<double>(2.0);
        auto q = std::make_shared<double>(2.9);
        auto hp = std::make_shared<double>(0.26);
        auto hq = std::make_shared<double>(0.22);
        auto out = std::make_shared<std::string>();
        auto svg = std::make_shared<std::string>();
        cmd->add_option("--p", *p)->required();
        cmd->add_option("--q", *q)->required();
        cmd->add_option("--hp", *hp, "Hausdorff dimension of F_{I_p}")->required();
        cmd->add_option("--hq", *hq, "Hausdorff dimension of F_{I_q}")->required();
        cmd->add_option("--out", *out, "CSV output path");
        cmd->add_option("--svg", *svg, "SVG output path");
        cmd->callback([=, this] {
            action = [=] {
                HolderReport report = holder_bounds(*p, *q, *hp, *hq);
                deliver(Json{{"thetaOpt", report.theta_opt},
                             {"boundIntermediate", report.bound_intermediate},
                             {"boundBox", report.bound_box},
                             {"boundHausdorff", report.bound_hausdorff}},
                        "");
                if (!out->empty()) emit_csv(report, *out);
                if (!svg->empty()) {
                    PlotSpec plot;
                    plot.title = "intermediate dimensions and Holder bound";
                    plot.y_label = "dimension / bound";
                    PlotSeries sp{"dim F_p", report.thetas, report.dim_p, ""};
                    PlotSeries sq{"dim F_q", report.thetas, report.dim_q, ""};
                    PlotSeries sa{"alpha bound", report.thetas, report.alpha_bound, ""};
                    PlotSeries sb{"best bound", report.thetas,
                                  std::vector<double>(report.thetas.size(), report.bound_intermediate),
                                  ""};
                    plot.series = {sp, sq, sa, sb};
                    emit_svg(plot, *svg);
                }
            };
        });
    }

    void add_fbm() {
        auto* cmd = sub("fbm", "fractional Brownian image dimensions");
        auto h = std::make_shared<double>(0.3);
        auto alpha = std::make_shared<double>(0.5);
        auto ambient = std::make_shared<int>(1);
        auto out = std::make_shared<std::string>();
        cmd->add_option("--h", *h, "Hausdorff dimension of the set")->required();
        cmd->add_option("--alpha", *alpha, "fBm index in (0,1)")->required();
        cmd->add_option("--ambient", *ambient, "1 (real) or 2 (complex)");
        cmd->add_option("--out", *out, "output JSON path (default stdout)");
        cmd->callback([=, this] {
            action = [=] {
                FbmImageReport r = fbm_image_dims(*h, *alpha, *ambient);
                deliver(Json{{"ambient", r.ambient},
                             {"hausdorffImage", r.hausdorff_image},
                             {"boxStrictlyBelowAmbient", r.box_strictly_below_ambient},
                             {"allEqualAmbient", r.all_equal_ambient}},
                        *out);
            };
        });
    }

    void add_cover_fit() {
        auto* cmd = sub("cover-fit", "fit dim_theta from the two-scale cover cost");
        auto p = std::make_shared<double>(2.0);
        auto d = std::make_shared<int>(1);
        auto theta = std::make_shared<double>(0.5);
        auto out = std::make_shared<std::string>();
        cmd->add_option("--p", *p)->required();
        cmd->add_option("--d", *d);
        cmd->add_option("--theta", *theta)->required();
        cmd->add_option("--out", *out, "output JSON path (default stdout)");
        cmd->callback([=, this] {
            action = [=] {
                if (!(*theta > 0.0 && *theta <= 1.0))
                    throw std::domain_error("--theta must lie in (0,1]");
                double fit = fit_dim_theta(*p, *d, *theta);
                double closed = lattice_dim_theta(*p, *d, *theta);
                deliver(Json{{"p", *p},
                             {"d", *d},
                             {"theta", *theta},
                             {"s", fit},
                             {"closedForm", closed},
                             {"absError", std::abs(fit - closed)}},
                        *out);
            };
        });
    }

    void add_boxdim() {
        auto* cmd = sub("boxdim", "box-count series and slope bracket");
        auto set = std::make_shared<std::string>("seq");
        auto p = std::make_shared<double>(0.0);
        auto d = std::make_shared<int>(1);
        auto deltas = std::make_shared<std::string>("1e-2:1e-5");
        auto ndeltas = std::make_shared<int>(13);
        auto out = std::make_shared<std::string>();
        cmd->add_option("--set", *set, "seq | lattice")->check(CLI::IsMember({"seq", "lattice"}));
        cmd->add_option("--p", *p, "exponent (default 1 for seq, 2 for lattice)");
        cmd->add_option("--d", *d, "lattice ambient dimension (1 or 2)");
        cmd->add_option("--deltas", *deltas, "scale range a:b");
        cmd->add_option("--ndeltas", *ndeltas, "number of scales");
        cmd->add_option("--out", *out, "CSV output path");
        cmd->callback([=, this] {
            action = [=] {
                auto grid = parse_delta_range(*deltas, *ndeltas);
                double pp = *p > 0.0 ? *p : (*set == "seq" ? 1.0 : 2.0);
                BoxCountSeries series = (*set == "seq")
                                            ? box_count_series(SequenceSet{pp}, grid)
                                            : box_count_series(LatticeInversionSet{pp, *d}, grid);
                BoxDimFit fit = box_dim_regression(series);
                deliver(Json{{"set", *set},
                             {"p", pp},
                             {"d", *set == "seq" ? 1 : *d},
                             {"bracket", Json{{"lower", fit.bracket.lower}, {"upper", fit.bracket.upper}}},
                             {"midpoint", fit.midpoint},
                             {"leastSquares", fit.least_squares}},
                        "");
                if (!out->empty()) emit_csv(series, *out);
            };
        });
    }

    void add_generic() {
        auto* cmd = sub("generic", "random-translation ensemble experiment");
        auto d = std::make_shared<int>(2);
        auto maps = std::make_shared<std::size_t>(200);
        auto samples = std::make_shared<std::size_t>(6'553'600);
        auto seeds = std::make_shared<std::size_t>(10);
        auto seed = std::make_shared<std::uint64_t>(0);
        auto deltas = std::make_shared<std::string>("1/2:1/256");
        auto ndeltas = std::make_shared<int>(0);
        auto window = std::make_shared<double>(1.0);
        auto depth = std::make_shared<int>(40);
        auto slack = std::make_shared<double>(0.2);
        auto density_delta = std::make_shared<std::string>("1/32");
        auto density_samples = std::make_shared<std::size_t>(100'000);
        auto out = std::make_shared<std::string>();
        cmd->add_option("--d", *d, "ambient dimension");
        cmd->add_option("--maps", *maps, "number of realized maps");
        cmd->add_option("--samples", *samples, "sample points per seed");
        cmd->add_option("--seeds", *seeds, "ensemble size");
        cmd->add_option("--seed", *seed, "master seed");
        cmd->add_option("--deltas", *deltas, "box-count scale range a:b");
        cmd->add_option("--ndeltas", *ndeltas, "number of scales (0 = halvings)");
        cmd->add_option("--window", *window, "translation window side c");
        cmd->add_option("--depth", *depth, "word depth per sample");
        cmd->add_option("--slack", *slack, "box pass slack: lower endpoint >= d - slack");
        cmd->add_option("--density-delta", *density_delta, "density cell size");
        cmd->add_option("--density-samples", *density_samples, "sample prefix for density");
        cmd->add_option("--out", *out, "output JSON path (default stdout)");
        cmd->callback([=, this] {
            action = [=] {
                RandomSystemSpec spec;
                spec.ambient_dim = *d;
                spec.window = *window;
                spec.truncation = *maps;
                spec.seed = *seed;
                ExperimentOptions options;
                options.num_samples = *samples;
                options.num_seeds = *seeds;
                options.depth = *depth;
                options.slack = *slack;
                options.density_delta = parse_number(*density_delta);
                options.density_samples = *density_samples;
                auto scales = parse_delta_range(*deltas, *ndeltas);
                EnsembleReport report = generic_box_dim_experiment(spec, scales, options);
                Json seeds_json = Json::array();
                for (const auto& o : report.seeds) {
                    seeds_json.push_back(
                        Json{{"seed", o.seed},
                             {"density", Json{{"delta", o.density.delta},
                                              {"fractionHit", o.density.fraction_hit},
                                              {"numSamples", o.density.num_samples}}},
                             {"bracket", Json{{"lower", o.fit.bracket.lower},
                                              {"upper", o.fit.bracket.upper}}},
                             {"boxPass", o.box_pass},
                             {"densityPass", o.density_pass}});
                }
                deliver(Json{{"d", *d},
                             {"maps", *maps},
                             {"samples", *samples},
                             {"seeds", seeds_json},
                             {"boxPassFraction", report.box_pass_fraction},
                             {"densityPassFraction", report.density_pass_fraction}},
                        *out);
            };
        });
    }

    void add_plot() {
        auto* cmd = sub("plot", "render curve CSVs to SVG");
        auto inputs = std::make_shared<std::vector<std::string>>();
        auto labels = std::make_shared<std::vector<std::string>>();
        auto svg = std::make_shared<std::string>();
        auto title = std::make_shared<std::string>();
        cmd->add_option("--in", *inputs, "curve CSV input (repeatable)")->required();
        cmd->add_option("--label", *labels, "series label (repeatable)");
        cmd->add_option("--svg", *svg, "SVG output path")->required();
        cmd->add_option("--title", *title, "plot title");
        cmd->callback([=, this] {
            action = [=] {
                PlotSpec plot;
                plot.title = *title;
                for (std::size_t i = 0; i < inputs->size(); ++i) {
                    std::ifstream in((*inputs)[i]);
                    if (!in) throw std::runtime_error("cannot open: " + (*inputs)[i]);
                    std::stringstream buf;
                    buf << in.rdbuf();
                    DimCurve curve = parse_curve_csv(buf.str());
                    PlotSeries s;
                    s.label = i < labels->size() ? (*labels)[i] : (*inputs)[i];
                    s.x = curve.thetas;
                    for (const auto& v : curve.values) s.y.push_back(v.upper);
                    plot.series.push_back(std::move(s));
                }
                emit_svg(plot, *svg);
            };
        });
    }
};

}  // namespace

int run(const std::vector<std::string>& args) {
    Cli cli;
    std::vector<const char*> argv;
    argv.push_back("iifs-dim");
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        cli.app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {   // --help and friends
            cli.app.exit(e);
            return 0;
        }
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    }
    try {
        if (cli.action) cli.action();
        return 0;
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::domain_error& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace iifsdim

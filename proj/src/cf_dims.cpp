#include "iifsdim/cf_dims.hpp"

#include <cmath>
#include <stdexcept>

#include "iifsdim/util.hpp"

namespace iifsdim {

namespace {

SystemSpec system_for(const DigitSet& digits) {
    if (is_complex(digits)) return CfComplexSystem{digits};
    return CfRealSystem{digits};
}

double fixed_point_set_box_dim(const DigitSet& digits) {
    if (const auto* p = std::get_if<PowerFamily>(&digits)) return 1.0 / (p->p + 1.0);
    if (const auto* c = std::get_if<ComplexPowerFamily>(&digits)) return 2.0 / (c->p + 1.0);
    return 0.0;   // finite fixed-point sets
}

}  // namespace

CfReport cf_report(const DigitSet& digits, const CfReportOptions& options) {
    validate(digits);
    CfReport report;
    report.digits = digits;
    report.theta_s = finiteness_parameter(digits);
    report.fixed_point_box_dim = fixed_point_set_box_dim(digits);

    if (options.supplied_h) {
        double h = *options.supplied_h;
        if (!(h >= 0.0)) throw std::invalid_argument("cf_report: supplied h must be >= 0");
        report.h_bracket = DimBracket{h, h};
    } else {
        report.h_bracket =
            hausdorff_bracket(system_for(digits), options.level, options.truncation, options.tol);
    }

    const int curve_d = is_complex(digits) ? 2 : 1;
    double family_p = 0.0;
    bool has_family = false;
    if (const auto* pf = std::get_if<PowerFamily>(&digits)) {
        family_p = pf->p;
        has_family = true;
    } else if (const auto* cf = std::get_if<ComplexPowerFamily>(&digits)) {
        family_p = cf->p;
        has_family = true;
    }

    std::vector<double> extras;
    if (has_family) {
        for (double h : {report.h_bracket.lower, report.h_bracket.upper})
            if (h > 0.0 && h < curve_d / (family_p + 1.0))
                extras.push_back(phase_transition_theta(h, family_p, curve_d));
    }
    auto grid = make_theta_grid(options.grid_points, extras);

    DimCurve family;
    if (const auto* p = std::get_if<PowerFamily>(&digits)) {
        family = exact_curve(grid, [&](double th) { return seq_dim_theta(p->p, th); },
                             "seq p=" + std::to_string(p->p));
    } else if (const auto* c = std::get_if<ComplexPowerFamily>(&digits)) {
        family = exact_curve(grid, [&](double th) { return lattice_dim_theta(c->p, 2, th); },
                             "lattice p=" + std::to_string(c->p) + " d=2");
    } else {
        family = exact_curve(grid, [](double) { return 0.0; }, "finite fixed points");
    }
    report.curve = combine_max(report.h_bracket, family);
    return report;
}

std::vector<std::complex<double>> cf_fixed_points(const DigitSet& digits, std::size_t count) {
    validate(digits);
    if (count < 1) throw std::invalid_argument("cf_fixed_points: count must be >= 1");
    std::vector<std::complex<double>> out;
    out.reserve(count);
    if (is_complex(digits)) {
        for (const auto& b : enumerate_complex_digits(digits, count)) {
            std::complex<double> z(static_cast<double>(b.real()), static_cast<double>(b.imag()));
            out.push_back(1.0 / z);
        }
    } else {
        for (auto b : enumerate_real_digits(digits, count))
            out.emplace_back(1.0 / static_cast<double>(b), 0.0);
    }
    return out;
}

std::vector<std::complex<double>> cf_sample_points(const DigitSet& digits, std::size_t num_points,
                                                   int depth, std::uint64_t seed,
                                                   std::size_t truncation,
                                                   std::vector<std::size_t>* first_letters) {
    validate(digits);
    if (depth < 1) throw std::invalid_argument("cf_sample_points: depth must be >= 1");
    if (num_points == 0) return {};

    std::vector<std::complex<double>> out(num_points);
    if (first_letters) first_letters->assign(num_points, 0);
    constexpr std::size_t kBatch = 65536;

    if (is_complex(digits)) {
        auto letters = enumerate_complex_digits(digits, truncation);
        if (letters.empty()) throw std::invalid_argument("cf_sample_points: empty alphabet");
        std::vector<std::complex<double>> ds;
        ds.reserve(letters.size());
        for (const auto& b : letters)
            ds.emplace_back(static_cast<double>(b.real()), static_cast<double>(b.imag()));
        parallel_ranges(num_points, kBatch, [&](std::size_t batch, std::size_t lo, std::size_t hi) {
            Rng rng(stream_seed(seed, batch));
            std::vector<std::size_t> word(depth);
            const std::complex<double> anchor(0.5, 0.0);   // disc centre
            for (std::size_t i = lo; i < hi; ++i) {
                for (int k = 0; k < depth; ++k) word[k] = rng.uniform_index(ds.size());
                std::complex<double> z = anchor;
                for (int k = depth - 1; k >= 0; --k) z = 1.0 / (ds[word[k]] + z);
                out[i] = z;
                if (first_letters) (*first_letters)[i] = word[0];
            }
        });
        return out;
    }

    auto letters = cf_real_alphabet(digits, truncation);
    if (letters.empty()) throw std::invalid_argument("cf_sample_points: empty alphabet");
    std::vector<std::array<double, 4>> mats;
    mats.reserve(letters.size());
    for (const auto& L : letters) {
        double b = static_cast<double>(L.digit);
        if (L.prefixed)
            mats.push_back({1.0, 1.0, b, b + 1.0});
        else
            mats.push_back({0.0, 1.0, 1.0, b});
    }
    parallel_ranges(num_points, kBatch, [&](std::size_t batch, std::size_t lo, std::size_t hi) {
        Rng rng(stream_seed(seed, batch));
        for (std::size_t i = lo; i < hi; ++i) {
            // continuants in double; stop once the value has converged
            double pp = 1, pc = 0, qp = 0, qc = 1;
            for (int k = 0; k < depth; ++k) {
                std::size_t idx = rng.uniform_index(mats.size());
                if (k == 0 && first_letters) (*first_letters)[i] = idx;
                const auto& L = mats[idx];
                double npp = pp * L[0] + pc * L[2];
                double npc = pp * L[1] + pc * L[3];
                double nqp = qp * L[0] + qc * L[2];
                double nqc = qp * L[1] + qc * L[3];
                pp = npp; pc = npc; qp = nqp; qc = nqc;
                if (qc > 1e150) break;
            }
            out[i] = std::complex<double>(pc / qc, 0.0);   // anchor 0
        }
    });
    return out;
}

std::int64_t find_l_for_phase_transition(double p, int level, std::int64_t truncation,
                                         double margin) {
    if (!(p > 1.0)) throw std::invalid_argument("l search: requires p > 1");
    const double target = 1.0 / (p + 1.0) - margin;
    for (std::int64_t l = 2; l <= (1 << 20); l *= 2) {
        DimBracket b = hausdorff_bracket(CfRealSystem{PowerFamily{p, l}}, level, truncation, 1e-9);
        if (b.upper < target) return l;
    }
    throw std::runtime_error("l search: no l found below the cap");
}

}  // namespace iifsdim

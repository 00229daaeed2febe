#include "iifsdim/generic_sim.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <unordered_set>

#include "iifsdim/util.hpp"

namespace iifsdim {

namespace {

double norm_diff(std::span<const double> a, std::span<const double> b) {
    double acc = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) acc += (a[i] - b[i]) * (a[i] - b[i]);
    return std::sqrt(acc);
}

}  // namespace

double default_ratio(std::size_t i) {
    // dyadic plateau: 1/4 for the first 256 maps, halving per doubling block;
    // ratios accumulate only at zero
    if (i == 0) throw std::invalid_argument("ratio family: index is 1-based");
    if (i <= 256) return 0.25;
    int k = static_cast<int>(std::ceil(std::log2(static_cast<double>(i) / 256.0)));
    return std::pow(2.0, -(2 + k));
}

std::vector<double> density_anchor(const RandomSystemSpec& spec) {
    if (!spec.z.empty()) {
        if (static_cast<int>(spec.z.size()) != spec.ambient_dim)
            throw std::invalid_argument("random spec: z dimension mismatch");
        return spec.z;
    }
    return std::vector<double>(spec.ambient_dim, 0.5);
}

SimilaritySystem realize_system(const RandomSystemSpec& spec) {
    if (spec.ambient_dim < 1) throw std::invalid_argument("random spec: ambient dim must be >= 1");
    if (!(spec.window > 0.0)) throw std::invalid_argument("random spec: window must be positive");
    if (spec.truncation < 1) throw std::invalid_argument("random spec: need at least one map");

    const int d = spec.ambient_dim;
    const std::vector<double> z = density_anchor(spec);
    Rng rng(stream_seed(spec.seed, 0));

    SimilaritySystem system;
    system.ambient_dim = d;
    system.maps.reserve(spec.truncation);
    for (std::size_t i = 1; i <= spec.truncation; ++i) {
        Similarity m;
        m.ratio = default_ratio(i);
        m.translation.resize(d);
        for (int k = 0; k < d; ++k) {
            // base fixed points alternate between the origin and the anchor z
            double base = (i % 2 == 0) ? (1.0 - m.ratio) * z[k] : 0.0;
            double t = spec.window * rng.uniform();
            m.translation[k] = base + t;
            // base image must stay inside [0,1]^d so translated maps stay in
            // the domain [0, 1+c]^d
            if (base + m.ratio * (1.0 + spec.window) > 1.0 + 1e-12)
                throw std::invalid_argument("random spec: containment violated by map " +
                                            std::to_string(i));
        }
        system.maps.push_back(std::move(m));
    }
    return system;
}

std::pair<bool, bool> fixed_point_lemma_check(const MapSpec& g, std::span<const double> u,
                                              std::span<const double> q, double delta) {
    const auto* s = std::get_if<Similarity>(&g);
    if (s == nullptr)
        throw std::invalid_argument("lemma check: translation requires a similarity map");
    if (!(delta > 0.0)) throw std::invalid_argument("lemma check: delta must be positive");
    if (u.size() != s->translation.size() || q.size() != s->translation.size())
        throw std::invalid_argument("lemma check: dimension mismatch");

    // fix(g+u)
    std::vector<double> fix(u.size());
    for (std::size_t k = 0; k < u.size(); ++k)
        fix[k] = (s->translation[k] + u[k]) / (1.0 - s->ratio);

    bool left = norm_diff(fix, q) < delta;

    // u vs q - g(fix)
    std::vector<double> shifted(u.size());
    for (std::size_t k = 0; k < u.size(); ++k) {
        double g_at_fix = s->ratio * fix[k] + s->translation[k];
        shifted[k] = q[k] - g_at_fix;
    }
    bool right = norm_diff(u, shifted) < delta;
    return {left, right};
}

std::vector<double> sample_attractor(const SimilaritySystem& system, std::size_t num_points,
                                     int depth, std::uint64_t seed, double domain_side) {
    validate(SystemSpec{system});
    if (depth < 1) throw std::invalid_argument("sample: depth must be >= 1");
    if (system.ambient_dim > 8) throw std::invalid_argument("sample: ambient dim must be <= 8");
    const int d = system.ambient_dim;
    const std::size_t n_maps = system.maps.size();
    const double anchor = 0.5 * domain_side;   // domain centre

    std::vector<double> ratios(n_maps);
    std::vector<double> trans(n_maps * d);
    for (std::size_t i = 0; i < n_maps; ++i) {
        ratios[i] = system.maps[i].ratio;
        for (int k = 0; k < d; ++k) trans[i * d + k] = system.maps[i].translation[k];
    }

    std::vector<double> out(num_points * d);
    constexpr std::size_t kBatch = 65536;
    parallel_ranges(num_points, kBatch, [&](std::size_t batch, std::size_t lo, std::size_t hi) {
        Rng rng(stream_seed(seed, batch));
        std::vector<std::uint32_t> word(depth);
        for (std::size_t i = lo; i < hi; ++i) {
            for (int k = 0; k < depth; ++k)
                word[k] = static_cast<std::uint32_t>(rng.uniform_index(n_maps));
            double x[8];
            for (int k = 0; k < d; ++k) x[k] = anchor;
            for (int k = depth - 1; k >= 0; --k) {
                const std::uint32_t w = word[k];
                const double c = ratios[w];
                const double* a = &trans[w * d];
                for (int j = 0; j < d; ++j) x[j] = c * x[j] + a[j];
            }
            for (int k = 0; k < d; ++k) out[i * d + k] = x[k];
        }
    });
    return out;
}

DensityReport density_fraction(std::span<const double> points, int dim,
                               std::span<const double> z, double delta, double window) {
    if (dim < 1 || dim > 3) throw std::invalid_argument("density: dim must be 1, 2 or 3");
    if (static_cast<int>(z.size()) != dim) throw std::invalid_argument("density: z dimension mismatch");
    if (points.size() % dim != 0) throw std::invalid_argument("density: malformed point array");
    double cells_f = window / delta;
    auto m = static_cast<std::int64_t>(std::llround(cells_f));
    if (std::abs(cells_f - static_cast<double>(m)) > 1e-9 || m < 1)
        throw std::invalid_argument("density: delta must divide the window side evenly");

    std::unordered_set<std::int64_t> hit;
    const std::size_t n = points.size() / dim;
    for (std::size_t i = 0; i < n; ++i) {
        std::int64_t key = 0;
        bool inside = true;
        for (int k = 0; k < dim; ++k) {
            double rel = (points[i * dim + k] - z[k]) / delta;
            if (rel < 0.0 || rel >= static_cast<double>(m)) {
                inside = false;
                break;
            }
            key = key * m + static_cast<std::int64_t>(rel);
        }
        if (inside) hit.insert(key);
    }
    double total = std::pow(static_cast<double>(m), dim);

    DensityReport report;
    report.delta = delta;
    report.fraction_hit = static_cast<double>(hit.size()) / total;
    report.num_samples = n;
    return report;
}

EnsembleReport generic_box_dim_experiment(const RandomSystemSpec& spec,
                                          std::span<const double> scales,
                                          const ExperimentOptions& options) {
    if (scales.size() < 3) throw std::invalid_argument("experiment: need at least 3 scales");
    for (std::size_t i = 1; i < scales.size(); ++i)
        if (!(scales[i] < scales[i - 1]))
            throw std::invalid_argument("experiment: scales must be strictly decreasing");
    double span = std::log10(scales.front() / scales.back());
    if (span < 1.5 - 1e-9)
        throw std::invalid_argument("experiment: scales must span at least 1.5 decades");
    const int d = spec.ambient_dim;
    double needed = 100.0 * std::pow(scales.back(), -d);
    if (static_cast<double>(options.num_samples) < needed)
        throw std::invalid_argument(
            "experiment: sampling noise guard violated; need num_samples >= 100 * delta_min^-d "
            "(increase samples or coarsen scales)");

    const std::vector<double> z = density_anchor(spec);
    EnsembleReport report;
    report.seeds.resize(options.num_seeds);

    parallel_chunks(options.num_seeds, [&](std::size_t s) {
        RandomSystemSpec seeded = spec;
        seeded.seed = spec.seed + s;
        SimilaritySystem system = realize_system(seeded);
        std::vector<double> cloud =
            sample_attractor(system, options.num_samples, options.depth,
                             stream_seed(seeded.seed, 1), 1.0 + spec.window);

        SeedOutcome outcome;
        outcome.seed = seeded.seed;

        std::size_t dens_n = std::min(options.density_samples, options.num_samples);
        outcome.density = density_fraction(
            std::span<const double>(cloud.data(), dens_n * d), d, z, options.density_delta,
            spec.window);
        outcome.density.seed = seeded.seed;
        outcome.density_pass = outcome.density.fraction_hit >= options.density_threshold;

        // box counts of the cloud restricted to the density cube V + z
        BoxCountSeries series;
        for (double delta : scales) {
            DensityReport r = density_fraction(cloud, d, z, delta, spec.window);
            double total = std::pow(spec.window / delta, d);
            series.deltas.push_back(delta);
            series.counts.push_back(
                static_cast<std::uint64_t>(std::llround(r.fraction_hit * total)));
        }
        outcome.fit = box_dim_regression(series);
        outcome.box_pass = outcome.fit.bracket.lower >= static_cast<double>(d) - options.slack;
        report.seeds[s] = std::move(outcome);
    });

    std::size_t box_passes = 0, dens_passes = 0;
    for (const auto& o : report.seeds) {
        box_passes += o.box_pass ? 1 : 0;
        dens_passes += o.density_pass ? 1 : 0;
    }
    report.box_pass_fraction = static_cast<double>(box_passes) / options.num_seeds;
    report.density_pass_fraction = static_cast<double>(dens_passes) / options.num_seeds;
    return report;
}

}  // namespace iifsdim

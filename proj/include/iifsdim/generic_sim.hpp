#pragma once

#include <cstdint>
#include <span>

#include "iifsdim/cover_estimator.hpp"

namespace iifsdim {

// ---------------------------------------------------------------- spec

// Random-translation similarity ensemble on [0, 1+c]^d: base maps
// S_i(x) = c_i x + a_i with images inside [0,1]^d, translations t_i sampled
// i.i.d. uniform on [0, c)^d.
//
// Default family: dyadic plateau ratios (1/4 for the first 256 maps, halving
// on each later doubling block) with base fixed points alternating between
// the origin and the cube anchor z = (1/2,...,1/2). Fixed points accumulate
// at both; z anchors the density window V + z, which then sits in the
// interior of the attractor's support.
struct RandomSystemSpec {
    int ambient_dim = 2;
    double window = 1.0;              // c: translation window side
    std::size_t truncation = 200;     // number of maps realized
    std::uint64_t seed = 0;
    std::vector<double> z;            // density cube anchor; empty = (1/2,...)
};

double default_ratio(std::size_t index_one_based);
std::vector<double> density_anchor(const RandomSystemSpec& spec);

// Deterministic in (spec, seed). Throws std::invalid_argument naming the
// first map whose image leaves [0,1]^d.
SimilaritySystem realize_system(const RandomSystemSpec& spec);

// ----------------------------------------------------- fixed-point shift

// fix(g+u) in B(q, delta)  <=>  u in B(q - g(fix(g+u)), delta).
// Returns (left, right); they must always agree.
std::pair<bool, bool> fixed_point_lemma_check(const MapSpec& g, std::span<const double> u,
                                              std::span<const double> q, double delta);

// ---------------------------------------------------------------- sampling

// Chaos-game cloud: each point is S_{w_1} o ... o S_{w_depth}(anchor) for an
// i.i.d. uniform digit word; anchor is the domain centre. Flat layout,
// ambient_dim doubles per point. Batches use RNG streams split from the seed,
// so results do not depend on the worker count.
std::vector<double> sample_attractor(const SimilaritySystem& system, std::size_t num_points,
                                     int depth, std::uint64_t seed, double domain_side = 2.0);

// ---------------------------------------------------------------- density

struct DensityReport {
    double delta = 0;
    double fraction_hit = 0;
    std::size_t num_samples = 0;
    std::uint64_t seed = 0;
};

// Fraction of delta-cells of the cube z + [0, window)^d containing a sample.
// delta must divide the window side evenly.
DensityReport density_fraction(std::span<const double> points, int dim,
                               std::span<const double> z, double delta, double window);

// ---------------------------------------------------------------- ensemble

struct SeedOutcome {
    std::uint64_t seed = 0;
    DensityReport density;
    BoxDimFit fit;
    bool box_pass = false;      // bracket lower endpoint >= d - slack
    bool density_pass = false;  // fraction_hit >= density threshold
};

struct EnsembleReport {
    std::vector<SeedOutcome> seeds;
    double box_pass_fraction = 0;
    double density_pass_fraction = 0;
};

struct ExperimentOptions {
    std::size_t num_samples = 6'553'600;
    std::size_t num_seeds = 10;
    int depth = 40;
    double slack = 0.2;
    double density_delta = 1.0 / 32;
    double density_threshold = 0.99;
    std::size_t density_samples = 100'000;   // prefix used for the density check
};

// Per-seed box regression of the sampled cloud restricted to V + z, plus the
// density fraction on a sample prefix. Scales need >= 3 entries spanning
// >= 1.5 decades; the regression itself wants >= 2 decades. Guard:
// num_samples >= 100 * delta_min^{-d}.
EnsembleReport generic_box_dim_experiment(const RandomSystemSpec& spec,
                                          std::span<const double> scales,
                                          const ExperimentOptions& options = {});

}  // namespace iifsdim

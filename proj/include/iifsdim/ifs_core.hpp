#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <variant>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "iifsdim/bigint.hpp"
#include "iifsdim/digit_set.hpp"

namespace iifsdim {

// ---------------------------------------------------------------- map specs

struct Similarity {
    double ratio = 0.5;                  // in (0,1)
    std::vector<double> translation;     // R^d
};

// S_b(x) = 1/(b+x); prefixed marks the two-step map S_{1b}(x) = 1/(b + 1/(1+x))
// used when digit 1 belongs to the index set.
struct CfRealMap {
    std::int64_t digit = 2;
    bool prefixed = false;
};

// S_b(z) = 1/(b+z) for a Gaussian-integer digit with positive real part.
struct CfComplexMap {
    std::int64_t digit_re = 1;
    std::int64_t digit_im = 1;
};

using MapSpec = std::variant<Similarity, CfRealMap, CfComplexMap>;

void validate(const MapSpec& map);

// ---------------------------------------------------------------- systems

struct SimilaritySystem {
    std::vector<Similarity> maps;
    int ambient_dim = 1;
};

struct CfRealSystem {
    DigitSet digits;
};

struct CfComplexSystem {
    DigitSet digits;
};

using SystemSpec = std::variant<SimilaritySystem, CfRealSystem, CfComplexSystem>;

void validate(const SystemSpec& system);
int ambient_dim(const SystemSpec& system);

// Realized alphabet of a CF-real system. When 1 is a digit, {S_b} is not
// uniformly contracting (|S_1'(0)| = 1), so the alphabet is rewritten to
// {S_b : b != 1} u {S_{1b} : b in I} with the same limit set. Maps are
// ordered canonically (denominator continuant ascending, plain before
// prefixed, then digit), so truncation keeps the largest contractions.
std::vector<CfRealMap> cf_real_alphabet(const DigitSet& digits, std::size_t count);

// Number of alphabet letters available (finite sets only).
std::optional<std::size_t> alphabet_size(const SystemSpec& system);

// Letter at `index` in the canonical enumeration.
MapSpec system_map(const SystemSpec& system, std::size_t index);

// ---------------------------------------------------------------- words

struct Word {
    std::vector<std::size_t> indices;   // into the canonical alphabet, non-empty
};

// Convenience: resolve plain CF digits (no rewrite involved) to alphabet indices.
Word word_from_digits(const SystemSpec& system, std::span<const std::int64_t> digits);

struct CylinderBounds {
    double lower = 0;   // r_w analogue: inf derivative norm over X
    double upper = 0;   // R_w analogue: sup derivative norm over X
};

// ---------------------------------------------------------------- composites

struct SimilarityComposite {
    double ratio = 1.0;
    std::vector<double> translation;
};

// S_w(x) = (p_prev x + p_cur)/(q_prev x + q_cur), integer continuants, det +-1.
struct MobiusComposite {
    BigInt p_prev, p_cur, q_prev, q_cur;
};

struct ComplexMobiusComposite {
    GaussInt p_prev, p_cur, q_prev, q_cur;
};

using CompositeMap = std::variant<SimilarityComposite, MobiusComposite, ComplexMobiusComposite>;

// S_w = S_{w_1} o ... o S_{w_n}.
CompositeMap compose_word(const SystemSpec& system, const Word& word);

// Exact inf/sup of the derivative norm over the system domain X
// ([0,1] for real CF, the disc |z - 1/2| <= 1/2 for complex CF).
CylinderBounds word_norm_bounds(const SystemSpec& system, const Word& word);
CylinderBounds composite_norm_bounds(const CompositeMap& composite, double domain_lo = 0.0,
                                     double domain_hi = 1.0);

// Fixed points. Similarity: a/(1-c) per coordinate; CF: quadratic formula,
// root chosen inside the domain. Throws std::domain_error if not a contraction.
std::vector<double> fixed_point(const MapSpec& map);
std::vector<double> fixed_point(const CompositeMap& composite);

// S_w(anchor); finite-word approximation of the coding map.
std::vector<double> evaluate_point(const SystemSpec& system, const Word& word,
                                   std::span<const double> anchor);

// Invariant sub-interval [m, M] containing the limit set of a CF-real system;
// images of all alphabet maps stay inside it. Infinite digit sets give
// [0, 1/b_min]. Used to sharpen Lipschitz bounds in pressure computations.
std::pair<double, double> cf_real_domain_hull(const DigitSet& digits);

// ---------------------------------------------------------------- JSON

void to_json(nlohmann::json& j, const SystemSpec& system);
void from_json(const nlohmann::json& j, SystemSpec& system);

}  // namespace iifsdim

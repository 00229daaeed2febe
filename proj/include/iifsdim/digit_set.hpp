#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <nlohmann/json_fwd.hpp>

namespace iifsdim {

// Symbolic index sets for continued-fraction systems.
//
//   Explicit             finite digit list
//   PowerFamily          { floor(n^p) : n >= l }
//   ComplexPowerFamily   { floor(m^p) + floor(n^p) i : m,n >= 1 } minus B(0,R)
//   FullTruncated        { 1, ..., N }

struct ExplicitDigits {
    std::vector<std::int64_t> digits;
};

struct PowerFamily {
    double p = 2.0;
    std::int64_t l = 2;
};

struct ComplexPowerFamily {
    double p = 2.0;
    double R = 0.0;
};

struct FullTruncated {
    std::int64_t N = 2;
};

using DigitSet = std::variant<ExplicitDigits, PowerFamily, ComplexPowerFamily, FullTruncated>;

// Throws std::invalid_argument on empty/duplicate/ill-ranged parameters.
// PowerFamily admits the degenerate p = 1 (full alphabet); operations that
// need p > 1 check it themselves.
void validate(const DigitSet& set);

bool is_complex(const DigitSet& set);
bool is_finite(const DigitSet& set);
std::optional<std::size_t> finite_size(const DigitSet& set);
bool contains_one(const DigitSet& set);

// First `count` digits in increasing modulus (complex: modulus then argument).
// For finite sets the result is clipped to the set size.
std::vector<std::int64_t> enumerate_real_digits(const DigitSet& set, std::size_t count);
std::vector<std::complex<std::int64_t>> enumerate_complex_digits(const DigitSet& set, std::size_t count);

std::string describe(const DigitSet& set);

void to_json(nlohmann::json& j, const DigitSet& set);
void from_json(const nlohmann::json& j, DigitSet& set);

}  // namespace iifsdim

#include "iifsdim/pressure.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <limits>
#include <stdexcept>

#include "iifsdim/util.hpp"

namespace iifsdim {

namespace {

constexpr double kRootEps = 1e-9;          // bisection interval lower end
constexpr int kRootIters = 200;
constexpr double kStabilityRel = 1e-12;    // truncation-doubling stability
constexpr std::size_t kWordBudget = 2'200'000;   // max enumerated words per sum

std::int64_t level_default_cap(int level) {
    if (level <= 1) return 1'000'000;
    if (level == 2) return 10'000;
    return 1'000;
}

std::int64_t budget_letters(int level) {
    // largest N with N^level <= kWordBudget
    if (level <= 1) return static_cast<std::int64_t>(kWordBudget);
    auto fits = [&](std::int64_t k) {
        return std::pow(static_cast<double>(k), level) <= static_cast<double>(kWordBudget);
    };
    std::int64_t k = static_cast<std::int64_t>(
        std::floor(std::pow(static_cast<double>(kWordBudget), 1.0 / level)));
    k = std::max<std::int64_t>(k, 1);
    while (k > 1 && !fits(k)) --k;
    while (fits(k + 1)) ++k;
    return k;
}

// Per-letter data for the fast enumeration path. Continuants are carried in
// double; at level <= 3 and digit moduli <= 1e12 they stay far from overflow.
struct LetterTable {
    enum class Kind { similarity, cf_real, cf_complex } kind;
    std::vector<double> log_ratio;                       // similarity
    std::vector<std::array<double, 4>> mats;             // cf real [[a,b],[c,d]]
    std::vector<std::complex<double>> digits;            // cf complex
    double dom_lo = 0.0, dom_hi = 1.0;                   // cf real bound domain

    std::size_t size() const {
        switch (kind) {
            case Kind::similarity: return log_ratio.size();
            case Kind::cf_real: return mats.size();
            default: return digits.size();
        }
    }
};

LetterTable build_letters(const SystemSpec& system, std::int64_t count, bool use_hull) {
    LetterTable t{};
    if (const auto* s = std::get_if<SimilaritySystem>(&system)) {
        t.kind = LetterTable::Kind::similarity;
        std::size_t n = std::min<std::size_t>(s->maps.size(), static_cast<std::size_t>(count));
        t.log_ratio.reserve(n);
        for (std::size_t i = 0; i < n; ++i) t.log_ratio.push_back(std::log(s->maps[i].ratio));
        return t;
    }
    if (const auto* r = std::get_if<CfRealSystem>(&system)) {
        t.kind = LetterTable::Kind::cf_real;
        auto letters = cf_real_alphabet(r->digits, static_cast<std::size_t>(count));
        t.mats.reserve(letters.size());
        for (const auto& L : letters) {
            double b = static_cast<double>(L.digit);
            if (L.prefixed)
                t.mats.push_back({1.0, 1.0, b, b + 1.0});
            else
                t.mats.push_back({0.0, 1.0, 1.0, b});
        }
        if (use_hull) {
            auto [lo, hi] = cf_real_domain_hull(r->digits);
            t.dom_lo = lo;
            t.dom_hi = hi;
        }
        return t;
    }
    const auto& c = std::get<CfComplexSystem>(system);
    t.kind = LetterTable::Kind::cf_complex;
    auto digits = enumerate_complex_digits(c.digits, static_cast<std::size_t>(count));
    t.digits.reserve(digits.size());
    for (const auto& d : digits)
        t.digits.emplace_back(static_cast<double>(d.real()), static_cast<double>(d.imag()));
    return t;
}

struct BoundLogs {
    std::vector<double> lo, hi;   // log of lower/upper cylinder bound per word
};

std::size_t word_count(std::size_t letters, int level) {
    double w = std::pow(static_cast<double>(letters), level);
    return static_cast<std::size_t>(w + 0.5);
}

// Enumerate all level-n words over the letter table, writing log-bounds into
// out (pre-sized). Blocks split by first letter write disjoint ranges, so the
// parallel fill is deterministic.
void fill_bound_logs(const LetterTable& t, int level, BoundLogs& out) {
    const std::size_t n_letters = t.size();
    const std::size_t per_first = word_count(n_letters, level - 1);

    auto leaf_real = [&](double qp, double qc, std::size_t pos) {
        double den_lo = qp * t.dom_lo + qc;
        double den_hi = qp * t.dom_hi + qc;
        out.hi[pos] = -2.0 * std::log(den_lo);
        out.lo[pos] = -2.0 * std::log(den_hi);
    };
    auto leaf_complex = [&](std::complex<double> qp, std::complex<double> qc, std::size_t pos) {
        double center = std::abs(qc + 0.5 * qp);
        double radius = 0.5 * std::abs(qp);
        out.hi[pos] = -2.0 * std::log(center - radius);
        out.lo[pos] = -2.0 * std::log(center + radius);
    };

    parallel_chunks(n_letters, [&](std::size_t first) {
        {
            std::size_t base = first * per_first;
            switch (t.kind) {
                case LetterTable::Kind::similarity: {
                    std::size_t cursor = base;
                    auto rec = [&](auto&& self, double acc, int depth) -> void {
                        if (depth == level) {
                            out.lo[cursor] = acc;
                            out.hi[cursor] = acc;
                            ++cursor;
                            return;
                        }
                        for (double lr : t.log_ratio) self(self, acc + lr, depth + 1);
                    };
                    rec(rec, t.log_ratio[first], 1);
                    break;
                }
                case LetterTable::Kind::cf_real: {
                    std::size_t cursor = base;
                    auto rec = [&](auto&& self, double qp, double qc, int depth) -> void {
                        if (depth == level) {
                            leaf_real(qp, qc, cursor);
                            ++cursor;
                            return;
                        }
                        for (const auto& L : t.mats)
                            self(self, qp * L[0] + qc * L[2], qp * L[1] + qc * L[3], depth + 1);
                    };
                    const auto& F = t.mats[first];
                    rec(rec, F[2], F[3], 1);
                    break;
                }
                case LetterTable::Kind::cf_complex: {
                    std::size_t cursor = base;
                    auto rec = [&](auto&& self, std::complex<double> qp, std::complex<double> qc,
                                   int depth) -> void {
                        if (depth == level) {
                            leaf_complex(qp, qc, cursor);
                            ++cursor;
                            return;
                        }
                        for (const auto& b : t.digits) self(self, qc, qp + qc * b, depth + 1);
                    };
                    rec(rec, {1.0, 0.0}, t.digits[first], 1);
                    break;
                }
            }
        }
    });
}

BoundLogs enumerate_bound_logs(const SystemSpec& system, int level, std::int64_t letters,
                               bool use_hull) {
    LetterTable t = build_letters(system, letters, use_hull);
    if (t.size() == 0) throw std::invalid_argument("pressure: empty alphabet");
    BoundLogs logs;
    std::size_t words = word_count(t.size(), level);
    logs.lo.resize(words);
    logs.hi.resize(words);
    fill_bound_logs(t, level, logs);
    return logs;
}

// sum of exp(t * log_b); fixed chunking keeps the reduction order independent
// of the worker count
double power_sum(std::span<const double> logs, double t) {
    const std::size_t n = logs.size();
    constexpr std::size_t kChunk = 16384;
    if (n < 2 * kChunk) {
        double acc = 0.0;
        for (double lg : logs) acc += std::exp(t * lg);
        return acc;
    }
    std::vector<double> partial((n + kChunk - 1) / kChunk, 0.0);
    parallel_ranges(n, kChunk, [&](std::size_t chunk, std::size_t lo, std::size_t hi) {
        double acc = 0.0;
        for (std::size_t i = lo; i < hi; ++i) acc += std::exp(t * logs[i]);
        partial[chunk] = acc;
    });
    double acc = 0.0;
    for (double p : partial) acc += p;
    return acc;
}

struct RootResult {
    double value = 0;
    bool saturated = false;
};

// root of sum exp(t log) = 1 on [kRootEps, ambient]; the sum is decreasing in t
RootResult root_of_one(std::span<const double> logs, double ambient, double tol) {
    auto f = [&](double t) { return power_sum(logs, t); };
    if (f(kRootEps) <= 1.0) return {0.0, false};
    if (f(ambient) >= 1.0) return {ambient, true};
    double lo = kRootEps, hi = ambient;
    for (int i = 0; i < kRootIters && hi - lo > tol; ++i) {
        double mid = 0.5 * (lo + hi);
        if (f(mid) > 1.0)
            lo = mid;
        else
            hi = mid;
    }
    return {0.5 * (lo + hi), false};
}

std::int64_t effective_cap(const SystemSpec& system, int level, std::int64_t requested) {
    std::int64_t cap = requested > 0 ? requested : level_default_cap(level);
    cap = std::min(cap, budget_letters(level));
    if (auto n = alphabet_size(system)) cap = std::min<std::int64_t>(cap, static_cast<std::int64_t>(*n));
    return std::max<std::int64_t>(cap, 1);
}

}  // namespace

// ---------------------------------------------------------------- phi / pressure

PhiSums phi_level(const SystemSpec& system, int level, double t, std::int64_t truncation) {
    validate(system);
    if (t <= 0.0) throw std::domain_error("phi: t must be positive");
    if (level < 1) throw std::invalid_argument("phi: level must be >= 1");
    if (truncation < 1) throw std::invalid_argument("phi: truncation must be >= 1");
    std::int64_t n = truncation;
    if (auto size = alphabet_size(system)) n = std::min<std::int64_t>(n, static_cast<std::int64_t>(*size));
    if (std::pow(static_cast<double>(n), level) > static_cast<double>(kWordBudget))
        throw std::invalid_argument("phi: truncation^level exceeds the enumeration budget");

    BoundLogs logs = enumerate_bound_logs(system, level, n, /*use_hull=*/false);
    PhiSums sums;
    sums.level = level;
    sums.truncation = n;
    sums.lower_sum = power_sum(logs.lo, t);
    sums.upper_sum = power_sum(logs.hi, t);
    if (!std::isfinite(sums.upper_sum)) sums.upper_sum = std::numeric_limits<double>::infinity();
    if (!std::isfinite(sums.lower_sum)) sums.lower_sum = std::numeric_limits<double>::infinity();
    return sums;
}

PressureEstimate pressure_estimate(const SystemSpec& system, double t, int level,
                                   std::int64_t truncation_cap) {
    validate(system);
    if (t <= 0.0) throw std::domain_error("pressure: t must be positive");
    std::int64_t cap = effective_cap(system, level, truncation_cap);

    PhiSums sums;
    if (alphabet_size(system).has_value()) {
        sums = phi_level(system, level, t, cap);
    } else {
        std::int64_t n = std::min<std::int64_t>(64, cap);
        sums = phi_level(system, level, t, n);
        while (n < cap) {
            std::int64_t next = std::min<std::int64_t>(2 * n, cap);
            PhiSums more = phi_level(system, level, t, next);
            double rel = std::abs(more.upper_sum - sums.upper_sum) /
                         std::max(1.0, std::abs(more.upper_sum));
            sums = more;
            n = next;
            if (rel < kStabilityRel) break;
        }
    }

    PressureEstimate est;
    est.t = t;
    est.level = level;
    est.truncation = sums.truncation;
    est.lower_value = std::log(sums.lower_sum) / level;
    est.upper_value = std::log(sums.upper_sum) / level;
    return est;
}

double finiteness_parameter(const DigitSet& digits) {
    validate(digits);
    if (const auto* p = std::get_if<PowerFamily>(&digits)) return 1.0 / (2.0 * p->p);
    if (const auto* c = std::get_if<ComplexPowerFamily>(&digits)) return 1.0 / c->p;
    return 0.0;   // finite alphabets: level-1 sums always converge
}

// ---------------------------------------------------------------- h bracket

DimBracket hausdorff_bracket(const SystemSpec& system, int level, std::int64_t truncation,
                             double tol) {
    validate(system);
    if (level < 1) throw std::invalid_argument("hausdorff: level must be >= 1");
    if (!(tol > 0.0)) throw std::invalid_argument("hausdorff: tol must be positive");
    const double ambient = static_cast<double>(ambient_dim(system));
    const std::int64_t cap = effective_cap(system, level, truncation);
    const bool use_hull = std::holds_alternative<CfRealSystem>(system);

    DimBracket bracket;
    bracket.witness_level = level;

    BoundLogs logs;
    std::int64_t n;
    bool stable = true;   // upper endpoint reflects the whole alphabet
    if (auto size = alphabet_size(system)) {
        n = cap;
        stable = cap >= static_cast<std::int64_t>(*size);
        logs = enumerate_bound_logs(system, level, n, use_hull);
    } else {
        // doubling: enlarge the truncation until the upper root stabilises
        n = std::min<std::int64_t>(64, cap);
        logs = enumerate_bound_logs(system, level, n, use_hull);
        stable = false;
        double prev = std::numeric_limits<double>::quiet_NaN();
        while (true) {
            double root = root_of_one(logs.hi, ambient, tol).value;
            if (!std::isnan(prev) && std::abs(root - prev) < std::max(0.5 * tol, 1e-13)) {
                stable = true;
                break;
            }
            if (n >= cap) break;
            prev = root;
            n = std::min<std::int64_t>(2 * n, cap);
            logs = enumerate_bound_logs(system, level, n, use_hull);
        }
    }
    bracket.witness_truncation = n;

    RootResult hi = root_of_one(logs.hi, ambient, tol);
    RootResult lo = root_of_one(logs.lo, ambient, tol);
    bracket.upper = hi.value;
    bracket.lower = std::min(lo.value, hi.value);
    bracket.warning = hi.saturated || !stable;
    return bracket;
}

// ---------------------------------------------------------------- similarity h

namespace {

SimilarityDim similarity_root(const std::function<double(double)>& sum_at_t, double ambient) {
    if (!(ambient > 0.0)) throw std::invalid_argument("similarity_h: ambient must be positive");
    auto above_one = [&](double t) {
        double s = sum_at_t(t);
        return !std::isfinite(s) || s >= 1.0;
    };
    if (!above_one(kRootEps)) return {0.0, false};
    if (above_one(ambient)) return {ambient, true};
    double lo = kRootEps, hi = ambient;
    for (int i = 0; i < kRootIters && hi - lo > 1e-12; ++i) {
        double mid = 0.5 * (lo + hi);
        if (above_one(mid))
            lo = mid;
        else
            hi = mid;
    }
    return {0.5 * (lo + hi), false};
}

}  // namespace

SimilarityDim similarity_h(std::span<const double> ratios, double ambient) {
    if (ratios.empty()) throw std::invalid_argument("similarity_h: no ratios");
    for (double c : ratios)
        if (!(c > 0.0 && c < 1.0))
            throw std::invalid_argument("similarity_h: ratios must lie in (0,1)");
    return similarity_root(
        [&](double t) {
            double acc = 0.0;
            for (double c : ratios) acc += std::pow(c, t);
            return acc;
        },
        ambient);
}

SimilarityDim similarity_h(const std::function<double(double)>& sum_at_t, double ambient) {
    return similarity_root(sum_at_t, ambient);
}

}  // namespace iifsdim

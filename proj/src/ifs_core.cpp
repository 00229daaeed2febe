#include "iifsdim/ifs_core.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace iifsdim {

namespace {

constexpr double kDiscCenter = 0.5;   // complex CF domain: |z - 1/2| <= 1/2
constexpr double kDiscRadius = 0.5;

struct LetterMatrix {
    // [[a,b],[c,d]] acting as (a x + b)/(c x + d)
    std::int64_t a, b, c, d;
};

LetterMatrix letter_matrix(const CfRealMap& m) {
    if (m.prefixed) return {1, 1, m.digit, m.digit + 1};   // S_b o S_1
    return {0, 1, 1, m.digit};
}

std::vector<CfRealMap> materialize_real_letters(const DigitSet& digits, std::size_t count) {
    return cf_real_alphabet(digits, count);
}

std::vector<std::complex<std::int64_t>> materialize_complex_letters(const DigitSet& digits,
                                                                    std::size_t count) {
    return enumerate_complex_digits(digits, count);
}

void check_word(const Word& word) {
    if (word.indices.empty()) throw std::invalid_argument("word: must be non-empty");
}

std::size_t max_index(const Word& word) {
    return *std::max_element(word.indices.begin(), word.indices.end());
}

double positive_quadratic_root(double qp, double B, double pc) {
    // qp x^2 + B x - pc = 0, the root in [0, 1]
    if (qp == 0.0) return pc / B;
    return (-B + std::sqrt(B * B + 4.0 * qp * pc)) / (2.0 * qp);
}

}  // namespace

// ---------------------------------------------------------------- validation

void validate(const MapSpec& map) {
    std::visit(
        [](const auto& m) {
            using T = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<T, Similarity>) {
                if (!(m.ratio > 0.0 && m.ratio < 1.0))
                    throw std::invalid_argument("map: similarity ratio must lie in (0,1)");
                if (m.translation.empty())
                    throw std::invalid_argument("map: similarity translation missing");
            } else if constexpr (std::is_same_v<T, CfRealMap>) {
                if (m.digit < 1) throw std::invalid_argument("map: CF digit must be >= 1");
                if (m.digit == 1 && !m.prefixed)
                    throw std::invalid_argument(
                        "map: digit 1 is only legal inside a prefixed two-step map");
            } else {
                if (m.digit_re < 1)
                    throw std::invalid_argument("map: complex CF digit needs real part >= 1");
                if (m.digit_re == 1 && m.digit_im == 0)
                    throw std::invalid_argument("map: complex CF digit 1 is not uniformly contracting");
            }
        },
        map);
}

void validate(const SystemSpec& system) {
    std::visit(
        [](const auto& s) {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, SimilaritySystem>) {
                if (s.maps.empty()) throw std::invalid_argument("system: no maps");
                if (s.ambient_dim < 1) throw std::invalid_argument("system: ambient dim must be >= 1");
                for (const auto& m : s.maps) {
                    validate(MapSpec{m});
                    if (static_cast<int>(m.translation.size()) != s.ambient_dim)
                        throw std::invalid_argument("system: translation dimension mismatch");
                }
            } else {
                validate(s.digits);
                if constexpr (std::is_same_v<T, CfRealSystem>) {
                    if (is_complex(s.digits))
                        throw std::invalid_argument("system: real CF system with complex digits");
                } else {
                    if (!is_complex(s.digits))
                        throw std::invalid_argument("system: complex CF system needs complex digits");
                }
            }
        },
        system);
}

int ambient_dim(const SystemSpec& system) {
    if (const auto* s = std::get_if<SimilaritySystem>(&system)) return s->ambient_dim;
    if (std::holds_alternative<CfComplexSystem>(system)) return 2;
    return 1;
}

// ---------------------------------------------------------------- alphabet

std::vector<CfRealMap> cf_real_alphabet(const DigitSet& digits, std::size_t count) {
    validate(digits);
    if (!contains_one(digits)) {
        auto ds = enumerate_real_digits(digits, count);
        std::vector<CfRealMap> out;
        out.reserve(ds.size());
        for (auto d : ds) out.push_back({d, false});
        return out;
    }
    // rewritten alphabet; keys (q_cur, q_prev, prefixed, digit) sort the
    // letters by contraction strength so truncation is canonical
    auto ds = enumerate_real_digits(digits, count + 2);
    std::vector<CfRealMap> letters;
    letters.reserve(2 * ds.size());
    for (auto d : ds) {
        if (d != 1) letters.push_back({d, false});
        letters.push_back({d, true});
    }
    std::sort(letters.begin(), letters.end(), [](const CfRealMap& x, const CfRealMap& y) {
        auto m1 = letter_matrix(x);
        auto m2 = letter_matrix(y);
        return std::tuple(m1.d, m1.c, x.prefixed, x.digit) <
               std::tuple(m2.d, m2.c, y.prefixed, y.digit);
    });
    if (letters.size() > count) letters.resize(count);
    return letters;
}

std::optional<std::size_t> alphabet_size(const SystemSpec& system) {
    if (const auto* s = std::get_if<SimilaritySystem>(&system)) return s->maps.size();
    const DigitSet& digits = std::holds_alternative<CfRealSystem>(system)
                                 ? std::get<CfRealSystem>(system).digits
                                 : std::get<CfComplexSystem>(system).digits;
    auto n = finite_size(digits);
    if (!n) return std::nullopt;
    if (std::holds_alternative<CfRealSystem>(system) && contains_one(digits))
        return 2 * *n - 1;   // rewrite: (n-1) plain letters + n prefixed ones
    return n;
}

MapSpec system_map(const SystemSpec& system, std::size_t index) {
    if (const auto* s = std::get_if<SimilaritySystem>(&system)) {
        if (index >= s->maps.size()) throw std::invalid_argument("invalid word: unknown map index");
        return s->maps[index];
    }
    if (const auto* r = std::get_if<CfRealSystem>(&system)) {
        auto letters = materialize_real_letters(r->digits, index + 1);
        if (index >= letters.size()) throw std::invalid_argument("invalid word: unknown map index");
        return letters[index];
    }
    const auto& c = std::get<CfComplexSystem>(system);
    auto letters = materialize_complex_letters(c.digits, index + 1);
    if (index >= letters.size()) throw std::invalid_argument("invalid word: unknown map index");
    return CfComplexMap{letters[index].real(), letters[index].imag()};
}

Word word_from_digits(const SystemSpec& system, std::span<const std::int64_t> digits) {
    const auto* r = std::get_if<CfRealSystem>(&system);
    if (r == nullptr) throw std::invalid_argument("word_from_digits: real CF systems only");
    std::size_t need = 64;
    Word w;
    for (auto d : digits) {
        if (d == 1)
            throw std::invalid_argument(
                "word_from_digits: digit 1 exists only inside prefixed letters");
        bool found = false;
        while (!found) {
            auto letters = materialize_real_letters(r->digits, need);
            for (std::size_t i = 0; i < letters.size(); ++i) {
                if (!letters[i].prefixed && letters[i].digit == d) {
                    w.indices.push_back(i);
                    found = true;
                    break;
                }
            }
            if (!found) {
                if (letters.size() < need) break;   // finite alphabet exhausted
                need *= 2;
            }
        }
        if (!found)
            throw std::invalid_argument("invalid word: digit " + std::to_string(d) +
                                        " not in the digit set");
    }
    check_word(w);
    return w;
}

// ---------------------------------------------------------------- composition

CompositeMap compose_word(const SystemSpec& system, const Word& word) {
    check_word(word);
    if (const auto* s = std::get_if<SimilaritySystem>(&system)) {
        SimilarityComposite out;
        out.ratio = 1.0;
        out.translation.assign(s->ambient_dim, 0.0);
        for (std::size_t idx : word.indices) {
            if (idx >= s->maps.size()) throw std::invalid_argument("invalid word: unknown map index");
            const Similarity& m = s->maps[idx];
            // (S_prefix o S_m)(x) = ratio * (m.ratio x + m.a) + a
            for (int k = 0; k < s->ambient_dim; ++k)
                out.translation[k] += out.ratio * m.translation[k];
            out.ratio *= m.ratio;
        }
        return out;
    }
    if (const auto* r = std::get_if<CfRealSystem>(&system)) {
        auto letters = materialize_real_letters(r->digits, max_index(word) + 1);
        MobiusComposite m{1, 0, 0, 1};
        for (std::size_t idx : word.indices) {
            if (idx >= letters.size()) throw std::invalid_argument("invalid word: unknown map index");
            auto L = letter_matrix(letters[idx]);
            BigInt pp = m.p_prev * L.a + m.p_cur * L.c;
            BigInt pc = m.p_prev * L.b + m.p_cur * L.d;
            BigInt qp = m.q_prev * L.a + m.q_cur * L.c;
            BigInt qc = m.q_prev * L.b + m.q_cur * L.d;
            m = {std::move(pp), std::move(pc), std::move(qp), std::move(qc)};
        }
        return m;
    }
    const auto& c = std::get<CfComplexSystem>(system);
    auto letters = materialize_complex_letters(c.digits, max_index(word) + 1);
    ComplexMobiusComposite m{GaussInt(1), GaussInt(0), GaussInt(0), GaussInt(1)};
    for (std::size_t idx : word.indices) {
        if (idx >= letters.size()) throw std::invalid_argument("invalid word: unknown map index");
        GaussInt b(BigInt(letters[idx].real()), BigInt(letters[idx].imag()));
        // letter matrix [[0,1],[1,b]]
        GaussInt pp = m.p_cur;
        GaussInt pc = m.p_prev + m.p_cur * b;
        GaussInt qp = m.q_cur;
        GaussInt qc = m.q_prev + m.q_cur * b;
        m = {std::move(pp), std::move(pc), std::move(qp), std::move(qc)};
    }
    return m;
}

// ---------------------------------------------------------------- bounds

CylinderBounds composite_norm_bounds(const CompositeMap& composite, double domain_lo,
                                     double domain_hi) {
    if (const auto* s = std::get_if<SimilarityComposite>(&composite))
        return {s->ratio, s->ratio};
    if (const auto* m = std::get_if<MobiusComposite>(&composite)) {
        double qp = static_cast<double>(m->q_prev);
        double qc = static_cast<double>(m->q_cur);
        double den_lo = qp * domain_lo + qc;
        double den_hi = qp * domain_hi + qc;
        return {1.0 / (den_hi * den_hi), 1.0 / (den_lo * den_lo)};
    }
    const auto& m = std::get<ComplexMobiusComposite>(composite);
    // |q_prev z + q_cur| over the disc is |q_cur + q_prev/2| +- |q_prev|/2, exactly.
    GaussInt two_center = m.q_prev + m.q_cur + m.q_cur;
    double center = 0.5 * two_center.abs();
    double radius = 0.5 * m.q_prev.abs();
    double den_min = center - radius;
    double den_max = center + radius;
    if (!(den_min > 0.0))
        throw std::runtime_error("cylinder bounds: complex denominator reaches zero on the disc");
    return {1.0 / (den_max * den_max), 1.0 / (den_min * den_min)};
}

CylinderBounds word_norm_bounds(const SystemSpec& system, const Word& word) {
    return composite_norm_bounds(compose_word(system, word));
}

// ---------------------------------------------------------------- fixed points

std::vector<double> fixed_point(const MapSpec& map) {
    validate(map);
    if (const auto* s = std::get_if<Similarity>(&map)) {
        if (!(s->ratio < 1.0)) throw std::domain_error("fixed point: map is not a contraction");
        std::vector<double> out(s->translation.size());
        for (std::size_t k = 0; k < out.size(); ++k)
            out[k] = s->translation[k] / (1.0 - s->ratio);
        return out;
    }
    if (const auto* r = std::get_if<CfRealMap>(&map)) {
        auto L = letter_matrix(*r);
        double x = positive_quadratic_root(static_cast<double>(L.c),
                                           static_cast<double>(L.d - L.a),
                                           static_cast<double>(L.b));
        return {x};
    }
    const auto& c = std::get<CfComplexMap>(map);
    std::complex<double> b(static_cast<double>(c.digit_re), static_cast<double>(c.digit_im));
    std::complex<double> disc = std::sqrt(b * b + 4.0);
    std::complex<double> z1 = 0.5 * (-b + disc);
    std::complex<double> z2 = 0.5 * (-b - disc);
    std::complex<double> z = std::abs(z1 - kDiscCenter) <= std::abs(z2 - kDiscCenter) ? z1 : z2;
    return {z.real(), z.imag()};
}

std::vector<double> fixed_point(const CompositeMap& composite) {
    if (const auto* s = std::get_if<SimilarityComposite>(&composite)) {
        if (!(s->ratio < 1.0)) throw std::domain_error("fixed point: composite is not a contraction");
        std::vector<double> out(s->translation.size());
        for (std::size_t k = 0; k < out.size(); ++k)
            out[k] = s->translation[k] / (1.0 - s->ratio);
        return out;
    }
    if (const auto* m = std::get_if<MobiusComposite>(&composite)) {
        if (composite_norm_bounds(composite).upper >= 1.0)
            throw std::domain_error("fixed point: composite is not a contraction");
        double x = positive_quadratic_root(static_cast<double>(m->q_prev),
                                           static_cast<double>(m->q_cur - m->p_prev),
                                           static_cast<double>(m->p_cur));
        return {x};
    }
    const auto& m = std::get<ComplexMobiusComposite>(composite);
    std::complex<double> qp = m.q_prev.to_complex();
    std::complex<double> qc = m.q_cur.to_complex();
    std::complex<double> pp = m.p_prev.to_complex();
    std::complex<double> pc = m.p_cur.to_complex();
    // q_prev z^2 + (q_cur - p_prev) z - p_cur = 0
    std::complex<double> B = qc - pp;
    if (std::abs(qp) == 0.0) {
        std::complex<double> z = pc / B;
        return {z.real(), z.imag()};
    }
    std::complex<double> disc = std::sqrt(B * B + 4.0 * qp * pc);
    std::complex<double> z1 = (-B + disc) / (2.0 * qp);
    std::complex<double> z2 = (-B - disc) / (2.0 * qp);
    std::complex<double> z = std::abs(z1 - kDiscCenter) <= std::abs(z2 - kDiscCenter) ? z1 : z2;
    return {z.real(), z.imag()};
}

// ---------------------------------------------------------------- evaluation

std::vector<double> evaluate_point(const SystemSpec& system, const Word& word,
                                   std::span<const double> anchor) {
    check_word(word);
    auto composite = compose_word(system, word);
    if (const auto* s = std::get_if<SimilarityComposite>(&composite)) {
        if (anchor.size() != s->translation.size())
            throw std::domain_error("evaluate: anchor dimension mismatch");
        std::vector<double> out(anchor.size());
        for (std::size_t k = 0; k < out.size(); ++k) {
            if (!std::isfinite(anchor[k])) throw std::domain_error("evaluate: anchor not finite");
            out[k] = s->ratio * anchor[k] + s->translation[k];
        }
        return out;
    }
    if (const auto* m = std::get_if<MobiusComposite>(&composite)) {
        if (anchor.size() != 1) throw std::domain_error("evaluate: anchor must be one-dimensional");
        double x = anchor[0];
        if (!(x >= 0.0 && x <= 1.0)) throw std::domain_error("evaluate: anchor outside [0,1]");
        // exact rational evaluation; continuants can exceed double range
        BigRational xr(x);
        BigRational value = (BigRational(m->p_prev) * xr + m->p_cur) /
                            (BigRational(m->q_prev) * xr + m->q_cur);
        return {static_cast<double>(value)};
    }
    const auto& m = std::get<ComplexMobiusComposite>(composite);
    if (anchor.size() != 2) throw std::domain_error("evaluate: anchor must be two-dimensional");
    std::complex<double> z(anchor[0], anchor[1]);
    if (std::abs(z - kDiscCenter) > kDiscRadius + 1e-12)
        throw std::domain_error("evaluate: anchor outside the disc domain");
    std::complex<double> value = (m.p_prev.to_complex() * z + m.p_cur.to_complex()) /
                                 (m.q_prev.to_complex() * z + m.q_cur.to_complex());
    return {value.real(), value.imag()};
}

// ---------------------------------------------------------------- hull

std::pair<double, double> cf_real_domain_hull(const DigitSet& digits) {
    validate(digits);
    if (!is_finite(digits)) {
        std::int64_t bmin = enumerate_real_digits(digits, 1).front();
        if (bmin <= 1) return {0.0, 1.0};
        return {0.0, 1.0 / static_cast<double>(bmin)};
    }
    auto ds = enumerate_real_digits(digits, *finite_size(digits));
    double bmin = static_cast<double>(ds.front());
    double bmax = static_cast<double>(ds.back());
    // sup F = 1/(bmin + inf F), inf F = 1/(bmax + sup F)
    double M = (-bmin * bmax + std::sqrt(bmin * bmin * bmax * bmax + 4.0 * bmin * bmax)) /
               (2.0 * bmin);
    double m = 1.0 / (bmax + M);
    return {m, M};
}

// ---------------------------------------------------------------- JSON

void to_json(nlohmann::json& j, const SystemSpec& system) {
    std::visit(
        [&j](const auto& s) {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, SimilaritySystem>) {
                nlohmann::json maps = nlohmann::json::array();
                for (const auto& m : s.maps)
                    maps.push_back({{"ratio", m.ratio}, {"translation", m.translation}});
                j = {{"kind", "similarity"}, {"d", s.ambient_dim}, {"maps", maps}};
            } else if constexpr (std::is_same_v<T, CfRealSystem>) {
                nlohmann::json digits;
                to_json(digits, s.digits);
                j = {{"kind", "cf-real"}, {"digits", digits}};
            } else {
                nlohmann::json digits;
                to_json(digits, s.digits);
                j = {{"kind", "cf-complex"}, {"digits", digits}};
            }
        },
        system);
}

void from_json(const nlohmann::json& j, SystemSpec& system) {
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "similarity") {
        SimilaritySystem s;
        s.ambient_dim = j.at("d").get<int>();
        for (const auto& jm : j.at("maps")) {
            Similarity m;
            m.ratio = jm.at("ratio").get<double>();
            m.translation = jm.at("translation").get<std::vector<double>>();
            s.maps.push_back(std::move(m));
        }
        system = std::move(s);
    } else if (kind == "cf-real") {
        CfRealSystem s;
        from_json(j.at("digits"), s.digits);
        system = std::move(s);
    } else if (kind == "cf-complex") {
        CfComplexSystem s;
        from_json(j.at("digits"), s.digits);
        system = std::move(s);
    } else {
        throw std::invalid_argument("system: unknown kind '" + kind + "'");
    }
    validate(system);
}

}  // namespace iifsdim

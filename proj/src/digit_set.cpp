#include "iifsdim/digit_set.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace iifsdim {

namespace {

std::int64_t floor_pow(std::int64_t n, double p) {
    return static_cast<std::int64_t>(std::floor(std::pow(static_cast<double>(n), p)));
}

}  // namespace

void validate(const DigitSet& set) {
    std::visit(
        [](const auto& s) {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, ExplicitDigits>) {
                if (s.digits.empty()) throw std::invalid_argument("digit set: explicit list is empty");
                std::set<std::int64_t> seen;
                for (auto d : s.digits) {
                    if (d < 1) throw std::invalid_argument("digit set: digits must be >= 1");
                    if (!seen.insert(d).second)
                        throw std::invalid_argument("digit set: duplicate digit " + std::to_string(d));
                }
            } else if constexpr (std::is_same_v<T, PowerFamily>) {
                if (s.p < 1.0) throw std::invalid_argument("digit set: power family requires p >= 1");
                if (s.l < 1 || (s.p > 1.0 && s.l < 2))
                    throw std::invalid_argument("digit set: power family requires l >= 2");
            } else if constexpr (std::is_same_v<T, ComplexPowerFamily>) {
                if (s.p <= 1.0) throw std::invalid_argument("digit set: complex power family requires p > 1");
                if (s.R < 0.0) throw std::invalid_argument("digit set: complex power family requires R >= 0");
            } else {
                if (s.N < 1) throw std::invalid_argument("digit set: full alphabet requires N >= 1");
            }
        },
        set);
}

bool is_complex(const DigitSet& set) {
    return std::holds_alternative<ComplexPowerFamily>(set);
}

bool is_finite(const DigitSet& set) {
    return std::holds_alternative<ExplicitDigits>(set) || std::holds_alternative<FullTruncated>(set);
}

std::optional<std::size_t> finite_size(const DigitSet& set) {
    if (const auto* e = std::get_if<ExplicitDigits>(&set)) return e->digits.size();
    if (const auto* f = std::get_if<FullTruncated>(&set)) return static_cast<std::size_t>(f->N);
    return std::nullopt;
}

bool contains_one(const DigitSet& set) {
    if (const auto* e = std::get_if<ExplicitDigits>(&set))
        return std::find(e->digits.begin(), e->digits.end(), 1) != e->digits.end();
    if (const auto* p = std::get_if<PowerFamily>(&set)) return floor_pow(p->l, p->p) == 1;
    if (std::holds_alternative<FullTruncated>(set)) return true;
    return false;   // complex family has both parts >= 1, so never the digit 1
}

std::vector<std::int64_t> enumerate_real_digits(const DigitSet& set, std::size_t count) {
    validate(set);
    std::vector<std::int64_t> out;
    if (const auto* e = std::get_if<ExplicitDigits>(&set)) {
        out = e->digits;
        std::sort(out.begin(), out.end());
        if (out.size() > count) out.resize(count);
        return out;
    }
    if (const auto* f = std::get_if<FullTruncated>(&set)) {
        std::size_t n = std::min<std::size_t>(count, static_cast<std::size_t>(f->N));
        out.reserve(n);
        for (std::size_t b = 1; b <= n; ++b) out.push_back(static_cast<std::int64_t>(b));
        return out;
    }
    if (const auto* p = std::get_if<PowerFamily>(&set)) {
        out.reserve(count);
        for (std::size_t k = 0; k < count; ++k)
            out.push_back(floor_pow(p->l + static_cast<std::int64_t>(k), p->p));
        return out;
    }
    throw std::invalid_argument("digit set: complex family has no real digits");
}

std::vector<std::complex<std::int64_t>> enumerate_complex_digits(const DigitSet& set, std::size_t count) {
    validate(set);
    const auto* c = std::get_if<ComplexPowerFamily>(&set);
    if (c == nullptr) throw std::invalid_argument("digit set: not a complex family");

    // Grow the (m,n) box until digits of modulus <= floor(L^p) are certainly
    // all present; then the first `count` by modulus are final.
    std::vector<std::complex<std::int64_t>> digits;
    std::int64_t L = 2;
    while (true) {
        digits.clear();
        double complete_to = std::pow(static_cast<double>(L), c->p);   // modulus horizon
        for (std::int64_t m = 1; m <= L; ++m) {
            for (std::int64_t n = 1; n <= L; ++n) {
                std::int64_t re = floor_pow(m, c->p);
                std::int64_t im = floor_pow(n, c->p);
                double mod = std::hypot(static_cast<double>(re), static_cast<double>(im));
                if (mod <= c->R) continue;
                if (mod > complete_to) continue;
                digits.emplace_back(re, im);
            }
        }
        if (digits.size() >= count || L > (1 << 21)) break;
        L *= 2;
    }
    std::sort(digits.begin(), digits.end(), [](const auto& a, const auto& b) {
        double ma = std::hypot(static_cast<double>(a.real()), static_cast<double>(a.imag()));
        double mb = std::hypot(static_cast<double>(b.real()), static_cast<double>(b.imag()));
        if (ma != mb) return ma < mb;
        double aa = std::atan2(static_cast<double>(a.imag()), static_cast<double>(a.real()));
        double ab = std::atan2(static_cast<double>(b.imag()), static_cast<double>(b.real()));
        if (aa != ab) return aa < ab;
        return a.real() < b.real();
    });
    if (digits.size() > count) digits.resize(count);
    if (digits.empty()) throw std::runtime_error("digit set: complex enumeration produced no digits");
    return digits;
}

std::string describe(const DigitSet& set) {
    return std::visit(
        [](const auto& s) -> std::string {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, ExplicitDigits>) {
                std::string out = "explicit{";
                for (std::size_t i = 0; i < s.digits.size(); ++i) {
                    if (i) out += ",";
                    out += std::to_string(s.digits[i]);
                    if (i > 8) { out += ",..."; break; }
                }
                return out + "}";
            } else if constexpr (std::is_same_v<T, PowerFamily>) {
                return "power{p=" + std::to_string(s.p) + ",l=" + std::to_string(s.l) + "}";
            } else if constexpr (std::is_same_v<T, ComplexPowerFamily>) {
                return "complex-power{p=" + std::to_string(s.p) + ",R=" + std::to_string(s.R) + "}";
            } else {
                return "full{N=" + std::to_string(s.N) + "}";
            }
        },
        set);
}

void to_json(nlohmann::json& j, const DigitSet& set) {
    std::visit(
        [&j](const auto& s) {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, ExplicitDigits>) {
                j = {{"type", "explicit"}, {"digits", s.digits}};
            } else if constexpr (std::is_same_v<T, PowerFamily>) {
                j = {{"type", "power"}, {"p", s.p}, {"l", s.l}};
            } else if constexpr (std::is_same_v<T, ComplexPowerFamily>) {
                j = {{"type", "complex-power"}, {"p", s.p}, {"R", s.R}};
            } else {
                j = {{"type", "full"}, {"N", s.N}};
            }
        },
        set);
}

void from_json(const nlohmann::json& j, DigitSet& set) {
    const std::string type = j.at("type").get<std::string>();
    if (type == "explicit") {
        ExplicitDigits e;
        e.digits = j.at("digits").get<std::vector<std::int64_t>>();
        set = e;
    } else if (type == "power") {
        PowerFamily p;
        p.p = j.at("p").get<double>();
        p.l = j.at("l").get<std::int64_t>();
        set = p;
    } else if (type == "complex-power") {
        ComplexPowerFamily c;
        c.p = j.at("p").get<double>();
        c.R = j.at("R").get<double>();
        set = c;
    } else if (type == "full") {
        FullTruncated f;
        f.N = j.at("N").get<std::int64_t>();
        set = f;
    } else {
        throw std::invalid_argument("digit set: unknown type '" + type + "'");
    }
    validate(set);
}

}  // namespace iifsdim

#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <complex>

namespace iifsdim {

using BigInt = boost::multiprecision::cpp_int;
using BigRational = boost::multiprecision::cpp_rational;

// Gaussian integer over BigInt; enough arithmetic for continuant recursions.
struct GaussInt {
    BigInt re, im;

    GaussInt() = default;
    GaussInt(BigInt r, BigInt i) : re(std::move(r)), im(std::move(i)) {}
    explicit GaussInt(long r) : re(r), im(0) {}

    GaussInt operator+(const GaussInt& o) const { return {re + o.re, im + o.im}; }
    GaussInt operator*(const GaussInt& o) const {
        return {re * o.re - im * o.im, re * o.im + im * o.re};
    }

    bool is_zero() const { return re == 0 && im == 0; }

    double abs() const {
        double r = static_cast<double>(re);
        double i = static_cast<double>(im);
        return std::hypot(r, i);
    }

    std::complex<double> to_complex() const {
        return {static_cast<double>(re), static_cast<double>(im)};
    }
};

}  // namespace iifsdim

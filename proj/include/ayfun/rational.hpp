#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <map>
#include <string>

namespace ayfun::exact {

using Int = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational; // always lowest terms, denominator > 0

std::string to_string(const Rational& r);
double to_double(const Rational& r);

// Exact complex number with rational real and imaginary parts.
struct GaussianRational {
    Rational re{0};
    Rational im{0};

    GaussianRational() = default;
    GaussianRational(Rational r) : re(std::move(r)) {}
    GaussianRational(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}

    static GaussianRational i() { return {Rational(0), Rational(1)}; }

    GaussianRational conj() const { return {re, -im}; }
    bool is_zero() const { return re == 0 && im == 0; }

    friend GaussianRational operator+(const GaussianRational& a, const GaussianRational& b) {
        return {a.re + b.re, a.im + b.im};
    }
    friend GaussianRational operator-(const GaussianRational& a, const GaussianRational& b) {
        return {a.re - b.re, a.im - b.im};
    }
    friend GaussianRational operator-(const GaussianRational& a) { return {-a.re, -a.im}; }
    friend GaussianRational operator*(const GaussianRational& a, const GaussianRational& b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    friend GaussianRational operator/(const GaussianRational& a, const GaussianRational& b);
    friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
        return a.re == b.re && a.im == b.im;
    }
};

std::string to_string(const GaussianRational& z);

// Formal linear combination  c2_coeff * c2 + sum_k j_coeffs[k] * J_k.
// The J_k stay symbolic so recursion identities are checked as polynomial
// identities, not at sampled values.
struct CoefficientVector {
    Rational c2_coeff{0};
    std::map<int, Rational> j_coeffs; // index k in 2..n-2, absent = 0

    Rational j(int k) const {
        auto it = j_coeffs.find(k);
        return it == j_coeffs.end() ? Rational(0) : it->second;
    }
    bool is_zero() const;

    friend CoefficientVector operator+(const CoefficientVector& a, const CoefficientVector& b);
    friend CoefficientVector operator*(const Rational& s, const CoefficientVector& v);
    friend bool operator==(const CoefficientVector& a, const CoefficientVector& b);
};

} // namespace ayfun::exact

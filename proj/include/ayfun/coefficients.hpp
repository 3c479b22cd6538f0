#pragma once

#include "ayfun/rational.hpp"

#include <vector>

namespace ayfun::exact {

Int binomial(long long n, long long k);
Rational factorial(long long n);

// Weights a_1 .. a_{2n-2} of the path-independent Mabuchi functional,
// a_1 = -i n(n-1)/2, a_2 = conj(a_1), a_{2k+1} = a_{2k+2} = (-1)^k C(n,k+2).
std::vector<GaussianRational> mabuchi_weights(int n);

// Same pairs but with the k >= 1 entries negated.  Eliminating c1 flips the
// sign of every trailing weight, so this is the combination under which
// I^0 + sum_k (I^{2k+1} + I^{2k+2}) telescopes to zero.
std::vector<GaussianRational> cancellation_weights(int n);

// c_i expanded over {c2, J_2..J_{n-2}} by iterating
// c_{i+1} = -(i+2)/(n-(i+1)) c_i + J_i from the base case c_2.
CoefficientVector recursion_expand(int n, int i);

// The closed form of the same expansion:
// c_i = (-1)^{i-2} (i+1)!(n-i-1)!/(3!(n-3)!) c2
//     + sum_{k=2}^{i-1} (-1)^{i-1-k} (i+1)!(n-i-1)!/((k+2)!(n-k-2)!) J_k.
CoefficientVector closed_form(int n, int i);

// Solve c_{n-1} = 0 for c2:  c2 = sum_k (-1)^k 3!(n-3)!/((k+2)!(n-k-2)!) J_k.
// Empty (c2 = 0) for n = 3.
CoefficientVector c2_solution(int n);

// Substitute `c2_value` (a J-combination with c2_coeff = 0) for the c2
// indeterminate of `v`.
CoefficientVector substitute_c2(const CoefficientVector& v, const CoefficientVector& c2_value);

// exact integral  int_0^1 t^i (1-t)^{n-i} dt = i!(n-i)!/(n+1)!
Rational beta_moment(long long i, long long n);

// The sixteen Aubin-Yau assembly constants.
struct AyConstants {
    Rational a11, a12, a21, a22;
    Rational b11, b12, b21, b22;
    Rational c1, c2, d1, d2;
    Rational e1, e2, f1, f2;
};

// Solves the 16-equation linear system exactly (first-nonzero pivot) and
// cross-checks the result against the closed forms; throws on any mismatch
// or nonzero residual.
AyConstants ay_constants(int n);

// Closed forms alone, without the solve.
AyConstants ay_constants_closed(int n);

// Residuals of the sixteen equations for a given candidate; all must be 0.
std::vector<Rational> ay_equation_residuals(int n, const AyConstants& c);

struct ScalarIdentityReport {
    bool pass = true;
    int first_failure_i = -1;
    std::string failed_identity;
};

// Checks, for every i in 0..n-1 with exact arithmetic,
//   i(n-1-i) + (i+1)^2 = (i+1) + i n
//   (n-1-i)^2 + (i+1)(n-i-2) = n^2 - (n+1)(i+1)
// `perturb` is a test hook that adds 1 to one side of the first identity.
ScalarIdentityReport scalar_identity_suite(int n, bool perturb = false);

} // namespace ayfun::exact

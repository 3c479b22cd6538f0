#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ayfun/coefficients.hpp"

using namespace ayfun::exact;

TEST_CASE("binomial") {
    CHECK(binomial(5, 3) == 10);
    CHECK(binomial(4, 4) == 1);
    CHECK(binomial(7, -1) == 0);
    CHECK(binomial(7, 8) == 0);
    for (int n = 0; n <= 12; ++n) CHECK(binomial(n, 0) == 1);
    // Pascal identity over a block
    for (int n = 1; n <= 20; ++n)
        for (int k = 1; k <= n; ++k)
            CHECK(binomial(n, k) == binomial(n - 1, k - 1) + binomial(n - 1, k));
}

TEST_CASE("mabuchi weights") {
    auto w4 = mabuchi_weights(4);
    REQUIRE(w4.size() == 6);
    CHECK(w4[0] == GaussianRational(Rational(0), Rational(-6)));
    CHECK(w4[1] == GaussianRational(Rational(0), Rational(6)));
    CHECK(w4[2] == GaussianRational(Rational(-4)));
    CHECK(w4[3] == GaussianRational(Rational(-4)));
    CHECK(w4[4] == GaussianRational(Rational(1)));
    CHECK(w4[5] == GaussianRational(Rational(1)));
    CHECK(to_string(w4[0]) == "-6i");

    auto w3 = mabuchi_weights(3);
    REQUIRE(w3.size() == 4);
    CHECK(w3[0] == GaussianRational(Rational(0), Rational(-3)));
    CHECK(w3[2] == GaussianRational(Rational(-1)));

    CHECK_THROWS(mabuchi_weights(2));

    for (int n = 3; n <= 12; ++n) {
        auto w = mabuchi_weights(n);
        CHECK(w[1] == w[0].conj());
        for (int k = 1; k <= n - 2; ++k) {
            CHECK(w[2 * k].im == 0);          // real
            CHECK(w[2 * k] == w[2 * k + 1]);  // conjugate pair of a real number
        }
        auto c = cancellation_weights(n);
        CHECK(c[0] == w[0]);
        CHECK(c[1] == w[1]);
        for (std::size_t j = 2; j < w.size(); ++j) CHECK(c[j] == -w[j]);
    }
}

TEST_CASE("recursion expansion") {
    auto base = recursion_expand(7, 2);
    CHECK(base.c2_coeff == 1);
    CHECK(base.j_coeffs.empty());

    auto c45 = recursion_expand(5, 4);
    CHECK(c45.c2_coeff == 10);
    CHECK(c45.j(2) == -5);
    CHECK(c45.j(3) == 1);

    auto c34 = closed_form(4, 3);
    CHECK(c34.c2_coeff == -4);
    CHECK(c34.j(2) == 1);

    CHECK_THROWS(recursion_expand(5, 1));
    CHECK_THROWS(recursion_expand(5, 5));

    for (int n = 4; n <= 12; ++n)
        for (int i = 2; i <= n - 1; ++i) CHECK(recursion_expand(n, i) == closed_form(n, i));

    // top coefficient (n-i-1)! = 0! at i = n-1
    for (int n = 4; n <= 12; ++n) {
        auto top = closed_form(n, n - 1);
        Rational expect = factorial(n) / (factorial(3) * factorial(n - 3));
        if ((n - 3) % 2 != 0) expect = -expect;
        CHECK(top.c2_coeff == expect);
    }
}

TEST_CASE("c2 solution") {
    CHECK(c2_solution(3).is_zero());
    auto s4 = c2_solution(4);
    CHECK(s4.c2_coeff == 0);
    CHECK(s4.j(2) == Rational(1, 4));
    auto s5 = c2_solution(5);
    CHECK(s5.j(2) == Rational(1, 2));
    CHECK(s5.j(3) == Rational(-1, 10));
    CHECK_THROWS(c2_solution(2));

    // substituting the solution kills c_{n-1} identically
    for (int n = 4; n <= 12; ++n) {
        auto cn1 = substitute_c2(closed_form(n, n - 1), c2_solution(n));
        CHECK(cn1.is_zero());
    }
}

TEST_CASE("beta moments") {
    CHECK(beta_moment(2, 5) == Rational(1, 60));
    for (int n = 0; n <= 12; ++n) {
        CHECK(beta_moment(0, n) == Rational(1, n + 1));
        CHECK(beta_moment(n, n) == Rational(1, n + 1));
        for (int i = 0; i <= n; ++i) CHECK(beta_moment(i, n) == beta_moment(n - i, n));
    }
    CHECK_THROWS(beta_moment(6, 5));
}

TEST_CASE("ay constants") {
    auto k3 = ay_constants(3);
    CHECK(k3.a11 == Rational(-3, 2));
    CHECK(k3.a12 == Rational(-3, 8));
    CHECK(k3.a21 == Rational(3, 4));
    CHECK(k3.a22 == Rational(21, 16));
    CHECK(k3.c1 == Rational(-1));
    CHECK(k3.d1 == Rational(-1));
    CHECK(k3.c2 == Rational(-1, 4));
    CHECK(k3.d2 == Rational(-1, 4));
    CHECK(k3.e1 == Rational(-1, 4));
    CHECK(k3.f1 == Rational(-1, 4));
    CHECK(k3.e2 == Rational(-3, 16));
    CHECK(k3.f2 == Rational(-3, 16));
    CHECK_THROWS(ay_constants(2));

    for (int n = 3; n <= 12; ++n) {
        auto k = ay_constants(n); // throws if solve, closed form, or residuals disagree
        CHECK(k.a11 == k.b11);
        CHECK(k.c1 == k.d1);
        for (const auto& r : ay_equation_residuals(n, k)) CHECK(r == 0);
    }

    // corrupting one constant must produce a nonzero residual
    auto bad = ay_constants_closed(5);
    bad.a11 += 1;
    bool any = false;
    for (const auto& r : ay_equation_residuals(5, bad)) any = any || r != 0;
    CHECK(any);
}

TEST_CASE("scalar identities") {
    CHECK(scalar_identity_suite(3).pass);
    CHECK(scalar_identity_suite(12).pass);
    auto bad = scalar_identity_suite(7, true);
    CHECK_FALSE(bad.pass);
    CHECK(bad.first_failure_i == 0);
}

TEST_CASE("gaussian rational arithmetic") {
    GaussianRational a{Rational(1, 2), Rational(-3)};
    GaussianRational b{Rational(2), Rational(5, 7)};
    auto prod = a * b;
    auto back = prod / b;
    CHECK(back == a);
    CHECK((a - a).is_zero());
    CHECK(a.conj().im == Rational(3));
    CHECK_THROWS(a / GaussianRational{});
    CHECK(to_string(GaussianRational{Rational(1, 2), Rational(-1, 10)}) == "1/2-1/10i");
}

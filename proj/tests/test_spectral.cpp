#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ayfun/form.hpp"
#include "ayfun/scenario.hpp"

#include <cmath>

using namespace ayfun;
using namespace ayfun::spectral;
using scenarios::Rng;

namespace {

ScalarField random_complex(const GridSpec& g, Rng& rng, double amp = 1.0) {
    ScalarField re = scenarios::random_real_field(g, rng, amp);
    ScalarField im = scenarios::random_real_field(g, rng, amp);
    return re + cplx(0.0, 1.0) * im;
}

// random (p,q)-form with a couple of bandwidth-1 components
Form random_form(const GridSpec& g, int p, int q, Rng& rng) {
    Form f(g, {p, q});
    IndexSet I, J;
    for (int j = 1; j <= p; ++j) I.push_back(j);
    for (int j = 1; j <= q; ++j) J.push_back(j);
    f.add_component({I, J}, random_complex(g, rng, 0.5));
    if (p >= 1 && g.n >= 2) {
        IndexSet I2 = I;
        I2.back() = g.n;
        if (I2 != I) f.add_component({I2, J}, random_complex(g, rng, 0.5));
    }
    return f;
}

double form_distance(const Form& a, const Form& b) { return (a - b).max_component_abs(); }

constexpr double kEps = 1e-12;

} // namespace

TEST_CASE("make_field basics") {
    GridSpec g = default_grid(2, 11);
    ScalarField zero = make_field(g, {});
    CHECK(zero.constant_zero());

    std::map<ModeIndex, cplx> cm{{{0, 0, 0, 0}, cplx(2.5, -1.0)}};
    ScalarField c = make_field(g, cm);
    for (auto v : c.values()) CHECK(std::abs(v - cplx(2.5, -1.0)) < 1e-15);

    // conjugate mode pair gives a real field pointwise
    std::map<ModeIndex, cplx> rm{{{1, 0, 0, 0}, cplx(0.3, 0.7)}, {{-1, 0, 0, 0}, cplx(0.3, -0.7)}};
    ScalarField r = make_field(g, rm);
    for (auto v : r.values()) CHECK(std::abs(v.imag()) < 1e-14);

    std::map<ModeIndex, cplx> aliased{{{6, 0, 0, 0}, cplx(1.0)}};
    CHECK_THROWS_AS(make_field(g, aliased), AliasRisk);
}

TEST_CASE("wirtinger derivatives") {
    GridSpec g = default_grid(2, 11);
    ScalarField c = make_field(g, {{{0, 0, 0, 0}, cplx(3.0, 1.0)}});
    CHECK(wirtinger_d(c, 1).max_abs() < 1e-14);
    CHECK(wirtinger_dbar(c, 2).max_abs() < 1e-14);

    // f = exp(2 pi i x_1): df/dz1 = df/dzbar1 = pi i f, df/dz2 = 0
    ScalarField f = make_field(g, {{{1, 0, 0, 0}, cplx(1.0)}});
    ScalarField want = cplx(0.0, M_PI) * f;
    CHECK((wirtinger_d(f, 1) - want).max_abs() < 1e-12);
    CHECK((wirtinger_dbar(f, 1) - want).max_abs() < 1e-12);
    CHECK(wirtinger_d(f, 2).max_abs() < 1e-14);

    // f = exp(2 pi i y_1): dz gives +pi f, dzbar gives -pi f
    ScalarField h = make_field(g, {{{0, 1, 0, 0}, cplx(1.0)}});
    CHECK((wirtinger_d(h, 1) - cplx(M_PI) * h).max_abs() < 1e-12);
    CHECK((wirtinger_dbar(h, 1) - cplx(-M_PI) * h).max_abs() < 1e-12);
}

TEST_CASE("multiply and alias contract") {
    GridSpec g = default_grid(2, 11);
    Rng rng(5);
    ScalarField f = random_complex(g, rng);
    ScalarField zero = make_field(g, {});
    CHECK(multiply(f, zero).constant_zero());

    ScalarField e = make_field(g, {{{1, 0, 0, 0}, cplx(1.0)}});
    ScalarField einv = make_field(g, {{{-1, 0, 0, 0}, cplx(1.0)}});
    ScalarField one = multiply(e, einv);
    for (auto v : one.values()) CHECK(std::abs(v - cplx(1.0)) < 1e-14);

    // mean of a product equals the zero mode of the mode-map convolution
    std::map<ModeIndex, cplx> fm{{{1, 0, 0, 0}, cplx(0.4, 0.2)}, {{-1, 0, 0, 0}, cplx(0.4, -0.2)}};
    std::map<ModeIndex, cplx> gm{{{-1, 0, 0, 0}, cplx(-0.3, 0.9)}, {{1, 0, 0, 0}, cplx(0.1, 0.0)}};
    ScalarField a = make_field(g, fm), b = make_field(g, gm);
    cplx brute = 0.0;
    for (const auto& [k, am] : fm)
        for (const auto& [l, bm] : gm) {
            bool opposite = true;
            for (std::size_t i = 0; i < k.size(); ++i) opposite = opposite && k[i] == -l[i];
            if (opposite) brute += am * bm;
        }
    CHECK(std::abs(mean(multiply(a, b)) - brute) < 1e-14);

    // mode recovery round-trips
    auto back = field_modes(a);
    REQUIRE(back.size() == 2);
    CHECK(std::abs(back.at({1, 0, 0, 0}) - cplx(0.4, 0.2)) < 1e-14);

    // repeated squaring exhausts the bandwidth budget on an 11-grid
    ScalarField p = multiply(f, f);
    p = multiply(p, p);
    CHECK_THROWS_AS(multiply(p, p), AliasRisk);
}

TEST_CASE("wedge algebra") {
    GridSpec g = default_grid(2, 11);
    Rng rng(7);
    Form dz1(g, {1, 0});
    dz1.add_component({{1}, {}}, ScalarField(g, 1.0));
    Form dzb1(g, {0, 1});
    dzb1.add_component({{}, {1}}, ScalarField(g, 1.0));

    CHECK(wedge(dz1, dz1).max_component_abs() == 0.0);
    Form ab = wedge(dz1, dzb1);
    Form ba = wedge(dzb1, dz1);
    CHECK(form_distance(ab, cplx(-1.0) * ba) == 0.0);

    // graded commutativity on random forms
    auto check_commute = [&](int p1, int q1, int p2, int q2) {
        Form a = random_form(g, p1, q1, rng);
        Form b = random_form(g, p2, q2, rng);
        double sgn = ((p1 + q1) * (p2 + q2)) % 2 == 0 ? 1.0 : -1.0;
        CHECK(form_distance(wedge(a, b), cplx(sgn) * wedge(b, a)) < kEps);
    };
    check_commute(1, 0, 0, 1);
    check_commute(1, 1, 1, 0);
    check_commute(1, 0, 1, 0);
    check_commute(2, 1, 0, 1);

    // odd-degree alpha ^ alpha = 0, multi-component so the cancellation is real
    Form odd10 = random_form(g, 1, 0, rng);
    Form odd01 = random_form(g, 0, 1, rng);
    CHECK(wedge(odd10, odd10).max_component_abs() < kEps);
    CHECK(wedge(odd01, odd01).max_component_abs() < kEps);

    // associativity on random triples
    Form x = random_form(g, 1, 0, rng);
    Form y = random_form(g, 0, 1, rng);
    Form z = random_form(g, 1, 1, rng);
    CHECK(form_distance(wedge(wedge(x, y), z), wedge(x, wedge(y, z))) < kEps);
}

TEST_CASE("dolbeault operators") {
    for (int n : {2, 3}) {
        GridSpec g = default_grid(n);
        Rng rng(11 + n);
        Form a = random_form(g, 1, 0, rng);
        double scale = 1.0 + a.max_component_abs();
        CHECK(del(del(a)).max_component_abs() / scale < kEps);
        CHECK(delbar(delbar(a)).max_component_abs() / scale < kEps);
        CHECK((del(delbar(a)) + delbar(del(a))).max_component_abs() / scale < kEps);

        // constant-coefficient forms are closed
        Form c(g, {1, 1});
        c.add_component({{1}, {2}}, ScalarField(g, cplx(0.3, -0.2)));
        CHECK(del(c).max_component_abs() < kEps);

        // conj . del = delbar . conj
        CHECK(form_distance(conjugate(del(a)), delbar(conjugate(a))) < kEps);
        CHECK(form_distance(conjugate(conjugate(a)), a) == 0.0);
    }
}

TEST_CASE("integration") {
    for (int n : {2, 3}) {
        GridSpec g = default_grid(n);
        Rng rng(21 + n);
        Form zero(g, {n, n});
        CHECK(integrate_top(zero) == cplx(0.0));

        auto flat = scenarios::flat_metric(n, g);
        cplx vol = integrate_top(form_pow(flat.omega, n));
        double expect = std::pow(2.0, n) * std::tgamma(n + 1.0);
        CHECK(std::abs(vol - expect) / expect < kEps);

        // Stokes: int del(beta) = 0 for an (n-1, n)-form
        IndexSet full, partial;
        for (int j = 1; j <= n; ++j) full.push_back(j);
        for (int j = 2; j <= n; ++j) partial.push_back(j);
        Form beta(g, {n - 1, n});
        beta.add_component({partial, full}, random_complex(g, rng));
        CHECK(std::abs(integrate_top(del(beta))) < kEps);

        // integrate conj = conj integrate
        Form top(g, {n, n});
        top.add_component({full, full}, random_complex(g, rng));
        CHECK(std::abs(integrate_top(conjugate(top)) - std::conj(integrate_top(top))) < kEps);

        // integration by parts: int a ^ del b = -(-1)^{|a|} int del(a) ^ b
        // for |a| + |b| = 2n - 1, and the dbar twin
        Form a = random_form(g, 1, 0, rng);          // |a| = 1
        Form b(g, {n - 2, n});                       // |b| = 2n - 2
        if (n == 2) {
            b.add_component({{}, full}, random_complex(g, rng));
        } else {
            IndexSet keep;
            for (int j = 3; j <= n; ++j) keep.push_back(j);
            b.add_component({keep, full}, random_complex(g, rng));
        }
        cplx lhs = integrate_top(wedge(a, del(b)));
        cplx rhs = integrate_top(wedge(del(a), b));
        CHECK(std::abs(lhs - rhs) / (1.0 + std::abs(lhs)) < kEps);

        Form abar = random_form(g, 0, 1, rng); // |abar| = 1
        Form c(g, {n, n - 2});                 // |c| = 2n - 2, dbar raises q
        if (n == 2) {
            c.add_component({full, {}}, random_complex(g, rng));
        } else {
            IndexSet keep;
            for (int j = 3; j <= n; ++j) keep.push_back(j);
            c.add_component({full, keep}, random_complex(g, rng));
        }
        cplx lhs2 = integrate_top(wedge(abar, delbar(c)));
        cplx rhs2 = integrate_top(wedge(delbar(abar), c));
        CHECK(std::abs(lhs2 - rhs2) / (1.0 + std::abs(lhs2)) < kEps);
    }
}

TEST_CASE("hermitian entries and positivity") {
    int n = 2;
    GridSpec g = default_grid(n, 11);
    auto flat = scenarios::flat_metric(n, g);
    auto h = hermitian_entries(flat.omega);
    for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k) {
            double want = j == k ? 1.0 : 0.0;
            for (auto v : h[j][k].values()) CHECK(std::abs(v - want) < 1e-15);
        }
    CHECK(form_distance(from_hermitian_entries(g, h), flat.omega) == 0.0);

    auto rep = is_positive(flat.omega);
    CHECK(rep.positive);
    CHECK(rep.min_pivot == doctest::Approx(1.0));

    // diagonal perturbation 2 cos(2 pi x_1) of size 2 crosses zero somewhere
    Form bad = flat.omega;
    ScalarField cosx =
        make_field(g, {{{1, 0, 0, 0}, cplx(1.0)}, {{-1, 0, 0, 0}, cplx(1.0)}});
    bad.add_component({{1}, {1}}, cplx(0.0, 2.0) * cosx);
    CHECK_FALSE(is_positive(bad).positive);

    // non-Hermitian entries are not conjugate-invariant: rejected
    Form skew = flat.omega;
    skew.add_component({{1}, {2}}, ScalarField(g, cplx(0.5, 0.0)));
    CHECK_THROWS(is_positive(skew));
}

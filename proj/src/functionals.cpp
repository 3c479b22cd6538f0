#include "ayfun/functionals.hpp"

#include "ayfun/coefficients.hpp"

#include <algorithm>
#include <cmath>
#include <initializer_list>
#include <memory>

namespace ayfun::energy {

using scenarios::MetricKind;
using spectral::Form;
using spectral::GridSpec;
using spectral::ScalarField;

namespace {

cplx wedge_int(std::initializer_list<const Form*> chain) {
    auto it = chain.begin();
    Form acc = **it;
    for (++it; it != chain.end(); ++it) acc = wedge(acc, **it);
    return integrate_top(acc);
}

double check_real(cplx v, const char* what) {
    if (std::abs(v.imag()) > 1e-10 * (1.0 + std::abs(v)))
        throw Error(std::string(what) + ": imaginary residue " + std::to_string(v.imag()));
    return v.real();
}

std::vector<Form> powers(const Form& a, int kmax) {
    std::vector<Form> p;
    p.reserve(kmax + 1);
    p.push_back(spectral::scalar_form(a.grid(), ScalarField(a.grid(), 1.0)));
    for (int k = 1; k <= kmax; ++k) p.push_back(wedge(p.back(), a));
    return p;
}

double binom(int n, int k) { return exact::binomial(n, k).convert_to<double>(); }

// trailing-sum weight of the path-independent functional; the sign is the
// one under which the I^k telescoping cancels (tested in the proof suite)
double trailing_weight(int n, int i) { return (i % 2 == 0 ? -1.0 : 1.0) * binom(n, i + 2); }

struct Ws {
    const MetricScenario& s;
    int n;
    std::shared_ptr<const scenarios::ScenarioGeometry> geo;
    const Form& dom;
    const Form& dbom;
    const std::vector<Form>& ompow;
    double V;

    explicit Ws(const MetricScenario& s_)
        : s(s_), n(s_.grid.n),
          geo(s_.geometry ? s_.geometry : scenarios::make_geometry(s_.grid, s_.omega)),
          dom(geo->del_omega), dbom(geo->delbar_omega), ompow(geo->omega_pow),
          V(geo->volume) {}

    Form om_phi(const ScalarField& phi) const {
        return s.omega + i_del_delbar(s.grid, phi);
    }
};

const cplx I{0.0, 1.0};

} // namespace

double relative_residual(double lhs, double rhs) {
    return std::abs(lhs - rhs) / (1.0 + std::abs(lhs) + std::abs(rhs));
}

double relative_residual(cplx lhs, cplx rhs) {
    return std::abs(lhs - rhs) / (1.0 + std::abs(lhs) + std::abs(rhs));
}

double InequalityMargins::worst_relative() const {
    double w = std::min(i_value, j_value);
    for (double m : margins) w = std::min(w, m);
    return w / scale();
}

double volume(const MetricScenario& s) {
    Ws ws(s);
    return ws.V;
}

namespace {

// one t-node of the path integrand; the caller divides by V
cplx path_integrand(const Ws& ws, const ScalarField& phi, const ScalarField& vel,
                    bool corrections) {
    int n = ws.n;
    const GridSpec& g = ws.s.grid;
    Form P = spectral::scalar_form(g, phi);
    Form D = spectral::scalar_form(g, vel);
    Form ddb = i_del_delbar(g, phi);
    Form omp = ws.s.omega + ddb;
    if (!spectral::is_positive(omp).positive)
        throw Error("mabuchi_path: inadmissible path node");
    auto pw = powers(omp, n);
    cplx val = wedge_int({&D, &pw[n]});
    if (!corrections) return val;

    Form dbD = delbar(D), dD = del(D);
    Form phi_dbD = scalar_times(phi, dbD), phi_dD = scalar_times(phi, dD);
    double lam = 0.5 * n * (n - 1);
    val -= lam * I * wedge_int({&ws.dom, &pw[n - 2], &phi_dbD});
    val += lam * I * wedge_int({&ws.dbom, &pw[n - 2], &phi_dD});
    if (n >= 3) {
        auto pd = powers(ddb, n - 3);
        Form dP = del(P), dbP = delbar(P);
        for (int i = 1; i <= n - 2; ++i) {
            cplx w = trailing_weight(n, i);
            val += w * wedge_int({&dP, &ws.dom, &dbD, &dbP, &pw[n - i - 2], &pd[i - 1]});
            val += w * wedge_int({&dbP, &ws.dbom, &dD, &dP, &pw[n - i - 2], &pd[i - 1]});
        }
    }
    return val;
}

double path_quadrature(const MetricScenario& s, const PotentialPath& path,
                       const QuadratureRule& rule, bool corrections) {
    if (s.grid.n < 2) throw Error("mabuchi_path: n >= 2 required");
    Ws ws(s);
    cplx total = 0.0;
    for (std::size_t k = 0; k < rule.nodes.size(); ++k) {
        auto [phi, vel] = path.sample(rule.nodes[k]);
        total += rule.weights[k] * path_integrand(ws, phi, vel, corrections);
    }
    return check_real(total / ws.V, "mabuchi_path");
}

} // namespace

double mabuchi_path(const MetricScenario& s, const PotentialPath& path,
                    const QuadratureRule& rule) {
    return path_quadrature(s, path, rule, true);
}

double mabuchi_kahler_path(const MetricScenario& s, const PotentialPath& path,
                           const QuadratureRule& rule) {
    return path_quadrature(s, path, rule, false);
}

double mabuchi_two_point(const MetricScenario& s, const ScalarField& phi1,
                         const ScalarField& phi2, const QuadratureRule& rule) {
    return mabuchi_path(s, PotentialPath::linear(phi1, phi2), rule);
}

double mabuchi_explicit(const MetricScenario& s, const ScalarField& phi) {
    Ws ws(s);
    int n = ws.n;
    Form P = spectral::scalar_form(s.grid, phi);
    Form omp = ws.om_phi(phi);
    auto pw = powers(omp, n);
    Form dP = del(P), dbP = delbar(P);
    cplx val = 0.0;
    for (int i = 0; i <= n; ++i) val += wedge_int({&P, &pw[i], &ws.ompow[n - i]});
    val /= static_cast<double>(n + 1);
    for (int i = 0; i <= n - 2; ++i) {
        double w = 0.5 * (i + 1);
        val -= w * I * wedge_int({&P, &pw[i], &ws.ompow[n - 2 - i], &ws.dom, &dbP});
        val += w * I * wedge_int({&P, &pw[i], &ws.ompow[n - 2 - i], &ws.dbom, &dP});
    }
    return check_real(val / ws.V, "mabuchi_explicit");
}

namespace {

// int phi om_phi^i om^{n-2-i} ^ i del(om) ^ dbar(phi)  and its mirror
cplx x_term(const Ws& ws, const Form& P, const std::vector<Form>& pw, const Form& dbP, int i) {
    return I * wedge_int({&P, &pw[i], &ws.ompow[ws.n - 2 - i], &ws.dom, &dbP});
}

cplx y_term(const Ws& ws, const Form& P, const std::vector<Form>& pw, const Form& dP, int i) {
    return I * wedge_int({&P, &pw[i], &ws.ompow[ws.n - 2 - i], &ws.dbom, &dP});
}

cplx grad_term(const Ws& ws, const Form& dP, const Form& dbP, const std::vector<Form>& pw,
               int i) {
    Form idP = I * dP;
    return wedge_int({&idP, &dbP, &pw[i], &ws.ompow[ws.n - 1 - i]});
}

} // namespace

double i_ay(const MetricScenario& s, const ScalarField& phi, EvalMode mode) {
    Ws ws(s);
    int n = ws.n;
    if (n < 2) throw Error("i_ay: n >= 2 required");
    Form P = spectral::scalar_form(s.grid, phi);
    Form omp = ws.om_phi(phi);
    auto pw = powers(omp, n);
    Form dP = del(P), dbP = delbar(P);
    cplx val = 0.0;
    if (mode == EvalMode::gradient) {
        for (int i = 0; i <= n - 1; ++i) val += grad_term(ws, dP, dbP, pw, i);
    } else {
        val = wedge_int({&P, &ws.ompow[n]}) - wedge_int({&P, &pw[n]});
        for (int i = 0; i <= n - 2; ++i) {
            val -= 0.5 * n * x_term(ws, P, pw, dbP, i);
            val += 0.5 * n * y_term(ws, P, pw, dP, i);
        }
    }
    return check_real(val / ws.V, "i_ay");
}

double j_ay(const MetricScenario& s, const ScalarField& phi, EvalMode mode) {
    Ws ws(s);
    int n = ws.n;
    if (n < 2) throw Error("j_ay: n >= 2 required");
    Form P = spectral::scalar_form(s.grid, phi);
    Form omp = ws.om_phi(phi);
    auto pw = powers(omp, n);
    Form dP = del(P), dbP = delbar(P);
    cplx val = 0.0;
    if (mode == EvalMode::gradient) {
        for (int i = 0; i <= n - 1; ++i)
            val += (static_cast<double>(n - i) / (n + 1)) * grad_term(ws, dP, dbP, pw, i);
        return check_real(val / ws.V, "j_ay");
    }
    val = -mabuchi_explicit(s, phi) * ws.V + wedge_int({&P, &ws.ompow[n]});
    for (int i = 0; i <= n - 2; ++i) {
        val -= 0.5 * n * x_term(ws, P, pw, dbP, i);
        val += 0.5 * n * y_term(ws, P, pw, dP, i);
    }
    return check_real(val / ws.V, "j_ay");
}

double err_term(const MetricScenario& s, const ScalarField& phi) {
    Ws ws(s);
    Form omp = ws.om_phi(phi);
    auto pw = powers(omp, ws.n);
    return ws.V - check_real(integrate_top(pw[ws.n]), "err_term");
}

IntermediateReport intermediates(const MetricScenario& s, const ScalarField& phi,
                                 const QuadratureRule& rule) {
    Ws ws(s);
    int n = ws.n;
    if (n < 3) throw Error("intermediates: n >= 3 required");
    double V = ws.V;
    Form P = spectral::scalar_form(s.grid, phi);
    Form omp = ws.om_phi(phi);
    auto pw = powers(omp, n);
    Form dP = del(P), dbP = delbar(P);

    IntermediateReport r;
    r.i_bullet = check_real(
        (wedge_int({&P, &ws.ompow[n]}) - wedge_int({&P, &pw[n]})) / V, "i_bullet");
    {
        cplx acc = 0.0;
        for (std::size_t k = 0; k < rule.nodes.size(); ++k) {
            ScalarField sphi = cplx(rule.nodes[k]) * phi;
            Form omps = ws.om_phi(sphi);
            auto pws = powers(omps, n);
            acc += rule.weights[k] * (wedge_int({&P, &ws.ompow[n]}) - wedge_int({&P, &pws[n]}));
        }
        r.j_bullet = check_real(acc / V, "j_bullet");
    }
    cplx a = 0, b = 0, c = 0, d = 0, e = 0, f = 0, a1 = 0, b1 = 0;
    for (int i = 0; i <= n - 2; ++i) {
        cplx X = x_term(ws, P, pw, dbP, i);
        cplx Y = y_term(ws, P, pw, dP, i);
        a += 0.5 * (i + 1) * -X;
        b += 0.5 * (i + 1) * Y;
        if (i >= 1) {
            c += (static_cast<double>(i) * n / (n + 1)) * X;
            d += (static_cast<double>(i) * n / (n + 1)) * -Y;
        }
        if (i <= n - 3) {
            e += static_cast<double>(n) * n * X;
            f += static_cast<double>(n) * n * -Y;
            a1 += 0.5 * (i + 1) * -X;
            b1 += 0.5 * (i + 1) * Y;
        }
    }
    cplx a2 = 0.5 * (n - 1) * -x_term(ws, P, pw, dbP, n - 2);
    cplx b2 = 0.5 * (n - 1) * y_term(ws, P, pw, dP, n - 2);
    r.a = check_real(a / V, "A");
    r.b = check_real(b / V, "B");
    r.c = check_real(c / V, "C");
    r.d = check_real(d / V, "D");
    r.e = check_real(e / V, "E");
    r.f = check_real(f / V, "F");
    r.a1 = check_real(a1 / V, "A1");
    r.a2 = check_real(a2 / V, "A2");
    r.b1 = check_real(b1 / V, "B1");
    r.b2 = check_real(b2 / V, "B2");
    return r;
}

ResidualTable identity_suite_s3(const MetricScenario& s, const ScalarField& phi,
                                const QuadratureRule& rule) {
    Ws ws(s);
    int n = ws.n;
    if (n < 3) throw Error("identity_suite_s3: n >= 3 required");
    double V = ws.V;
    IntermediateReport m = intermediates(s, phi, rule);
    Form P = spectral::scalar_form(s.grid, phi);
    Form omp = ws.om_phi(phi);
    auto pw = powers(omp, n);
    Form dP = del(P), dbP = delbar(P);

    double grad1 = 0.0, grad2 = 0.0;
    for (int i = 0; i <= n - 1; ++i) {
        double g = check_real(grad_term(ws, dP, dbP, pw, i) / V, "gradient term");
        grad1 += (static_cast<double>(i) / (n + 1)) * g;
        grad2 += static_cast<double>(n - 1 - i) * g;
    }

    ResidualTable t;
    double lhs1 = n / double(n + 1) * m.i_bullet - m.j_bullet;
    t.push_back({"eq_3_14", relative_residual(lhs1, grad1 - 2.0 / (n + 1) * m.a + m.c)});
    t.push_back({"eq_3_15", relative_residual(lhs1, grad1 - 2.0 / (n + 1) * m.b + m.d)});
    t.push_back({"eq_3_17",
                 relative_residual(lhs1, grad1 - (m.a + m.b) / (n + 1) + (m.c + m.d) / 2)});
    double lhs2 = (n + 1) * m.j_bullet - m.i_bullet;
    t.push_back({"eq_3_21", relative_residual(
                                lhs2, grad2 + m.e + 2.0 * (n + 1) * m.a1 - 2.0 / (n - 1) * m.a2)});
    t.push_back({"eq_3_25", relative_residual(
                                lhs2, grad2 + m.f + 2.0 * (n + 1) * m.b1 - 2.0 / (n - 1) * m.b2)});
    t.push_back({"eq_3_26",
                 relative_residual(lhs2, grad2 + (m.e + m.f) / 2 + (n + 1) * (m.a1 + m.b1) -
                                             (m.a2 + m.b2) / (n - 1))});
    t.push_back({"sum_a1_a2", relative_residual(m.a1 + m.a2, m.a)});
    t.push_back({"sum_b1_b2", relative_residual(m.b1 + m.b2, m.b)});

    // assembly with the exact constants vs the closed forms
    auto k = exact::ay_constants(n);
    auto D = [](const exact::Rational& r) { return exact::to_double(r); };
    double i_asm = m.i_bullet + D(k.a11) * m.a1 + D(k.a21) * m.a2 + D(k.b11) * m.b1 +
                   D(k.b21) * m.b2 + D(k.c1) * m.c + D(k.d1) * m.d + D(k.e1) * m.e +
                   D(k.f1) * m.f;
    double j_asm = m.j_bullet + (D(k.a12) - 1) * m.a1 + (D(k.a22) - 1) * m.a2 +
                   (D(k.b12) - 1) * m.b1 + (D(k.b22) - 1) * m.b2 + D(k.c2) * m.c +
                   D(k.d2) * m.d + D(k.e2) * m.e + D(k.f2) * m.f;
    t.push_back({"eq_3_27_vs_3_43",
                 relative_residual(i_asm, i_ay(s, phi, EvalMode::direct))});
    t.push_back({"eq_3_27_vs_gradient",
                 relative_residual(i_asm, i_ay(s, phi, EvalMode::gradient))});
    t.push_back({"eq_3_28_vs_3_44",
                 relative_residual(j_asm, j_ay(s, phi, EvalMode::direct))});
    t.push_back({"eq_3_28_vs_gradient",
                 relative_residual(j_asm, j_ay(s, phi, EvalMode::gradient))});
    t.push_back({"eq_3_29", relative_residual(n / double(n + 1) * i_asm - j_asm, grad1)});
    t.push_back({"eq_3_30", relative_residual((n + 1) * j_asm - i_asm, grad2)});
    // J_bullet = int phi om^n / V - L^M + A + B
    double jb = check_real(wedge_int({&P, &ws.ompow[n]}) / V, "int phi om^n") -
                mabuchi_explicit(s, phi) + m.a + m.b;
    t.push_back({"eq_3_8_relation", relative_residual(m.j_bullet, jb)});
    return t;
}

ProofIdentityReport proof_identity_suite_s2(const MetricScenario& s, const ScalarField& psi,
                                            const ScalarField& u, const ScalarField& v) {
    Ws ws(s);
    int n = ws.n;
    if (n < 3) throw Error("proof_identity_suite_s2: n >= 3 required");
    const GridSpec& g = s.grid;
    Form ddb_psi = i_del_delbar(g, psi);
    Form omps = s.omega + ddb_psi;
    if (!spectral::is_positive(omps).positive)
        throw Error("proof_identity_suite_s2: omega_psi not positive");

    Form Ppsi = spectral::scalar_form(g, psi);
    Form Pu = spectral::scalar_form(g, u);
    Form Pv = spectral::scalar_form(g, v);
    Form dpsi = del(Ppsi), dbpsi = delbar(Ppsi);
    Form du = del(Pu), dbu = delbar(Pu);
    Form dv = del(Pv), dbv = delbar(Pv);
    Form iddb_u = i_del_delbar(g, u), iddb_v = i_del_delbar(g, v);
    Form neg_iddb_v = cplx(-1.0) * iddb_v;
    auto P = powers(omps, n - 2);
    auto PD = powers(ddb_psi, n - 2);

    ProofIdentityReport rep;
    auto& raw = rep.raw;

    // (2.85)/(2.86); the i = n-1 boundary carries factor zero
    auto A_i = [&](int i) -> cplx {
        if (n - i - 1 <= 0) return 0.0;
        return double(n - i - 1) *
               wedge_int({&dpsi, &dbpsi, &ws.dom, &dbu, &P[n - i - 2], &PD[i - 2], &iddb_v});
    };
    auto B_i = [&](int i) -> cplx {
        if (n - i - 1 <= 0) return 0.0;
        return -double(n - i - 1) *
               wedge_int({&dpsi, &dbpsi, &ws.dom, &dbv, &P[n - i - 2], &PD[i - 2], &iddb_u});
    };
    auto AB_closed = [&](int i) -> cplx { // (2.87)
        if (n - i - 1 <= 0) return 0.0;
        return double(n - i - 1) *
               wedge_int({&dpsi, &ws.dom, &dbu, &dbv, &P[n - i - 2], &PD[i - 1]});
    };
    auto H_i = [&](int i) -> cplx { // (2.94), valid from i = 1 (PD[0] = 1)
        return -wedge_int({&dv, &dbu, &ws.dom, &dbpsi, &P[n - i - 2], &PD[i - 1]}) +
               wedge_int({&du, &dbv, &ws.dom, &dbpsi, &P[n - i - 2], &PD[i - 1]});
    };

    cplx A1 = double(n - 2) * wedge_int({&Ppsi, &dbu, &P[n - 3], &ws.dom, &neg_iddb_v});
    cplx B1 = double(n - 2) * wedge_int({&Ppsi, &dbv, &P[n - 3], &ws.dom, &iddb_u});
    cplx AB1_closed = -double(n - 2) * I * wedge_int({&dpsi, &ws.dom, &dbu, &dbv, &P[n - 3]});
    cplx H1 = H_i(1);
    raw["A_1"] = A1;
    raw["B_1"] = B1;
    raw["H_1"] = H1;

    auto& res = rep.residuals;
    res.push_back({"eq_2_31", relative_residual(A1 + B1, AB1_closed)});
    res.push_back({"eq_2_46",
                   relative_residual(H1 + std::conj(H1),
                                     (A1 + B1) / (-double(n - 2) * I) +
                                         (std::conj(A1) + std::conj(B1)) / (double(n - 2) * I))});
    std::vector<cplx> Av(n + 1, 0.0), Bv(n + 1, 0.0), Hv(n + 1, 0.0);
    for (int i = 2; i <= n - 1; ++i) {
        Av[i] = A_i(i);
        Bv[i] = B_i(i);
        raw["A_" + std::to_string(i)] = Av[i];
        raw["B_" + std::to_string(i)] = Bv[i];
        if (i <= n - 2) {
            Hv[i] = H_i(i);
            raw["H_" + std::to_string(i)] = Hv[i];
            res.push_back({"eq_2_87_i" + std::to_string(i),
                           relative_residual(Av[i] + Bv[i], AB_closed(i))});
            cplx csum = Av[i] + Bv[i] + std::conj(Av[i]) + std::conj(Bv[i]);
            res.push_back({"eq_2_98_i" + std::to_string(i),
                           relative_residual(Hv[i] + std::conj(Hv[i]), csum / double(n - i - 1))});
        }
    }
    res.push_back({"eq_2_85_boundary", std::abs(Av[n - 1]) + std::abs(Bv[n - 1])});

    // assembled I^k and the master cancellation
    cplx I0 = -double(n) * (n - 1) * I *
              (wedge_int({&Pu, &P[n - 2], &ws.dom, &dbv}) +
               wedge_int({&Pv, &P[n - 2], &ws.dbom, &du}));
    cplx P1 = -wedge_int({&Pv, &dbu, &P[n - 2], &ws.dom}) +
              wedge_int({&Pu, &dbv, &P[n - 2], &ws.dom}) + A1 + B1;
    cplx P2 = -wedge_int({&Pv, &du, &P[n - 2], &ws.dbom}) +
              wedge_int({&Pu, &dv, &P[n - 2], &ws.dbom}) + std::conj(A1) + std::conj(B1);
    auto Podd = [&](int k) -> cplx { // I^{2k+1} / a_{2k+1} per (2.93)
        if (k == 1) return H1 + (2.0 / (-double(n - 2) * I)) * (A1 + B1) + Av[2] + Bv[2];
        return Hv[k] + (double(k + 1) / (n - k - 1)) * (Av[k] + Bv[k]) + Av[k + 1] + Bv[k + 1];
    };

    auto wgr = exact::cancellation_weights(n);
    auto wc = [&](std::size_t j) {
        return cplx(exact::to_double(wgr[j].re), exact::to_double(wgr[j].im));
    };
    cplx I1 = wc(0) * P1, I2 = wc(1) * P2;
    raw["I_0"] = I0;
    raw["I_1"] = I1;
    raw["I_2"] = I2;
    cplx total = I0 + I1 + I2;
    double scale = std::abs(I0) + std::abs(I1) + std::abs(I2);
    for (int k = 1; k <= n - 2; ++k) {
        cplx podd = Podd(k);
        cplx Iodd = wc(2 * k) * podd;
        cplx Ieven = wc(2 * k + 1) * std::conj(podd); // (2.95): the conjugate expression
        raw["I_" + std::to_string(2 * k + 1)] = Iodd;
        raw["I_" + std::to_string(2 * k + 2)] = Ieven;
        total += Iodd + Ieven;
        scale += std::abs(Iodd) + std::abs(Ieven);
    }
    res.push_back({"eq_2_114", std::abs(total) / (1.0 + scale)});
    return rep;
}

InequalityMargins inequality_report(const MetricScenario& s, const ScalarField& phi) {
    int n = s.grid.n;
    InequalityMargins r;
    r.i_value = i_ay(s, phi, EvalMode::gradient);
    r.j_value = j_ay(s, phi, EvalMode::gradient);
    double Iv = r.i_value, Jv = r.j_value;
    r.margins = {
        n / double(n + 1) * Iv - Jv,        // (1.22)
        (n + 1) * Jv - Iv,                  // (1.23)
        Jv - Iv / (n + 1),                  // (1.24) lower
        Iv - double(n + 1) / n * Jv,        // (1.25) lower
        (Iv - Jv) - Jv / (n + 1),           // (1.26) inner lower
        n * Jv - n / double(n + 1) * Iv,    // (1.26) outer upper
    };
    return r;
}

double cocycle_check(const MetricScenario& s, const ScalarField& phi1, const ScalarField& phi2,
                     const ScalarField& phi3, const QuadratureRule& rule) {
    double l12 = mabuchi_two_point(s, phi1, phi2, rule);
    double l23 = mabuchi_two_point(s, phi2, phi3, rule);
    double l31 = mabuchi_two_point(s, phi3, phi1, rule);
    return std::abs(l12 + l23 + l31) / (1.0 + std::abs(l12) + std::abs(l23) + std::abs(l31));
}

ShiftLawResiduals shift_laws(const MetricScenario& s, const ScalarField& phi1,
                             const ScalarField& phi2, double c, const QuadratureRule& rule) {
    Ws ws(s);
    Form omp2 = ws.om_phi(phi2);
    auto pw = powers(omp2, ws.n);
    double vol_phi2 = check_real(integrate_top(pw[ws.n]), "shift_laws");
    double err2 = ws.V - vol_phi2;

    ScalarField phi2c = phi2;
    for (auto& vv : phi2c.values()) vv += c;

    ShiftLawResiduals r;
    double l_const = mabuchi_path(s, PotentialPath::shifted(phi2, c), rule);
    r.constant_shift = relative_residual(l_const, c * vol_phi2 / ws.V);
    double l_off = mabuchi_two_point(s, phi1, phi2c, rule);
    double l_base = mabuchi_two_point(s, phi1, phi2, rule);
    r.offset_shift = relative_residual(l_off - l_base, c * (1.0 - err2 / ws.V));
    return r;
}

ResidualTable kahler_reduction_suite(const MetricScenario& s, const ScalarField& phi,
                                     const QuadratureRule& rule) {
    Ws ws(s);
    int n = ws.n;
    Form P = spectral::scalar_form(s.grid, phi);
    Form omp = ws.om_phi(phi);
    auto pw = powers(omp, n);
    Form dP = del(P), dbP = delbar(P);

    double base = 0.0;
    for (int i = 0; i <= n; ++i)
        base += std::abs(wedge_int({&P, &pw[i], &ws.ompow[n - i]})) / (n + 1);
    double extra116 = 0.0, extra343 = 0.0;
    for (int i = 0; i <= n - 2; ++i) {
        double xm = std::abs(x_term(ws, P, pw, dbP, i));
        double ym = std::abs(y_term(ws, P, pw, dP, i));
        extra116 = std::max(extra116, 0.5 * (i + 1) * std::max(xm, ym));
        extra343 = std::max(extra343, 0.5 * n * std::max(xm, ym));
    }
    ResidualTable t;
    t.push_back({"extra_2_116", extra116 / (1.0 + base)});
    t.push_back({"extra_3_43", extra343 / (1.0 + base)});
    t.push_back({"extra_3_44", extra343 / (1.0 + base)});

    ScalarField zero(s.grid, 0.0);
    auto path = PotentialPath::linear(zero, phi);
    double l_full = mabuchi_path(s, path, rule);
    double l_kahler = mabuchi_kahler_path(s, path, rule);
    t.push_back({"reduce_1_2", relative_residual(l_full, l_kahler)});
    double i_bullet = check_real(
        (wedge_int({&P, &ws.ompow[n]}) - wedge_int({&P, &pw[n]})) / ws.V, "i_bullet");
    t.push_back({"reduce_1_3", relative_residual(i_ay(s, phi, EvalMode::direct), i_bullet)});
    double j_kahler = -l_kahler + check_real(wedge_int({&P, &ws.ompow[n]}) / ws.V, "phi om^n");
    t.push_back({"reduce_1_4", relative_residual(j_ay(s, phi, EvalMode::direct), j_kahler)});
    return t;
}

FunctionalReport evaluate_all(const MetricScenario& s, const ScalarField& phi,
                              const QuadratureRule& rule) {
    FunctionalReport r;
    r.v_omega = volume(s);
    ScalarField zero(s.grid, 0.0);
    r.l_path = mabuchi_path(s, PotentialPath::linear(zero, phi), rule);
    r.l_explicit = mabuchi_explicit(s, phi);
    r.i_direct = i_ay(s, phi, EvalMode::direct);
    r.i_gradient = i_ay(s, phi, EvalMode::gradient);
    r.j_direct = j_ay(s, phi, EvalMode::direct);
    r.j_gradient = j_ay(s, phi, EvalMode::gradient);
    r.err = err_term(s, phi);
    r.inequalities = inequality_report(s, phi);
    r.residuals.push_back({"explicit_vs_path", relative_residual(r.l_path, r.l_explicit)});
    r.residuals.push_back({"i_dual", relative_residual(r.i_direct, r.i_gradient)});
    r.residuals.push_back({"j_dual", relative_residual(r.j_direct, r.j_gradient)});
    if (s.grid.n >= 3) {
        auto t = identity_suite_s3(s, phi, rule);
        r.residuals.insert(r.residuals.end(), t.begin(), t.end());
    }
    return r;
}

} // namespace ayfun::energy

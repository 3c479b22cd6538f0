#include "ayfun/harness.hpp"

#include "ayfun/coefficients.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <sstream>
#include <thread>

namespace ayfun::harness {

using energy::EvalMode;
using energy::relative_residual;
using nlohmann::json;
using scenarios::MetricKind;
using scenarios::MetricScenario;
using scenarios::PathKind;
using scenarios::Potential;
using scenarios::PotentialPath;
using scenarios::QuadratureRule;
using scenarios::Rng;
using spectral::cplx;
using spectral::ScalarField;

namespace {

struct CheckedRow {
    std::string tag;
    double value;
    double tolerance;
    bool pass;
};

class RowCollector {
  public:
    explicit RowCollector(const JobConfig& cfg) : cfg_(cfg) {}

    void add(const std::string& tag, double value) {
        double tol = tolerance_for(cfg_, tag);
        rows_.push_back({tag, value, tol, value <= tol});
    }
    void add_all(const energy::ResidualTable& t, const std::string& prefix = "") {
        for (const auto& row : t) add(prefix + row.tag, row.value);
    }

    bool all_pass() const {
        for (const auto& r : rows_)
            if (!r.pass) return false;
        return true;
    }

    json to_json() const {
        json arr = json::array();
        for (const auto& r : rows_)
            arr.push_back({{"tag", r.tag},
                           {"residual", r.value},
                           {"tolerance", r.tolerance},
                           {"pass", r.pass}});
        return arr;
    }

  private:
    const JobConfig& cfg_;
    std::vector<CheckedRow> rows_;
};

json gaussian_to_json(const exact::GaussianRational& z) { return exact::to_string(z); }

json coeffs_for_n(int n, bool corrupt, bool& all_pass) {
    json out;
    out["n"] = n;
    json weights = json::object();
    auto mw = exact::mabuchi_weights(n);
    for (std::size_t j = 0; j < mw.size(); ++j)
        weights["a" + std::to_string(j + 1)] = gaussian_to_json(mw[j]);
    out["mabuchi_weights"] = weights;
    json cweights = json::object();
    auto cw = exact::cancellation_weights(n);
    for (std::size_t j = 0; j < cw.size(); ++j)
        cweights["a" + std::to_string(j + 1)] = gaussian_to_json(cw[j]);
    out["cancellation_weights"] = cweights;

    exact::AyConstants k = exact::ay_constants_closed(n);
    if (corrupt) k.a11 += 1; // negative-control hook
    json kc;
    kc["a11"] = exact::to_string(k.a11);
    kc["a12"] = exact::to_string(k.a12);
    kc["a21"] = exact::to_string(k.a21);
    kc["a22"] = exact::to_string(k.a22);
    kc["b11"] = exact::to_string(k.b11);
    kc["b12"] = exact::to_string(k.b12);
    kc["b21"] = exact::to_string(k.b21);
    kc["b22"] = exact::to_string(k.b22);
    kc["c1"] = exact::to_string(k.c1);
    kc["c2"] = exact::to_string(k.c2);
    kc["d1"] = exact::to_string(k.d1);
    kc["d2"] = exact::to_string(k.d2);
    kc["e1"] = exact::to_string(k.e1);
    kc["e2"] = exact::to_string(k.e2);
    kc["f1"] = exact::to_string(k.f1);
    kc["f2"] = exact::to_string(k.f2);
    out["ay_constants"] = kc;

    json checks = json::array();
    auto add_check = [&](const std::string& tag, bool ok, const std::string& detail = "") {
        json c{{"tag", tag}, {"pass", ok}};
        if (!detail.empty()) c["detail"] = detail;
        checks.push_back(c);
        all_pass = all_pass && ok;
    };

    static const char* eq_names[16] = {"eq_3_31a", "eq_3_31b", "eq_3_32a", "eq_3_32b",
                                       "eq_3_33a", "eq_3_33b", "eq_3_34a", "eq_3_34b",
                                       "eq_3_35a", "eq_3_35b", "eq_3_36a", "eq_3_36b",
                                       "eq_3_37a", "eq_3_37b", "eq_3_38a", "eq_3_38b"};
    auto residuals = exact::ay_equation_residuals(n, k);
    for (int r = 0; r < 16; ++r)
        add_check(eq_names[r], residuals[r] == 0,
                  residuals[r] == 0 ? "" : "residual " + exact::to_string(residuals[r]));
    try {
        exact::ay_constants(n); // exact solve must agree with the closed forms
        add_check("ay_solve_matches_closed", true);
    } catch (const std::exception& e) {
        add_check("ay_solve_matches_closed", false, e.what());
    }

    if (n >= 4) {
        bool ok = true;
        for (int i = 2; i <= n - 1 && ok; ++i)
            ok = exact::recursion_expand(n, i) == exact::closed_form(n, i);
        add_check("recursion_equals_closed_form", ok);
        auto c2 = exact::c2_solution(n);
        auto cn1 = exact::substitute_c2(exact::closed_form(n, n - 1), c2);
        add_check("c_nminus1_vanishes", cn1.is_zero());
    } else {
        add_check("c2_solution_empty", exact::c2_solution(n).is_zero());
    }
    {
        json sol = json::object();
        for (const auto& [kk, vv] : exact::c2_solution(n).j_coeffs)
            sol["J_" + std::to_string(kk)] = exact::to_string(vv);
        out["c2_solution"] = sol;
    }
    auto rep = exact::scalar_identity_suite(n);
    add_check("scalar_identities", rep.pass,
              rep.pass ? "" : rep.failed_identity + " at i=" + std::to_string(rep.first_failure_i));
    // weight sanity: conjugate pairing and beta-moment symmetry
    {
        auto w = exact::mabuchi_weights(n);
        bool ok = w[1] == w[0].conj();
        for (int kk = 1; kk <= n - 2 && ok; ++kk)
            ok = w[2 * kk] == w[2 * kk + 1] && w[2 * kk].im == 0;
        add_check("weight_conjugate_pairs", ok);
        bool sym = true;
        for (int i = 0; i <= n && sym; ++i)
            sym = exact::beta_moment(i, n) == exact::beta_moment(n - i, n);
        add_check("beta_moment_symmetry", sym);
    }
    out["checks"] = checks;
    return out;
}

} // namespace

int run_coeffs(const JobConfig& cfg, json& report) {
    auto t0 = std::chrono::steady_clock::now();
    int lo = cfg.n, hi = std::max(cfg.n, cfg.max_n);
    bool all_pass = true;
    json per_n = json::array();
    for (int n = lo; n <= hi; ++n) per_n.push_back(coeffs_for_n(n, cfg.corrupt_test_hook, all_pass));
    report["wall_ms"] = std::chrono::duration_cast<std::chrono::milliseconds>(
                            std::chrono::steady_clock::now() - t0)
                            .count();
    report["job"] = "coeffs";
    report["range"] = {lo, hi};
    report["results"] = per_n;
    report["pass"] = all_pass;
    return all_pass ? exit_pass : exit_residual_failure;
}

MetricScenario build_metric(const JobConfig& cfg, std::uint64_t seed) {
    auto grid = cfg.grid();
    switch (cfg.metric_kind) {
        case MetricKind::flat: return scenarios::flat_metric(cfg.n, grid);
        case MetricKind::kaehler_perturbed:
            return scenarios::kaehler_perturbed_metric(cfg.n, grid, cfg.epsilon, seed);
        case MetricKind::nonkaehler_perturbed:
            return scenarios::nonkaehler_metric(cfg.n, grid, cfg.epsilon, seed);
    }
    throw ConfigError("bad metric kind");
}

Potential build_potential(const JobConfig& cfg, const MetricScenario& scenario,
                          std::uint64_t seed) {
    if (cfg.potential_modes) {
        ScalarField cand = make_field(scenario.grid, *cfg.potential_modes);
        ScalarField imag = cand - spectral::conj(cand);
        if (imag.max_abs() > 1e-12 * (1.0 + cand.max_abs()))
            throw ConfigError("potential.modes does not define a real-valued field");
        return scenarios::admissible_potential(scenario, cand);
    }
    return scenarios::admissible_potential(scenario, seed, cfg.potential_amplitude);
}

namespace {

void verify_one_seed(const JobConfig& cfg, std::uint64_t seed, RowCollector& rows) {
    int n = cfg.n;
    MetricScenario s = build_metric(cfg, seed);
    QuadratureRule rule = scenarios::gauss_legendre(cfg.effective_quad_order());
    std::uint64_t pseed = cfg.potential_seed.value_or(seed * 1000 + 1);
    Potential p1 = build_potential(cfg, s, pseed);
    Potential p2 = build_potential(cfg, s, pseed + 1);
    Potential p3 = build_potential(cfg, s, pseed + 2);
    Rng brng(cfg.path_seed + seed);
    ScalarField raw_bridge = scenarios::random_real_field(s.grid, brng, cfg.potential_amplitude);
    ScalarField bridge = cplx(p1.scale) * raw_bridge;
    int halvings = 0;
    while (!scenarios::path_admissible(s, PotentialPath::bridge(p1.phi, p2.phi, bridge), rule)) {
        bridge = cplx(0.5) * bridge;
        if (++halvings > 60) throw PositivityUnreachable("verify: bridge halving exhausted");
    }

    // path independence: linear vs bridge between the same endpoints
    double l_lin = energy::mabuchi_path(s, PotentialPath::linear(p1.phi, p2.phi), rule);
    double l_br = energy::mabuchi_path(s, PotentialPath::bridge(p1.phi, p2.phi, bridge), rule);
    rows.add("path_independence", relative_residual(l_lin, l_br));

    // explicit formula vs the ray path
    ScalarField zero(s.grid, 0.0);
    double l_ray = energy::mabuchi_path(s, PotentialPath::linear(zero, p1.phi), rule);
    rows.add("explicit_vs_path", relative_residual(l_ray, energy::mabuchi_explicit(s, p1.phi)));

    // dual closed forms
    rows.add("i_dual", relative_residual(energy::i_ay(s, p1.phi, EvalMode::direct),
                                         energy::i_ay(s, p1.phi, EvalMode::gradient)));
    rows.add("j_dual", relative_residual(energy::j_ay(s, p1.phi, EvalMode::direct),
                                         energy::j_ay(s, p1.phi, EvalMode::gradient)));

    // inequalities: report the negative part of the worst relative margin
    auto ineq = energy::inequality_report(s, p1.phi);
    rows.add("inequality_margin", std::max(0.0, -ineq.worst_relative()));

    // cocycle condition
    double l12 = energy::mabuchi_two_point(s, p1.phi, p2.phi, rule);
    double l21 = energy::mabuchi_two_point(s, p2.phi, p1.phi, rule);
    rows.add("antisymmetry", std::abs(l12 + l21) / (1.0 + std::abs(l12) + std::abs(l21)));
    rows.add("cocycle", energy::cocycle_check(s, p1.phi, p2.phi, p3.phi, rule));

    // shift laws vs the derived oracle
    auto shifts = energy::shift_laws(s, p1.phi, p2.phi, cfg.shift_constant, rule);
    rows.add("shift_constant", shifts.constant_shift);
    rows.add("shift_offset", shifts.offset_shift);

    if (n >= 3) {
        rows.add_all(energy::identity_suite_s3(s, p1.phi, rule));
        Rng prng(seed * 7919 + 11);
        ScalarField psi =
            cplx(p1.scale) * scenarios::random_real_field(s.grid, prng, cfg.potential_amplitude);
        while (!spectral::is_positive(s.omega + i_del_delbar(s.grid, psi)).positive)
            psi = cplx(0.5) * psi;
        ScalarField u = scenarios::random_real_field(s.grid, prng, 0.5);
        ScalarField v = scenarios::random_real_field(s.grid, prng, 0.5);
        rows.add_all(energy::proof_identity_suite_s2(s, psi, u, v).residuals);
    }

    if (cfg.metric_kind != MetricKind::nonkaehler_perturbed)
        rows.add_all(energy::kahler_reduction_suite(s, p1.phi, rule));
}

} // namespace

int run_verify(const JobConfig& cfg, json& report) {
    auto t0 = std::chrono::steady_clock::now();
    RowCollector rows(cfg);
    std::vector<std::uint64_t> seeds = cfg.seeds.empty()
                                           ? std::vector<std::uint64_t>{cfg.metric_seed}
                                           : cfg.seeds;
    json wall = json::array();
    for (std::uint64_t seed : seeds) {
        auto s0 = std::chrono::steady_clock::now();
        verify_one_seed(cfg, seed, rows);
        wall.push_back(std::chrono::duration_cast<std::chrono::milliseconds>(
                           std::chrono::steady_clock::now() - s0)
                           .count());
    }
    report["job"] = "verify";
    report["wall_ms_per_seed"] = wall;
    report["wall_ms"] = std::chrono::duration_cast<std::chrono::milliseconds>(
                            std::chrono::steady_clock::now() - t0)
                            .count();
    report["n"] = cfg.n;
    report["metric_kind"] = scenarios::to_string(cfg.metric_kind);
    report["seeds"] = seeds;
    report["rows"] = rows.to_json();
    report["pass"] = rows.all_pass();
    return rows.all_pass() ? exit_pass : exit_residual_failure;
}

int run_eval(const JobConfig& cfg, json& report) {
    auto t0 = std::chrono::steady_clock::now();
    MetricScenario s = build_metric(cfg, cfg.metric_seed);
    QuadratureRule rule = scenarios::gauss_legendre(cfg.effective_quad_order());
    Potential p = build_potential(cfg, s, cfg.potential_seed.value_or(cfg.metric_seed * 1000 + 1));
    auto rep = energy::evaluate_all(s, p.phi, rule);

    // path.kind selects how L_path is reached: a second path class between
    // the same endpoints (path independence makes them agree), or the
    // constant-shift path checked against its oracle value.
    ScalarField zero(s.grid, 0.0);
    if (cfg.path_kind == PathKind::bridge) {
        Rng brng(cfg.path_seed);
        ScalarField bridge =
            cplx(p.scale) * scenarios::random_real_field(s.grid, brng, cfg.potential_amplitude);
        int halvings = 0;
        while (!scenarios::path_admissible(s, PotentialPath::bridge(zero, p.phi, bridge), rule)) {
            bridge = cplx(0.5) * bridge;
            if (++halvings > 60) throw PositivityUnreachable("eval: bridge halving exhausted");
        }
        rep.l_path = energy::mabuchi_path(s, PotentialPath::bridge(zero, p.phi, bridge), rule);
        rep.residuals.insert(rep.residuals.begin(),
                             {"path_independence",
                              energy::relative_residual(rep.l_path, rep.l_explicit)});
    } else if (cfg.path_kind == PathKind::shifted) {
        auto shifts = energy::shift_laws(s, p.phi, p.phi, cfg.shift_constant, rule);
        rep.residuals.insert(rep.residuals.begin(), {"shift_constant", shifts.constant_shift});
    }
    report["job"] = "eval";
    report["n"] = cfg.n;
    report["metric_kind"] = scenarios::to_string(cfg.metric_kind);
    report["epsilon"] = s.epsilon;
    report["min_pivot"] = s.min_pivot;
    report["potential_scale"] = p.scale;
    report["V_omega"] = rep.v_omega;
    report["L_path"] = rep.l_path;
    report["L_explicit"] = rep.l_explicit;
    report["I_direct"] = rep.i_direct;
    report["I_gradient"] = rep.i_gradient;
    report["J_direct"] = rep.j_direct;
    report["J_gradient"] = rep.j_gradient;
    report["Err"] = rep.err;
    report["margins"] = rep.inequalities.margins;
    json rr = json::object();
    for (const auto& row : rep.residuals) rr[row.tag] = row.value;
    report["residuals"] = rr;
    bool ok = rep.inequalities.worst_relative() >= -tolerance_for(cfg, "inequality_margin");
    for (const auto& row : rep.residuals) ok = ok && row.value <= tolerance_for(cfg, row.tag);
    report["pass"] = ok;
    report["wall_ms"] = std::chrono::duration_cast<std::chrono::milliseconds>(
                            std::chrono::steady_clock::now() - t0)
                            .count();
    return ok ? exit_pass : exit_residual_failure;
}

namespace {

struct SweepRow {
    int n, res, quad;
    std::uint64_t seed;
    double residual_path, residual_i, residual_j;
    long long wall_ms;
};

SweepRow sweep_tuple(const JobConfig& cfg, int res, int quad, std::uint64_t seed) {
    auto t0 = std::chrono::steady_clock::now();
    JobConfig local = cfg;
    local.resolutions.assign(static_cast<std::size_t>(2 * cfg.n), 1);
    for (int a = 0; a < std::min(4, 2 * cfg.n); ++a) local.resolutions[a] = res;
    MetricScenario s = build_metric(local, seed);
    QuadratureRule rule = scenarios::gauss_legendre(quad);
    Potential p1 = build_potential(local, s, seed * 1000 + 1);
    Potential p2 = build_potential(local, s, seed * 1000 + 2);
    Rng brng(local.path_seed + seed);
    ScalarField bridge =
        cplx(p1.scale) * scenarios::random_real_field(s.grid, brng, local.potential_amplitude);
    int halvings = 0;
    while (!scenarios::path_admissible(s, PotentialPath::bridge(p1.phi, p2.phi, bridge), rule)) {
        bridge = cplx(0.5) * bridge;
        if (++halvings > 60) throw PositivityUnreachable("sweep: bridge halving exhausted");
    }
    double l_lin = energy::mabuchi_path(s, PotentialPath::linear(p1.phi, p2.phi), rule);
    double l_br = energy::mabuchi_path(s, PotentialPath::bridge(p1.phi, p2.phi, bridge), rule);
    double ri = relative_residual(energy::i_ay(s, p1.phi, EvalMode::direct),
                                  energy::i_ay(s, p1.phi, EvalMode::gradient));
    double rj = relative_residual(energy::j_ay(s, p1.phi, EvalMode::direct),
                                  energy::j_ay(s, p1.phi, EvalMode::gradient));
    auto t1 = std::chrono::steady_clock::now();
    long long ms = std::chrono::duration_cast<std::chrono::milliseconds>(t1 - t0).count();
    return {cfg.n, res, quad, seed, relative_residual(l_lin, l_br), ri, rj, ms};
}

std::string format_double(double v) {
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

} // namespace

int run_sweep(const JobConfig& cfg, std::string& csv) {
    std::vector<int> res = cfg.sweep_resolutions;
    if (res.empty()) res = {spectral::minimal_resolution(cfg.n)};
    std::vector<int> quads = cfg.sweep_quad_orders;
    if (quads.empty()) quads = {cfg.effective_quad_order()};
    std::vector<std::uint64_t> seeds = cfg.sweep_seeds;
    if (seeds.empty()) seeds = {cfg.metric_seed};

    struct Tuple {
        int res, quad;
        std::uint64_t seed;
    };
    std::vector<Tuple> tuples;
    for (int r : res)
        for (int q : quads)
            for (std::uint64_t s : seeds) tuples.push_back({r, q, s});

    std::vector<SweepRow> out(tuples.size());
    unsigned workers = cfg.threads > 0 ? static_cast<unsigned>(cfg.threads)
                                       : std::max(1u, std::thread::hardware_concurrency());
    workers = std::min(workers, static_cast<unsigned>(tuples.size()));
    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
        for (;;) {
            std::size_t i = next.fetch_add(1);
            if (i >= tuples.size()) return;
            out[i] = sweep_tuple(cfg, tuples[i].res, tuples[i].quad, tuples[i].seed);
        }
    };
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(worker);
    for (auto& t : pool) t.join();

    std::ostringstream os;
    os << "n,res,quad,seed,residual_path,residual_I,residual_J,wall_ms\n";
    for (const auto& r : out)
        os << r.n << ',' << r.res << ',' << r.quad << ',' << r.seed << ','
           << format_double(r.residual_path) << ',' << format_double(r.residual_i) << ','
           << format_double(r.residual_j) << ',' << r.wall_ms << '\n';
    csv = os.str();

    double tol = tolerance_for(cfg, "path_independence");
    double tol_dual = tolerance_for(cfg, "i_dual");
    for (const auto& r : out)
        if (r.residual_path > tol || r.residual_i > tol_dual || r.residual_j > tol_dual)
            return exit_residual_failure;
    return exit_pass;
}

json form_to_json(const spectral::Form& form) {
    json out;
    out["degree"] = {form.degree().p, form.degree().q};
    out["grid"] = {{"n", form.grid().n}, {"resolutions", form.grid().resolutions}};
    json comps = json::array();
    for (const auto& [key, field] : form.components()) {
        json c;
        c["I"] = key.first;
        c["J"] = key.second;
        c["bandwidth"] = field.bandwidth();
        c["max_abs"] = field.max_abs();
        json modes = json::object();
        for (const auto& [k, amp] : spectral::field_modes(field)) {
            std::string name;
            for (std::size_t a = 0; a < k.size(); ++a)
                name += (a ? "," : "") + std::to_string(k[a]);
            modes[name] = {amp.real(), amp.imag()};
        }
        c["modes"] = modes;
        comps.push_back(c);
    }
    out["components"] = comps;
    return out;
}

int run_job(const JobConfig& cfg, std::string& rendered) {
    if (cfg.job == JobKind::sweep) return run_sweep(cfg, rendered);
    json report;
    int code = 0;
    switch (cfg.job) {
        case JobKind::coeffs: code = run_coeffs(cfg, report); break;
        case JobKind::eval: code = run_eval(cfg, report); break;
        case JobKind::verify: code = run_verify(cfg, report); break;
        case JobKind::sweep: break;
    }
    rendered = report.dump(2);
    rendered.push_back('\n');
    return code;
}

} // namespace ayfun::harness

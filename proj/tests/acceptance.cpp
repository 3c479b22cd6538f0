// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure.  Tolerances are pinned here and intentionally not configurable.
#include "ayfun/coefficients.hpp"
#include "ayfun/functionals.hpp"
#include "ayfun/harness.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

using namespace ayfun;
using namespace ayfun::energy;
using namespace ayfun::scenarios;
using spectral::cplx;
using spectral::default_grid;
using spectral::Form;
using spectral::GridSpec;
using spectral::IndexSet;
using spectral::ScalarField;

namespace {

int failures = 0;

struct Outcome {
    bool pass = true;
    double worst = 0.0; // largest residual (or most negative margin) seen
    std::string note;

    void residual(double value, double tol) {
        worst = std::max(worst, value);
        if (value > tol) pass = false;
    }
};

void criterion(int index, const std::string& name, const std::function<void(Outcome&)>& body) {
    Outcome out;
    auto t0 = std::chrono::steady_clock::now();
    try {
        body(out);
    } catch (const std::exception& e) {
        out.pass = false;
        out.note = std::string("exception: ") + e.what();
    }
    auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                  std::chrono::steady_clock::now() - t0)
                  .count();
    std::printf("[%s] criterion %2d: %-38s worst=%.3e  %s(%lld ms)\n",
                out.pass ? "PASS" : "FAIL", index, name.c_str(), out.worst,
                out.note.empty() ? "" : (out.note + " ").c_str(),
                static_cast<long long>(ms));
    std::fflush(stdout);
    if (!out.pass) ++failures;
}

MetricScenario nk(int n, std::uint64_t seed) {
    return nonkaehler_metric(n, default_grid(n), 0.05, seed);
}

ScalarField admissible_psi(const MetricScenario& s, Rng& rng, double amp) {
    ScalarField psi = random_real_field(s.grid, rng, amp);
    while (!spectral::is_positive(s.omega + i_del_delbar(s.grid, psi)).positive)
        psi = cplx(0.5) * psi;
    return psi;
}

// Independent seeds run concurrently; results are merged in seed order so
// the report is identical to a sequential run.
std::vector<std::vector<double>> per_seed(int count,
                                          const std::function<std::vector<double>(std::uint64_t)>& fn) {
    std::vector<std::vector<double>> results(count);
    std::atomic<int> next{0};
    unsigned workers = std::min<unsigned>(std::max(1u, std::thread::hardware_concurrency()),
                                          static_cast<unsigned>(count));
    std::vector<std::thread> pool;
    std::mutex fail_mutex;
    std::string first_error;
    for (unsigned w = 0; w < workers; ++w)
        pool.emplace_back([&]() {
            for (;;) {
                int i = next.fetch_add(1);
                if (i >= count) return;
                try {
                    results[i] = fn(static_cast<std::uint64_t>(i + 1));
                } catch (const std::exception& e) {
                    std::lock_guard<std::mutex> lock(fail_mutex);
                    if (first_error.empty()) first_error = e.what();
                }
            }
        });
    for (auto& t : pool) t.join();
    if (!first_error.empty()) throw Error(first_error);
    return results;
}

} // namespace

int main() {
    // 1. exact coefficient algebra, n = 3..12, under one second
    criterion(1, "exact constants (n=3..12)", [](Outcome& out) {
        auto t0 = std::chrono::steady_clock::now();
        for (int n = 3; n <= 12; ++n) {
            auto k = exact::ay_constants(n); // throws unless solve == closed forms, residuals 0
            for (const auto& r : exact::ay_equation_residuals(n, k))
                if (r != 0) out.pass = false;
            if (n >= 4) {
                for (int i = 2; i <= n - 1; ++i)
                    if (!(exact::recursion_expand(n, i) == exact::closed_form(n, i)))
                        out.pass = false;
                if (!exact::substitute_c2(exact::closed_form(n, n - 1), exact::c2_solution(n))
                         .is_zero())
                    out.pass = false;
            }
            if (!exact::scalar_identity_suite(n).pass) out.pass = false;
        }
        if (!exact::c2_solution(3).is_zero()) out.pass = false;
        auto w = exact::mabuchi_weights(4);
        using exact::GaussianRational;
        using exact::Rational;
        std::vector<GaussianRational> expect = {
            {Rational(0), Rational(-6)}, {Rational(0), Rational(6)}, {Rational(-4)},
            {Rational(-4)},              {Rational(1)},              {Rational(1)}};
        for (std::size_t j = 0; j < expect.size(); ++j)
            if (!(w[j] == expect[j])) out.pass = false;
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        out.note = "runtime " + std::to_string(secs) + " s";
        if (secs >= 1.0) out.pass = false;
    });

    // 2. path independence, 10 seeded non-Kahler scenarios per n in {2,3}
    for (int n : {2, 3}) {
        criterion(2, "path independence n=" + std::to_string(n), [n](Outcome& out) {
            auto t0 = std::chrono::steady_clock::now();
            auto rule = gauss_legendre(n + 3);
            auto results = per_seed(10, [n, &rule](std::uint64_t seed) {
                auto s = nk(n, seed);
                auto p1 = admissible_potential(s, 1000 * seed + 1, 0.05);
                auto p2 = admissible_potential(s, 1000 * seed + 2, 0.05);
                Rng rng(9000 + seed);
                ScalarField bridge = cplx(p1.scale) * random_real_field(s.grid, rng, 0.05);
                while (!path_admissible(s, PotentialPath::bridge(p1.phi, p2.phi, bridge), rule))
                    bridge = cplx(0.5) * bridge;
                double lin = mabuchi_path(s, PotentialPath::linear(p1.phi, p2.phi), rule);
                double br = mabuchi_path(s, PotentialPath::bridge(p1.phi, p2.phi, bridge), rule);
                return std::vector<double>{relative_residual(lin, br)};
            });
            for (const auto& r : results)
                for (double v : r) out.residual(v, 1e-8);
            double secs =
                std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
            if (secs > 120.0) out.pass = false;
        });
    }

    // 3 + 4. explicit formula and the dual closed forms, 10 seeds per n in {2,3,4}
    for (int n : {2, 3, 4}) {
        criterion(3, "explicit formula n=" + std::to_string(n), [n](Outcome& out) {
            auto rule = gauss_legendre(n + 3);
            auto results = per_seed(10, [n, &rule](std::uint64_t seed) {
                auto s = nk(n, 20 + seed);
                auto p = admissible_potential(s, 2000 * seed + 1, 0.05);
                ScalarField zero(s.grid, 0.0);
                double ray = mabuchi_path(s, PotentialPath::linear(zero, p.phi), rule);
                return std::vector<double>{relative_residual(ray, mabuchi_explicit(s, p.phi))};
            });
            for (const auto& r : results)
                for (double v : r) out.residual(v, 1e-9);
        });
        criterion(4, "dual closed forms n=" + std::to_string(n), [n](Outcome& out) {
            auto results = per_seed(10, [n](std::uint64_t seed) {
                auto s = nk(n, 20 + seed);
                auto p = admissible_potential(s, 2000 * seed + 1, 0.05);
                return std::vector<double>{
                    relative_residual(i_ay(s, p.phi, EvalMode::direct),
                                      i_ay(s, p.phi, EvalMode::gradient)),
                    relative_residual(j_ay(s, p.phi, EvalMode::direct),
                                      j_ay(s, p.phi, EvalMode::gradient))};
            });
            for (const auto& r : results)
                for (double v : r) out.residual(v, 1e-9);
        });
    }

    // 5. inequality margins on 20 random admissible scenarios per n in {2,3,4}
    for (int n : {2, 3, 4}) {
        criterion(5, "inequalities n=" + std::to_string(n), [n](Outcome& out) {
            double worst_margin = 0.0;
            auto results = per_seed(20, [n](std::uint64_t seed) {
                auto s = nk(n, 40 + seed);
                auto p = admissible_potential(s, 3000 * seed + 1, 0.1);
                return std::vector<double>{inequality_report(s, p.phi).worst_relative()};
            });
            for (const auto& r : results) worst_margin = std::min(worst_margin, r[0]);
            out.worst = -worst_margin;
            if (worst_margin < -1e-10) out.pass = false;
        });
    }

    // 6. section-2 identity web, n in {4,5}, 5 seeds each
    for (int n : {4, 5}) {
        criterion(6, "proof identities n=" + std::to_string(n), [n](Outcome& out) {
            auto results = per_seed(5, [n](std::uint64_t seed) {
                auto s = nk(n, 60 + seed);
                Rng rng(7000 + 13 * seed + n);
                ScalarField psi = admissible_psi(s, rng, 0.02);
                ScalarField u = random_real_field(s.grid, rng, 0.4);
                ScalarField v = random_real_field(s.grid, rng, 0.4);
                std::vector<double> vals;
                for (const auto& r : proof_identity_suite_s2(s, psi, u, v).residuals)
                    vals.push_back(r.value);
                return vals;
            });
            for (const auto& r : results)
                for (double v : r) out.residual(v, 1e-8);
        });
    }

    // 7. section-3 / appendix-A identities, n in {3,4}, 5 seeds each
    for (int n : {3, 4}) {
        criterion(7, "intermediate identities n=" + std::to_string(n), [n](Outcome& out) {
            auto rule = gauss_legendre(n + 3);
            auto results = per_seed(5, [n, &rule](std::uint64_t seed) {
                auto s = nk(n, 80 + seed);
                auto p = admissible_potential(s, 4000 * seed + 1, 0.05);
                std::vector<double> vals;
                for (const auto& r : identity_suite_s3(s, p.phi, rule)) vals.push_back(r.value);
                return vals;
            });
            for (const auto& r : results)
                for (double v : r) out.residual(v, 1e-9);
        });
    }

    // 8. cocycle condition and shift laws
    criterion(8, "cocycle and shift laws", [](Outcome& out) {
        for (int n : {2, 3}) {
            auto rule = gauss_legendre(n + 3);
            auto s = nk(n, 90 + n);
            auto p1 = admissible_potential(s, 5001, 0.05);
            auto p2 = admissible_potential(s, 5002, 0.05);
            auto p3 = admissible_potential(s, 5003, 0.05);
            double l12 = mabuchi_two_point(s, p1.phi, p2.phi, rule);
            double l21 = mabuchi_two_point(s, p2.phi, p1.phi, rule);
            out.residual(std::abs(l12 + l21) / (1.0 + std::abs(l12) + std::abs(l21)), 1e-8);
            out.residual(cocycle_check(s, p1.phi, p2.phi, p3.phi, rule), 1e-8);
            auto sh = shift_laws(s, p1.phi, p2.phi, 0.7, rule);
            out.residual(sh.constant_shift, 1e-9);
            out.residual(sh.offset_shift, 1e-9);

            // Kahler specialization: L(phi, phi + C) = C exactly
            auto flat = flat_metric(n, default_grid(n));
            auto q = admissible_potential(flat, 5004, 0.05);
            ScalarField qc = q.phi;
            for (auto& vv : qc.values()) vv += 0.7;
            double l = mabuchi_two_point(flat, q.phi, qc, rule);
            out.residual(relative_residual(l, 0.7), 1e-10);
        }
    });

    // 9. Kahler reduction of every correction term
    criterion(9, "kahler reduction", [](Outcome& out) {
        for (int n : {2, 3}) {
            auto rule = gauss_legendre(n + 3);
            auto flat = flat_metric(n, default_grid(n));
            auto p = admissible_potential(flat, 6001, 0.05);
            for (const auto& r : kahler_reduction_suite(flat, p.phi, rule))
                out.residual(r.value, 1e-12);
            auto kp = kaehler_perturbed_metric(n, default_grid(n), 0.02, 6002);
            auto q = admissible_potential(kp, 6003, 0.05);
            for (const auto& r : kahler_reduction_suite(kp, q.phi, rule))
                out.residual(r.value, 1e-12);
        }
    });

    // 10. calculus substrate
    criterion(10, "calculus substrate", [](Outcome& out) {
        for (int n : {2, 3, 4}) {
            GridSpec g = default_grid(n);
            Rng rng(37 + n);
            Form a(g, {1, 0});
            ScalarField f1 = random_real_field(g, rng);
            ScalarField f2 = random_real_field(g, rng);
            a.add_component({{1}, {}}, f1 + cplx(0.0, 1.0) * f2);
            if (n >= 2) a.add_component({{2}, {}}, random_real_field(g, rng) + cplx(0.0, 0.3) * f1);
            double scale = 1.0 + a.max_component_abs();
            out.residual(del(del(a)).max_component_abs() / scale, 1e-12);
            out.residual(delbar(delbar(a)).max_component_abs() / scale, 1e-12);
            out.residual((del(delbar(a)) + delbar(del(a))).max_component_abs() / scale, 1e-12);

            IndexSet full, partial;
            for (int j = 1; j <= n; ++j) full.push_back(j);
            for (int j = 2; j <= n; ++j) partial.push_back(j);
            Form beta(g, {n - 1, n});
            beta.add_component({partial, full}, f1 + cplx(0.0, 1.0) * f2);
            out.residual(std::abs(integrate_top(del(beta))), 1e-12);

            auto flat = flat_metric(n, g);
            double expect = std::pow(2.0, n) * std::tgamma(n + 1.0);
            out.residual(std::abs(integrate_top(form_pow(flat.omega, n)) - expect) / expect,
                         1e-12);
        }
    });

    std::printf("%s: %d criterion group(s) failed\n", failures == 0 ? "ACCEPTANCE PASS" : "ACCEPTANCE FAIL",
                failures);
    return failures == 0 ? 0 : 1;
}

#include "ayfun/scenario.hpp"

#include <algorithm>
#include <cmath>

namespace ayfun::scenarios {

using spectral::ComponentKey;
using spectral::cplx;
using spectral::ModeIndex;

std::string to_string(MetricKind k) {
    switch (k) {
        case MetricKind::flat: return "flat";
        case MetricKind::kaehler_perturbed: return "kaehler_perturbed";
        case MetricKind::nonkaehler_perturbed: return "nonkaehler_perturbed";
    }
    return "?";
}

MetricKind metric_kind_from_string(const std::string& s) {
    if (s == "flat") return MetricKind::flat;
    if (s == "kaehler_perturbed") return MetricKind::kaehler_perturbed;
    if (s == "nonkaehler_perturbed") return MetricKind::nonkaehler_perturbed;
    throw ConfigError("unknown metric.kind: " + s);
}

std::string to_string(PathKind k) {
    switch (k) {
        case PathKind::linear: return "linear";
        case PathKind::bridge: return "bridge";
        case PathKind::shifted: return "shifted";
    }
    return "?";
}

PathKind path_kind_from_string(const std::string& s) {
    if (s == "linear") return PathKind::linear;
    if (s == "bridge") return PathKind::bridge;
    if (s == "shifted") return PathKind::shifted;
    throw ConfigError("unknown path.kind: " + s);
}

PotentialPath PotentialPath::linear(ScalarField a, ScalarField b) {
    return {PathKind::linear, std::move(a), std::move(b), std::nullopt};
}

PotentialPath PotentialPath::bridge(ScalarField a, ScalarField b, ScalarField mid) {
    return {PathKind::bridge, std::move(a), std::move(b), std::move(mid)};
}

PotentialPath PotentialPath::shifted(const ScalarField& a, double c) {
    ScalarField b = a;
    for (auto& v : b.values()) v += c;
    return {PathKind::shifted, a, std::move(b), std::nullopt};
}

std::pair<ScalarField, ScalarField> PotentialPath::sample(double t) const {
    ScalarField phi = cplx(1.0 - t) * phi_start + cplx(t) * phi_end;
    ScalarField vel = phi_end - phi_start;
    if (kind == PathKind::bridge && midpoint) {
        phi += cplx(t * (1.0 - t)) * *midpoint;
        vel += cplx(1.0 - 2.0 * t) * *midpoint;
    }
    return {std::move(phi), std::move(vel)};
}

ScalarField random_real_field(const GridSpec& grid, Rng& rng, double amplitude) {
    std::vector<int> active;
    for (std::size_t a = 0; a < grid.resolutions.size(); ++a)
        if (grid.resolutions[a] > 1) active.push_back(static_cast<int>(a));
    std::map<ModeIndex, cplx> modes;
    ModeIndex zero(grid.resolutions.size(), 0);
    // enumerate k in {-1,0,1}^active lexicographically; one draw per
    // conjugate pair (the first nonzero entry positive)
    std::vector<int> k(active.size(), -1);
    bool done = active.empty();
    while (!done) {
        auto first_nonzero = std::find_if(k.begin(), k.end(), [](int v) { return v != 0; });
        if (first_nonzero != k.end() && *first_nonzero > 0) {
            cplx amp = amplitude * cplx(rng.symmetric(), rng.symmetric());
            ModeIndex plus = zero, minus = zero;
            for (std::size_t a = 0; a < active.size(); ++a) {
                plus[active[a]] = k[a];
                minus[active[a]] = -k[a];
            }
            modes[plus] += amp;
            modes[minus] += std::conj(amp);
        }
        int a = static_cast<int>(k.size()) - 1;
        for (; a >= 0; --a) {
            if (++k[a] <= 1) break;
            k[a] = -1;
        }
        done = a < 0;
    }
    modes[zero] += amplitude * rng.symmetric();
    return make_field(grid, modes);
}

namespace {

ScalarField random_complex_field(const GridSpec& grid, Rng& rng, double amplitude) {
    ScalarField re = random_real_field(grid, rng, amplitude);
    ScalarField im = random_real_field(grid, rng, amplitude);
    return re + cplx(0.0, 1.0) * im;
}

// random real (1,1)-form: i * h with h pointwise Hermitian, bandwidth 1
Form random_real_11(const GridSpec& grid, Rng& rng) {
    int n = grid.n;
    Form rho(grid, {1, 1});
    for (int j = 1; j <= n; ++j) {
        for (int k = j; k <= n; ++k) {
            if (j == k) {
                ScalarField g = random_real_field(grid, rng);
                rho.add_component({{j}, {j}}, cplx(0.0, 1.0) * g);
            } else {
                ScalarField g = random_complex_field(grid, rng, 0.7);
                rho.add_component({{j}, {k}}, cplx(0.0, 1.0) * g);
                rho.add_component({{k}, {j}}, cplx(0.0, 1.0) * conj(g));
            }
        }
    }
    return rho;
}

Form flat_form(const GridSpec& grid) {
    Form om(grid, {1, 1});
    for (int j = 1; j <= grid.n; ++j)
        om.add_component({{j}, {j}}, ScalarField(grid, cplx(0.0, 1.0)));
    return om;
}

} // namespace

std::shared_ptr<const ScenarioGeometry> make_geometry(const GridSpec& grid, const Form& omega) {
    auto geo = std::make_shared<ScenarioGeometry>();
    geo->del_omega = del(omega);
    geo->delbar_omega = delbar(omega);
    geo->omega_pow.push_back(spectral::scalar_form(grid, ScalarField(grid, 1.0)));
    for (int k = 1; k <= grid.n; ++k)
        geo->omega_pow.push_back(wedge(geo->omega_pow.back(), omega));
    spectral::cplx v = integrate_top(geo->omega_pow.back());
    if (std::abs(v.imag()) > 1e-10 * (1.0 + std::abs(v)))
        throw Error("make_geometry: volume has an imaginary residue");
    geo->volume = v.real();
    return geo;
}

MetricScenario flat_metric(int n, const GridSpec& grid) {
    if (grid.n != n) throw ConfigError("flat_metric: grid dimension mismatch");
    MetricScenario s;
    s.grid = grid;
    s.omega = flat_form(grid);
    s.kind = MetricKind::flat;
    s.min_pivot = spectral::is_positive(s.omega).min_pivot;
    s.geometry = make_geometry(grid, s.omega);
    return s;
}

MetricScenario nonkaehler_metric(int n, const GridSpec& grid, double epsilon,
                                 std::uint64_t seed) {
    if (grid.n != n) throw ConfigError("nonkaehler_metric: grid dimension mismatch");
    if (epsilon <= 0.0) throw ConfigError("nonkaehler_metric: epsilon must be positive");
    Rng rng(seed);
    Form flat = flat_form(grid);
    Form rho = random_real_11(grid, rng);
    // degenerate draw: del(rho) too small to certify non-closedness after scaling
    for (int attempt = 0; attempt < 10 && del(rho).max_component_abs() < 0.1; ++attempt)
        rho = random_real_11(grid, rng);

    double eps = epsilon;
    for (int h = 0; h <= 40; ++h) {
        Form cand = flat + cplx(eps) * rho;
        auto rep = spectral::is_positive(cand);
        if (rep.positive) {
            MetricScenario s;
            s.grid = grid;
            s.omega = std::move(cand);
            s.kind = MetricKind::nonkaehler_perturbed;
            s.epsilon = eps;
            s.seed = seed;
            s.min_pivot = rep.min_pivot;
            s.geometry = make_geometry(grid, s.omega);
            if (s.geometry->del_omega.max_component_abs() < eps / 10.0)
                throw Error("nonkaehler_metric: perturbation closed, cannot certify");
            return s;
        }
        eps *= 0.5;
    }
    throw PositivityUnreachable("nonkaehler_metric: halving exhausted");
}

MetricScenario kaehler_perturbed_metric(int n, const GridSpec& grid, double epsilon,
                                        std::uint64_t seed) {
    if (grid.n != n) throw ConfigError("kaehler_perturbed_metric: grid dimension mismatch");
    Rng rng(seed);
    Form flat = flat_form(grid);
    ScalarField rho = random_real_field(grid, rng);
    double eps = epsilon;
    for (int h = 0; h <= 40; ++h) {
        Form cand = flat + cplx(eps) * i_del_delbar(grid, rho);
        auto rep = spectral::is_positive(cand);
        if (rep.positive) {
            MetricScenario s;
            s.grid = grid;
            s.omega = std::move(cand);
            s.kind = MetricKind::kaehler_perturbed;
            s.epsilon = eps;
            s.seed = seed;
            s.min_pivot = rep.min_pivot;
            s.geometry = make_geometry(grid, s.omega);
            return s;
        }
        eps *= 0.5;
    }
    throw PositivityUnreachable("kaehler_perturbed_metric: halving exhausted");
}

Potential admissible_potential(const MetricScenario& scenario, const ScalarField& candidate) {
    double scale = 1.0;
    for (int h = 0; h <= 40; ++h) {
        ScalarField phi = cplx(scale) * candidate;
        Form om_phi = scenario.omega + i_del_delbar(scenario.grid, phi);
        if (spectral::is_positive(om_phi).positive) return {std::move(phi), scale};
        scale *= 0.5;
    }
    throw PositivityUnreachable("admissible_potential: halving exhausted");
}

Potential admissible_potential(const MetricScenario& scenario, std::uint64_t seed,
                               double amplitude) {
    Rng rng(seed);
    return admissible_potential(scenario, random_real_field(scenario.grid, rng, amplitude));
}

bool path_admissible(const MetricScenario& scenario, const PotentialPath& path,
                     const QuadratureRule& rule) {
    std::vector<double> ts = rule.nodes;
    ts.push_back(0.0);
    ts.push_back(1.0);
    for (double t : ts) {
        auto [phi, vel] = path.sample(t);
        Form om_phi = scenario.omega + i_del_delbar(scenario.grid, phi);
        if (!spectral::is_positive(om_phi).positive) return false;
    }
    return true;
}

} // namespace ayfun::scenarios

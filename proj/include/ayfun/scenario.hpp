#pragma once

#include "ayfun/form.hpp"
#include "ayfun/quadrature.hpp"
#include "ayfun/rng.hpp"

#include <cstdint>
#include <memory>
#include <optional>
#include <string>

namespace ayfun::scenarios {

using spectral::Form;
using spectral::GridSpec;
using spectral::ScalarField;

enum class MetricKind { flat, kaehler_perturbed, nonkaehler_perturbed };

std::string to_string(MetricKind k);
MetricKind metric_kind_from_string(const std::string& s);

// Derived quantities every functional evaluation needs; computed once per
// scenario and shared (immutable).
struct ScenarioGeometry {
    Form del_omega;
    Form delbar_omega;
    std::vector<Form> omega_pow; // omega^0 .. omega^n
    double volume = 0.0;
};

std::shared_ptr<const ScenarioGeometry> make_geometry(const GridSpec& grid, const Form& omega);

// A validated Hermitian (1,1)-form on the torus together with how it was made.
struct MetricScenario {
    GridSpec grid;
    Form omega;
    MetricKind kind = MetricKind::flat;
    double epsilon = 0.0; // final perturbation size after positivity halving
    std::uint64_t seed = 0;
    double min_pivot = 0.0;
    std::shared_ptr<const ScenarioGeometry> geometry; // set by the builders
};

struct Potential {
    ScalarField phi;
    double scale = 1.0; // halving factor applied to the candidate
};

enum class PathKind { linear, bridge, shifted };

std::string to_string(PathKind k);
PathKind path_kind_from_string(const std::string& s);

// Smooth path in P_omega with closed-form parameterization:
//   linear : phi_t = (1-t) phi1 + t phi2
//   bridge : linear plus t(1-t) midpoint
//   shifted: linear from phi1 to phi1 + C
struct PotentialPath {
    PathKind kind = PathKind::linear;
    ScalarField phi_start;
    ScalarField phi_end;
    std::optional<ScalarField> midpoint;

    static PotentialPath linear(ScalarField a, ScalarField b);
    static PotentialPath bridge(ScalarField a, ScalarField b, ScalarField mid);
    static PotentialPath shifted(const ScalarField& a, double c);

    // (phi_t, dphi_t/dt)
    std::pair<ScalarField, ScalarField> sample(double t) const;
};

// Bandwidth-1 random real field from conjugate mode pairs on the active axes
// (resolution > 1), deterministic in the rng stream.
ScalarField random_real_field(const GridSpec& grid, Rng& rng, double amplitude = 1.0);

MetricScenario flat_metric(int n, const GridSpec& grid);

// omega = flat + eps * rho with rho a random real (1,1)-form; eps is halved
// (at most 40 times) until positivity holds.  Requires eps > 0 and verifies
// max |del omega| component >= eps/10.
MetricScenario nonkaehler_metric(int n, const GridSpec& grid, double epsilon, std::uint64_t seed);

// omega = flat + eps * i del delbar rho: closed by construction.
MetricScenario kaehler_perturbed_metric(int n, const GridSpec& grid, double epsilon,
                                        std::uint64_t seed);

// Scales the candidate by geometric halving until omega + i del delbar phi
// is positive.
Potential admissible_potential(const MetricScenario& scenario, const ScalarField& candidate);
Potential admissible_potential(const MetricScenario& scenario, std::uint64_t seed,
                               double amplitude = 0.05);

// Positivity of omega_{phi_t} at every quadrature node.
bool path_admissible(const MetricScenario& scenario, const PotentialPath& path,
                     const QuadratureRule& rule);

} // namespace ayfun::scenarios

#include "ayfun/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace ayfun::scenarios {

namespace {

// P_q(x) and P_q'(x) by the three-term recurrence
std::pair<double, double> legendre(int q, double x) {
    double p0 = 1.0, p1 = x;
    for (int k = 2; k <= q; ++k) {
        double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
        p0 = p1;
        p1 = p2;
    }
    double dp = q * (x * p1 - p0) / (x * x - 1.0);
    return {p1, dp};
}

} // namespace

QuadratureRule gauss_legendre(int q) {
    if (q < 1) throw std::invalid_argument("gauss_legendre: order >= 1 required");
    QuadratureRule rule;
    rule.order = q;
    rule.nodes.resize(q);
    rule.weights.resize(q);
    if (q == 1) {
        rule.nodes[0] = 0.5;
        rule.weights[0] = 1.0;
        return rule;
    }
    for (int i = 0; i < q; ++i) {
        // Chebyshev-angle initial guess, then Newton on [-1,1]
        double x = std::cos(std::numbers::pi * (i + 0.75) / (q + 0.5));
        for (int it = 0; it < 100; ++it) {
            auto [p, dp] = legendre(q, x);
            double dx = p / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        auto [p, dp] = legendre(q, x);
        (void)p;
        double w = 2.0 / ((1.0 - x * x) * dp * dp);
        rule.nodes[q - 1 - i] = 0.5 * (x + 1.0); // map to [0,1], ascending
        rule.weights[q - 1 - i] = 0.5 * w;
    }
    return rule;
}

} // namespace ayfun::scenarios

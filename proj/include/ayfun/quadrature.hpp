#pragma once

#include <vector>

namespace ayfun::scenarios {

// Gauss-Legendre rule mapped to [0,1]; exact for polynomial degree <= 2q-1,
// weights positive and summing to 1.
struct QuadratureRule {
    int order = 0;
    std::vector<double> nodes;
    std::vector<double> weights;
};

QuadratureRule gauss_legendre(int q);

} // namespace ayfun::scenarios

#pragma once

#include "ayfun/errors.hpp"

#include <cstddef>
#include <numeric>
#include <vector>

namespace ayfun::spectral {

// Periodic grid on the real 2n-torus under C^n/Z^{2n}.  Axis order is
// (x_1, y_1, ..., x_n, y_n), period 1 per axis.  An axis with resolution 1
// carries only constant fields.
struct GridSpec {
    int n = 0;                    // complex dimension
    std::vector<int> resolutions; // 2n entries

    GridSpec() = default;
    GridSpec(int n_, std::vector<int> res) : n(n_), resolutions(std::move(res)) {
        if (n < 1 || resolutions.size() != static_cast<std::size_t>(2 * n))
            throw ConfigError("GridSpec: need 2n positive resolutions");
        for (int m : resolutions)
            if (m < 1) throw ConfigError("GridSpec: resolutions must be >= 1");
    }

    std::size_t points() const {
        std::size_t p = 1;
        for (int m : resolutions) p *= static_cast<std::size_t>(m);
        return p;
    }

    friend bool operator==(const GridSpec& a, const GridSpec& b) {
        return a.n == b.n && a.resolutions == b.resolutions;
    }
};

// Grid with the first two complex coordinates active at resolution m and the
// rest constant; products of up to n+2 bandwidth-1 factors stay alias-free
// when m >= 2(n+2)+3.
inline GridSpec default_grid(int n, int m = 0) {
    if (m == 0) m = 2 * (n + 2) + 3;
    std::vector<int> res(static_cast<std::size_t>(2 * n), 1);
    for (int a = 0; a < std::min(4, 2 * n); ++a) res[a] = m;
    return {n, std::move(res)};
}

inline int minimal_resolution(int n) { return 2 * (n + 2) + 3; }

} // namespace ayfun::spectral

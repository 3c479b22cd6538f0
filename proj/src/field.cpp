#include "ayfun/field.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace ayfun::spectral {

namespace {
constexpr double two_pi = 2.0 * std::numbers::pi;
}

ScalarField::ScalarField(GridSpec grid, cplx constant)
    : grid_(std::move(grid)),
      values_(grid_.points(), constant),
      bandwidth_(static_cast<std::size_t>(2 * grid_.n), 0) {}

ScalarField::ScalarField(GridSpec grid, std::vector<cplx> values, std::vector<int> bandwidth)
    : grid_(std::move(grid)), values_(std::move(values)), bandwidth_(std::move(bandwidth)) {
    if (values_.size() != grid_.points() || bandwidth_.size() != grid_.resolutions.size())
        throw Error("ScalarField: inconsistent sizes");
}

bool ScalarField::constant_zero() const {
    return std::all_of(values_.begin(), values_.end(), [](cplx v) { return v == cplx(0.0); });
}

double ScalarField::max_abs() const {
    double m = 0.0;
    for (cplx v : values_) m = std::max(m, std::abs(v));
    return m;
}

ScalarField& ScalarField::operator+=(const ScalarField& o) {
    if (!(grid_ == o.grid_)) throw Error("ScalarField: grid mismatch");
    for (std::size_t i = 0; i < values_.size(); ++i) values_[i] += o.values_[i];
    for (std::size_t a = 0; a < bandwidth_.size(); ++a)
        bandwidth_[a] = std::max(bandwidth_[a], o.bandwidth_[a]);
    return *this;
}

ScalarField& ScalarField::operator-=(const ScalarField& o) {
    if (!(grid_ == o.grid_)) throw Error("ScalarField: grid mismatch");
    for (std::size_t i = 0; i < values_.size(); ++i) values_[i] -= o.values_[i];
    for (std::size_t a = 0; a < bandwidth_.size(); ++a)
        bandwidth_[a] = std::max(bandwidth_[a], o.bandwidth_[a]);
    return *this;
}

ScalarField operator*(cplx s, ScalarField f) {
    for (cplx& v : f.values_) v *= s;
    return f;
}

ScalarField make_field(const GridSpec& grid, const std::map<ModeIndex, cplx>& modes) {
    const auto& res = grid.resolutions;
    std::vector<int> bw(res.size(), 0);
    for (const auto& [k, amp] : modes) {
        if (k.size() != res.size()) throw Error("make_field: wrong mode arity");
        for (std::size_t a = 0; a < res.size(); ++a) {
            if (2 * std::abs(k[a]) >= res[a])
                throw AliasRisk("make_field: mode exceeds grid Nyquist range");
            bw[a] = std::max(bw[a], std::abs(k[a]));
        }
    }
    std::vector<cplx> vals(grid.points(), 0.0);
    // per-axis phase tables, then one pass over the grid per mode
    for (const auto& [k, amp] : modes) {
        std::vector<std::vector<cplx>> phase(res.size());
        for (std::size_t a = 0; a < res.size(); ++a) {
            phase[a].resize(res[a]);
            for (int x = 0; x < res[a]; ++x) {
                double arg = two_pi * k[a] * static_cast<double>(x) / res[a];
                phase[a][x] = {std::cos(arg), std::sin(arg)};
            }
        }
        std::vector<int> idx(res.size(), 0);
        for (std::size_t p = 0; p < vals.size(); ++p) {
            cplx e = amp;
            for (std::size_t a = 0; a < res.size(); ++a) e *= phase[a][idx[a]];
            vals[p] += e;
            for (int a = static_cast<int>(res.size()) - 1; a >= 0; --a) {
                if (++idx[a] < res[a]) break;
                idx[a] = 0;
            }
        }
    }
    return {grid, std::move(vals), std::move(bw)};
}

ScalarField conj(const ScalarField& f) {
    std::vector<cplx> vals(f.values().size());
    for (std::size_t i = 0; i < vals.size(); ++i) vals[i] = std::conj(f.values()[i]);
    return {f.grid(), std::move(vals), f.bandwidth()};
}

ScalarField multiply(const ScalarField& f, const ScalarField& g) {
    if (!(f.grid() == g.grid())) throw Error("multiply: grid mismatch");
    const auto& res = f.grid().resolutions;
    std::vector<int> bw(res.size());
    for (std::size_t a = 0; a < res.size(); ++a) {
        bw[a] = f.bandwidth()[a] + g.bandwidth()[a];
        if (res[a] > 1 && 2 * bw[a] >= res[a])
            throw AliasRisk("multiply: combined bandwidth " + std::to_string(bw[a]) +
                            " needs resolution > " + std::to_string(2 * bw[a]) + " on axis " +
                            std::to_string(a));
        if (res[a] == 1 && bw[a] != 0) throw AliasRisk("multiply: nonconstant on unit axis");
    }
    std::vector<cplx> vals(f.values().size());
    for (std::size_t i = 0; i < vals.size(); ++i) vals[i] = f.values()[i] * g.values()[i];
    return {f.grid(), std::move(vals), std::move(bw)};
}

namespace {

// out[x] = sum_{x'} D[x][x'] f[x'] along one axis, D = inverse-DFT . (2 pi i nu) . DFT
std::vector<cplx> derivative_matrix(int m) {
    std::vector<cplx> D(static_cast<std::size_t>(m) * m, 0.0);
    for (int k = 0; k < m; ++k) {
        int nu = (2 * k <= m - 1) ? k : k - m; // signed frequency
        cplx factor = cplx(0.0, two_pi * nu) / static_cast<double>(m);
        for (int x = 0; x < m; ++x)
            for (int xp = 0; xp < m; ++xp) {
                double arg = two_pi * k * static_cast<double>(x - xp) / m;
                D[static_cast<std::size_t>(x) * m + xp] += factor * cplx(std::cos(arg), std::sin(arg));
            }
    }
    return D;
}

ScalarField axis_derivative(const ScalarField& f, int axis) {
    const auto& res = f.grid().resolutions;
    int m = res[axis];
    // constant along this axis by the bandwidth contract: derivative is exactly zero
    if (m == 1 || f.bandwidth()[axis] == 0) return ScalarField(f.grid(), 0.0);
    auto D = derivative_matrix(m);
    std::size_t stride = 1;
    for (std::size_t a = axis + 1; a < res.size(); ++a) stride *= static_cast<std::size_t>(res[a]);
    std::size_t block = stride * static_cast<std::size_t>(m);
    std::vector<cplx> out(f.values().size(), 0.0);
    const auto& in = f.values();
    std::vector<cplx> line(m), dline(m);
    for (std::size_t base = 0; base < in.size(); base += block) {
        for (std::size_t off = 0; off < stride; ++off) {
            for (int x = 0; x < m; ++x) line[x] = in[base + off + stride * x];
            for (int x = 0; x < m; ++x) {
                cplx acc = 0.0;
                const cplx* row = &D[static_cast<std::size_t>(x) * m];
                for (int xp = 0; xp < m; ++xp) acc += row[xp] * line[xp];
                dline[x] = acc;
            }
            for (int x = 0; x < m; ++x) out[base + off + stride * x] = dline[x];
        }
    }
    return {f.grid(), std::move(out), f.bandwidth()};
}

} // namespace

ScalarField wirtinger_d(const ScalarField& f, int j) {
    if (j < 1 || j > f.grid().n) throw Error("wirtinger_d: index out of range");
    ScalarField dx = axis_derivative(f, 2 * (j - 1));
    ScalarField dy = axis_derivative(f, 2 * (j - 1) + 1);
    return 0.5 * dx + cplx(0.0, -0.5) * dy;
}

ScalarField wirtinger_dbar(const ScalarField& f, int j) {
    if (j < 1 || j > f.grid().n) throw Error("wirtinger_dbar: index out of range");
    ScalarField dx = axis_derivative(f, 2 * (j - 1));
    ScalarField dy = axis_derivative(f, 2 * (j - 1) + 1);
    return 0.5 * dx + cplx(0.0, 0.5) * dy;
}

cplx pairwise_sum(const cplx* data, std::size_t count) {
    if (count <= 8) {
        cplx acc = 0.0;
        for (std::size_t i = 0; i < count; ++i) acc += data[i];
        return acc;
    }
    std::size_t half = count / 2;
    return pairwise_sum(data, half) + pairwise_sum(data + half, count - half);
}

cplx mean(const ScalarField& f) {
    return pairwise_sum(f.values().data(), f.values().size()) /
           static_cast<double>(f.values().size());
}

std::map<ModeIndex, cplx> field_modes(const ScalarField& f) {
    const auto& res = f.grid().resolutions;
    double cutoff = 1e-14 * std::max(1.0, f.max_abs());
    std::map<ModeIndex, cplx> out;
    ModeIndex k(res.size());
    for (std::size_t a = 0; a < res.size(); ++a) k[a] = -f.bandwidth()[a];
    for (;;) {
        // amplitude = <f, e^{2 pi i k.x}> over the grid
        std::vector<cplx> prod(f.values().size());
        std::vector<int> idx(res.size(), 0);
        for (std::size_t p = 0; p < prod.size(); ++p) {
            double arg = 0.0;
            for (std::size_t a = 0; a < res.size(); ++a)
                arg += two_pi * k[a] * static_cast<double>(idx[a]) / res[a];
            prod[p] = f.values()[p] * cplx(std::cos(arg), -std::sin(arg));
            for (int a = static_cast<int>(res.size()) - 1; a >= 0; --a) {
                if (++idx[a] < res[a]) break;
                idx[a] = 0;
            }
        }
        cplx amp = pairwise_sum(prod.data(), prod.size()) / static_cast<double>(prod.size());
        if (std::abs(amp) > cutoff) out[k] = amp;
        int a = static_cast<int>(res.size()) - 1;
        for (; a >= 0; --a) {
            if (++k[a] <= f.bandwidth()[a]) break;
            k[a] = -f.bandwidth()[a];
        }
        if (a < 0) break;
    }
    return out;
}

} // namespace ayfun::spectral

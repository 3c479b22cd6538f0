#pragma once

#include "ayfun/grid.hpp"

#include <complex>
#include <map>
#include <vector>

namespace ayfun::spectral {

using cplx = std::complex<double>;

// Band-limited complex scalar on the grid, stored as point values in
// row-major axis order together with the per-axis bandwidth of the
// trigonometric polynomial it represents.
class ScalarField {
  public:
    ScalarField() = default;
    ScalarField(GridSpec grid, cplx constant = 0.0);
    ScalarField(GridSpec grid, std::vector<cplx> values, std::vector<int> bandwidth);

    const GridSpec& grid() const { return grid_; }
    const std::vector<cplx>& values() const { return values_; }
    std::vector<cplx>& values() { return values_; }
    const std::vector<int>& bandwidth() const { return bandwidth_; }

    bool constant_zero() const; // structurally zero (all values exactly 0)
    double max_abs() const;

    ScalarField& operator+=(const ScalarField& o);
    ScalarField& operator-=(const ScalarField& o);
    friend ScalarField operator+(ScalarField a, const ScalarField& b) { return a += b; }
    friend ScalarField operator-(ScalarField a, const ScalarField& b) { return a -= b; }
    friend ScalarField operator*(cplx s, ScalarField f);

  private:
    GridSpec grid_;
    std::vector<cplx> values_;
    std::vector<int> bandwidth_; // per axis; 0 on axes with resolution 1
};

// Mode key: 2n integer frequencies, one per real axis.
using ModeIndex = std::vector<int>;

// field(x) = sum over modes amp * exp(2 pi i k.x); rejects aliased modes.
ScalarField make_field(const GridSpec& grid, const std::map<ModeIndex, cplx>& modes);

ScalarField conj(const ScalarField& f);

// Pointwise product; exact for band-limited factors, guarded by the
// alias-free contract 2(b_f + b_g) < m per active axis.
ScalarField multiply(const ScalarField& f, const ScalarField& g);

// d/dz^j = (d/dx_j - i d/dy_j)/2 and d/dzbar^j = (d/dx_j + i d/dy_j)/2,
// j in 1..n, computed spectrally.
ScalarField wirtinger_d(const ScalarField& f, int j);
ScalarField wirtinger_dbar(const ScalarField& f, int j);

// Grid mean = zero Fourier mode; fixed-order pairwise reduction.
cplx mean(const ScalarField& f);

cplx pairwise_sum(const cplx* data, std::size_t count);

// Mode amplitudes inside the declared bandwidth box (|amp| above
// 1e-14 * max), recovered by inner products; inverse of make_field.
std::map<ModeIndex, cplx> field_modes(const ScalarField& f);

} // namespace ayfun::spectral

#pragma once

#include "ayfun/field.hpp"

#include <map>
#include <utility>
#include <vector>

namespace ayfun::spectral {

struct FormDegree {
    int p = 0;
    int q = 0;
    friend bool operator==(FormDegree a, FormDegree b) { return a.p == b.p && a.q == b.q; }
};

// Strictly increasing 1-based index subsets of {1..n}.
using IndexSet = std::vector<int>;
using ComponentKey = std::pair<IndexSet, IndexSet>;

// A (p,q)-form as a sparse map over generator pairs; the component keyed by
// (I, J) multiplies dz^{i_1}^..^dz^{i_p}^dzbar^{j_1}^..^dzbar^{j_q}.
// Absent keys mean the zero field.  std::map keeps iteration deterministic.
class Form {
  public:
    Form() = default;
    Form(GridSpec grid, FormDegree degree) : grid_(std::move(grid)), degree_(degree) {}

    const GridSpec& grid() const { return grid_; }
    FormDegree degree() const { return degree_; }
    const std::map<ComponentKey, ScalarField>& components() const { return comps_; }

    void add_component(const ComponentKey& key, const ScalarField& field);
    const ScalarField* component(const ComponentKey& key) const;
    bool empty() const { return comps_.empty(); }
    double max_component_abs() const;
    void prune_zero();

    Form& operator+=(const Form& o);
    Form& operator-=(const Form& o);
    friend Form operator+(Form a, const Form& b) { return a += b; }
    friend Form operator-(Form a, const Form& b) { return a -= b; }
    friend Form operator*(cplx s, Form f);

  private:
    GridSpec grid_;
    FormDegree degree_;
    std::map<ComponentKey, ScalarField> comps_;
};

// (-1)^inversions sign of sorting the concatenation of two disjoint
// increasing sets, plus the merged set.
std::pair<int, IndexSet> merge_sign(const IndexSet& a, const IndexSet& b);

Form scalar_form(const GridSpec& grid, const ScalarField& f); // degree (0,0)
Form scalar_times(const ScalarField& f, const Form& a);

Form wedge(const Form& a, const Form& b);
Form del(const Form& a);    // (p,q) -> (p+1,q)
Form delbar(const Form& a); // (p,q) -> (p,q+1)
Form conjugate(const Form& a);

// integral over the torus of an (n,n)-form; exact for band-limited
// components since the grid mean is the zero Fourier mode.  Orientation
// fixed so that the flat form i sum dz^j ^ dzbar^j has int omega^n = 2^n n!.
cplx integrate_top(const Form& a);

Form form_pow(const Form& a, int k); // iterated wedge, a^0 = constant 1

// i del delbar f as a (1,1)-form
Form i_del_delbar(const GridSpec& grid, const ScalarField& f);

// h[j][k] = -i * component({j},{k}) of a (1,1)-form; reality of the form is
// pointwise Hermitian symmetry of h.
std::vector<std::vector<ScalarField>> hermitian_entries(const Form& a);

Form from_hermitian_entries(const GridSpec& grid,
                            const std::vector<std::vector<ScalarField>>& h);

struct PositivityReport {
    bool positive = false;
    double min_pivot = 0.0;
};

// Cholesky pivots of h at every grid point; requires a real (conjugate-
// invariant) form within 1e-12 of its own magnitude.
PositivityReport is_positive(const Form& a);

} // namespace ayfun::spectral

#include "ayfun/form.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace ayfun::spectral {

void Form::add_component(const ComponentKey& key, const ScalarField& field) {
    if (static_cast<int>(key.first.size()) != degree_.p ||
        static_cast<int>(key.second.size()) != degree_.q)
        throw Error("Form: component key inconsistent with degree");
    auto it = comps_.find(key);
    if (it == comps_.end())
        comps_.emplace(key, field);
    else
        it->second += field;
}

const ScalarField* Form::component(const ComponentKey& key) const {
    auto it = comps_.find(key);
    return it == comps_.end() ? nullptr : &it->second;
}

double Form::max_component_abs() const {
    double m = 0.0;
    for (const auto& [k, f] : comps_) m = std::max(m, f.max_abs());
    return m;
}

void Form::prune_zero() {
    for (auto it = comps_.begin(); it != comps_.end();)
        it = it->second.constant_zero() ? comps_.erase(it) : std::next(it);
}

Form& Form::operator+=(const Form& o) {
    if (!o.empty() && !empty() && !(o.degree_ == degree_)) throw Error("Form: degree mismatch");
    if (empty()) degree_ = o.degree_;
    for (const auto& [k, f] : o.comps_) add_component(k, f);
    return *this;
}

Form& Form::operator-=(const Form& o) { return *this += cplx(-1.0) * o; }

Form operator*(cplx s, Form f) {
    for (auto& [k, v] : f.comps_) v = s * v;
    return f;
}

std::pair<int, IndexSet> merge_sign(const IndexSet& a, const IndexSet& b) {
    int inversions = 0;
    for (int x : a)
        for (int y : b)
            if (x > y) ++inversions;
    IndexSet merged(a.size() + b.size());
    std::merge(a.begin(), a.end(), b.begin(), b.end(), merged.begin());
    return {(inversions % 2 == 0) ? 1 : -1, merged};
}

namespace {

bool disjoint(const IndexSet& a, const IndexSet& b) {
    auto ia = a.begin();
    auto ib = b.begin();
    while (ia != a.end() && ib != b.end()) {
        if (*ia == *ib) return false;
        (*ia < *ib) ? ++ia : ++ib;
    }
    return true;
}

} // namespace

Form scalar_form(const GridSpec& grid, const ScalarField& f) {
    Form r(grid, {0, 0});
    r.add_component({{}, {}}, f);
    return r;
}

Form scalar_times(const ScalarField& f, const Form& a) {
    Form r(a.grid(), a.degree());
    for (const auto& [k, v] : a.components()) r.add_component(k, multiply(f, v));
    return r;
}

Form wedge(const Form& a, const Form& b) {
    if (!(a.grid() == b.grid())) throw Error("wedge: grid mismatch");
    int n = a.grid().n;
    FormDegree d{a.degree().p + b.degree().p, a.degree().q + b.degree().q};
    if (d.p > n || d.q > n) return Form(a.grid(), {std::min(d.p, n), std::min(d.q, n)});
    Form out(a.grid(), d);
    int qa = a.degree().q;
    for (const auto& [ka, fa] : a.components()) {
        for (const auto& [kb, fb] : b.components()) {
            if (!disjoint(ka.first, kb.first) || !disjoint(ka.second, kb.second)) continue;
            auto [si, I] = merge_sign(ka.first, kb.first);
            auto [sj, J] = merge_sign(ka.second, kb.second);
            // dzbar block of a moves past the dz block of b
            int s0 = ((qa * b.degree().p) % 2 == 0) ? 1 : -1;
            double sign = static_cast<double>(s0 * si * sj);
            out.add_component({I, J}, cplx(sign) * multiply(fa, fb));
        }
    }
    return out;
}

Form del(const Form& a) {
    int n = a.grid().n;
    Form out(a.grid(), {a.degree().p + 1, a.degree().q});
    if (a.degree().p >= n) return Form(a.grid(), {n, a.degree().q});
    for (const auto& [key, f] : a.components()) {
        const auto& [I, J] = key;
        for (int j = 1; j <= n; ++j) {
            if (std::binary_search(I.begin(), I.end(), j)) continue;
            auto [sign, Ij] = merge_sign({j}, I); // dz^j sorted into dz^I
            out.add_component({Ij, J}, cplx(double(sign)) * wirtinger_d(f, j));
        }
    }
    out.prune_zero();
    return out;
}

Form delbar(const Form& a) {
    int n = a.grid().n;
    Form out(a.grid(), {a.degree().p, a.degree().q + 1});
    if (a.degree().q >= n) return Form(a.grid(), {a.degree().p, n});
    for (const auto& [key, f] : a.components()) {
        const auto& [I, J] = key;
        int p = static_cast<int>(I.size());
        for (int j = 1; j <= n; ++j) {
            if (std::binary_search(J.begin(), J.end(), j)) continue;
            auto [s, Jj] = merge_sign({j}, J); // dzbar^j past dz^I, then into dzbar^J
            double sign = (p % 2 == 0 ? 1.0 : -1.0) * s;
            out.add_component({I, Jj}, cplx(sign) * wirtinger_dbar(f, j));
        }
    }
    out.prune_zero();
    return out;
}

Form conjugate(const Form& a) {
    Form out(a.grid(), {a.degree().q, a.degree().p});
    double sign = ((a.degree().p * a.degree().q) % 2 == 0) ? 1.0 : -1.0;
    for (const auto& [key, f] : a.components())
        out.add_component({key.second, key.first}, cplx(sign) * conj(f));
    return out;
}

cplx integrate_top(const Form& a) {
    int n = a.grid().n;
    if (!(a.degree() == FormDegree{n, n})) throw Error("integrate_top: degree must be (n,n)");
    IndexSet full(n);
    for (int j = 0; j < n; ++j) full[j] = j + 1;
    const ScalarField* f = a.component({full, full});
    if (!f) return 0.0;
    cplx unit = 1.0;
    for (int j = 0; j < n; ++j) unit *= cplx(0.0, -2.0);
    double orient = ((n * (n - 1) / 2) % 2 == 0) ? 1.0 : -1.0;
    return mean(*f) * orient * unit;
}

Form form_pow(const Form& a, int k) {
    Form r = scalar_form(a.grid(), ScalarField(a.grid(), 1.0));
    for (int j = 0; j < k; ++j) r = wedge(r, a);
    return r;
}

Form i_del_delbar(const GridSpec& grid, const ScalarField& f) {
    return cplx(0.0, 1.0) * del(delbar(scalar_form(grid, f)));
}

std::vector<std::vector<ScalarField>> hermitian_entries(const Form& a) {
    int n = a.grid().n;
    if (!(a.degree() == FormDegree{1, 1})) throw Error("hermitian_entries: degree must be (1,1)");
    std::vector<std::vector<ScalarField>> h(
        n, std::vector<ScalarField>(n, ScalarField(a.grid(), 0.0)));
    for (const auto& [key, f] : a.components())
        h[key.first[0] - 1][key.second[0] - 1] = cplx(0.0, -1.0) * f;
    return h;
}

Form from_hermitian_entries(const GridSpec& grid,
                            const std::vector<std::vector<ScalarField>>& h) {
    int n = grid.n;
    Form out(grid, {1, 1});
    for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k)
            out.add_component({{j + 1}, {k + 1}}, cplx(0.0, 1.0) * h[j][k]);
    out.prune_zero();
    return out;
}

PositivityReport is_positive(const Form& a) {
    Form diff = a - conjugate(a);
    double scale = a.max_component_abs();
    if (diff.max_component_abs() > 1e-12 * std::max(1.0, scale))
        throw Error("is_positive: form is not real");
    int n = a.grid().n;
    auto h = hermitian_entries(a);
    std::size_t pts = a.grid().points();
    std::vector<std::vector<cplx>> M(n, std::vector<cplx>(n));
    double min_pivot = std::numeric_limits<double>::infinity();
    for (std::size_t p = 0; p < pts; ++p) {
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) {
                cplx v = h[j][k].values()[p];
                cplx w = std::conj(h[k][j].values()[p]);
                M[j][k] = 0.5 * (v + w);
            }
        // pivots of unpivoted elimination: positive definite iff all > 0
        for (int c = 0; c < n; ++c) {
            double piv = M[c][c].real();
            min_pivot = std::min(min_pivot, piv);
            if (piv <= 0.0) return {false, min_pivot};
            for (int r = c + 1; r < n; ++r) {
                cplx f = M[r][c] / piv;
                for (int k = c; k < n; ++k) M[r][k] -= f * M[c][k];
            }
        }
    }
    return {true, min_pivot};
}

} // namespace ayfun::spectral

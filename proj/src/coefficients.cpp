#include "ayfun/coefficients.hpp"

#include <array>
#include <sstream>
#include <stdexcept>

namespace ayfun::exact {

std::string to_string(const Rational& r) {
    std::ostringstream os;
    os << numerator(r);
    if (denominator(r) != 1) os << '/' << denominator(r);
    return os.str();
}

double to_double(const Rational& r) { return r.convert_to<double>(); }

GaussianRational operator/(const GaussianRational& a, const GaussianRational& b) {
    Rational n2 = b.re * b.re + b.im * b.im;
    if (n2 == 0) throw std::domain_error("GaussianRational: division by zero");
    GaussianRational num = a * b.conj();
    return {num.re / n2, num.im / n2};
}

std::string to_string(const GaussianRational& z) {
    if (z.im == 0) return to_string(z.re);
    std::string im = to_string(z.im) + "i";
    if (im == "1i") im = "i";
    if (im == "-1i") im = "-i";
    if (z.re == 0) return im;
    return to_string(z.re) + (z.im > 0 ? "+" : "") + im;
}

bool CoefficientVector::is_zero() const {
    if (c2_coeff != 0) return false;
    for (const auto& [k, v] : j_coeffs)
        if (v != 0) return false;
    return true;
}

CoefficientVector operator+(const CoefficientVector& a, const CoefficientVector& b) {
    CoefficientVector r = a;
    r.c2_coeff += b.c2_coeff;
    for (const auto& [k, v] : b.j_coeffs) r.j_coeffs[k] += v;
    return r;
}

CoefficientVector operator*(const Rational& s, const CoefficientVector& v) {
    CoefficientVector r;
    r.c2_coeff = s * v.c2_coeff;
    for (const auto& [k, c] : v.j_coeffs) r.j_coeffs[k] = s * c;
    return r;
}

bool operator==(const CoefficientVector& a, const CoefficientVector& b) {
    if (a.c2_coeff != b.c2_coeff) return false;
    auto diff = a + Rational(-1) * b;
    return diff.is_zero();
}

Int binomial(long long n, long long k) {
    if (k < 0 || k > n) return 0;
    k = std::min(k, n - k);
    Int r = 1;
    for (long long j = 1; j <= k; ++j) {
        r *= n - k + j;
        r /= j;
    }
    return r;
}

Rational factorial(long long n) {
    Int r = 1;
    for (long long j = 2; j <= n; ++j) r *= j;
    return Rational(r);
}

std::vector<GaussianRational> mabuchi_weights(int n) {
    if (n < 3) throw std::invalid_argument("mabuchi_weights: n >= 3 required");
    std::vector<GaussianRational> a;
    Rational half_nn1 = Rational(Int(n) * Int(n - 1), Int(2));
    a.push_back({Rational(0), -half_nn1}); // a_1
    a.push_back({Rational(0), half_nn1});  // a_2 = conj(a_1)
    for (int k = 1; k <= n - 2; ++k) {
        Rational c(binomial(n, k + 2));
        if (k % 2 != 0) c = -c;
        a.push_back({c});
        a.push_back({c});
    }
    return a;
}

std::vector<GaussianRational> cancellation_weights(int n) {
    auto a = mabuchi_weights(n);
    for (std::size_t j = 2; j < a.size(); ++j) a[j] = -a[j];
    return a;
}

CoefficientVector recursion_expand(int n, int i) {
    if (n < 4) throw std::invalid_argument("recursion_expand: n >= 4 required");
    if (i < 2 || i > n - 1) throw std::invalid_argument("recursion_expand: i out of range");
    CoefficientVector c;
    c.c2_coeff = 1; // base case: c_2 itself
    for (int j = 2; j < i; ++j) {
        Rational factor(Int(-(j + 2)), Int(n - (j + 1)));
        CoefficientVector next = factor * c;
        next.j_coeffs[j] += 1;
        c = std::move(next);
    }
    return c;
}

CoefficientVector closed_form(int n, int i) {
    if (n < 4) throw std::invalid_argument("closed_form: n >= 4 required");
    if (i < 2 || i > n - 1) throw std::invalid_argument("closed_form: i out of range");
    CoefficientVector c;
    Rational lead = factorial(i + 1) * factorial(n - i - 1) / (factorial(3) * factorial(n - 3));
    if ((i - 2) % 2 != 0) lead = -lead;
    c.c2_coeff = lead;
    for (int k = 2; k <= i - 1; ++k) {
        Rational w = factorial(i + 1) * factorial(n - i - 1) /
                     (factorial(k + 2) * factorial(n - k - 2));
        if ((i - 1 - k) % 2 != 0) w = -w;
        c.j_coeffs[k] = w;
    }
    return c;
}

CoefficientVector c2_solution(int n) {
    if (n < 3) throw std::invalid_argument("c2_solution: n >= 3 required");
    CoefficientVector c; // c2_coeff stays 0: the solution is a pure J-combination
    for (int k = 2; k <= n - 2; ++k) {
        Rational w = factorial(3) * factorial(n - 3) /
                     (factorial(k + 2) * factorial(n - k - 2));
        if (k % 2 != 0) w = -w;
        c.j_coeffs[k] = w;
    }
    return c;
}

CoefficientVector substitute_c2(const CoefficientVector& v, const CoefficientVector& c2_value) {
    CoefficientVector r = v.c2_coeff * c2_value;
    for (const auto& [k, c] : v.j_coeffs) r.j_coeffs[k] += c;
    return r;
}

Rational beta_moment(long long i, long long n) {
    if (i < 0 || i > n) throw std::invalid_argument("beta_moment: need 0 <= i <= n");
    return factorial(i) * factorial(n - i) / factorial(n + 1);
}

AyConstants ay_constants_closed(int n) {
    if (n < 3) throw std::invalid_argument("ay_constants: n >= 3 required");
    Rational N(n);
    AyConstants c;
    c.a11 = c.b11 = -N / (N - 1);
    c.a12 = c.b12 = -N / (N * N - 1);
    c.a21 = c.b21 = N / ((N - 1) * (N - 1));
    c.a22 = c.b22 = N / (N + 1) * (1 + N / ((N - 1) * (N - 1)));
    c.c1 = c.d1 = -(N + 1) / (2 * (N - 1));
    c.c2 = c.d2 = c.e1 = c.f1 = Rational(-1) / (2 * (N - 1));
    c.e2 = c.f2 = -N / (2 * (N * N - 1));
    return c;
}

namespace {

// Unknown order: a11 a12 a21 a22 b11 b12 b21 b22 c1 c2 d1 d2 e1 e2 f1 f2.
std::array<Rational, 16> pack(const AyConstants& c) {
    return {c.a11, c.a12, c.a21, c.a22, c.b11, c.b12, c.b21, c.b22,
            c.c1,  c.c2,  c.d1,  c.d2,  c.e1,  c.e2,  c.f1,  c.f2};
}

AyConstants unpack(const std::array<Rational, 16>& x) {
    return {x[0], x[1], x[2],  x[3],  x[4],  x[5],  x[6],  x[7],
            x[8], x[9], x[10], x[11], x[12], x[13], x[14], x[15]};
}

// rows[r] = 17 entries: 16 coefficients then the right-hand side
std::array<std::array<Rational, 17>, 16> system_rows(int n) {
    Rational N(n);
    Rational g = N / (N + 1);    // n/(n+1)
    Rational h = N + 1;          // n+1
    Rational inv = 1 / (N - 1);  // 1/(n-1)
    std::array<std::array<Rational, 17>, 16> rows{};
    auto set = [&](int r, int u1, Rational w1, int u2, Rational w2, Rational rhs) {
        rows[r][u1] = w1;
        rows[r][u2] = w2;
        rows[r][16] = rhs;
    };
    // the first-kind requirements: n/(n+1) x_1 - (x_2 - 1) = 1/(n+1) etc.
    set(0, 0, g, 1, -1, -g);                 // a11, a12
    set(1, 2, g, 3, -1, -g);                 // a21, a22
    set(2, 4, g, 5, -1, -g);                 // b11, b12
    set(3, 6, g, 7, -1, -g);                 // b21, b22
    set(4, 8, g, 9, -1, Rational(-1, 2));    // c1, c2
    set(5, 10, g, 11, -1, Rational(-1, 2));  // d1, d2
    set(6, 12, g, 13, -1, Rational(0));      // e1, e2
    set(7, 14, g, 15, -1, Rational(0));      // f1, f2
    // the second-kind requirements: (n+1)(x_2 - 1) - x_1 = rhs etc.
    set(8, 1, h, 0, -1, Rational(0));
    set(9, 3, h, 2, -1, inv + h);
    set(10, 5, h, 4, -1, Rational(0));
    set(11, 7, h, 6, -1, inv + h);
    set(12, 9, h, 8, -1, Rational(0));
    set(13, 11, h, 10, -1, Rational(0));
    set(14, 13, h, 12, -1, Rational(-1, 2));
    set(15, 15, h, 14, -1, Rational(-1, 2));
    return rows;
}

} // namespace

std::vector<Rational> ay_equation_residuals(int n, const AyConstants& c) {
    auto rows = system_rows(n);
    auto x = pack(c);
    std::vector<Rational> res(16);
    for (int r = 0; r < 16; ++r) {
        Rational acc = -rows[r][16];
        for (int j = 0; j < 16; ++j) acc += rows[r][j] * x[j];
        res[r] = acc;
    }
    return res;
}

AyConstants ay_constants(int n) {
    auto rows = system_rows(n);
    // exact Gaussian elimination, first nonzero pivot in column order
    for (int col = 0; col < 16; ++col) {
        int piv = -1;
        for (int r = col; r < 16; ++r)
            if (rows[r][col] != 0) {
                piv = r;
                break;
            }
        if (piv < 0) throw std::runtime_error("ay_constants: singular system");
        std::swap(rows[col], rows[piv]);
        Rational p = rows[col][col];
        for (int j = col; j <= 16; ++j) rows[col][j] /= p;
        for (int r = 0; r < 16; ++r) {
            if (r == col || rows[r][col] == 0) continue;
            Rational f = rows[r][col];
            for (int j = col; j <= 16; ++j) rows[r][j] -= f * rows[col][j];
        }
    }
    std::array<Rational, 16> x;
    for (int r = 0; r < 16; ++r) x[r] = rows[r][16];
    AyConstants solved = unpack(x);

    for (const auto& r : ay_equation_residuals(n, solved))
        if (r != 0) throw std::runtime_error("ay_constants: nonzero residual after solve");
    AyConstants closed = ay_constants_closed(n);
    auto a = pack(solved), b = pack(closed);
    for (int j = 0; j < 16; ++j)
        if (a[j] != b[j]) throw std::runtime_error("ay_constants: solve disagrees with closed form");
    return solved;
}

ScalarIdentityReport scalar_identity_suite(int n, bool perturb) {
    ScalarIdentityReport rep;
    for (long long i = 0; i < n; ++i) {
        Int lhs1 = Int(i) * (n - 1 - i) + Int(i + 1) * (i + 1) + (perturb ? 1 : 0);
        Int rhs1 = Int(i + 1) + Int(i) * n;
        if (lhs1 != rhs1) {
            rep.pass = false;
            rep.first_failure_i = static_cast<int>(i);
            rep.failed_identity = "i(n-1-i)+(i+1)^2 = (i+1)+in";
            return rep;
        }
        Int lhs2 = Int(n - 1 - i) * (n - 1 - i) + Int(i + 1) * (n - i - 2);
        Int rhs2 = Int(n) * n - Int(n + 1) * (i + 1);
        if (lhs2 != rhs2) {
            rep.pass = false;
            rep.first_failure_i = static_cast<int>(i);
            rep.failed_identity = "(n-1-i)^2+(i+1)(n-i-2) = n^2-(n+1)(i+1)";
            return rep;
        }
    }
    return rep;
}

} // namespace ayfun::exact

#pragma once

#include <array>
#include <complex>
#include <stdexcept>
#include <string>

namespace qbrach {

using cplx = std::complex<double>;
using Vec2c = std::array<cplx, 2>;

/// Dense complex 2x2 matrix, row-major storage. This is the numeric kernel
/// for everything else in the library; all formulas on it are closed-form.
struct Mat2 {
    std::array<cplx, 4> e{};

    static Mat2 identity() { return Mat2{{cplx(1.0), cplx(0.0), cplx(0.0), cplx(1.0)}}; }
    static Mat2 zero() { return Mat2{}; }

    cplx& operator()(int row, int col) { return e[2 * row + col]; }
    const cplx& operator()(int row, int col) const { return e[2 * row + col]; }

    cplx trace() const { return e[0] + e[3]; }
    cplx det() const { return e[0] * e[3] - e[1] * e[2]; }
    Mat2 dagger() const { return Mat2{{std::conj(e[0]), std::conj(e[2]), std::conj(e[1]), std::conj(e[3])}}; }

    /// Largest entry magnitude.
    double max_abs() const;

    bool is_hermitian(double tol = 1e-12) const;

    Mat2 operator+(const Mat2& o) const;
    Mat2 operator-(const Mat2& o) const;
    Mat2 operator*(const Mat2& o) const;
    Vec2c operator*(const Vec2c& v) const;

    friend Mat2 operator*(cplx s, const Mat2& m);
};

/// Entrywise max |a - b|.
double max_abs_diff(const Mat2& a, const Mat2& b);

/// Standard inner product <u|v> = sum conj(u_i) v_i.
cplx inner(const Vec2c& u, const Vec2c& v);
double norm(const Vec2c& u);
Vec2c normalized(const Vec2c& u);

/// Coefficients of the exact expansion M = scalar*1 + vector . sigma.
struct PauliDecomposition {
    cplx scalar{};
    std::array<cplx, 3> vector{};
};

/// Standard Pauli matrix sigma_index, index in {1,2,3}.
Mat2 pauli(int index);

PauliDecomposition decompose(const Mat2& m);
Mat2 recompose(const PauliDecomposition& d);

/// exp(scale * m) via the entire closed form on the Pauli expansion:
/// with scale*m = a*1 + c.sigma and mu = sqrt(c.c) (principal branch),
/// exp = e^a (cosh(mu) 1 + sinch(mu) c.sigma). sinch switches to its power
/// series below |mu| = 1e-4.
Mat2 mat_exp(const Mat2& m, cplx scale);

/// Raised by eig2 when the matrix is degenerate and defective
/// (e.g. the exceptional point of the PT family).
struct NonDiagonalizableError : std::domain_error {
    using std::domain_error::domain_error;
};

struct Eig2 {
    /// Ordered by real part ascending, ties by imaginary part.
    std::array<cplx, 2> values{};
    /// Unit-norm right eigenvectors; first component of magnitude > 1e-14
    /// is made real and nonnegative so results are reproducible.
    std::array<Vec2c, 2> vectors{};
};

Eig2 eig2(const Mat2& m);

}  // namespace qbrach

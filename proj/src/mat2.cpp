#include "qbrach/mat2.hpp"

#include <algorithm>
#include <cmath>

namespace qbrach {

double Mat2::max_abs() const {
    double m = 0.0;
    for (const auto& v : e) m = std::max(m, std::abs(v));
    return m;
}

bool Mat2::is_hermitian(double tol) const {
    return max_abs_diff(*this, dagger()) <= tol;
}

Mat2 Mat2::operator+(const Mat2& o) const {
    Mat2 r;
    for (int i = 0; i < 4; ++i) r.e[i] = e[i] + o.e[i];
    return r;
}

Mat2 Mat2::operator-(const Mat2& o) const {
    Mat2 r;
    for (int i = 0; i < 4; ++i) r.e[i] = e[i] - o.e[i];
    return r;
}

Mat2 Mat2::operator*(const Mat2& o) const {
    return Mat2{{e[0] * o.e[0] + e[1] * o.e[2], e[0] * o.e[1] + e[1] * o.e[3],
                 e[2] * o.e[0] + e[3] * o.e[2], e[2] * o.e[1] + e[3] * o.e[3]}};
}

Vec2c Mat2::operator*(const Vec2c& v) const {
    return {e[0] * v[0] + e[1] * v[1], e[2] * v[0] + e[3] * v[1]};
}

Mat2 operator*(cplx s, const Mat2& m) {
    Mat2 r;
    for (int i = 0; i < 4; ++i) r.e[i] = s * m.e[i];
    return r;
}

double max_abs_diff(const Mat2& a, const Mat2& b) {
    double m = 0.0;
    for (int i = 0; i < 4; ++i) m = std::max(m, std::abs(a.e[i] - b.e[i]));
    return m;
}

cplx inner(const Vec2c& u, const Vec2c& v) {
    return std::conj(u[0]) * v[0] + std::conj(u[1]) * v[1];
}

double norm(const Vec2c& u) {
    return std::sqrt(std::norm(u[0]) + std::norm(u[1]));
}

Vec2c normalized(const Vec2c& u) {
    const double n = norm(u);
    if (n == 0.0) throw std::domain_error("normalized: zero vector");
    return {u[0] / n, u[1] / n};
}

Mat2 pauli(int index) {
    switch (index) {
        case 1: return Mat2{{cplx(0.0), cplx(1.0), cplx(1.0), cplx(0.0)}};
        case 2: return Mat2{{cplx(0.0), cplx(0.0, -1.0), cplx(0.0, 1.0), cplx(0.0)}};
        case 3: return Mat2{{cplx(1.0), cplx(0.0), cplx(0.0), cplx(-1.0)}};
        default: throw std::domain_error("pauli: index must be 1, 2 or 3");
    }
}

PauliDecomposition decompose(const Mat2& m) {
    PauliDecomposition d;
    d.scalar = 0.5 * (m.e[0] + m.e[3]);
    d.vector[0] = 0.5 * (m.e[1] + m.e[2]);
    d.vector[1] = 0.5 * cplx(0.0, 1.0) * (m.e[1] - m.e[2]);
    d.vector[2] = 0.5 * (m.e[0] - m.e[3]);
    return d;
}

Mat2 recompose(const PauliDecomposition& d) {
    return Mat2{{d.scalar + d.vector[2], d.vector[0] - cplx(0.0, 1.0) * d.vector[1],
                 d.vector[0] + cplx(0.0, 1.0) * d.vector[1], d.scalar - d.vector[2]}};
}

namespace {

// sinh(mu)/mu, series below |mu| = 1e-4 where direct division would cancel.
cplx sinch(cplx mu) {
    if (std::abs(mu) < 1e-4) {
        const cplx mu2 = mu * mu;
        return 1.0 + mu2 / 6.0 * (1.0 + mu2 / 20.0);
    }
    return std::sinh(mu) / mu;
}

}  // namespace

Mat2 mat_exp(const Mat2& m, cplx scale) {
    PauliDecomposition d = decompose(m);
    d.scalar *= scale;
    for (auto& c : d.vector) c *= scale;

    const cplx mu2 = d.vector[0] * d.vector[0] + d.vector[1] * d.vector[1] + d.vector[2] * d.vector[2];
    const cplx mu = std::sqrt(mu2);
    const cplx amp = std::exp(d.scalar);
    const cplx ch = std::cosh(mu);
    const cplx sh = sinch(mu);

    PauliDecomposition out;
    out.scalar = amp * ch;
    for (int i = 0; i < 3; ++i) out.vector[i] = amp * sh * d.vector[i];
    return recompose(out);
}

namespace {

Vec2c phase_fixed(Vec2c v) {
    const double n = norm(v);
    v[0] /= n;
    v[1] /= n;
    const cplx lead = std::abs(v[0]) > 1e-14 ? v[0] : v[1];
    const cplx ph = lead / std::abs(lead);
    return {v[0] / ph, v[1] / ph};
}

}  // namespace

Eig2 eig2(const Mat2& m) {
    const cplx mean = 0.5 * m.trace();
    const cplx disc = mean * mean - m.det();
    const cplx rad = std::sqrt(disc);
    cplx l1 = mean - rad;
    cplx l2 = mean + rad;
    if (l1.real() > l2.real() || (l1.real() == l2.real() && l1.imag() > l2.imag())) std::swap(l1, l2);

    const double scale = std::max(1.0, m.max_abs());

    if (std::abs(l1 - l2) < 1e-12) {
        // Degenerate: either a multiple of the identity (any basis works) or
        // defective (a single eigenvector only), which is reported, not solved.
        if (max_abs_diff(m, Mat2{{l1, cplx(0.0), cplx(0.0), l1}}) <= 1e-12 * scale) {
            return Eig2{{l1, l2}, {Vec2c{cplx(1.0), cplx(0.0)}, Vec2c{cplx(0.0), cplx(1.0)}}};
        }
        throw NonDiagonalizableError("eig2: degenerate defective matrix (exceptional point)");
    }

    Eig2 out;
    out.values = {l1, l2};
    for (int k = 0; k < 2; ++k) {
        const cplx l = out.values[k];
        // Null vector of (m - l): rows are proportional, pick the better-conditioned one.
        const Vec2c cand1{m.e[1], l - m.e[0]};
        const Vec2c cand2{l - m.e[3], m.e[2]};
        const Vec2c v = norm(cand1) >= norm(cand2) ? cand1 : cand2;
        out.vectors[k] = phase_fixed(v);
    }
    return out;
}

}  // namespace qbrach

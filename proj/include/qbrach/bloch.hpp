#pragma once

#include <cmath>

#include "qbrach/mat2.hpp"

namespace qbrach {

/// Real 3-vector. Used both for polarization vectors (|P| = 1 for pure
/// states) and for Hamiltonian axes.
struct Vec3 {
    double x{}, y{}, z{};

    double dot(const Vec3& o) const { return x * o.x + y * o.y + z * o.z; }
    Vec3 cross(const Vec3& o) const {
        return {y * o.z - z * o.y, z * o.x - x * o.z, x * o.y - y * o.x};
    }
    double norm() const { return std::sqrt(dot(*this)); }
    Vec3 normalized() const;

    Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
    Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
    Vec3 operator-() const { return {-x, -y, -z}; }
    friend Vec3 operator*(double s, const Vec3& v) { return {s * v.x, s * v.y, s * v.z}; }
};

/// Stable angle between two nonzero vectors, in [0, pi].
double angle_between(const Vec3& a, const Vec3& b);

using BlochVector = Vec3;

/// Normalized pair of complex amplitudes; a pure two-level state.
/// PT-symmetric evolution may return standard-unnormalized pairs (the CPT
/// norm is the conserved one there), so the alias is shared with ptsym.
using StateVector = Vec2c;

struct DensityMatrix {
    Mat2 rho;
};

/// P_i = <psi| sigma_i |psi>. Global phase drops out.
BlochVector state_to_bloch(const StateVector& psi);

/// Inverse map onto a chosen gauge: psi = (cos(t/2), e^{i phi} sin(t/2)).
StateVector bloch_to_state(const BlochVector& p);

/// rho = (1 + P.sigma)/2. Pure states only (|P| = 1).
DensityMatrix bloch_to_density(const BlochVector& p);

/// P_i = tr(rho sigma_i), validating trace, hermiticity and purity first.
BlochVector density_to_bloch(const DensityMatrix& rho);

/// 2 acos|<psi2|psi1>|, in [0, pi]; equals the great-circle angle between
/// the two polarization vectors.
double fs_distance(const StateVector& psi1, const StateVector& psi2);

/// P1.P2 <= -1 + tol, i.e. the states are orthogonal.
bool is_antipodal(const BlochVector& p1, const BlochVector& p2, double tol = 1e-9);

}  // namespace qbrach

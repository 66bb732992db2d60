#include "qbrach/bloch.hpp"

#include <algorithm>

namespace qbrach {

namespace {

constexpr double kInputTol = 1e-9;

void require_normalized(const StateVector& psi, const char* who) {
    const double n2 = std::norm(psi[0]) + std::norm(psi[1]);
    if (std::abs(n2 - 1.0) > kInputTol) {
        throw std::domain_error(std::string(who) + ": state is not normalized");
    }
}

void require_unit(const Vec3& p, const char* who) {
    if (std::abs(p.norm() - 1.0) > kInputTol) {
        throw std::domain_error(std::string(who) + ": |P| != 1 (mixed states are out of scope)");
    }
}

}  // namespace

Vec3 Vec3::normalized() const {
    const double n = norm();
    if (n == 0.0) throw std::domain_error("Vec3::normalized: zero vector");
    return {x / n, y / n, z / n};
}

double angle_between(const Vec3& a, const Vec3& b) {
    return std::atan2(a.cross(b).norm(), a.dot(b));
}

BlochVector state_to_bloch(const StateVector& psi) {
    require_normalized(psi, "state_to_bloch");
    const cplx cross = std::conj(psi[0]) * psi[1];
    return {2.0 * cross.real(), 2.0 * cross.imag(), std::norm(psi[0]) - std::norm(psi[1])};
}

StateVector bloch_to_state(const BlochVector& p) {
    require_unit(p, "bloch_to_state");
    const double theta = std::acos(std::clamp(p.z, -1.0, 1.0));
    const double phi = std::atan2(p.y, p.x);
    return {cplx(std::cos(0.5 * theta)), std::polar(std::sin(0.5 * theta), phi)};
}

DensityMatrix bloch_to_density(const BlochVector& p) {
    require_unit(p, "bloch_to_density");
    return DensityMatrix{Mat2{{cplx(0.5 * (1.0 + p.z)), 0.5 * cplx(p.x, -p.y),
                               0.5 * cplx(p.x, p.y), cplx(0.5 * (1.0 - p.z))}}};
}

BlochVector density_to_bloch(const DensityMatrix& d) {
    const Mat2& r = d.rho;
    if (std::abs(r.trace() - 1.0) > 1e-12) throw std::domain_error("density_to_bloch: tr(rho) != 1");
    if (!r.is_hermitian(1e-12)) throw std::domain_error("density_to_bloch: rho is not hermitian");
    const Vec3 p{(r.e[1] + r.e[2]).real(), ((r.e[1] - r.e[2]) * cplx(0.0, 1.0)).real(),
                 (r.e[0] - r.e[3]).real()};
    if (std::abs(p.norm() - 1.0) > 1e-10) {
        throw std::domain_error("density_to_bloch: tr(rho^2) != 1 (mixed states are out of scope)");
    }
    return p;
}

double fs_distance(const StateVector& psi1, const StateVector& psi2) {
    require_normalized(psi1, "fs_distance");
    require_normalized(psi2, "fs_distance");
    const double overlap = std::clamp(std::abs(inner(psi2, psi1)), 0.0, 1.0);
    return 2.0 * std::acos(overlap);
}

bool is_antipodal(const BlochVector& p1, const BlochVector& p2, double tol) {
    return p1.dot(p2) <= -1.0 + tol;
}

}  // namespace qbrach

#pragma once

#include <optional>
#include <utility>

#include "qbrach/bloch.hpp"
#include "qbrach/mat2.hpp"

namespace qbrach {

struct PTBrokenError : std::domain_error {
    using std::domain_error::domain_error;
};

struct ExceptionalPointError : std::domain_error {
    using std::domain_error::domain_error;
};

/// Non-Hermitian PT-symmetric family [[r e^{i theta}, s], [s, r e^{-i theta}]]
/// with r >= 0, s > 0. Invariant under parity (sigma_1) combined with complex
/// conjugation. Real spectrum iff s^2 > r^2 sin^2(theta).
struct PTHamiltonian {
    double r{};
    double s{1.0};
    double theta{};

    Mat2 matrix() const;
};

/// Real spectrum data of the unbroken phase. sin(alpha) = (r/s) sin(theta)
/// with alpha in (-pi/2, pi/2); eps_pm = r cos(theta) +- s cos(alpha);
/// omega = eps_plus - eps_minus = 2 s cos(alpha) = 2*deltaE.
struct PTSpectrum {
    double eps_plus{};
    double eps_minus{};
    double alpha{};
    double omega{};
};

struct CPTOperator {
    Mat2 c;
};

/// Throws PTBrokenError in the broken phase and ExceptionalPointError when
/// |s^2 - r^2 sin^2 theta| <= 1e-12 (eigenvectors coalesce).
PTSpectrum pt_spectrum(const PTHamiltonian& h);

/// Inverse construction: a family member with the requested alpha and gap
/// omega = 2*delta_e. rcos_offset sets the real trace gauge r cos(theta)
/// (both eigenvalues shift by it), realized inside the family as
/// r e^{i theta} = rcos_offset + i s sin(alpha).
PTHamiltonian build_pt_from_alpha(double alpha, double delta_e, double rcos_offset = 0.0);

/// C = (1/cos alpha) [[i sin alpha, 1], [1, -i sin alpha]]; C^2 = 1 and
/// [C, H] = 0. Reduces to parity at alpha = 0.
CPTOperator c_operator(const PTHamiltonian& h);

/// <u|v> under the CPT product: (C P conj(u))^T v. Positive definite in the
/// unbroken phase; conjugate-linear in u, linear in v.
cplx cpt_inner(const StateVector& u, const StateVector& v, const CPTOperator& c);

/// Normalized CPT overlap |<a|b>|^2 / (<a|a><b|b>), in [0, 1].
double cpt_fidelity(const StateVector& a, const StateVector& b, const CPTOperator& c);

/// psi(t) = exp(-i t H) psi. The standard norm is generally not conserved;
/// the CPT norm is.
StateVector pt_evolve(const PTHamiltonian& h, const StateVector& psi, double t);

/// Split of the round-trip distance 2*pi between basis states:
/// (pi - 2|alpha|, pi + 2|alpha|).
std::pair<double, double> nqm_distances(double alpha);

/// First-arrival time under the CPT overlap criterion (>= 1 - 1e-9), same
/// scan-and-refine scheme as the Hermitian passage_time.
std::optional<double> pt_passage_time(const PTHamiltonian& h, const StateVector& psi_initial,
                                      const StateVector& psi_final, double t_max);

/// Earliest t visiting psi_via at some t1 in (0, t) and returning to
/// psi_initial at t, both in the CPT sense.
std::optional<double> pt_round_trip_time(const PTHamiltonian& h, const StateVector& psi_initial,
                                         const StateVector& psi_via, double t_max);

}  // namespace qbrach

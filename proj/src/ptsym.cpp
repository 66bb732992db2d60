#include "qbrach/ptsym.hpp"

#include <cmath>
#include <numbers>

#include "qbrach/detail/search.hpp"

namespace qbrach {

namespace {

constexpr double kPi = std::numbers::pi;

double discriminant(const PTHamiltonian& h) {
    const double rs = h.r * std::sin(h.theta);
    return h.s * h.s - rs * rs;
}

void require_unbroken(const PTHamiltonian& h, const char* who) {
    const double disc = discriminant(h);
    if (std::abs(disc) <= 1e-12) {
        throw ExceptionalPointError(std::string(who) + ": exceptional point (s^2 = r^2 sin^2 theta)");
    }
    if (disc < 0.0) {
        throw PTBrokenError(std::string(who) + ": PT-broken phase (s^2 < r^2 sin^2 theta)");
    }
}

}  // namespace

Mat2 PTHamiltonian::matrix() const {
    return Mat2{{std::polar(r, theta), cplx(s), cplx(s), std::polar(r, -theta)}};
}

PTSpectrum pt_spectrum(const PTHamiltonian& h) {
    if (h.s <= 0.0) throw std::domain_error("pt_spectrum: s must be > 0");
    require_unbroken(h, "pt_spectrum");
    PTSpectrum sp;
    sp.alpha = std::asin(h.r * std::sin(h.theta) / h.s);
    const double half_gap = h.s * std::cos(sp.alpha);
    const double center = h.r * std::cos(h.theta);
    sp.eps_plus = center + half_gap;
    sp.eps_minus = center - half_gap;
    sp.omega = 2.0 * half_gap;
    return sp;
}

PTHamiltonian build_pt_from_alpha(double alpha, double delta_e, double rcos_offset) {
    if (std::abs(alpha) >= kPi / 2.0) {
        throw std::domain_error("build_pt_from_alpha: |alpha| must be < pi/2");
    }
    if (delta_e <= 0.0) throw std::domain_error("build_pt_from_alpha: deltaE must be > 0");
    PTHamiltonian h;
    h.s = delta_e / std::cos(alpha);
    const double rsin = h.s * std::sin(alpha);  // imaginary part of r e^{i theta}
    h.r = std::hypot(rcos_offset, rsin);
    h.theta = h.r == 0.0 ? kPi / 2.0 : std::atan2(rsin, rcos_offset);
    return h;
}

CPTOperator c_operator(const PTHamiltonian& h) {
    const double alpha = pt_spectrum(h).alpha;
    const double ca = std::cos(alpha);
    const cplx isa(0.0, std::sin(alpha));
    return CPTOperator{Mat2{{isa / ca, cplx(1.0 / ca), cplx(1.0 / ca), -isa / ca}}};
}

cplx cpt_inner(const StateVector& u, const StateVector& v, const CPTOperator& c) {
    // PT u = parity * conj(u); then (C PT u)^T v.
    const Vec2c ptu{std::conj(u[1]), std::conj(u[0])};
    const Vec2c cptu = c.c * ptu;
    return cptu[0] * v[0] + cptu[1] * v[1];
}

double cpt_fidelity(const StateVector& a, const StateVector& b, const CPTOperator& c) {
    const double na = cpt_inner(a, a, c).real();
    const double nb = cpt_inner(b, b, c).real();
    return std::norm(cpt_inner(a, b, c)) / (na * nb);
}

StateVector pt_evolve(const PTHamiltonian& h, const StateVector& psi, double t) {
    return mat_exp(h.matrix(), cplx(0.0, -t)) * psi;
}

std::pair<double, double> nqm_distances(double alpha) {
    if (std::abs(alpha) >= kPi / 2.0) {
        throw std::domain_error("nqm_distances: |alpha| must be < pi/2");
    }
    // d2 as the exact complement keeps d1 + d2 == 2*pi bitwise.
    const double d1 = kPi - 2.0 * std::abs(alpha);
    return {d1, 2.0 * kPi - d1};
}

std::optional<double> pt_passage_time(const PTHamiltonian& h, const StateVector& psi_initial,
                                      const StateVector& psi_final, double t_max) {
    if (t_max <= 0.0) throw std::domain_error("pt_passage_time: t_max must be > 0");
    const CPTOperator c = c_operator(h);
    const auto fid = [&](double t) { return cpt_fidelity(psi_final, pt_evolve(h, psi_initial, t), c); };
    return detail::first_arrival(fid, t_max);
}

std::optional<double> pt_round_trip_time(const PTHamiltonian& h, const StateVector& psi_initial,
                                         const StateVector& psi_via, double t_max) {
    if (t_max <= 0.0) throw std::domain_error("pt_round_trip_time: t_max must be > 0");
    const CPTOperator c = c_operator(h);
    const auto to_via = [&](double t) { return cpt_fidelity(psi_via, pt_evolve(h, psi_initial, t), c); };
    const auto t1 = detail::first_arrival(to_via, t_max);
    if (!t1) return std::nullopt;

    const double remaining = t_max - *t1;
    if (remaining <= 0.0) return std::nullopt;
    const auto back = [&](double tau) {
        return cpt_fidelity(psi_initial, pt_evolve(h, psi_initial, *t1 + tau), c);
    };
    const auto t2 = detail::first_arrival(back, remaining);
    if (!t2) return std::nullopt;
    return *t1 + *t2;
}

}  // namespace qbrach

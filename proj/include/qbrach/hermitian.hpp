#pragma once

#include <optional>

#include "qbrach/bloch.hpp"
#include "qbrach/mat2.hpp"

namespace qbrach {

/// Two-level Hermitian Hamiltonian H = (o0*1 + gap * axis.sigma)/2.
/// o0 is the trace gauge (sum of eigenvalues), axis is a unit vector and
/// gap = E2 - E1 = 2*deltaE is both the spectral gap and the Bloch-sphere
/// angular speed.
struct HermitianHamiltonian {
    double o0{};
    Vec3 axis{0.0, 0.0, 1.0};
    double gap{};

    Mat2 matrix() const;
};

struct EnergySpectrum {
    double e1{};
    double e2{};
    double delta_e{};
};

struct TransportMetrics {
    double distance{};  // Bloch great-circle arc, radians
    double speed{};     // 2*deltaE
    double time{};      // distance / speed
};

struct DegeneratePairError : std::domain_error {
    using std::domain_error::domain_error;
};

/// Minimal-time Hamiltonian transporting p_initial to p_final: the axis is
/// perpendicular to both endpoints with |O| = 2*delta_e. Antipodal endpoints
/// leave a one-parameter family of great circles; theta picks one via a
/// deterministic transverse frame (e1, e2) of the plane normal to p_initial:
/// axis = cos(theta) e1 + sin(theta) e2. Non-antipodal endpoints fix the
/// axis as normalize(p_initial x p_final) and ignore theta.
HermitianHamiltonian build_optimal_hamiltonian(const Vec3& p_initial, const Vec3& p_final,
                                               double delta_e, double o0 = 0.0, double theta = 0.0);

EnergySpectrum energy_spectrum(const HermitianHamiltonian& h);

/// Spectral gap = maximum Bloch transport speed.
double speed(const HermitianHamiltonian& h);

/// Distance/speed/time bookkeeping for one transport problem under h.
TransportMetrics transport_metrics(const HermitianHamiltonian& h, const StateVector& psi_initial,
                                   const StateVector& psi_final);

/// psi(t) = exp(-i t H) psi.
StateVector evolve_state(const HermitianHamiltonian& h, const StateVector& psi, double t);

/// Fixed-step RK4 integration of dP/dt = O x P, renormalizing after each
/// step. `max_norm_drift` records the largest |P|-1 seen before each
/// renormalization, as an integration diagnostic.
struct OdeRun {
    Vec3 p;
    double max_norm_drift{};
};
OdeRun evolve_bloch_ode_tracked(const HermitianHamiltonian& h, const Vec3& p, double t, int steps);
Vec3 evolve_bloch_ode(const HermitianHamiltonian& h, const Vec3& p, double t, int steps);

/// Two full rotation periods; arrivals, if any, happen within one.
double default_t_max(double gap);

/// Earliest t in (0, t_max] with |<psi_final|psi(t)>|^2 >= 1 - 1e-9, from a
/// 10^4-point fidelity scan refined by golden-section; nothing if the target
/// is never reached.
std::optional<double> passage_time(const HermitianHamiltonian& h, const StateVector& psi_initial,
                                   const StateVector& psi_final, double t_max);

/// Earliest t such that the trajectory visits psi_via at some t1 in (0, t)
/// and is back at psi_initial at t.
std::optional<double> round_trip_time(const HermitianHamiltonian& h, const StateVector& psi_initial,
                                      const StateVector& psi_via, double t_max);

/// Derivative-free certificate for the speed limit: scans a Fibonacci
/// lattice of grid_size axes (gap fixed at 2*delta_e), scores each axis by
/// (reached, arrival time | peak-fidelity shortfall), and refines the best
/// by golden-section coordinate descent on a local chart of the axis sphere.
/// Knows nothing about the closed-form optimum; used to certify it.
struct AxisSearchResult {
    Vec3 axis;
    double time{};
    bool reached = false;
};
AxisSearchResult brute_force_min_passage(const Vec3& p_initial, const Vec3& p_final, double delta_e,
                                         int grid_size);

}  // namespace qbrach

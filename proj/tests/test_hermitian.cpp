#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "qbrach/hermitian.hpp"

using namespace qbrach;

namespace {

constexpr double kPi = 3.14159265358979323846;

const Vec3 kNorth{0.0, 0.0, 1.0};
const Vec3 kSouth{0.0, 0.0, -1.0};
const StateVector kUp{cplx(1.0), cplx(0.0)};
const StateVector kDown{cplx(0.0), cplx(1.0)};

double fid(const StateVector& a, const StateVector& b) {
    return std::norm(inner(a, b)) / ((std::norm(a[0]) + std::norm(a[1])) * (std::norm(b[0]) + std::norm(b[1])));
}

struct Rng {
    std::mt19937 gen;
    std::uniform_real_distribution<double> uni{-1.0, 1.0};
    explicit Rng(unsigned seed) : gen(seed) {}
    double in(double lo, double hi) { return lo + (hi - lo) * 0.5 * (uni(gen) + 1.0); }
    Vec3 direction() {
        std::normal_distribution<double> g;
        while (true) {
            const Vec3 v{g(gen), g(gen), g(gen)};
            if (v.norm() > 1e-3) return v.normalized();
        }
    }
};

}  // namespace

TEST_CASE("build_optimal_hamiltonian") {
    SUBCASE("antipodal endpoints follow the transverse frame") {
        const auto h0 = build_optimal_hamiltonian(kNorth, kSouth, 1.0, 0.0, 0.0);
        CHECK((h0.axis - Vec3{1.0, 0.0, 0.0}).norm() <= 1e-14);
        CHECK(h0.gap == 2.0);
        const auto h1 = build_optimal_hamiltonian(kNorth, kSouth, 1.0, 0.0, kPi / 2.0);
        CHECK((h1.axis - Vec3{0.0, 1.0, 0.0}).norm() <= 1e-14);
    }
    SUBCASE("non-antipodal endpoints use the cross product") {
        const auto h = build_optimal_hamiltonian(kNorth, {1.0, 0.0, 0.0}, 1.0);
        CHECK((h.axis - Vec3{0.0, 1.0, 0.0}).norm() <= 1e-14);
    }
    SUBCASE("axis is perpendicular to both endpoints") {
        Rng rng(31);
        for (int i = 0; i < 50; ++i) {
            const Vec3 pi_ = rng.direction();
            const Vec3 pf = rng.direction();
            if (std::abs(pi_.dot(pf)) > 1.0 - 1e-6) continue;
            const auto h = build_optimal_hamiltonian(pi_, pf, 0.7, 0.3, rng.in(0.0, 2.0 * kPi));
            CHECK(std::abs(h.axis.dot(pi_)) <= 1e-10);
            if (!is_antipodal(pi_, pf)) CHECK(std::abs(h.axis.dot(pf)) <= 1e-10);
            CHECK(std::abs(h.axis.norm() - 1.0) <= 1e-12);
            CHECK(h.gap == doctest::Approx(1.4).epsilon(1e-14));
            CHECK(h.matrix().is_hermitian());
        }
    }
    SUBCASE("errors") {
        CHECK_THROWS_AS(build_optimal_hamiltonian(kNorth, kSouth, 0.0), std::domain_error);
        CHECK_THROWS_AS(build_optimal_hamiltonian(kNorth, kSouth, -1.0), std::domain_error);
        CHECK_THROWS_AS(build_optimal_hamiltonian(kNorth, kNorth, 1.0), DegeneratePairError);
    }
}

TEST_CASE("energy spectrum, speed and transport metrics") {
    const HermitianHamiltonian h{5.0, {0.0, 0.0, 1.0}, 3.0};  // (5*1 + 3 sigma_z)/2
    const EnergySpectrum sp = energy_spectrum(h);
    CHECK(sp.e1 == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(sp.e2 == doctest::Approx(4.0).epsilon(1e-15));
    CHECK(speed(h) == 3.0);

    const Eig2 eig = eig2(h.matrix());
    CHECK(std::abs(eig.values[0] + eig.values[1] - cplx(h.o0)) <= 1e-10);
    CHECK(std::abs(eig.values[1] - eig.values[0] - cplx(h.gap)) <= 1e-10);

    const auto hx = build_optimal_hamiltonian(kNorth, kSouth, 1.0);
    CHECK(speed(hx) == 2.0);
    const TransportMetrics m = transport_metrics(hx, kUp, kDown);
    CHECK(m.distance == doctest::Approx(kPi).epsilon(1e-14));
    CHECK(m.speed == 2.0);
    CHECK(std::abs(m.time - m.distance / m.speed) <= 1e-12);
}

TEST_CASE("evolve_state") {
    const auto h = build_optimal_hamiltonian(kNorth, kSouth, 1.0, 0.0, 0.0);  // axis x, gap 2

    SUBCASE("half-turn about x maps north to south") {
        const StateVector out = evolve_state(h, kUp, kPi / 2.0);
        CHECK(fid(out, kDown) >= 1.0 - 1e-10);
    }
    SUBCASE("t = 0 is the identity") {
        const StateVector out = evolve_state(h, kUp, 0.0);
        CHECK(std::abs(out[0] - kUp[0]) == 0.0);
        CHECK(std::abs(out[1] - kUp[1]) == 0.0);
    }
    SUBCASE("o0 shifts only the global phase") {
        const HermitianHamiltonian shifted{3.7, h.axis, h.gap};
        Rng rng(4);
        for (int i = 0; i < 20; ++i) {
            const double t = rng.in(0.0, 3.0);
            const Vec3 a = state_to_bloch(normalized(evolve_state(h, kUp, t)));
            const Vec3 b = state_to_bloch(normalized(evolve_state(shifted, kUp, t)));
            CHECK((a - b).norm() <= 1e-12);
        }
    }
    SUBCASE("composition and norm conservation") {
        Rng rng(8);
        for (int i = 0; i < 50; ++i) {
            const HermitianHamiltonian hr{rng.in(-2.0, 2.0), rng.direction(), rng.in(0.1, 4.0)};
            const StateVector psi = bloch_to_state(rng.direction());
            const double t1 = rng.in(-2.0, 2.0);
            const double t2 = rng.in(-2.0, 2.0);
            const StateVector once = evolve_state(hr, psi, t1 + t2);
            const StateVector twice = evolve_state(hr, evolve_state(hr, psi, t1), t2);
            CHECK(std::sqrt(std::norm(once[0] - twice[0]) + std::norm(once[1] - twice[1])) <= 1e-10);
            CHECK(std::abs(norm(once) - 1.0) <= 1e-12);
        }
    }
}

TEST_CASE("evolve_bloch_ode") {
    const auto h = build_optimal_hamiltonian(kNorth, kSouth, 1.0, 0.0, 0.0);

    SUBCASE("half-turn") {
        const Vec3 p = evolve_bloch_ode(h, kNorth, kPi / 2.0, 10000);
        CHECK((p - kSouth).norm() <= 1e-8);
    }
    SUBCASE("t = 0") {
        const Vec3 p = evolve_bloch_ode(h, kNorth, 0.0, 1);
        CHECK((p - kNorth).norm() == 0.0);
    }
    SUBCASE("axis-parallel states are fixed points") {
        const Vec3 px{1.0, 0.0, 0.0};
        const Vec3 p = evolve_bloch_ode(h, px, 2.7, 500);
        CHECK((p - px).norm() <= 1e-12);
    }
    SUBCASE("matches the exact rotation; fourth-order convergence") {
        Rng rng(99);
        double worst = 0.0;
        for (int i = 0; i < 100; ++i) {
            const HermitianHamiltonian hr{0.0, rng.direction(), rng.in(0.5, 2.0)};
            const Vec3 p0 = rng.direction();
            const double t = rng.in(0.0, kPi);
            const Vec3 exact = state_to_bloch(normalized(evolve_state(hr, bloch_to_state(p0), t)));
            const Vec3 ode = evolve_bloch_ode(hr, p0, t, 10000);
            worst = std::max(worst, (ode - exact).norm());
        }
        CHECK(worst <= 1e-7);

        // Order check runs where truncation dominates rounding.
        double e_coarse = 0.0;
        double e_fine = 0.0;
        for (int i = 0; i < 20; ++i) {
            const HermitianHamiltonian hr{0.0, rng.direction(), rng.in(0.5, 2.0)};
            const Vec3 p0 = rng.direction();
            const double t = rng.in(0.5, kPi);
            const Vec3 exact = state_to_bloch(normalized(evolve_state(hr, bloch_to_state(p0), t)));
            e_coarse = std::max(e_coarse, (evolve_bloch_ode(hr, p0, t, 100) - exact).norm());
            e_fine = std::max(e_fine, (evolve_bloch_ode(hr, p0, t, 200) - exact).norm());
        }
        CHECK(e_coarse >= 8.0 * e_fine);
        CHECK(e_fine > 0.0);
    }
    SUBCASE("drift is recorded") {
        const OdeRun run = evolve_bloch_ode_tracked(h, kNorth, kPi, 50);
        CHECK(run.max_norm_drift > 0.0);
        CHECK(run.max_norm_drift < 1e-6);
    }
    SUBCASE("steps must be >= 1") {
        CHECK_THROWS_AS(evolve_bloch_ode(h, kNorth, 1.0, 0), std::domain_error);
    }
}

TEST_CASE("passage_time") {
    const double t_hi = default_t_max(2.0);

    SUBCASE("optimal Hamiltonian reaches the antipode in pi/(2 deltaE)") {
        const auto h = build_optimal_hamiltonian(kNorth, kSouth, 1.0, 0.0, 0.7);
        const auto t = passage_time(h, kUp, kDown, t_hi);
        REQUIRE(t.has_value());
        CHECK(std::abs(*t - kPi / 2.0) <= 1e-6);
    }
    SUBCASE("axis parallel to the state never leaves the pole") {
        const HermitianHamiltonian h{0.0, {0.0, 0.0, 1.0}, 2.0};
        CHECK_FALSE(passage_time(h, kUp, kDown, t_hi).has_value());
    }
    SUBCASE("tilted axis never reaches the antipode") {
        const double isq = 1.0 / std::sqrt(2.0);
        const HermitianHamiltonian h{0.0, {isq, 0.0, isq}, 2.0};
        CHECK_FALSE(passage_time(h, kUp, kDown, t_hi).has_value());
    }
    SUBCASE("t_max must be positive") {
        const auto h = build_optimal_hamiltonian(kNorth, kSouth, 1.0);
        CHECK_THROWS_AS(passage_time(h, kUp, kDown, 0.0), std::domain_error);
    }
}

TEST_CASE("round_trip_time") {
    SUBCASE("poles: pi/deltaE") {
        const auto h1 = build_optimal_hamiltonian(kNorth, kSouth, 1.0, 0.0, 0.3);
        const auto t1 = round_trip_time(h1, kUp, kDown, default_t_max(2.0));
        REQUIRE(t1.has_value());
        CHECK(std::abs(*t1 - kPi) <= 1e-6);

        const auto h2 = build_optimal_hamiltonian(kNorth, kSouth, 2.0, 0.0, 0.3);
        const auto t2 = round_trip_time(h2, kUp, kDown, default_t_max(4.0));
        REQUIRE(t2.has_value());
        CHECK(std::abs(*t2 - kPi / 2.0) <= 1e-6);
    }
    SUBCASE("axis-parallel precession never visits the antipode") {
        const HermitianHamiltonian h{0.0, {0.0, 0.0, 1.0}, 2.0};
        CHECK_FALSE(round_trip_time(h, kUp, kDown, default_t_max(2.0)).has_value());
    }
    SUBCASE("theta independence") {
        double lo = 1e300;
        double hi = -1e300;
        for (int k = 0; k < 8; ++k) {
            const auto h = build_optimal_hamiltonian(kNorth, kSouth, 1.0, 0.0, k * kPi / 4.0);
            const auto t = round_trip_time(h, kUp, kDown, default_t_max(2.0));
            REQUIRE(t.has_value());
            lo = std::min(lo, *t);
            hi = std::max(hi, *t);
        }
        CHECK(hi - lo <= 1e-9);
    }
    SUBCASE("any great-circle round trip through antipodes costs pi/deltaE") {
        Rng rng(55);
        for (int i = 0; i < 15; ++i) {
            const double delta_e = rng.in(0.3, 3.0);
            const Vec3 p0 = rng.direction();
            const auto h = build_optimal_hamiltonian(p0, -1.0 * p0, delta_e, rng.in(-1.0, 1.0),
                                                     rng.in(0.0, 2.0 * kPi));
            const auto t = round_trip_time(h, bloch_to_state(p0), bloch_to_state(-1.0 * p0),
                                           default_t_max(2.0 * delta_e));
            REQUIRE(t.has_value());
            CHECK(std::abs(*t - kPi / delta_e) <= 1e-6);
        }
    }
}

TEST_CASE("speed-limit certificate over random axes") {
    Rng rng(123);
    const double delta_e = 1.0;
    const double bound = kPi / (2.0 * delta_e);
    int finite = 0;
    for (int i = 0; i < 50; ++i) {
        Vec3 axis = rng.direction();
        if (i % 2 == 0) axis = Vec3{axis.x, axis.y, 0.0}.normalized();  // equatorial half
        const HermitianHamiltonian h{0.0, axis, 2.0 * delta_e};
        const auto t = passage_time(h, kUp, kDown, default_t_max(h.gap));
        if (!t) continue;
        ++finite;
        CHECK(*t >= bound - 1e-9);
        if (std::abs(*t - bound) <= 1e-6) CHECK(std::abs(axis.z) < 1e-3);
    }
    CHECK(finite >= 25);  // all equatorial axes reach
}

TEST_CASE("brute_force_min_passage") {
    SUBCASE("poles") {
        const auto res = brute_force_min_passage(kNorth, kSouth, 1.0, 1000);
        CHECK(res.reached);
        CHECK(std::abs(res.time - kPi / 2.0) <= 1e-4);
        CHECK(std::abs(res.axis.dot(kNorth)) <= std::sin(1e-2));
        CHECK(res.time >= kPi / 2.0 - 1e-6);
    }
    SUBCASE("quarter arc") {
        const auto res = brute_force_min_passage(kNorth, {1.0, 0.0, 0.0}, 1.0, 1000);
        CHECK(res.reached);
        CHECK(std::abs(res.time - kPi / 4.0) <= 1e-4);
        CHECK(res.time >= kPi / 4.0 - 1e-6);
    }
    SUBCASE("deterministic under parallel evaluation") {
        const auto a = brute_force_min_passage(kNorth, {1.0, 0.0, 0.0}, 0.8, 200);
        const auto b = brute_force_min_passage(kNorth, {1.0, 0.0, 0.0}, 0.8, 200);
        CHECK(a.time == b.time);
        CHECK(a.axis.x == b.axis.x);
        CHECK(a.axis.y == b.axis.y);
        CHECK(a.axis.z == b.axis.z);
    }
    SUBCASE("errors") {
        CHECK_THROWS_AS(brute_force_min_passage(kNorth, kNorth, 1.0, 1000), DegeneratePairError);
        CHECK_THROWS_AS(brute_force_min_passage(kNorth, kSouth, 1.0, 50), std::domain_error);
    }
}

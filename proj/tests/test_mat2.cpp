#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "qbrach/mat2.hpp"

using namespace qbrach;

namespace {

constexpr double kPi = 3.14159265358979323846;

// Independent oracle: truncated Taylor series, nothing shared with mat_exp.
Mat2 taylor_exp(const Mat2& m, cplx scale, int terms = 50) {
    const Mat2 a = scale * m;
    Mat2 sum = Mat2::identity();
    Mat2 term = Mat2::identity();
    for (int k = 1; k <= terms; ++k) {
        term = cplx(1.0 / k) * (term * a);
        sum = sum + term;
    }
    return sum;
}

struct Rng {
    std::mt19937 gen;
    std::uniform_real_distribution<double> uni{-1.0, 1.0};
    explicit Rng(unsigned seed) : gen(seed) {}
    cplx c(double mag = 1.0) { return mag * cplx(uni(gen), uni(gen)); }
    Mat2 matrix(double mag = 1.0) { return Mat2{{c(mag), c(mag), c(mag), c(mag)}}; }
    Mat2 hermitian(double mag = 1.0) {
        const Mat2 m = matrix(mag);
        return 0.5 * (m + m.dagger());
    }
};

// PT-family matrix [[r e^{i th}, s], [s, r e^{-i th}]], built inline so this
// suite does not depend on the ptsym module.
Mat2 pt_matrix(double r, double s, double th) {
    return Mat2{{std::polar(r, th), cplx(s), cplx(s), std::polar(r, -th)}};
}

}  // namespace

TEST_CASE("pauli matrices") {
    const Mat2 s3 = pauli(3);
    CHECK(s3.e[0] == cplx(1.0));
    CHECK(s3.e[3] == cplx(-1.0));
    CHECK(s3.e[1] == cplx(0.0));

    CHECK(max_abs_diff(pauli(1) * pauli(1), Mat2::identity()) == 0.0);
    CHECK(std::abs((pauli(1) * pauli(2)).trace()) == 0.0);

    for (int i = 1; i <= 3; ++i) {
        CHECK(std::abs(pauli(i).trace()) == 0.0);
        CHECK(pauli(i).is_hermitian());
        CHECK(std::abs(pauli(i).det() - cplx(-1.0)) == 0.0);
    }

    CHECK_THROWS_AS(pauli(0), std::domain_error);
    CHECK_THROWS_AS(pauli(4), std::domain_error);
}

TEST_CASE("pauli decomposition") {
    SUBCASE("identity") {
        const auto d = decompose(Mat2::identity());
        CHECK(std::abs(d.scalar - cplx(1.0)) == 0.0);
        for (const auto& v : d.vector) CHECK(std::abs(v) == 0.0);
    }
    SUBCASE("sigma_2") {
        const auto d = decompose(pauli(2));
        CHECK(std::abs(d.scalar) == 0.0);
        CHECK(std::abs(d.vector[0]) == 0.0);
        CHECK(std::abs(d.vector[1] - cplx(1.0)) == 0.0);
        CHECK(std::abs(d.vector[2]) == 0.0);
    }
    SUBCASE("half(3*1 + (0,0,4).sigma)") {
        const Mat2 m{{cplx(3.5), cplx(0.0), cplx(0.0), cplx(-0.5)}};
        const auto d = decompose(m);
        CHECK(std::abs(d.scalar - cplx(1.5)) == 0.0);
        CHECK(std::abs(d.vector[2] - cplx(2.0)) == 0.0);
    }
    SUBCASE("recompose inverts decompose") {
        Rng rng(91);
        for (int i = 0; i < 200; ++i) {
            const Mat2 m = rng.matrix(2.0);
            CHECK(max_abs_diff(recompose(decompose(m)), m) <= 1e-14);
        }
    }
    SUBCASE("hermitian input gives real coefficients") {
        Rng rng(92);
        for (int i = 0; i < 100; ++i) {
            const auto d = decompose(rng.hermitian(2.0));
            CHECK(std::abs(d.scalar.imag()) <= 1e-12);
            for (const auto& v : d.vector) CHECK(std::abs(v.imag()) <= 1e-12);
        }
    }
}

TEST_CASE("mat_exp closed form") {
    SUBCASE("diagonal rotation") {
        const Mat2 u = mat_exp(pauli(3), cplx(0.0, -kPi / 2.0));
        CHECK(std::abs(u.e[0] - cplx(0.0, -1.0)) <= 1e-15);
        CHECK(std::abs(u.e[3] - cplx(0.0, 1.0)) <= 1e-15);
        CHECK(std::abs(u.e[1]) == 0.0);
        CHECK(std::abs(u.e[2]) == 0.0);
    }
    SUBCASE("zero scale is the identity") {
        Rng rng(7);
        const Mat2 m = rng.matrix(2.0);
        CHECK(max_abs_diff(mat_exp(m, cplx(0.0)), Mat2::identity()) == 0.0);
    }
    SUBCASE("PT-family matrix vs Taylor oracle") {
        const Mat2 h = pt_matrix(0.5, 1.0, kPi / 2.0);
        CHECK(max_abs_diff(mat_exp(h, cplx(0.0, -1.0)), taylor_exp(h, cplx(0.0, -1.0))) <= 1e-10);
    }
    SUBCASE("series branch consistent with oracle at tiny arguments") {
        Rng rng(11);
        for (double mag : {1e-7, 1e-5, 5e-4}) {
            const Mat2 m = rng.matrix(1.0);
            CHECK(max_abs_diff(mat_exp(m, cplx(mag)), taylor_exp(m, cplx(mag))) <= 1e-13);
        }
    }
}

TEST_CASE("mat_exp properties") {
    Rng rng(12345);

    SUBCASE("exponential homomorphism") {
        for (int i = 0; i < 100; ++i) {
            const Mat2 m = rng.matrix(2.0);
            const cplx s1 = rng.c(std::sqrt(2.0));
            const cplx s2 = rng.c(std::sqrt(2.0));
            const Mat2 lhs = mat_exp(m, s1) * mat_exp(m, s2);
            const Mat2 rhs = mat_exp(m, s1 + s2);
            CHECK(max_abs_diff(lhs, rhs) <= 1e-10);
        }
    }
    SUBCASE("unitarity for hermitian generators") {
        for (int i = 0; i < 50; ++i) {
            const Mat2 h = rng.hermitian(2.0);
            const double t = 2.0 * rng.uni(rng.gen);
            const Mat2 u = mat_exp(h, cplx(0.0, -t));
            CHECK(max_abs_diff(u.dagger() * u, Mat2::identity()) <= 1e-12);
        }
    }
    SUBCASE("spectral consistency") {
        int checked = 0;
        for (int i = 0; i < 60; ++i) {
            const Mat2 m = rng.matrix(1.5);
            const cplx s = rng.c(1.0);
            Eig2 em;
            try {
                em = eig2(m);
            } catch (const NonDiagonalizableError&) {
                continue;
            }
            const Eig2 ee = eig2(mat_exp(m, s));
            const cplx a = std::exp(s * em.values[0]);
            const cplx b = std::exp(s * em.values[1]);
            // Sets match; ordering conventions may pair them either way.
            const double direct = std::max(std::abs(ee.values[0] - a), std::abs(ee.values[1] - b));
            const double swapped = std::max(std::abs(ee.values[0] - b), std::abs(ee.values[1] - a));
            CHECK(std::min(direct, swapped) <= 1e-10);
            ++checked;
        }
        CHECK(checked >= 50);
    }
    SUBCASE("oracle equivalence up to norm 5") {
        for (int i = 0; i < 100; ++i) {
            const Mat2 m = rng.matrix(1.0);  // spectral norm <= 2
            const cplx s = rng.c(1.25);      // |s| <= ~1.77, so |s|*||m|| <= ~3.6
            CHECK(max_abs_diff(mat_exp(m, s), taylor_exp(m, s)) <= 1e-10);
        }
    }
}

TEST_CASE("eig2") {
    SUBCASE("diagonal") {
        const Eig2 e = eig2(Mat2{{cplx(1.0), cplx(0.0), cplx(0.0), cplx(3.0)}});
        CHECK(std::abs(e.values[0] - cplx(1.0)) <= 1e-14);
        CHECK(std::abs(e.values[1] - cplx(3.0)) <= 1e-14);
        CHECK(std::abs(e.vectors[0][0] - cplx(1.0)) <= 1e-14);
        CHECK(std::abs(e.vectors[1][1] - cplx(1.0)) <= 1e-14);
    }
    SUBCASE("sigma_1 eigensystem") {
        const Eig2 e = eig2(pauli(1));
        const double isq = 1.0 / std::sqrt(2.0);
        CHECK(std::abs(e.values[0] - cplx(-1.0)) <= 1e-14);
        CHECK(std::abs(e.values[1] - cplx(1.0)) <= 1e-14);
        CHECK(std::abs(e.vectors[0][0] - cplx(isq)) <= 1e-14);
        CHECK(std::abs(e.vectors[0][1] - cplx(-isq)) <= 1e-14);
        CHECK(std::abs(e.vectors[1][0] - cplx(isq)) <= 1e-14);
        CHECK(std::abs(e.vectors[1][1] - cplx(isq)) <= 1e-14);
    }
    SUBCASE("exceptional point is reported, not solved") {
        const Mat2 h = pt_matrix(1.0, 1.0, kPi / 2.0);
        // Discriminant s^2 - r^2 sin^2(theta) vanishes here.
        const cplx mean = 0.5 * h.trace();
        CHECK(std::abs(mean * mean - h.det()) <= 1e-15);
        CHECK_THROWS_AS(eig2(h), NonDiagonalizableError);
    }
    SUBCASE("identity multiple is fine") {
        const Eig2 e = eig2(cplx(2.5) * Mat2::identity());
        CHECK(std::abs(e.values[0] - cplx(2.5)) <= 1e-14);
        CHECK(std::abs(e.values[1] - cplx(2.5)) <= 1e-14);
    }
    SUBCASE("residual property") {
        Rng rng(77);
        for (int i = 0; i < 200; ++i) {
            const Mat2 m = rng.matrix(2.0);
            Eig2 e;
            try {
                e = eig2(m);
            } catch (const NonDiagonalizableError&) {
                continue;
            }
            for (int k = 0; k < 2; ++k) {
                const Vec2c mv = m * e.vectors[k];
                const Vec2c lv{e.values[k] * e.vectors[k][0], e.values[k] * e.vectors[k][1]};
                const double resid = std::sqrt(std::norm(mv[0] - lv[0]) + std::norm(mv[1] - lv[1]));
                CHECK(resid <= 1e-10);
            }
            CHECK(e.values[0].real() <= e.values[1].real() + 1e-15);
        }
    }
}

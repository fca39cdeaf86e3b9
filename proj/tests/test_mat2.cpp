#include <doctest.h>

#include <cmath>
#include <random>

#include "pcwave/mat2.hpp"

using namespace pcwave;

namespace {

const cplx I{0.0, 1.0};

// Test-local power-series exponential, summed to machine precision. Kept
// independent of the closed form it checks.
CMat2 series_expm(const CMat2& m, double s) {
    CMat2 term = CMat2::identity();
    CMat2 acc = term;
    for (int k = 1; k < 200; ++k) {
        term = term * m * cplx(s / k, 0.0);
        acc = acc + term;
        if (term.max_abs() < 1e-18 * std::max(acc.max_abs(), 1.0)) break;
    }
    return acc;
}

cplx rc(std::mt19937_64& rng, double sd = 1.0) {
    std::normal_distribution<double> n(0.0, sd);
    return {n(rng), n(rng)};
}

}  // namespace

TEST_CASE("eig2 diagonal and symmetric examples") {
    const Eig2 d = eig2(CMat2::diag(cplx(2, 1), cplx(-3, 0)));
    CHECK(std::abs(d.lambda1 - cplx(2, 1)) < 1e-14);
    CHECK(std::abs(d.lambda2 - cplx(-3, 0)) < 1e-14);
    CHECK_FALSE(d.degenerate);

    const Eig2 x = eig2({0.0, 1.0, 1.0, 0.0});
    CHECK(std::abs(x.lambda1 - 1.0) < 1e-14);
    CHECK(std::abs(x.lambda2 + 1.0) < 1e-14);
}

TEST_CASE("eig2 flags the defective nilpotent case") {
    const Eig2 e = eig2({0.0, 1.0, 0.0, 0.0});
    CHECK(std::abs(e.lambda1) < 1e-14);
    CHECK(std::abs(e.lambda2) < 1e-14);
    CHECK(e.degenerate);
}

TEST_CASE("eig2 residual and reconstruction over random matrices") {
    std::mt19937_64 rng(101);
    for (int t = 0; t < 2000; ++t) {
        const CMat2 m{rc(rng), rc(rng), rc(rng), rc(rng)};
        const Eig2 e = eig2(m);
        // residual per column
        const cplx r1a = m.e11 * e.vectors.e11 + m.e12 * e.vectors.e21 - e.lambda1 * e.vectors.e11;
        const cplx r1b = m.e21 * e.vectors.e11 + m.e22 * e.vectors.e21 - e.lambda1 * e.vectors.e21;
        const double scale = std::max(m.max_abs(), 1.0);
        CHECK(std::abs(r1a) < 1e-12 * scale);
        CHECK(std::abs(r1b) < 1e-12 * scale);
        if (!e.degenerate) {
            const CMat2 rec =
                e.vectors * CMat2::diag(e.lambda1, e.lambda2) * inverse(e.vectors);
            CHECK((rec - m).max_abs() < 1e-10 * scale);
        }
    }
}

TEST_CASE("expm2 trivial and frozen examples") {
    CHECK((expm2(CMat2::zero(), 2.5) - CMat2::identity()).max_abs() == 0.0);

    // generator [[0, i], [-i, 0]]; squared is the identity
    const CMat2 g{0.0, I, -I, 0.0};
    const CMat2 e = expm2(g, 1.0);
    CHECK(std::abs(e.e11 - 1.5430806348152437) < 1e-12);
    CHECK(std::abs(e.e12 - I * 1.1752011936438014) < 1e-12);
    CHECK(std::abs(e.e21 + I * 1.1752011936438014) < 1e-12);
    CHECK((e - series_expm(g, 1.0)).max_abs() < 1e-12 * e.max_abs());

    const CMat2 d = expm2(CMat2::diag(cplx(0.3, -0.2), cplx(-1.1, 0.6)), 1.7);
    CHECK(std::abs(d.e11 - std::exp(cplx(0.3, -0.2) * 1.7)) < 1e-13);
    CHECK(std::abs(d.e22 - std::exp(cplx(-1.1, 0.6) * 1.7)) < 1e-13);
    CHECK(std::abs(d.e12) == 0.0);
}

TEST_CASE("expm2 matches the power series on random matrices") {
    std::mt19937_64 rng(7);
    for (int t = 0; t < 500; ++t) {
        const CMat2 m{rc(rng), rc(rng), rc(rng), rc(rng)};
        const double s = 0.3 + 0.01 * (t % 70);
        const CMat2 a = expm2(m, s);
        const CMat2 b = series_expm(m, s);
        CHECK((a - b).max_abs() < 1e-12 * std::max(b.max_abs(), 1.0));
    }
}

TEST_CASE("expm2 overflow guard") {
    CHECK_THROWS_AS(expm2(CMat2::diag(800.0, 0.0), 1.0), overflow_error);
    CHECK_THROWS_AS(expm2(CMat2::diag(-2.0, 0.0), 400.0), overflow_error);
}

TEST_CASE("sqrtm2 examples") {
    CHECK((sqrtm2(CMat2::identity()) - CMat2::identity()).max_abs() < 1e-15);
    const CMat2 d = sqrtm2(CMat2::diag(4.0, 9.0));
    CHECK(std::abs(d.e11 - 2.0) < 1e-14);
    CHECK(std::abs(d.e22 - 3.0) < 1e-14);

    // antisymmetric deficit-style matrix: principal root is [[1,1],[-1,1]]
    const CMat2 r = sqrtm2({0.0, 2.0, -2.0, 0.0});
    CHECK(std::abs(r.e11 - 1.0) < 1e-14);
    CHECK(std::abs(r.e12 - 1.0) < 1e-14);
    CHECK(std::abs(r.e21 + 1.0) < 1e-14);
    CHECK(std::abs(r.e22 - 1.0) < 1e-14);

    // negative real axis maps to the positive imaginary axis
    const CMat2 n = sqrtm2(CMat2::diag(-4.0, 1.0));
    CHECK(std::abs(n.e11 - cplx(0.0, 2.0)) < 1e-14);

    CHECK((sqrtm2(CMat2::zero())).max_abs() == 0.0);
    CHECK_THROWS_AS(sqrtm2({0.0, 1.0, 0.0, 0.0}), defective_error);
}

TEST_CASE("sqrtm2 handles defective matrices with nonzero eigenvalue") {
    const CMat2 m{4.0, 1.0, 0.0, 4.0};  // Jordan block
    const CMat2 r = sqrtm2(m);
    CHECK((r * r - m).max_abs() < 1e-13);
}

TEST_CASE("sqrtm2 square identity and principal branch over random matrices") {
    std::mt19937_64 rng(13);
    int done = 0;
    while (done < 20000) {
        const CMat2 m{rc(rng), rc(rng), rc(rng), rc(rng)};
        const Eig2 e = eig2(m);
        auto near_cut = [](cplx l) { return l.real() <= 0.0 && std::abs(l.imag()) < 1e-3; };
        if (near_cut(e.lambda1) || near_cut(e.lambda2)) continue;
        const CMat2 r = sqrtm2(m);
        CHECK((r * r - m).max_abs() < 1e-12 * std::max(m.max_abs(), 1.0));
        const Eig2 er = eig2(r);
        CHECK(er.lambda1.real() > -1e-12);
        CHECK(er.lambda2.real() > -1e-12);
        ++done;
    }
}

TEST_CASE("expm2 group law") {
    std::mt19937_64 rng(17);
    for (int t = 0; t < 5000; ++t) {
        const CMat2 m{rc(rng), rc(rng), rc(rng), rc(rng)};
        std::uniform_real_distribution<double> u(0.05, 1.5);
        const double s1 = u(rng), s2 = u(rng);
        const CMat2 lhs = expm2(m, s1) * expm2(m, s2);
        const CMat2 rhs = expm2(m, s1 + s2);
        CHECK((lhs - rhs).max_abs() < 1e-10 * std::max(rhs.max_abs(), 1.0));
    }
}

TEST_CASE("exp_pair_integral trivial cases") {
    // zero generator: integral of a constant, L * c (quadrature fallback path)
    const CMat2 c{cplx(1, 2), cplx(0, -1), cplx(3, 0), cplx(-2, 1)};
    const CMat2 j = exp_moment_integral(CMat2::zero(), c, 2.5);
    CHECK((j - 2.5 * c).max_abs() < 1e-10);

    // scalar decay: m = diag(-a,-a) handled by the quadrature fallback
    const double a = 0.8, L = 1.3;
    const CMat2 m = CMat2::diag(-a, -a);
    const CMat2 r = exp_moment_integral(m, CMat2::identity(), L);
    const double expect = (1.0 - std::exp(-2.0 * a * L)) / (2.0 * a);
    CHECK(std::abs(r.e11 - expect) < 1e-10);
    CHECK(std::abs(r.e22 - expect) < 1e-10);
    CHECK(std::abs(r.e12) < 1e-12);
}

TEST_CASE("exp_moment_integral matches a dense trapezoid oracle") {
    std::mt19937_64 rng(23);
    for (int t = 0; t < 40; ++t) {
        // stable generator keeps the integrand bounded
        const CMat2 m{rc(rng, 0.5) - cplx(1.0, 0), rc(rng, 0.5), rc(rng, 0.5),
                      rc(rng, 0.5) - cplx(1.0, 0)};
        const CMat2 c{rc(rng), rc(rng), rc(rng), rc(rng)};
        const double L = 1.0;
        const CMat2 closed = exp_moment_integral(m, c, L);
        const int n = 10000;
        CMat2 acc;
        for (int i = 0; i <= n; ++i) {
            const double s = L * i / n;
            const double w = (i == 0 || i == n) ? 0.5 : 1.0;
            acc = acc + (series_expm(m, s) * c * series_expm(m.adjoint(), s)) * cplx(w * L / n);
        }
        CHECK((closed - acc).max_abs() < 1e-8 * std::max(acc.max_abs(), 1.0));
    }
}

TEST_CASE("exp_pair_integral closed form agrees with the quadrature route") {
    std::mt19937_64 rng(29);
    for (int t = 0; t < 500; ++t) {
        const CMat2 m{rc(rng, 0.6) - cplx(1.2, 0), rc(rng, 0.6), rc(rng, 0.6),
                      rc(rng, 0.6) - cplx(1.2, 0)};
        const CMat2 c{rc(rng), rc(rng), rc(rng), rc(rng)};
        if (eig2(m).degenerate) continue;
        const CMat2 a = exp_pair_integral(m, m.transposed(), c, 1.0);
        const CMat2 b = exp_pair_integral_quadrature(m, m.transposed(), c, 1.0, 1e-11);
        CHECK((a - b).max_abs() < 1e-8 * std::max(b.max_abs(), 1.0));
    }
}

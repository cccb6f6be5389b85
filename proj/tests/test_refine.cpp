#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "jetfit/refine.hpp"
#include "oracles.hpp"

using namespace jetfit;

TEST_CASE("apply_residual identity, midpoint and degenerate cases") {
    const UnitVector3 up(0, 0, 1);
    CHECK((apply_residual(up, ResidualTerm{}).vec() - up.vec()).norm() == 0.0);

    const UnitVector3 mid = apply_residual(up, ResidualTerm{Vec3(1, 0, 0)});
    CHECK((mid.vec() - Vec3(1, 0, 1).normalized()).norm() < 1e-15);

    CHECK_THROWS_AS(apply_residual(up, ResidualTerm{Vec3(0, 0, -1)}), DegenerateSumError);
}

TEST_CASE("apply_residual always returns a unit vector") {
    std::mt19937_64 rng(171);
    std::normal_distribution<double> g(0.0, 0.7);
    for (int i = 0; i < 500; ++i) {
        const UnitVector3 rough = oracles::random_unit(rng);
        const ResidualTerm delta{Vec3(g(rng), g(rng), g(rng))};
        if ((rough.vec() + delta.delta).norm() < 1e-8) continue;
        CHECK(std::abs(apply_residual(rough, delta).vec().norm() - 1.0) < 1e-12);
    }
}

TEST_CASE("sin_loss endpoints and 30 degrees") {
    const UnitVector3 a(0, 0, 1);
    CHECK(sin_loss(a, a) == 0.0);
    CHECK(sin_loss(a, UnitVector3(1, 0, 0)) == doctest::Approx(1.0).epsilon(1e-15));
    const UnitVector3 thirty(std::sin(M_PI / 6.0), 0, std::cos(M_PI / 6.0));
    CHECK(sin_loss(a, thirty) == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("sin_loss symmetry and sign invariance are exact") {
    std::mt19937_64 rng(173);
    for (int i = 0; i < 200; ++i) {
        const UnitVector3 a = oracles::random_unit(rng);
        const UnitVector3 b = oracles::random_unit(rng);
        CHECK(sin_loss(a, b) == sin_loss(b, a));
        CHECK(sin_loss(a, b) == sin_loss(-a, b));
        CHECK(sin_loss(a, b) == sin_loss(a, -b));
    }
}

TEST_CASE("normal_loss sums both supervision terms") {
    const UnitVector3 gt(0, 0, 1);
    CHECK(normal_loss(gt, gt, gt) == 0.0);
    CHECK(normal_loss(gt, UnitVector3(1, 0, 0), gt) == doctest::Approx(1.0));
    const UnitVector3 thirty(0.5, 0, std::sqrt(3.0) / 2.0);
    CHECK(normal_loss(gt, thirty, thirty) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("trans_loss measures the rotated z misalignment") {
    std::mt19937_64 rng(179);
    for (int i = 0; i < 1000; ++i) {
        const UnitVector3 gt = oracles::random_unit(rng);
        CHECK(trans_loss(gt, rotate_to_z(gt)) < 1e-10);
    }
    CHECK(trans_loss(UnitVector3(1, 0, 0), Rotation::identity()) == doctest::Approx(1.0));
    const UnitVector3 thirty(0.5, 0, std::sqrt(3.0) / 2.0);
    CHECK(trans_loss(thirty, Rotation::identity()) == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("total_loss combination and defaults") {
    const LossBreakdown zero = total_loss(0, 0, 0, 0);
    CHECK(zero.l_total == 0.0);

    const LossBreakdown a = total_loss(1.0, 0.0, 0.0, 0.5);
    CHECK(a.l_total == doctest::Approx(2.0).epsilon(1e-15));  // 1 + 2 * 0.5

    const LossBreakdown b = total_loss(0.2, 0.4, 1.0, 0.0);
    CHECK(b.l_total == doctest::Approx(0.4).epsilon(1e-15));  // 0.2 + 0.25*0.4 + 0.1*1.0

    CHECK_THROWS_AS(total_loss(-0.1, 0, 0, 0), Error);
    CHECK_THROWS_AS(total_loss(0, 0, -1.0, 0), Error);
}

TEST_CASE("total_loss is linear in its components") {
    std::mt19937_64 rng(181);
    std::uniform_real_distribution<double> u(0.0, 3.0);
    for (int i = 0; i < 100; ++i) {
        const double ln = u(rng), lc = u(rng), lr = u(rng), lt = u(rng);
        const double once = total_loss(ln, lc, lr, lt).l_total;
        const double twice = total_loss(2 * ln, 2 * lc, 2 * lr, 2 * lt).l_total;
        CHECK(std::abs(twice - 2.0 * once) < 1e-12 * std::max(1.0, twice));
    }
}

TEST_CASE("total_loss breakdown satisfies its own combination invariant") {
    const LossWeights lw{0.5, 0.25, 3.0};
    const LossBreakdown out = total_loss(0.7, 0.3, 0.2, 0.1, lw);
    const double recombined =
        out.l_normal + lw.lambda1 * out.l_con + lw.lambda2 * out.l_reg + lw.lambda3 * out.l_trans;
    CHECK(std::abs(out.l_total - recombined) < 1e-12);
}

TEST_CASE("oracle_residual round trip") {
    const UnitVector3 up(0, 0, 1);
    CHECK(oracle_residual(up, up).delta.norm() == 0.0);

    const UnitVector3 gt(Vec3(1, 0, 1).normalized());
    const ResidualTerm delta = oracle_residual(gt, up);
    CHECK((apply_residual(up, delta).vec() - gt.vec()).norm() < 1e-12);

    CHECK_THROWS_AS(oracle_residual(up, UnitVector3(0, 0, -1)), DegenerateSumError);

    std::mt19937_64 rng(191);
    int checked = 0;
    while (checked < 1000) {
        const UnitVector3 a = oracles::random_unit(rng);
        const UnitVector3 b = oracles::random_unit(rng);
        if (std::acos(std::clamp(a.dot(b), -1.0, 1.0)) > 170.0 * M_PI / 180.0) continue;
        const UnitVector3 rebuilt = apply_residual(b, oracle_residual(a, b));
        CHECK((rebuilt.vec() - a.vec()).norm() < 1e-10);
        ++checked;
    }
}

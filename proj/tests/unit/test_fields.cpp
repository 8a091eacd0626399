#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "hydrostat/decomposition.hpp"
#include "hydrostat/norms.hpp"
#include "hydrostat/operators.hpp"
#include "hydrostat/params.hpp"
#include "hydrostat/state.hpp"

using namespace hydrostat;

namespace {

ScalarField random_field(const GridSpec& g, unsigned seed) {
    std::mt19937 gen(seed);
    std::uniform_real_distribution<double> d(-1.0, 1.0);
    ScalarField f(g);
    for (double& x : f.values()) x = d(gen);
    return f;
}

const GridSpec g0 = GridSpec::make(2.0, 1.0, 0.5, 8, 6, 4);

}  // namespace

TEST(Norms, ConstantField) {
    const ScalarField one(g0, 1.0);
    EXPECT_NEAR(norm_l2(one), std::sqrt(2.0 * 1.0 * 0.5), 1e-14);
    EXPECT_NEAR(norm_lp(one, 3.0), std::cbrt(1.0), 1e-14);
    EXPECT_NEAR(norm_l2_gamma_s(one, FieldBoundary::temperature(0.0)), std::sqrt(2.0 * (2.0 + 1.0) * 0.5), 1e-14);
    const H1Parts parts = seminorm_h1_parts(one, FieldBoundary::temperature(0.0));
    EXPECT_EQ(parts.grad_h, 0.0);
    EXPECT_EQ(parts.dz, 0.0);
}

TEST(Norms, ZeroField) {
    const ScalarField zero(g0);
    EXPECT_EQ(norm_l2(zero), 0.0);
    EXPECT_EQ(norm_linf(zero), 0.0);
    EXPECT_EQ(norm_lp(zero, 4.0), 0.0);
    EXPECT_EQ(norm_l2_gamma_s(zero, FieldBoundary::temperature(1.0)), 0.0);
}

TEST(Norms, LpWithTwoIsL2) {
    const ScalarField f = random_field(g0, 3);
    EXPECT_NEAR(norm_lp(f, 2.0), norm_l2(f), 1e-14 * norm_l2(f));
    EXPECT_THROW(norm_lp(f, 0.5), std::invalid_argument);
}

TEST(Norms, GradientSeminormMatchesLaplacianPairing) {
    // <f, lap_h f> = -||grad_H f||^2 - a ||f||^2_{Gamma_s} for Robin(a).
    const double a = 0.7;
    const FieldBoundary bc = FieldBoundary::temperature(a);
    const ScalarField f = random_field(g0, 9);
    const double lhs = inner(f, laplacian_h(f, bc));
    const double g = seminorm_h1_parts(f, bc).grad_h;
    const double s = norm_l2_gamma_s(f, bc);
    EXPECT_NEAR(lhs, -g * g - a * s * s, 1e-12 * g * g);
}

TEST(Decompose, ZUniformHasNoBaroclinicPart) {
    VectorField v(g0);
    v.u = ScalarField::sample(g0, [](double x, double y, double) { return x - y; });
    v.v = ScalarField::sample(g0, [](double x, double, double) { return x * x; });
    const ModeSplit m = decompose(v);
    EXPECT_EQ(norm_linf(m.vtilde.u), 0.0);
    EXPECT_EQ(norm_linf(m.vtilde.v), 0.0);
}

TEST(Decompose, OddAboutMidDepthHasNoBarotropicPart) {
    VectorField v(g0);
    v.u = ScalarField::sample(g0, [&](double, double, double z) { return z + g0.h / 2; });
    const ModeSplit m = decompose(v);
    EXPECT_LT(norm_linf(m.vbar.u), 1e-15);
    EXPECT_LT(norm_linf(m.vtilde.u - v.u), 1e-15);
}

TEST(Decompose, ReconstructsRandomField) {
    VectorField v(random_field(g0, 1), random_field(g0, 2));
    const ModeSplit m = decompose(v);
    const VectorField back = broadcast(m.vbar, g0) + m.vtilde;
    EXPECT_LT(norm_linf(back.u - v.u), 1e-15);
    EXPECT_LT(norm_linf(back.v - v.v), 1e-15);
    EXPECT_LT(norm_linf(depth_average(m.vtilde.u)), 1e-15);
}

TEST(Decompose, SplitIsOrthogonal) {
    const VectorField v(random_field(g0, 7), random_field(g0, 8));
    const ModeSplit m = decompose(v);
    const double a = norm_l2(v), b = norm_l2(m.vbar), c = norm_l2(m.vtilde);
    EXPECT_NEAR(a * a, b * b + c * c, 1e-12 * a * a);
}

TEST(Norms, GammaSVanishesForDirichletGhosts) {
    const ScalarField f = random_field(g0, 12);
    EXPECT_LT(norm_l2_gamma_s(f, FieldBoundary::velocity()), 1e-15);
}

TEST(Norms, LpMonotoneOnUnitVolume) {
    const GridSpec g = GridSpec::make(1.0, 1.0, 1.0, 6, 6, 4);
    for (unsigned seed = 20; seed < 25; ++seed) {
        const ScalarField f = random_field(g, seed);
        double last = 0.0;
        for (double p : {1.0, 1.5, 2.0, 3.0, 4.0, 8.0}) {
            const double n = norm_lp(f, p);
            EXPECT_GE(n, last * (1 - 1e-14));
            last = n;
        }
        EXPECT_LE(last, norm_linf(f));
    }
}

TEST(ProductBound, ZeroArgumentGivesZero) {
    const ScalarField z(g0), f = random_field(g0, 4);
    EXPECT_EQ(anisotropic_product_bound(z, f, f).lhs, 0.0);
    EXPECT_EQ(anisotropic_product_bound(f, z, f).lhs, 0.0);
    EXPECT_EQ(anisotropic_product_bound(f, f, z).lhs, 0.0);
}

TEST(ProductBound, ConstantsMatchClosedForm) {
    const ScalarField one(g0, 1.0);
    const ProductBound b = anisotropic_product_bound(one, one, one);
    const double M = g0.area(), h = g0.h, L = std::hypot(g0.Lx, g0.Ly);
    EXPECT_NEAR(b.lhs, h * h * M, 1e-14);
    const double n = std::sqrt(h * M);
    EXPECT_NEAR(b.rhs_factor, n * std::sqrt(n * (n / L)) * std::sqrt(n * (n / L)), 1e-14);
    EXPECT_FALSE(b.violation);
}

TEST(PhysParams, Validation) {
    PhysParams p;
    EXPECT_NO_THROW(p.validate());
    for (auto mutate : std::initializer_list<void (*)(PhysParams&)>{
             [](PhysParams& q) { q.Re1 = 0.0; }, [](PhysParams& q) { q.Re2 = -1.0; },
             [](PhysParams& q) { q.R_T = 0.0; }, [](PhysParams& q) { q.eps = -1e-3; },
             [](PhysParams& q) { q.alpha_T = -1.0; }, [](PhysParams& q) { q.alpha_v = -1.0; },
             [](PhysParams& q) { q.delta = 0.0; }, [](PhysParams& q) { q.delta = 1.5; }}) {
        PhysParams q;
        mutate(q);
        EXPECT_THROW(q.validate(), std::invalid_argument);
    }
}

TEST(State, FiniteCheck) {
    State s(g0);
    EXPECT_TRUE(s.all_finite());
    s.T(1, 1, 1) = std::nan("");
    EXPECT_FALSE(s.all_finite());
}

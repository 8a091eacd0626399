#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "hydrostat/initial.hpp"
#include "hydrostat/norms.hpp"
#include "hydrostat/operators.hpp"
#include "hydrostat/pressure.hpp"

using namespace hydrostat;

namespace {

constexpr double pi = std::numbers::pi;

const GridSpec g16 = GridSpec::make(1.0, 1.0, 1.0, 16, 16, 8);

ScalarField random_field(const GridSpec& g, unsigned seed) {
    std::mt19937 gen(seed);
    std::uniform_real_distribution<double> d(-1.0, 1.0);
    ScalarField f(g);
    for (double& x : f.values()) x = d(gen);
    return f;
}

double mean(const ScalarField& f) {
    double s = 0.0;
    for (double x : f.values()) s += x;
    return s / static_cast<double>(f.size());
}

}  // namespace

TEST(Projection, ConsistentFieldIsLeftAlone) {
    const State s = random_state(g16, 5);
    VectorField v = s.v;
    PressureProjector proj(g16, 1e-10);
    const auto res = proj.project(v, 0.1);
    EXPECT_LE(norm_l2(v - s.v), 1e-9 * norm_l2(s.v));
    EXPECT_LE(norm_linf(res.phi), 1e-8);
}

TEST(Projection, AnnihilatesGradients) {
    PressureProjector proj(g16, 1e-10);
    const GridSpec s = g16.surface();
    const ScalarField psi = ScalarField::sample(s, [](double x, double y, double) {
        return std::cos(pi * x) * std::cos(pi * y);
    });
    const VectorField v_star = broadcast(proj.gradient(psi), g16);
    VectorField v = v_star;
    const auto res = proj.project(v, 1.0);
    EXPECT_TRUE(res.report.converged);
    EXPECT_LE(norm_l2(v), 1e-6 * norm_l2(v_star));
}

TEST(Projection, GaugeAndConstraint) {
    VectorField v(random_field(g16, 1), random_field(g16, 2));
    const double before = depth_mean_divergence_norm(v);
    PressureProjector proj(g16, 1e-10);
    const auto res = proj.project(v, 0.05);
    EXPECT_NEAR(mean(res.phi), 0.0, 1e-13 * norm_linf(res.phi));
    EXPECT_LE(depth_mean_divergence_norm(v), 1e-9 * before);
    EXPECT_LE(res.report.achieved_residual, 10.0 * res.report.tolerance);
}

TEST(Projection, OperatorIsSymmetricNegativeSemidefinite) {
    PressureProjector proj(g16);
    const GridSpec s = g16.surface();
    const ScalarField a = random_field(s, 3), b = random_field(s, 4);
    EXPECT_NEAR(inner(a, proj.apply_laplacian(b)), inner(proj.apply_laplacian(a), b), 1e-10);
    EXPECT_LT(inner(a, proj.apply_laplacian(a)), 0.0);
    // div = -grad^T
    const VectorField u(random_field(s, 5), random_field(s, 6));
    EXPECT_NEAR(inner(proj.divergence(u), a), -inner(u, proj.gradient(a)), 1e-10);
}

TEST(Projection, NonConvergenceCarriesReport) {
    VectorField v(random_field(g16, 1), random_field(g16, 2));
    PressureProjector proj(g16, 1e-14, 2);
    try {
        proj.project(v, 1.0);
        FAIL() << "expected ProjectionFailure";
    } catch (const ProjectionFailure& e) {
        EXPECT_FALSE(e.report.converged);
        EXPECT_EQ(e.report.iteration_count, 2);
        EXPECT_GT(e.report.achieved_residual, 1e-14);
    }
}

TEST(ReconstructP, ZeroTemperature) {
    const ScalarField ps = random_field(g16.surface(), 8);
    const ScalarField p = reconstruct_p(ScalarField(g16), ps);
    for (int k = 0; k < g16.nz; ++k)
        for (int j = 0; j < g16.ny; ++j)
            for (int i = 0; i < g16.nx; ++i) EXPECT_EQ(p(i, j, k), ps(i, j, 0));
}

TEST(ReconstructP, UniformTemperature) {
    const ScalarField ps = random_field(g16.surface(), 8);
    const ScalarField p = reconstruct_p(ScalarField(g16, 2.0), ps);
    for (int k = 0; k < g16.nz; ++k) EXPECT_NEAR(p(3, 4, k), -2.0 * (g16.zc(k) + g16.h) + ps(3, 4, 0), 1e-14);
}

TEST(ReconstructP, HydrostaticBalance) {
    const ScalarField T = random_field(g16, 9);
    const ScalarField p = reconstruct_p(T, ScalarField(g16.surface()));
    const double dz = g16.dz();
    for (int k = 0; k + 1 < g16.nz; ++k)
        for (int j = 0; j < g16.ny; ++j)
            for (int i = 0; i < g16.nx; ++i)
                EXPECT_NEAR(p(i, j, k + 1) - p(i, j, k), -0.5 * (T(i, j, k) + T(i, j, k + 1)) * dz, 1e-14);
}

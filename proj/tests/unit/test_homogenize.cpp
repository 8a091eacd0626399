#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "hydrostat/homogenize.hpp"
#include "hydrostat/initial.hpp"
#include "hydrostat/norms.hpp"
#include "hydrostat/operators.hpp"
#include "hydrostat/scenarios.hpp"

using namespace hydrostat;

namespace {

constexpr double pi = std::numbers::pi;

const GridSpec g8 = GridSpec::make(1.0, 1.0, 1.0, 8, 8, 6);
const GridSpec g16 = GridSpec::make(1.0, 1.0, 1.0, 16, 16, 8);

VectorField wall_free_tau(const GridSpec& g, double scale) {
    const GridSpec s = g.surface();
    VectorField tau(s);
    tau.u = ScalarField::sample(s, [&](double x, double y, double) {
        return scale * std::sin(pi * x / g.Lx) * std::sin(pi * y / g.Ly);
    });
    return tau;
}

}  // namespace

TEST(LiftProfile, LayerAveragesOfQuadratic) {
    const GridSpec g = GridSpec::make(1.0, 1.0, 2.0, 4, 4, 5);
    const LiftProfile prof(g);
    double sum = 0.0;
    for (int k = 0; k < g.nz; ++k) {
        // Simpson is exact for the quadratic.
        const double a = k * g.dz(), b = (k + 1) * g.dz(), m = 0.5 * (a + b);
        auto P = [&](double s) { return s * s / 2 - g.h * g.h / 6; };
        EXPECT_NEAR(prof.P[k], (P(a) + 4 * P(m) + P(b)) / 6, 1e-14);
        EXPECT_NEAR(prof.zh[k], m, 1e-15);
        EXPECT_NEAR(prof.Q[k], m * m * m - g.h * g.h * m, 1e-14);
        sum += prof.P[k] * g.dz();
    }
    EXPECT_NEAR(sum, 0.0, 1e-14);
}

TEST(Lift, RoundTripAndDepthMean) {
    const State s = random_state(g8, 3);
    const VectorField tau = wall_free_tau(g8, 0.8);
    const VectorField V = lift(s.v, tau, 1.5);
    EXPECT_GT(norm_l2(V - s.v), 0.0);
    EXPECT_LT(norm_linf(unlift(V, tau, 1.5).u - s.v.u), 1e-14);
    EXPECT_LT(norm_linf(depth_average(V.u) - depth_average(s.v.u)), 1e-14);
    EXPECT_EQ(norm_linf(lift(s.v, tau, 0.0).u - s.v.u), 0.0);
    EXPECT_THROW(lift(s.v, VectorField(g8), 1.0), std::invalid_argument);
}

TEST(BoundaryForcing, SampleValidation) {
    BoundaryForcing f(g8, 1.0, 1.0);
    f.add_sample(0.0, VectorField(g8.surface()), ScalarField(g8));
    EXPECT_THROW(f.add_sample(0.0, VectorField(g8.surface()), ScalarField(g8)), std::invalid_argument);
    EXPECT_THROW(f.add_sample(1.0, VectorField(g8), ScalarField(g8)), std::invalid_argument);
    ScalarField bad(g8);
    bad[3] = std::nan("");
    EXPECT_THROW(f.add_sample(1.0, VectorField(g8.surface()), bad), std::domain_error);
    EXPECT_THROW(BoundaryForcing(g8, -1.0, 0.0), std::invalid_argument);
}

TEST(BoundaryForcing, InterpolationAndRange) {
    BoundaryForcing f(g8, 0.0, 0.0);
    const GridSpec s = g8.surface();
    f.add_sample(0.0, VectorField(s), ScalarField(g8));
    EXPECT_THROW(f.tau(0.0), std::logic_error);
    // tau = t^2, exactly differentiated by the three-point rule at the nodes.
    for (double t : {0.5, 1.0, 1.5}) f.add_sample(t, VectorField(s, t * t), ScalarField(g8, 2.0 * t));
    EXPECT_NEAR(f.tau(0.25).u[0], 0.5 * 0.25, 1e-15);
    EXPECT_NEAR(f.Ts(0.75)[5], 1.5, 1e-15);
    EXPECT_NEAR(f.dtau_dt(0.0).u[0], 0.0, 1e-14);
    EXPECT_NEAR(f.dtau_dt(1.0).v[0], 2.0, 1e-14);
    EXPECT_NEAR(f.dtau_dt(1.5).u[0], 3.0, 1e-14);
    EXPECT_NEAR(f.dtau_dt(0.75).u[0], 1.5, 1e-14);
    EXPECT_THROW(f.tau(1.6), std::out_of_range);
    EXPECT_THROW(f.Ts(-0.1), std::out_of_range);
}

TEST(BoundaryForcing, Compatibility) {
    const GridSpec s = g8.surface();
    {
        BoundaryForcing f(g8, 1.0, 0.0);
        for (double t : {0.0, 0.1, 0.2}) f.add_sample(t, VectorField(s, 1.0), ScalarField(g8));
        EXPECT_THROW(f.check_compatibility(), std::invalid_argument);
    }
    {
        BoundaryForcing f(g8, 0.0, 0.0);
        for (double t : {0.0, 0.1, 0.2}) f.add_sample(t, VectorField(s, 1.0), ScalarField(g8));
        EXPECT_NO_THROW(f.check_compatibility());
    }
    {
        BoundaryForcing f(g8, 1.0, 0.0);
        for (double t : {0.0, 0.1, 0.2}) f.add_sample(t, wall_free_tau(g8, 1.0), ScalarField(g8));
        EXPECT_NO_THROW(f.check_compatibility());
    }
    {
        BoundaryForcing f(g8, 0.0, 1.0);
        const ScalarField Ts = ScalarField::sample(g8, [](double, double, double z) { return z; });
        for (double t : {0.0, 0.1, 0.2}) f.add_sample(t, VectorField(s), Ts);
        EXPECT_THROW(f.check_compatibility(), std::invalid_argument);
    }
    EXPECT_NO_THROW(analytic_forcing(g16, 1.0, 1.0, 1.0, 1.0, 0.5).check_compatibility());
}

TEST(Tstar, ZeroData) {
    const BoundaryForcing f = BoundaryForcing::zero(g8, 1.0, 1.0, 1.0);
    for (const ScalarField& T : solve_Tstar(f, {0.0, 0.3, 0.9}, 0.05)) EXPECT_EQ(norm_linf(T), 0.0);
    const BoundaryForcing off = analytic_forcing(g16, 1.0, 0.0, 1.0, 1.0, 1.0);
    for (const ScalarField& T : solve_Tstar(off, {0.5, 1.0}, 0.05)) EXPECT_EQ(norm_linf(T), 0.0);
}

TEST(Tstar, ConstantSideTemperatureIsApproachedMonotonically) {
    BoundaryForcing f(g8, 0.0, 2.0);
    for (double t : {0.0, 1.0, 2.0}) f.add_sample(t, VectorField(g8.surface()), ScalarField(g8, 1.0));
    const auto T = solve_Tstar(f, {0.0, 0.25, 0.5, 1.0, 2.0}, 0.01);
    double last = -1.0;
    for (const ScalarField& x : T) {
        const double mean = depth_average(x)[0];
        EXPECT_LE(norm_linf(x), 1.0 + 1e-12);
        EXPECT_GT(mean, last);
        last = mean;
    }
    EXPECT_GT(last, 0.5);
}

TEST(CorrectionTerms, ZeroInputs) {
    const GridSpec s = g8.surface();
    const CorrectionInputs in{VectorField(s), VectorField(s), ScalarField(g8), ScalarField(g8), ScalarField(g8)};
    PhysParams p;
    p.f = 1.0;
    p.alpha_v = 1.0;
    p.alpha_T = 0.5;
    const State st = random_state(g8, 4);
    const CorrectionTerms c = correction_terms(st.v, st.T, in, p);
    for (const ScalarField* f : {&c.a_tau.u, &c.a_tau.v, &c.b, &c.F_tau.u, &c.F_tau.v, &c.G_tau})
        EXPECT_EQ(norm_linf(*f), 0.0);
}

TEST(CorrectionTerms, UniformStressInInterior) {
    // tau = (1, 0), no T*: away from the wall only the rotation and the
    // Re2 damping of the lift survive in F_tau.
    const GridSpec s = g8.surface();
    VectorField tau(s);
    tau.u.fill(1.0);
    const CorrectionInputs in{tau, VectorField(s), ScalarField(g8), ScalarField(g8), ScalarField(g8)};
    PhysParams p;
    p.f = 0.7;
    p.alpha_v = 2.0;
    p.Re2 = 4.0;
    const CorrectionTerms c = correction_terms(VectorField(g8), ScalarField(g8), in, p);
    const LiftProfile prof(g8);
    const double sc = p.alpha_v / g8.h;
    for (int k = 0; k < g8.nz; ++k)
        for (int j = 2; j < g8.ny - 2; ++j)
            for (int i = 2; i < g8.nx - 2; ++i) {
                EXPECT_NEAR(c.F_tau.u(i, j, k), -sc / p.Re2, 1e-13);
                EXPECT_NEAR(c.F_tau.v(i, j, k), sc * prof.P[k] * p.f, 1e-13);
                EXPECT_EQ(c.G_tau(i, j, k), 0.0);
            }
    EXPECT_EQ(norm_linf(c.a_tau.u), 0.0);
    EXPECT_EQ(norm_linf(c.b), 0.0);
}

TEST(CorrectionTerms, AdvectiveCorrectionIsLinearInV) {
    const BoundaryForcing f = analytic_forcing(g8, 1.0, 0.0, 1.0, 0.0, 1.0);
    const CorrectionInputs in{f.tau(0.5), f.dtau_dt(0.5), ScalarField(g8), ScalarField(g8), ScalarField(g8)};
    PhysParams p;
    p.alpha_v = 1.0;
    const State st = random_state(g8, 11);
    const CorrectionTerms a = correction_terms(st.v, st.T, in, p);
    const CorrectionTerms b = correction_terms(2.0 * st.v, 2.0 * st.T, in, p);
    EXPECT_GT(norm_l2(a.a_tau.u), 0.0);
    EXPECT_LT(norm_linf(b.a_tau.u - 2.0 * a.a_tau.u), 1e-12 * norm_linf(a.a_tau.u));
    EXPECT_LT(norm_linf(b.b - 2.0 * a.b), 1e-12 * std::max(norm_linf(a.b), 1.0));
    EXPECT_LT(norm_linf(b.F_tau.u - a.F_tau.u), 1e-15);
}

TEST(Equivalence, ZeroForcingBranchesAgree) {
    PhysParams p;
    p.alpha_v = 1.0;
    p.alpha_T = 0.5;
    p.f = 1.0;
    const State init = random_state(g8, 2);
    const BoundaryForcing f = BoundaryForcing::zero(g8, 1.0, 0.5, 1.0);
    const EquivalenceReport r = equivalence_run(init, p, StepConfig{}, f, 0.01, 0.1, 2);
    ASSERT_FALSE(r.failed) << r.message;
    EXPECT_LE(r.dv_rel, 1e-13);
    EXPECT_LE(r.dT_rel, 1e-13);
    EXPECT_EQ(r.steps, 10);
}

TEST(Equivalence, RejectsShortForcingAndMismatchedCoefficients) {
    PhysParams p;
    p.alpha_v = 1.0;
    p.alpha_T = 0.5;
    const State init = random_state(g8, 2);
    const BoundaryForcing f = BoundaryForcing::zero(g8, 1.0, 0.5, 0.1);
    EXPECT_THROW(equivalence_run(init, p, StepConfig{}, f, 0.01, 0.1), std::invalid_argument);
    const BoundaryForcing g = BoundaryForcing::zero(g8, 2.0, 0.5, 1.0);
    EXPECT_THROW(equivalence_run(init, p, StepConfig{}, g, 0.01, 0.1), std::invalid_argument);
}

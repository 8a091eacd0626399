#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "hydrostat/initial.hpp"
#include "hydrostat/norms.hpp"
#include "hydrostat/operators.hpp"
#include "hydrostat/stepper.hpp"

using namespace hydrostat;

namespace {

constexpr double pi = std::numbers::pi;

const GridSpec g8 = GridSpec::make(1.0, 1.0, 1.0, 8, 8, 4);

// Dense Gaussian elimination with partial pivoting.
std::vector<double> dense_solve(std::vector<std::vector<double>> A, std::vector<double> b) {
    const std::size_t n = b.size();
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t piv = c;
        for (std::size_t r = c + 1; r < n; ++r)
            if (std::abs(A[r][c]) > std::abs(A[piv][c])) piv = r;
        std::swap(A[c], A[piv]);
        std::swap(b[c], b[piv]);
        for (std::size_t r = c + 1; r < n; ++r) {
            const double m = A[r][c] / A[c][c];
            for (std::size_t k = c; k < n; ++k) A[r][k] -= m * A[c][k];
            b[r] -= m * b[c];
        }
    }
    std::vector<double> x(n);
    for (std::size_t r = n; r-- > 0;) {
        double s = b[r];
        for (std::size_t k = r + 1; k < n; ++k) s -= A[r][k] * x[k];
        x[r] = s / A[r][r];
    }
    return x;
}

State advance(State s, const PhysParams& p, StepConfig c, double dt, int steps) {
    c.dt_max = dt;
    c.dt_min = dt * 1e-3;
    Stepper st(s.grid(), p, c);
    st.prepare(s);
    for (int n = 0; n < steps; ++n) {
        const auto rep = st.step(s, nullptr, dt);
        EXPECT_FALSE(rep.rejected);
    }
    return s;
}

}  // namespace

TEST(Step, ZeroStateIsFixedPoint) {
    State s(g8);
    PhysParams p;
    p.f = 1.0;
    p.eps = 0.1;
    p.alpha_T = 0.5;
    Stepper st(g8, p, StepConfig{});
    for (int n = 0; n < 5; ++n) st.step(s);
    EXPECT_EQ(norm_linf(s.v.u), 0.0);
    EXPECT_EQ(norm_linf(s.v.v), 0.0);
    EXPECT_EQ(norm_linf(s.T), 0.0);
    EXPECT_GT(s.t, 0.0);
}

TEST(Step, FrozenVelocityEigenmodeDecay) {
    const GridSpec g = GridSpec::make(1.0, 1.0, 1.0, 16, 16, 4);
    State s(g);
    s.T = ScalarField::sample(g, [](double x, double y, double) { return std::cos(pi * x) * std::cos(pi * y); });
    PhysParams p;
    StepConfig c;
    c.frozen_velocity = true;
    const State out = advance(s, p, c, 1e-3, 1000);
    const double lam = 2 * (2.0 - 2.0 * std::cos(pi * g.dx())) / (g.dx() * g.dx());
    const double expected = std::exp(-lam / p.R_T);
    EXPECT_NEAR(norm_l2(out.T) / norm_l2(s.T), expected, 1e-3 * expected);
}

TEST(Step, ConstraintHoldsAfterEveryStep) {
    State s = random_state(g8, 4);
    PhysParams p;
    p.f = 2.0;
    Stepper st(g8, p, StepConfig{});
    for (int n = 0; n < 20; ++n) {
        st.step(s);
        EXPECT_LE(depth_mean_divergence_norm(s.v), 1e-8 * seminorm_h1_parts(s.v, FieldBoundary::velocity()).grad_h);
    }
}

TEST(VerticalDiffusion, MatchesDenseSolve) {
    const GridSpec g = GridSpec::make(1.0, 1.0, 2.0, 4, 4, 9);
    std::mt19937 gen(12);
    std::uniform_real_distribution<double> d(-1.0, 1.0);
    ScalarField q(g);
    for (double& x : q.values()) x = d(gen);
    ScalarField flux(g.surface());
    for (double& x : flux.values()) x = d(gen);

    const double kappa = 0.1, dt = 0.3;
    ScalarField out = q;
    solve_vertical_diffusion(out, kappa, dt, &flux);

    const int nz = g.nz;
    const double r = dt * kappa / (g.dz() * g.dz());
    std::vector<std::vector<double>> A(nz, std::vector<double>(nz, 0.0));
    for (int k = 0; k < nz; ++k) {
        A[k][k] = 1.0;
        if (k > 0) {
            A[k][k] += r;
            A[k][k - 1] -= r;
        }
        if (k < nz - 1) {
            A[k][k] += r;
            A[k][k + 1] -= r;
        }
    }
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) {
            std::vector<double> b(nz);
            for (int k = 0; k < nz; ++k) b[k] = q(i, j, k);
            b[nz - 1] += dt * kappa * flux(i, j, 0) / g.dz();
            const auto x = dense_solve(A, b);
            for (int k = 0; k < nz; ++k) EXPECT_NEAR(out(i, j, k), x[k], 1e-13);
        }
}

TEST(VerticalDiffusion, ConservesColumnContentWithoutFlux) {
    const GridSpec g = GridSpec::make(1.0, 1.0, 1.0, 4, 4, 6);
    ScalarField q = ScalarField::sample(g, [](double x, double, double z) { return x + z * z; });
    const double before = depth_average(q)[5];
    solve_vertical_diffusion(q, 2.0, 0.5);
    EXPECT_NEAR(depth_average(q)[5], before, 1e-14);
}

TEST(CflDt, ZeroStateUsesDtMax) {
    StepConfig c;
    c.dt_max = 0.02;
    PhysParams p;
    p.Re1 = p.R_T = 1e9;
    EXPECT_DOUBLE_EQ(cfl_dt(State(g8), p, c), 0.02);
}

TEST(CflDt, AdvectiveLimit) {
    const GridSpec g = GridSpec::make(1.0, 1.0, 1.0, 32, 32, 4);
    State s(g);
    s.v.u.fill(1.0);
    StepConfig c;
    c.dt_max = 1.0;
    c.cfl_adv = 0.5;
    PhysParams p;
    p.Re1 = p.R_T = 1e9;
    EXPECT_DOUBLE_EQ(cfl_dt(s, p, c), 1.0 / 64.0);
}

TEST(CflDt, DiffusiveLimitScalesWithReynolds) {
    StepConfig c;
    c.dt_max = 1.0;
    PhysParams p;
    p.Re1 = 1.0;
    p.R_T = 100.0;
    const double a = cfl_dt(State(g8), p, c);
    p.Re1 = 2.0;
    EXPECT_DOUBLE_EQ(cfl_dt(State(g8), p, c), 2.0 * a);
}

TEST(CflDt, CoriolisLimit) {
    StepConfig c;
    c.dt_max = 1.0;
    PhysParams p;
    p.Re1 = p.R_T = 1e9;
    p.f = 10.0;
    EXPECT_DOUBLE_EQ(cfl_dt(State(g8), p, c), 0.05);
}

TEST(Step, HalvesOversizedSteps) {
    State s = random_state(g8, 2);
    StepConfig c;
    c.dt_max = 1.0;
    Stepper st(g8, PhysParams{}, c);
    const double safe = cfl_dt(s, PhysParams{}, c);
    const auto rep = st.step(s, nullptr, 8.0 * safe);
    EXPECT_TRUE(rep.rejected);
    EXPECT_GE(rep.rejections, 3);
    EXPECT_LE(rep.dt, safe * (1 + 1e-12));
    EXPECT_NEAR(s.t, rep.dt, 1e-15);
}

TEST(Step, FailsBelowDtMin) {
    State s = random_state(g8, 2);
    StepConfig c;
    c.dt_max = 1.0;
    c.dt_min = 0.5;
    Stepper st(g8, PhysParams{}, c);
    EXPECT_THROW(st.step(s, nullptr, 0.9), NumericalFailure);
}

TEST(Step, NonFiniteStateFails) {
    State s = random_state(g8, 2);
    s.T(1, 1, 1) = std::nan("");
    Stepper st(g8, PhysParams{}, StepConfig{});
    EXPECT_THROW(st.step(s, nullptr, 1e-3), NumericalFailure);
}

TEST(TemporalOrder, ExplicitSubsystemIsSecondOrder) {
    State s = random_state(g8, 6);
    s.v = VectorField(g8);
    PhysParams p;
    StepConfig c;
    c.frozen_velocity = true;
    const double t = 0.2;
    const State ref = advance(s, p, c, t / 320, 320);
    const double e1 = norm_l2(advance(s, p, c, t / 20, 20).T - ref.T);
    const double e2 = norm_l2(advance(s, p, c, t / 40, 40).T - ref.T);
    EXPECT_GT(std::log2(e1 / e2), 1.9);
}

TEST(TemporalOrder, FullSystemIsAtLeastFirstOrder) {
    const State s = random_state(g8, 6);
    PhysParams p;
    p.f = 1.0;
    p.eps = 0.05;
    StepConfig c;
    const double t = 0.2;
    const State ref = advance(s, p, c, t / 320, 320);
    auto err = [&](int n) {
        const State o = advance(s, p, c, t / n, n);
        return std::hypot(norm_l2(o.v - ref.v), norm_l2(o.T - ref.T));
    };
    EXPECT_GT(std::log2(err(20) / err(40)), 0.9);
}

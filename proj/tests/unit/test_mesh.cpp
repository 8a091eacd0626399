#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "hydrostat/field.hpp"
#include "hydrostat/norms.hpp"
#include "hydrostat/operators.hpp"

using namespace hydrostat;

namespace {

constexpr double pi = std::numbers::pi;

GridSpec grid(int nx, int ny, int nz, double Lx = 1.0, double Ly = 1.0, double h = 1.0) {
    return GridSpec::make(Lx, Ly, h, nx, ny, nz);
}

ScalarField random_field(const GridSpec& g, unsigned seed) {
    std::mt19937 gen(seed);
    std::uniform_real_distribution<double> d(-1.0, 1.0);
    ScalarField f(g);
    for (double& x : f.values()) x = d(gen);
    return f;
}

}  // namespace

TEST(GridSpec, RejectsTooFewCells) {
    EXPECT_THROW(grid(3, 8, 4), std::invalid_argument);
    EXPECT_THROW(grid(8, 8, 1), std::invalid_argument);
    EXPECT_THROW(grid(8, 8, 4, -1.0), std::invalid_argument);
    EXPECT_NO_THROW(grid(4, 4, 2));
}

TEST(GridSpec, Spacings) {
    const GridSpec g = grid(8, 4, 2, 2.0, 1.0, 0.5);
    EXPECT_DOUBLE_EQ(g.dx(), 0.25);
    EXPECT_DOUBLE_EQ(g.dy(), 0.25);
    EXPECT_DOUBLE_EQ(g.dz(), 0.25);
    EXPECT_DOUBLE_EQ(g.zc(0), -0.375);
    EXPECT_DOUBLE_EQ(g.zf(2), 0.0);
    EXPECT_EQ(g.refined().nx, 16);
    EXPECT_EQ(g.surface().nz, 1);
}

TEST(BoundaryCondition, GhostCoefficients) {
    EXPECT_DOUBLE_EQ(BoundaryCondition::dirichlet0().coefficient(0.1), -1.0);
    EXPECT_DOUBLE_EQ(BoundaryCondition::neumann0().coefficient(0.1), 1.0);
    EXPECT_DOUBLE_EQ(BoundaryCondition::robin(2.0).coefficient(0.1), (2.0 - 0.2) / (2.0 + 0.2));
}

TEST(Ddx, ConstantHasZeroDerivative) {
    const GridSpec g = grid(8, 8, 4);
    const ScalarField f(g, 3.0);
    EXPECT_EQ(norm_linf(ddx(f, BoundaryCondition::neumann0())), 0.0);
    EXPECT_EQ(norm_linf(ddy(f, BoundaryCondition::neumann0())), 0.0);
}

TEST(Ddx, LinearIsExactInInterior) {
    const GridSpec g = grid(16, 8, 4, 2.0);
    const ScalarField f = ScalarField::sample(g, [](double x, double, double) { return x; });
    const ScalarField d = ddx(f, BoundaryCondition::neumann0());
    for (int k = 0; k < g.nz; ++k)
        for (int j = 0; j < g.ny; ++j)
            for (int i = 1; i < g.nx - 1; ++i) EXPECT_NEAR(d(i, j, k), 1.0, 1e-13);
}

TEST(Ddx, SecondOrderInInterior) {
    auto err = [](int n) {
        const GridSpec g = grid(n, 4, 2);
        const ScalarField f = ScalarField::sample(g, [](double x, double, double) { return std::sin(2 * pi * x); });
        const ScalarField exact =
            ScalarField::sample(g, [](double x, double, double) { return 2 * pi * std::cos(2 * pi * x); });
        const ScalarField d = ddx(f, BoundaryCondition::neumann0()) - exact;
        double m = 0.0;
        for (int k = 0; k < g.nz; ++k)
            for (int j = 0; j < g.ny; ++j)
                for (int i = 1; i < g.nx - 1; ++i) m = std::max(m, std::abs(d(i, j, k)));
        return m;
    };
    // Richardson: fit C on the 32 grid, predict the 64 grid.
    const double e32 = err(32), e64 = err(64);
    const double C = e32 * 32.0 * 32.0;
    EXPECT_NEAR(std::log2(e32 / e64), 2.0, 0.05);
    EXPECT_LE(e64, 1.05 * C / (64.0 * 64.0));
}

TEST(Ddx, RejectsNonFiniteInputNamingTheEntry) {
    const GridSpec g = grid(8, 8, 4);
    ScalarField f(g);
    f(2, 3, 1) = std::numeric_limits<double>::quiet_NaN();
    try {
        ddx(f, BoundaryCondition::neumann0());
        FAIL() << "expected a domain_error";
    } catch (const std::domain_error& e) {
        const std::string what = e.what();
        EXPECT_NE(what.find("2"), std::string::npos);
        EXPECT_NE(what.find("3"), std::string::npos);
    }
}

TEST(LaplacianH, ConstantAndQuadratic) {
    const GridSpec g = grid(12, 10, 3, 1.5, 1.0);
    EXPECT_EQ(norm_linf(laplacian_h(ScalarField(g, 2.5), BoundaryCondition::neumann0())), 0.0);
    const ScalarField q = ScalarField::sample(g, [](double x, double y, double) { return x * x + y * y; });
    const ScalarField l = laplacian_h(q, BoundaryCondition::neumann0());
    for (int k = 0; k < g.nz; ++k)
        for (int j = 1; j < g.ny - 1; ++j)
            for (int i = 1; i < g.nx - 1; ++i) EXPECT_NEAR(l(i, j, k), 4.0, 1e-10);
}

TEST(LaplacianH, DirichletEigenfunctionConvergesAtSecondOrder) {
    auto err = [](int n) {
        const double Lx = 1.0, Ly = 2.0;
        const GridSpec g = grid(n, n, 2, Lx, Ly);
        auto fn = [&](double x, double y, double) { return std::sin(pi * x / Lx) * std::sin(pi * y / Ly); };
        const ScalarField f = ScalarField::sample(g, fn);
        const double lam = pi * pi * (1 / (Lx * Lx) + 1 / (Ly * Ly));
        return norm_linf(laplacian_h(f, BoundaryCondition::dirichlet0()) + lam * f);
    };
    const double e1 = err(16), e2 = err(32), e3 = err(64);
    EXPECT_GT(std::log2(e1 / e2), 1.8);
    EXPECT_GT(std::log2(e2 / e3), 1.8);
}

TEST(VerticalCumint, Constants) {
    const GridSpec g = grid(4, 4, 5, 1.0, 1.0, 2.0);
    const WField w = vertical_cumint(ScalarField(g, 1.5));
    for (int k = 0; k <= g.nz; ++k) EXPECT_NEAR(w(1, 2, k), 1.5 * (g.zf(k) + g.h), 1e-14);
    const WField zero = vertical_cumint(ScalarField(g));
    for (double x : zero.values()) EXPECT_EQ(x, 0.0);
}

TEST(VerticalCumint, TopEqualsColumnSum) {
    const GridSpec g = grid(5, 4, 7, 1.0, 1.0, 0.7);
    const ScalarField f = random_field(g, 11);
    const WField w = vertical_cumint(f);
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) {
            long double s = 0.0L;
            for (int k = 0; k < g.nz; ++k) s += f(i, j, k);
            EXPECT_NEAR(w(i, j, g.nz), static_cast<double>(s) * g.dz(), 1e-14);
            EXPECT_EQ(w(i, j, 0), 0.0);
        }
}

TEST(DepthAverage, ConstantsLinearAndIdentity) {
    const GridSpec g = grid(4, 4, 6, 1.0, 1.0, 3.0);
    const ScalarField five = depth_average(ScalarField(g, 5.0));
    for (double x : five.values()) EXPECT_DOUBLE_EQ(x, 5.0);
    const ScalarField lin = ScalarField::sample(g, [&](double x, double, double z) { return (1 + x) * (z + 1.5); });
    const ScalarField lin_avg = depth_average(lin);
    for (double x : lin_avg.values()) EXPECT_NEAR(x, 0.0, 1e-14);
    const ScalarField f = random_field(g, 5);
    const ScalarField a = depth_average(f), s = depth_integral(f);
    for (std::size_t n = 0; n < a.size(); ++n) EXPECT_NEAR(s[n], g.h * a[n], 1e-14);
}

TEST(Restrict, AveragesBlocks) {
    const GridSpec c = grid(4, 4, 2);
    const ScalarField fine = ScalarField::sample(c.refined(), [](double x, double y, double z) { return x + 2 * y - z; });
    const ScalarField r = restrict_to(fine, c);
    const ScalarField exact = ScalarField::sample(c, [](double x, double y, double z) { return x + 2 * y - z; });
    for (std::size_t n = 0; n < r.size(); ++n) EXPECT_NEAR(r[n], exact[n], 1e-14);
    EXPECT_THROW(restrict_to(fine, grid(8, 8, 2)), std::invalid_argument);
}

#include <cmath>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "symmpinn/oracle/series.hpp"
#include "symmpinn/pde/problem.hpp"
#include "symmpinn/symmetry/invariance.hpp"

using namespace symmpinn;

TEST(Problem, InitialConditions) {
    const auto p1 = make_problem1();
    const auto p2 = make_problem2();
    EXPECT_DOUBLE_EQ(p1.initial_fn(0.5), 1.0);
    EXPECT_DOUBLE_EQ(p2.initial_fn(0.5), 1.0);
    EXPECT_EQ(p1.initial_fn(0.0), 0.0);
    EXPECT_EQ(p1.initial_fn(1.0), 0.0);
    EXPECT_NEAR(p2.initial_fn(1.0), 0.0, 1e-15);
}

TEST(Problem, Parameters) {
    for (auto tag : {ProblemTag::p1, ProblemTag::p2}) {
        const auto p = make_problem(tag);
        EXPECT_EQ(p.nu, 0.1);
        EXPECT_EQ(p.a, 1.0);
        EXPECT_EQ(p.x_lo, 0.0);
        EXPECT_EQ(p.x_hi, 1.0);
        EXPECT_EQ(p.t_end, 3.0);
        EXPECT_EQ(p.oracle_id, tag);
        EXPECT_NO_THROW(p.validate());
    }
}

TEST(Problem, ValidateRejectsBadRanges) {
    auto p = make_problem1();
    p.x_hi = 0.0;
    EXPECT_THROW(p.validate(), config_error);
    p = make_problem1();
    p.t_end = 0.0;
    EXPECT_THROW(p.validate(), config_error);
    p = make_problem1();
    p.nu = -0.1;
    EXPECT_THROW(p.validate(), config_error);
}

TEST(Residual, ZeroNetworkIsASolution) {
    auto m = init_glorot(make_layer_sizes(3, 10), 1, {ActivationKind::gelu});
    std::fill(m.params.begin(), m.params.end(), 0.0);
    const auto p = make_problem1();
    for (double x : {0.1, 0.5, 0.9})
        for (double t : {0.0, 1.0, 3.0}) EXPECT_EQ(residual(m, p, x, t), 0.0);
}

TEST(Residual, ConstantNetworkIsASolution) {
    auto m = init_glorot(make_layer_sizes(2, 6), 1, {ActivationKind::tanh});
    std::fill(m.params.begin(), m.params.end(), 0.0);
    m.params[m.bias_offset(m.layer_count() - 1)] = 0.7;
    const auto p = make_problem1();
    EXPECT_DOUBLE_EQ(forward(m, 0.3, 1.2), 0.7);
    EXPECT_EQ(residual(m, p, 0.3, 1.2), 0.0);
}

TEST(Residual, LinearReadoutOfX) {
    // [2, 1]: no hidden layer, u = x
    const std::vector<std::size_t> sizes{2, 1};
    auto m = init_glorot(sizes, 0);
    m.params = {1.0, 0.0, 0.0};
    auto p = make_problem1();
    EXPECT_DOUBLE_EQ(residual(m, p, 0.3, 0.5), 0.3);
    p.a = 2.5;
    EXPECT_DOUBLE_EQ(residual(m, p, 0.3, 0.5), 0.75);
}

TEST(Residual, DependsOnlyOnParameters) {
    const auto sizes = make_layer_sizes(3, 12);
    const auto a = init_glorot(sizes, 5, {ActivationKind::mish});
    MlpModel b;
    b.layer_sizes = sizes;
    b.activation = ActivationKind::mish;
    b.params = a.params;
    const auto p = make_problem2();
    for (double x : {0.2, 0.6})
        for (double t : {0.4, 2.0}) EXPECT_EQ(residual(a, p, x, t), residual(b, p, x, t));
}

TEST(Residual, BurgersOperator) {
    const auto p = make_problem1();
    EXPECT_DOUBLE_EQ(burgers_residual(p, 2.0, 3.0, 5.0, 7.0), 5.0 + 6.0 - 0.7);
}

// The series oracle solves the equation: finite-difference residual at 50
// random interior points.
TEST(Residual, OracleSolvesBurgers) {
    for (auto tag : {ProblemTag::p1, ProblemTag::p2}) {
        const auto p = make_problem(tag);
        const oracle::SeriesSolution u(tag);
        std::mt19937_64 rng(11);
        std::uniform_real_distribution<double> ux(0.01, 0.99), ut(0.05, 3.0);
        double worst = 0.0;
        for (int i = 0; i < 50; ++i) {
            const auto s = symmetry::fd_jet([&](double x, double t) { return u(x, t); }, ux(rng), ut(rng), 1e-4);
            worst = std::max(worst, std::abs(burgers_residual(p, s.u, s.u_x, s.u_t, s.u_xx)));
        }
        EXPECT_LT(worst, 1e-4) << to_string(tag);
    }
}

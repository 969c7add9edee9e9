#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "symmpinn/autodiff/dual2.hpp"
#include "symmpinn/network/mlp.hpp"

using namespace symmpinn;
using namespace symmpinn::ad;

namespace {

double central(const std::function<double(double)>& f, double x, double h) { return (f(x + h) - f(x - h)) / (2 * h); }

double central2(const std::function<double(double)>& f, double x, double h) {
    return (f(x + h) - 2 * f(x) + f(x - h)) / (h * h);
}

double rel_err(double a, double b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); }

} // namespace

TEST(Dual2, PolynomialSquare) {
    const auto r = forward_dual2([](auto x, auto) { return x * x; }, 3.0, 0.0, Axis::x);
    EXPECT_DOUBLE_EQ(r.value, 9.0);
    EXPECT_DOUBLE_EQ(r.d1, 6.0);
    EXPECT_DOUBLE_EQ(r.d2, 2.0);
}

TEST(Dual2, SineAtCrest) {
    const auto r = forward_dual2([](auto x, auto) { return sin(x * std::numbers::pi); }, 0.5, 0.0, Axis::x);
    EXPECT_NEAR(r.value, 1.0, 1e-15);
    EXPECT_NEAR(r.d1, 0.0, 1e-15);
    EXPECT_NEAR(r.d2, -std::numbers::pi * std::numbers::pi, 1e-13);
}

TEST(Dual2, ProductRuleSecondOrder) {
    const Dual2<double> f(2.0, 3.0, 5.0), g(7.0, 11.0, 13.0);
    const auto p = f * g;
    EXPECT_DOUBLE_EQ(p.value, 14.0);
    EXPECT_DOUBLE_EQ(p.d1, 3.0 * 7.0 + 2.0 * 11.0);
    EXPECT_DOUBLE_EQ(p.d2, 5.0 * 7.0 + 2.0 * 3.0 * 11.0 + 2.0 * 13.0);
}

TEST(Dual2, DirectionSelectsAxis) {
    const auto f = [](auto x, auto t) { return x * x * t; };
    const auto dx = forward_dual2(f, 2.0, 3.0, Axis::x);
    const auto dt = forward_dual2(f, 2.0, 3.0, Axis::t);
    EXPECT_DOUBLE_EQ(dx.d1, 12.0);
    EXPECT_DOUBLE_EQ(dx.d2, 6.0);
    EXPECT_DOUBLE_EQ(dt.d1, 4.0);
    EXPECT_DOUBLE_EQ(dt.d2, 0.0);
}

// Every primitive against central differences of its double version.
TEST(Dual2, PrimitivesMatchFiniteDifferences) {
    struct Case {
        const char* name;
        std::function<Dual2<double>(Dual2<double>)> dual;
        std::function<double(double)> plain;
        double x;
    };
    const std::vector<Case> cases{
        {"exp", [](auto a) { return exp(a); }, [](double v) { return std::exp(v); }, 0.7},
        {"log", [](auto a) { return log(a); }, [](double v) { return std::log(v); }, 1.3},
        {"tanh", [](auto a) { return tanh(a); }, [](double v) { return std::tanh(v); }, -0.4},
        {"erf", [](auto a) { return erf(a); }, [](double v) { return std::erf(v); }, 0.6},
        {"sin", [](auto a) { return sin(a); }, [](double v) { return std::sin(v); }, 1.1},
        {"cos", [](auto a) { return cos(a); }, [](double v) { return std::cos(v); }, 1.1},
        {"sigmoid", [](auto a) { return sigmoid(a); }, [](double v) { return 1 / (1 + std::exp(-v)); }, -1.5},
        {"softplus", [](auto a) { return softplus(a); }, [](double v) { return std::log1p(std::exp(v)); }, 0.9},
        {"pow", [](auto a) { return pow(a, 2.5); }, [](double v) { return std::pow(v, 2.5); }, 1.7},
        {"div", [](auto a) { return 1.0 / (a * a + 1.0); }, [](double v) { return 1 / (v * v + 1); }, 0.3},
    };
    for (const auto& c : cases) {
        const auto r = c.dual(Dual2<double>::variable(c.x));
        EXPECT_NEAR(r.value, c.plain(c.x), 1e-14) << c.name;
        EXPECT_LT(rel_err(r.d1, central(c.plain, c.x, 1e-5)), 1e-8) << c.name;
        EXPECT_LT(rel_err(r.d2, central2(c.plain, c.x, 1e-4)), 1e-5) << c.name;
    }
}

TEST(Dual2, DomainErrors) {
    EXPECT_THROW(log(Dual2<double>::variable(0.0)), domain_error);
    EXPECT_THROW(log(Dual2<double>::variable(-1.0)), domain_error);
    EXPECT_THROW(Dual2<double>(1.0) / Dual2<double>::variable(0.0), domain_error);
    try {
        (void)log(Dual2<double>::variable(-2.0));
        FAIL();
    } catch (const domain_error& e) {
        EXPECT_EQ(e.primitive(), "log");
        EXPECT_EQ(e.node_index(), -1);
    }
}

TEST(GradTape, QuadraticGradient) {
    GradTape tape;
    std::vector<Var> p{tape.variable(1.0), tape.variable(-2.0), tape.variable(3.0)};
    Var loss = 0.0;
    for (const auto& v : p) loss = loss + v * v;
    const auto g = grad_wrt_params(loss, p);
    EXPECT_EQ(g, (std::vector<double>{2.0, -4.0, 6.0}));
}

TEST(GradTape, ProductRule) {
    GradTape tape;
    std::vector<Var> p{tape.variable(2.5), tape.variable(-4.0)};
    const auto g = grad_wrt_params(p[0] * p[1], p);
    EXPECT_DOUBLE_EQ(g[0], -4.0);
    EXPECT_DOUBLE_EQ(g[1], 2.5);
}

TEST(GradTape, UnusedLeafGetsZero) {
    GradTape tape;
    std::vector<Var> p{tape.variable(2.0), tape.variable(5.0)};
    const auto g = grad_wrt_params(exp(p[0]), p);
    EXPECT_DOUBLE_EQ(g[0], std::exp(2.0));
    EXPECT_DOUBLE_EQ(g[1], 0.0);
}

TEST(GradTape, ForeignLeafIsRejected) {
    GradTape a, b;
    const Var x = a.variable(1.0);
    const Var y = b.variable(2.0);
    const std::vector<Var> leaves{y};
    EXPECT_THROW(grad_wrt_params(x * x, leaves), tape_mismatch);
    EXPECT_THROW((void)(x + y), tape_mismatch);
}

TEST(GradTape, DomainErrorCarriesNodeIndex) {
    GradTape tape;
    const Var x = tape.variable(-1.0);
    const Var y = x * 2.0; // node 1
    try {
        (void)log(y);
        FAIL();
    } catch (const domain_error& e) {
        EXPECT_EQ(e.primitive(), "log");
        EXPECT_EQ(e.node_index(), 2);
    }
}

TEST(GradTape, BackwardIsDeterministic) {
    const auto run = [] {
        GradTape tape;
        std::vector<Var> p;
        for (int i = 0; i < 20; ++i) p.push_back(tape.variable(0.1 * i - 0.7));
        Var s = 0.0;
        for (std::size_t i = 0; i < p.size(); ++i) s = s + tanh(p[i] * p[(i + 3) % p.size()]) + softplus(p[i]);
        return grad_wrt_params(s, p);
    };
    EXPECT_EQ(run(), run());
}

// Nested forward over reverse: gradient of u_xx with respect to a parameter,
// against a finite difference of Dual2<double> in that parameter.
TEST(ForwardOverReverse, SecondDerivativeGradient) {
    const auto u = [](const auto& x, const auto& w) { return tanh(x * w) * w; };
    const double x0 = 0.3, w0 = 1.7;

    GradTape tape;
    const Var w = tape.variable(w0);
    const auto r = u(Dual2<Var>::variable(Var(x0)), Dual2<Var>(w));
    const std::vector<Var> leaves{w};
    const double dw_uxx = grad_wrt_params(r.d2, leaves)[0];

    const auto uxx = [&](double wv) { return u(Dual2<double>::variable(x0), Dual2<double>(wv)).d2; };
    EXPECT_LT(rel_err(dw_uxx, central(uxx, w0, 1e-5)), 1e-8);
}

// Consistency between the two routes: d1 from forward mode equals the
// reverse-mode gradient with the input promoted to a leaf.
TEST(ForwardOverReverse, FirstDerivativeMatchesReverse) {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> d(-1.0, 1.0);
    const auto f = [](const auto& x, const auto& t) { return sigmoid(x * t + 0.5) * erf(x - t) + cos(x * x); };
    for (int i = 0; i < 20; ++i) {
        const double x = d(rng), t = d(rng);
        const auto fwd = forward_dual2(f, x, t, Axis::x);
        GradTape tape;
        std::vector<Var> leaves{tape.variable(x), tape.variable(t)};
        const double rev = grad_wrt_params(f(leaves[0], leaves[1]), leaves)[0];
        EXPECT_LT(std::abs(fwd.d1 - rev), 1e-10 * std::max(1.0, std::abs(rev)));
    }
}

TEST(NetworkGradient, TapeMatchesFiniteDifferences) {
    const auto sizes = make_layer_sizes(8, 40);
    InitOptions opts;
    opts.activation = ActivationKind::tanh;
    MlpModel m = init_glorot(sizes, 0, opts);
    std::mt19937_64 rng(0);
    std::uniform_real_distribution<double> ux(0, 1), ut(0, 3);
    std::vector<std::pair<double, double>> pts(16);
    for (auto& p : pts) p = {ux(rng), ut(rng)};

    const auto loss_plain = [&](const std::vector<double>& params) {
        double s = 0;
        for (auto [x, t] : pts) {
            const double u = evaluate<double, double>(m, params, x, t);
            s += u * u;
        }
        return s / pts.size();
    };

    GradTape tape;
    std::vector<Var> leaves;
    for (double v : m.params) leaves.push_back(tape.variable(v));
    Var l = 0.0;
    for (auto [x, t] : pts) {
        const Var u = evaluate<Var, Var>(m, leaves, Var(x), Var(t));
        l = l + u * u;
    }
    l = l / static_cast<double>(pts.size());
    const auto g = grad_wrt_params(l, leaves);

    // A spread of parameters from every layer.
    double worst = 0;
    for (std::size_t i = 0; i < m.params.size(); i += 97) {
        auto p = m.params;
        const double h = 1e-6;
        p[i] += h;
        const double fp = loss_plain(p);
        p[i] -= 2 * h;
        const double fm = loss_plain(p);
        const double fd = (fp - fm) / (2 * h);
        worst = std::max(worst, std::abs(g[i] - fd) / std::max(1e-3, std::abs(fd)));
    }
    EXPECT_LT(worst, 1e-5);
}

#include <chrono>
#include <cmath>
#include <filesystem>
#include <numbers>
#include <vector>

#include <gtest/gtest.h>

#include "symmpinn/oracle/cache.hpp"
#include "symmpinn/oracle/quadrature.hpp"
#include "symmpinn/oracle/series.hpp"
#include "symmpinn/report/baselines.hpp"

using namespace symmpinn;
using namespace symmpinn::oracle;

namespace {

// Composite Simpson with 10^6 intervals, computed independently and frozen.
constexpr double simpson_k0 = 0.3398907489365229;
constexpr double simpson_m0 = 0.3544545915953598;
constexpr double simpson_k1 = 0.4290659977771648;
constexpr double simpson_k5 = 0.003895649035426476;
constexpr double simpson_k60 = 6.148107140318378e-08;

const SeriesCoefficients& p1() {
    static const auto c = series_coefficients(ProblemTag::p1, 0.1);
    return c;
}
const SeriesCoefficients& p2() {
    static const auto c = series_coefficients(ProblemTag::p2, 0.1);
    return c;
}

} // namespace

TEST(Quadrature, Polynomials) {
    EXPECT_NEAR(quad([](double) { return 1.0; }, 0.0, 1.0, 1e-14), 1.0, 1e-14);
    EXPECT_NEAR(quad([](double x) { return x * x; }, 0.0, 1.0, 1e-14), 1.0 / 3.0, 1e-14);
    EXPECT_NEAR(quad([](double x) { return std::sin(x); }, 0.0, std::numbers::pi, 1e-13), 2.0, 1e-13);
}

TEST(Quadrature, GaussLegendreRuleIsExactForDegree2nMinus1) {
    const auto rule = gauss_legendre(5);
    double s = 0.0, w = 0.0;
    for (std::size_t k = 0; k < 5; ++k) {
        s += rule.weights[k] * std::pow(rule.nodes[k], 8);
        w += rule.weights[k];
    }
    EXPECT_NEAR(w, 2.0, 1e-15);
    EXPECT_NEAR(s, 2.0 / 9.0, 1e-15);
}

TEST(Quadrature, Errors) {
    EXPECT_THROW(quad([](double x) { return x; }, 1.0, 0.0, 1e-10), error);
    QuadOptions o;
    o.order = 2;
    o.max_levels = 2;
    EXPECT_THROW(quad([](double x) { return std::sin(400.0 * x); }, 0.0, 1.0, 1e-15, o), quadrature_error);
}

TEST(Series, CoefficientsMatchSimpson) {
    EXPECT_NEAR(p1().k0, simpson_k0, 1e-10);
    EXPECT_NEAR(p2().k0, simpson_m0, 1e-10);
    EXPECT_NEAR(p1().kn[0], simpson_k1, 1e-10);
    EXPECT_NEAR(p1().kn[4], simpson_k5, 1e-10);
}

TEST(Series, CoefficientsDecay) {
    EXPECT_GT(p1().k0, 0.0);
    EXPECT_GT(p2().k0, 0.0);
    EXPECT_TRUE(p1().converged);
    EXPECT_TRUE(p2().converged);
    // Evaluate mode 60 directly, beyond where the adaptive cut stops.
    SeriesOptions o;
    o.t_min = 1e-6;
    o.n_max = 60;
    const auto long_p1 = series_coefficients(ProblemTag::p1, 0.1, o);
    ASSERT_EQ(long_p1.kn.size(), 60u);
    EXPECT_NEAR(long_p1.kn[59], simpson_k60, 1e-10);
    EXPECT_LT(std::abs(long_p1.kn[59]), std::abs(long_p1.kn[4]));
    // Eventually monotone in magnitude (P1 alternates sign over even and odd modes).
    for (std::size_t i = 20; i + 2 < long_p1.kn.size(); ++i)
        EXPECT_LT(std::abs(long_p1.kn[i + 2]), std::abs(long_p1.kn[i])) << i;
}

TEST(Series, CapFlagsNotConverged) {
    const auto c = series_coefficients(ProblemTag::p1, 0.1, 3, 1e-12);
    EXPECT_EQ(c.kn.size(), 3u);
    EXPECT_FALSE(c.converged);
    EXPECT_THROW(series_coefficients(ProblemTag::p1, 0.1, 0, 1e-12), config_error);
}

TEST(ExactU, PublishedExamples) {
    EXPECT_NEAR(exact_u(p1(), 0.25, 0.4), 0.31752, 5e-6);
    EXPECT_NEAR(exact_u(p1(), 0.75, 3.0), 0.03044, 5e-6);
    EXPECT_NEAR(exact_u(p2(), 0.5, 3.0), 4.020e-2, 5e-5);
}

TEST(ExactU, BoundaryIsExact) {
    for (const auto* c : {&p1(), &p2()})
        for (double t : {0.1, 0.5, 1.0, 3.0}) {
            EXPECT_LT(std::abs(exact_u(*c, 0.0, t)), 1e-12);
            EXPECT_LT(std::abs(exact_u(*c, 1.0, t)), 1e-12);
        }
}

TEST(ExactU, SmallTimeApproachesInitialCondition) {
    SeriesOptions o;
    o.t_min = 1e-4;
    o.n_max = 2000;
    for (auto tag : {ProblemTag::p1, ProblemTag::p2}) {
        const auto c = series_coefficients(tag, 0.1, o);
        for (double x : {0.25, 0.5, 0.75}) EXPECT_NEAR(exact_u(c, x, 1e-4), initial_value(tag, x), 5e-3);
    }
}

TEST(ExactU, TimeZeroIsTheInitialCondition) {
    EXPECT_DOUBLE_EQ(exact_u(p1(), 0.3, 0.0), 4.0 * 0.3 * 0.7);
    EXPECT_DOUBLE_EQ(exact_u(p2(), 0.5, 0.0), 1.0);
}

TEST(ExactU, DomainErrors) {
    EXPECT_THROW(exact_u(p1(), -0.1, 1.0), oracle_domain_error);
    EXPECT_THROW(exact_u(p1(), 1.1, 1.0), oracle_domain_error);
    EXPECT_THROW(exact_u(p1(), 0.5, -1.0), oracle_domain_error);
}

// Every printed exact entry of the shipped reference tables, to the printed
// precision. One entry disagrees: problem 1 at (0.25, 3.0) is printed as
// 0.02775 while the series gives 0.0277587 (independently confirmed by a
// 10^6-interval Simpson evaluation of the same quotient). The test pins that
// single discrepancy rather than hiding it.
TEST(ExactU, ReproducesPrintedExactColumns) {
    const auto b = report::load_baselines();
    std::vector<std::pair<double, double>> misses;
    for (auto tag : {ProblemTag::p1, ProblemTag::p2}) {
        const auto& c = tag == ProblemTag::p1 ? p1() : p2();
        for (const auto& pt : b.points(tag)) {
            const double v = exact_u(c, pt.x, pt.t);
            if (!pt.exact.matches(v)) misses.emplace_back(pt.x, pt.t);
        }
    }
    ASSERT_EQ(misses.size(), 1u);
    EXPECT_EQ(misses[0], (std::pair{0.25, 3.0}));
    EXPECT_NEAR(exact_u(p1(), 0.25, 3.0), 0.0277587, 5e-7);
}

TEST(ExactU, CoefficientsAndTablesUnderFiveSeconds) {
    const auto start = std::chrono::steady_clock::now();
    const auto a = series_coefficients(ProblemTag::p1, 0.1);
    const auto c = series_coefficients(ProblemTag::p2, 0.1);
    double s = 0.0;
    for (double x = 0.05; x < 1.0; x += 0.05)
        for (double t = 0.1; t <= 3.0; t += 0.1) s += exact_u(a, x, t) + exact_u(c, x, t);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    EXPECT_TRUE(std::isfinite(s));
    EXPECT_LT(secs, 5.0);
}

TEST(Cache, RoundTripAndKeyMismatch) {
    const auto path = std::filesystem::temp_directory_path() / "symmpinn_test_cache" / "p1.json";
    std::filesystem::remove(path);
    const auto a = load_or_compute_coefficients(path, ProblemTag::p1, 0.1);
    ASSERT_TRUE(std::filesystem::exists(path));
    const auto b = load_or_compute_coefficients(path, ProblemTag::p1, 0.1);
    EXPECT_EQ(a.k0, b.k0);
    EXPECT_EQ(a.kn, b.kn);
    const auto c = load_or_compute_coefficients(path, ProblemTag::p2, 0.1);
    EXPECT_EQ(c.problem_tag, ProblemTag::p2);
    EXPECT_NEAR(c.k0, simpson_m0, 1e-10);
    std::filesystem::remove_all(path.parent_path());
}

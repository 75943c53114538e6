#include "holo/metrics.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

namespace holo {
namespace {

TEST(Mse, ZeroWhenMagnitudesMatchWhateverThePhase) {
    const TargetImage t = testing::random_target(16, 16, 3);
    std::mt19937_64 gen(5);
    std::uniform_real_distribution<double> angle(-3.14, 3.14);
    ComplexField r(16, 16);
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = std::polar(t[i], angle(gen));
    EXPECT_NEAR(mse(t, r), 0.0, 1e-30);
}

TEST(Mse, HandComputed) {
    const TargetImage t(2, 2, 0.0);
    ComplexField r(2, 2);
    r(1, 0) = Complex(0.0, 2.0);
    EXPECT_DOUBLE_EQ(mse(t, r), 1.0);
}

TEST(Mse, MatchesDoubleLoop) {
    const TargetImage t = testing::random_target(16, 16, 8);
    const ComplexField r = testing::random_field(16, 16, 9);
    double sum = 0.0;
    for (std::size_t y = 0; y < 16; ++y)
        for (std::size_t x = 0; x < 16; ++x) {
            const double d = t.mag(x, y) - std::abs(r(x, y));
            sum += d * d;
        }
    EXPECT_NEAR(mse(t, r), sum / 256.0, 1e-12);
}

TEST(Mse, PhaseRotationInvariance) {
    std::mt19937_64 gen(31);
    std::uniform_real_distribution<double> angle(-3.14, 3.14);
    for (int trial = 0; trial < 20; ++trial) {
        const TargetImage t = testing::random_target(12, 9, gen());
        const ComplexField r = testing::random_field(12, 9, gen());
        ComplexField rotated = r;
        for (auto& z : rotated.values()) z *= std::polar(1.0, angle(gen));
        EXPECT_NEAR(mse(t, rotated), mse(t, r), 1e-12);
        EXPECT_GE(mse(t, r), 0.0);
    }
}

TEST(Mse, RejectsShapeMismatch) {
    EXPECT_THROW(mse(TargetImage(4, 4), ComplexField(4, 2)), std::invalid_argument);
}

TEST(SquaredErrorSumWithUpdate, AgreesWithCommittedUpdate) {
    const TargetImage t = testing::random_target(10, 6, 1);
    ComplexField r = testing::random_field(10, 6, 2);
    PixelKernel k(10, 6);
    k.bind({3, 4}, Complex(-0.4, 1.1));
    const double predicted = squared_error_sum_with_update(t, r, k);
    delta_update(r, k, {3, 4}, Complex(-0.4, 1.1));
    EXPECT_EQ(predicted, squared_error_sum(t, r));
}

TEST(Pearson, PerfectLinearRelations) {
    const std::vector<double> xs{1, 2, 3, 4, 5.5};
    std::vector<double> up, down;
    for (const double x : xs) {
        up.push_back(2 * x + 3);
        down.push_back(-x);
    }
    EXPECT_NEAR(pearson(xs, up), 1.0, 1e-12);
    EXPECT_NEAR(pearson(xs, down), -1.0, 1e-12);
}

TEST(Pearson, AffineInvariance) {
    std::mt19937_64 gen(4);
    std::normal_distribution<double> n(0, 1);
    std::vector<double> xs(200), ys(200);
    for (std::size_t i = 0; i < xs.size(); ++i) {
        xs[i] = n(gen);
        ys[i] = 0.6 * xs[i] + n(gen);
    }
    const double r = pearson(xs, ys);
    std::vector<double> xs2 = xs, ys2 = ys;
    for (auto& x : xs2) x = 3.5 * x - 7.0;
    for (auto& y : ys2) y = 0.01 * y + 100.0;
    EXPECT_NEAR(pearson(xs2, ys2), r, 1e-12);
}

TEST(Pearson, ErrorPaths) {
    const std::vector<double> a{1, 1, 1};
    const std::vector<double> b{1, 2, 3};
    EXPECT_THROW(pearson(a, b), UndefinedStatistic);
    EXPECT_THROW(pearson(std::vector<double>{1.0}, std::vector<double>{2.0}), std::invalid_argument);
    EXPECT_THROW(pearson(b, std::vector<double>{1, 2}), std::invalid_argument);
}

ConvergenceTrace trace(double e0, double last, std::uint64_t iters = 10) {
    ConvergenceTrace t;
    t.push({0, e0, 0});
    t.push({iters, last, 3});
    return t;
}

TEST(ConvergenceTrace, EnforcesOrdering) {
    ConvergenceTrace t;
    t.push({0, 1.0, 0});
    EXPECT_THROW(t.push({0, 0.9, 1}), std::invalid_argument);
    t.push({5, 0.9, 2});
    EXPECT_THROW(t.push({6, 0.8, 1}), std::invalid_argument);
}

TEST(RelativeImprovement, Examples) {
    EXPECT_EQ(relative_improvement(trace(1.0, 0.5), trace(1.0, 0.5)), 0.0);
    EXPECT_NEAR(relative_improvement(trace(1.0, 0.5), trace(1.0, 0.4)), 0.2, 1e-15);
    EXPECT_NEAR(final_error_improvement(trace(1.0, 0.5), trace(1.0, 0.4)), 0.2, 1e-15);
}

TEST(RelativeImprovement, ErrorPaths) {
    EXPECT_THROW(relative_improvement(trace(1.0, 1.0), trace(1.0, 0.5)), UndefinedStatistic);
    EXPECT_THROW(relative_improvement(trace(1.0, 1.2), trace(1.0, 0.5)), UndefinedStatistic);
    EXPECT_THROW(relative_improvement(trace(1.0, 0.5), trace(1.1, 0.5)), std::invalid_argument);
    EXPECT_THROW(relative_improvement(trace(1.0, 0.5, 10), trace(1.0, 0.5, 20)),
                 std::invalid_argument);
}

}  // namespace
}  // namespace holo

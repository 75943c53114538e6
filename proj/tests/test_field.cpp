#include "holo/field.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

namespace holo {
namespace {

using testing::brute_force_dft;
using testing::max_abs_diff;
using testing::random_field;

TEST(Grid, RejectsSidesBelowTwo) {
    EXPECT_THROW(ComplexField(1, 4), std::invalid_argument);
    EXPECT_THROW(ComplexField(4, 0), std::invalid_argument);
    EXPECT_NO_THROW(ComplexField(2, 2));
}

TEST(Grid, RejectsDataLengthMismatch) {
    EXPECT_THROW(ComplexField(2, 2, std::vector<Complex>(3)), std::invalid_argument);
}

TEST(Grid, RejectsAddressOverflow) {
    const std::size_t huge = std::size_t{1} << 40;
    EXPECT_THROW(ComplexField(huge, huge), std::length_error);
}

TEST(Grid, RowMajorLayout) {
    ComplexField f(3, 2);
    f(2, 1) = 7.0;
    EXPECT_EQ(f[1 * 3 + 2], Complex(7.0));
    EXPECT_THROW(f.at(3, 0), std::out_of_range);
}

TEST(Dft2, DeltaTransformsToConstant) {
    ComplexField f(2, 2);
    f(0, 0) = 1.0;
    const ComplexField F = dft2(f);
    for (const auto& z : F.values()) {
        EXPECT_NEAR(z.real(), 0.5, 1e-15);
        EXPECT_NEAR(z.imag(), 0.0, 1e-15);
    }
}

TEST(Idft2, ConstantTransformsToDelta) {
    const ComplexField F(2, 2, Complex(0.5));
    const ComplexField f = idft2(F);
    EXPECT_NEAR(std::abs(f(0, 0) - Complex(1.0)), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(f(1, 0)), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(f(0, 1)), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(f(1, 1)), 0.0, 1e-15);
}

TEST(Dft2, MatchesBruteForceOracle) {
    for (const auto [nx, ny] : {std::pair{4, 4}, {8, 8}, {4, 8}, {6, 5}}) {
        const ComplexField f = random_field(nx, ny, 11 + nx * ny);
        EXPECT_LT(max_abs_diff(dft2(f), brute_force_dft(f, -1)), 1e-12) << nx << "x" << ny;
        EXPECT_LT(max_abs_diff(idft2(f), brute_force_dft(f, +1)), 1e-12) << nx << "x" << ny;
    }
}

TEST(Dft2, ParsevalProperty) {
    std::mt19937_64 gen(2024);
    std::uniform_int_distribution<int> side(2, 40);
    for (int trial = 0; trial < 50; ++trial) {
        const ComplexField f = random_field(side(gen), side(gen), gen(), 3.0);
        const double in = energy(f.values());
        const double out = energy(dft2(f).values());
        EXPECT_NEAR(out / in, 1.0, 1e-10);
    }
}

TEST(Dft2, RoundTripProperty) {
    std::mt19937_64 gen(7);
    std::uniform_int_distribution<int> side(2, 33);
    for (int trial = 0; trial < 50; ++trial) {
        const ComplexField f = random_field(side(gen), side(gen), gen());
        EXPECT_LT(max_abs_diff(idft2(dft2(f)), f), 1e-10);
    }
    const ComplexField f8 = random_field(8, 8, 99);
    EXPECT_LT(max_abs_diff(idft2(dft2(f8)), f8), 1e-10);
}

TEST(Fresnel, PreservesMagnitudeAndCentre) {
    const ComplexField f = random_field(16, 12, 5);
    const FresnelParams p{633e-9, 0.5, 8e-6};
    const ComplexField g = fresnel_premultiply(f, p);
    for (std::size_t i = 0; i < f.size(); ++i) {
        EXPECT_NEAR(std::norm(g[i]), std::norm(f[i]), 4 * std::numeric_limits<double>::epsilon() * std::norm(f[i]));
    }
    EXPECT_EQ(g(8, 6), f(8, 6));
}

TEST(Fresnel, MatchesPerPixelEvaluation) {
    const ComplexField f = random_field(4, 4, 17);
    const double lambda = 633e-9;
    const double z = 0.5;
    const double pitch = 8e-6;
    const ComplexField g = fresnel_premultiply(f, {lambda, z, pitch});
    for (std::size_t iy = 0; iy < 4; ++iy) {
        for (std::size_t ix = 0; ix < 4; ++ix) {
            const double x = (static_cast<double>(ix) - 2.0) * pitch;
            const double y = (static_cast<double>(iy) - 2.0) * pitch;
            const Complex expected =
                f(ix, iy) * std::exp(Complex(0.0, std::numbers::pi * (x * x + y * y) / (lambda * z)));
            EXPECT_LT(std::abs(g(ix, iy) - expected), 1e-14);
        }
    }
}

TEST(Fresnel, RejectsBadParameters) {
    const ComplexField f(4, 4, Complex(1.0));
    EXPECT_THROW(fresnel_premultiply(f, {0.0, 0.5, 8e-6}), std::invalid_argument);
    EXPECT_THROW(fresnel_premultiply(f, {633e-9, 0.0, 8e-6}), std::invalid_argument);
    EXPECT_THROW(fresnel_premultiply(f, {633e-9, 0.5, -1.0}), std::invalid_argument);
    EXPECT_NO_THROW(fresnel_premultiply(f, {633e-9, -0.5, 8e-6}));
}

TEST(DeltaUpdate, ZeroChangeLeavesReplayUntouched) {
    ComplexField r = dft2(random_field(8, 8, 3));
    const ComplexField before = r;
    delta_update(r, 3, 5, Complex(0.0));
    EXPECT_EQ(r, before);
}

TEST(DeltaUpdate, MatchesFullTransformAfterBinaryFlip) {
    std::mt19937_64 gen(1);
    ComplexField h(8, 8);
    for (auto& z : h.values()) z = (gen() & 1) ? 1.0 : -1.0;
    ComplexField r = dft2(h);
    const Complex old = h(5, 2);
    h(5, 2) = -old;
    delta_update(r, 5, 2, -2.0 * old);
    EXPECT_LT(max_abs_diff(r, dft2(h)), 1e-10);
}

TEST(DeltaUpdate, ConsistentForAnySinglePixelChange) {
    std::mt19937_64 gen(77);
    for (int trial = 0; trial < 40; ++trial) {
        const std::size_t nx = 2 + gen() % 20;
        const std::size_t ny = 2 + gen() % 20;
        ComplexField h = random_field(nx, ny, gen());
        ComplexField r = dft2(h);
        const std::size_t x = gen() % nx;
        const std::size_t y = gen() % ny;
        const Complex dh(std::ldexp(static_cast<double>(gen() % 1000), -9), -0.7);
        h(x, y) += dh;
        delta_update(r, x, y, dh);
        EXPECT_LT(max_abs_diff(r, dft2(h)), 1e-10);
    }
}

TEST(DeltaUpdate, DriftAfterTenThousandUpdatesStaysSmall) {
    std::mt19937_64 gen(10'000);
    ComplexField h(64, 64);
    for (auto& z : h.values()) z = (gen() & 1) ? 1.0 : -1.0;
    ComplexField r = dft2(h);
    PixelKernel kernel(64, 64);
    for (int i = 0; i < 10'000; ++i) {
        const PixelIndex p{gen() % 64, gen() % 64};
        const Complex dh = -2.0 * h(p.x, p.y);
        h(p.x, p.y) += dh;
        delta_update(r, kernel, p, dh);
    }
    EXPECT_LT(max_abs_diff(r, dft2(h)), 1e-6);
}

TEST(DeltaUpdate, RejectsOutOfBoundsPixel) {
    ComplexField r(4, 4);
    EXPECT_THROW(delta_update(r, 4, 0, Complex(1.0)), std::out_of_range);
    EXPECT_THROW(delta_update(r, 0, 9, Complex(1.0)), std::out_of_range);
}

TEST(TwiddleTable, AxisRootsAreExact) {
    const TwiddleTable t(8);
    EXPECT_EQ(t[0], Complex(1, 0));
    EXPECT_EQ(t[2], Complex(0, -1));
    EXPECT_EQ(t[4], Complex(-1, 0));
    EXPECT_EQ(t[6], Complex(0, 1));
    EXPECT_NEAR(std::abs(t[1] - std::polar(1.0, -std::numbers::pi / 4)), 0.0, 1e-16);
}

}  // namespace
}  // namespace holo

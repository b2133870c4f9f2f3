#include <gtest/gtest.h>

#include <cmath>

#include "stairnet/rng.hpp"
#include "stairnet/sampling.hpp"
#include "stairnet/targets.hpp"

using namespace stairnet;

TEST(Rng, CounterDeterminism) {
    rng::Key a(7, "perturb"), b(7, "perturb"), c(7, "topology");
    EXPECT_EQ(a.bits(3, 1), b.bits(3, 1));
    EXPECT_NE(a.bits(3, 1), c.bits(3, 1));
    EXPECT_NE(a.bits(3, 1), a.bits(4, 1));
    EXPECT_NE(a.bits(3, 1), a.bits(3, 2));
    double u = a.uniform01(0, 0);
    EXPECT_GT(u, 0.0);
    EXPECT_LT(u, 1.0);
    EXPECT_LE(std::fabs(a.uniform_sym(1, 0, 0.25)), 0.25);
    double s = a.sign(2, 0);
    EXPECT_TRUE(s == 1.0 || s == -1.0);
}

TEST(Rng, GaussianMoments) {
    rng::Key key(11, "gauss");
    const int m = 20000;
    double sum = 0, sumsq = 0;
    for (int i = 0; i < m; ++i) {
        double z = key.gaussian(static_cast<std::uint64_t>(i), 0);
        sum += z;
        sumsq += z * z;
    }
    EXPECT_NEAR(sum / m, 0.0, 0.03);
    EXPECT_NEAR(sumsq / m, 1.0, 0.05);
}

TEST(Measure, BiasedCoinMean) {
    const double p = 0.75;
    Measure mu = Measure::biased(1, p);
    rng::Key key(5, "coins");
    const int m = 40000;
    double sum = 0;
    for (int i = 0; i < m; ++i) sum += mu.coord(key, static_cast<std::uint64_t>(i), 0);
    EXPECT_NEAR(sum / m, 2 * p - 1, 0.02);
    EXPECT_THROW(Measure::biased(1, 1.0), std::out_of_range);
}

TEST(Measure, UnbiasedIsSigns) {
    Measure mu = Measure::unbiased(4);
    rng::Key key(5, "coins");
    std::vector<double> x(4);
    mu.fill(key, 0, x);
    for (double v : x) EXPECT_TRUE(v == 1.0 || v == -1.0);
}

static TargetFn target_s2(int n) {
    SparsePolynomial g = make_staircase(n, 2);
    return [g](std::span<const double> x) { return g(x); };
}

TEST(Stream, FreshDeterministicPerSeed) {
    auto a = LabeledStream::fresh(Measure::unbiased(4), target_s2(4), 9);
    auto b = LabeledStream::fresh(Measure::unbiased(4), target_s2(4), 9);
    auto c = LabeledStream::fresh(Measure::unbiased(4), target_s2(4), 10);
    Batch ba = a.draw(16), bb = b.draw(16), bc = c.draw(16);
    EXPECT_EQ(ba.xs, bb.xs);
    EXPECT_EQ(ba.labels, bb.labels);
    EXPECT_NE(ba.xs, bc.xs);
    // labels are consistent with the target
    for (std::size_t i = 0; i < ba.count(); ++i)
        EXPECT_DOUBLE_EQ(ba.labels[i], target_s2(4)(ba.x(i)));
    // fresh mode never repeats counters: the next batch differs
    Batch next = a.draw(16);
    EXPECT_NE(next.xs, ba.xs);
}

TEST(Stream, CyclicWrapsInOrder) {
    auto s = LabeledStream::cyclic(Measure::unbiased(3), target_s2(3), 5, 21);
    Batch first = s.draw(5);
    Batch second = s.draw(5);
    EXPECT_EQ(first.xs, second.xs);
    EXPECT_EQ(first.labels, second.labels);
    EXPECT_EQ(s.position(), 10u);
    EXPECT_TRUE(s.is_cyclic());
}

TEST(Stream, CyclicMemoryCap) {
    EXPECT_THROW(LabeledStream::cyclic(Measure::unbiased(8), target_s2(8), 100, 1, "dataset", 512),
                 std::length_error);
    EXPECT_THROW(LabeledStream::cyclic(Measure::unbiased(3), target_s2(3), 0, 1),
                 std::invalid_argument);
}

TEST(Stream, CopiesAdvanceIndependently) {
    auto a = LabeledStream::fresh(Measure::unbiased(3), target_s2(3), 4);
    LabeledStream b = a;
    Batch ba = a.draw(8);
    Batch bb = b.draw(8);
    EXPECT_EQ(ba.xs, bb.xs);
}

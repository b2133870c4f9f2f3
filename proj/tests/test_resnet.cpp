#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "stairnet/resnet.hpp"
#include "stairnet/targets.hpp"

using namespace stairnet;

static ResNetConfig tiny_config() {
    ResNetConfig c;
    c.n = 4;
    c.width = 6;
    c.depth = 2;
    c.init_std = 0.5;
    c.steps = 300;
    c.eval_interval = 100;
    c.eval_samples = 500;
    c.seed = 3;
    return c;
}

static LabeledStream s2_stream(int n, std::uint64_t seed) {
    SparsePolynomial g = make_staircase(n, 2);
    return LabeledStream::fresh(Measure::unbiased(n),
                                [g](std::span<const double> x) { return g(x); }, seed);
}

TEST(ResNet, ZeroParamsGiveZeroOutput) {
    ResNetParams p = ResNetParams::zeros(tiny_config());
    double x[] = {1, -1, 1, -1};
    EXPECT_DOUBLE_EQ(resnet_forward(p, x).output, 0.0);
}

TEST(ResNet, ForwardHandComputed) {
    ResNetConfig c;
    c.n = 1;
    c.width = 1;
    c.depth = 1;
    c.steps = 1;
    ResNetParams p = ResNetParams::zeros(c);
    p.w_in = {2.0};
    p.b_in = {0.5};
    p.w_block[0] = {-1.0};
    p.b_block[0] = {0.3};
    p.w_out = {1.5};
    p.b_out = 0.25;
    double xp[] = {1.0};
    // h0 = 2.5, pre = -2.2 gated off, h1 = 2.5, out = 1.5*2.5 + 0.25
    EXPECT_DOUBLE_EQ(resnet_forward(p, xp).output, 4.0);
    double xm[] = {-1.0};
    // h0 = -1.5, pre = 1.8 passes, h1 = 0.3, out = 0.45 + 0.25
    EXPECT_DOUBLE_EQ(resnet_forward(p, xm).output, 0.7);
}

TEST(ResNet, GaussianInitScale) {
    ResNetConfig c = tiny_config();
    c.width = 64;
    c.n = 64;
    c.init_std = 0.2;
    ResNetParams p = ResNetParams::gaussian(c);
    double sumsq = 0.0;
    for (double w : p.w_in) sumsq += w * w;
    double expect_var = c.init_std * c.init_std / c.width;
    EXPECT_NEAR(sumsq / static_cast<double>(p.w_in.size()), expect_var, 0.3 * expect_var);
    for (double b : p.b_in) EXPECT_DOUBLE_EQ(b, 0.0);
    EXPECT_DOUBLE_EQ(p.b_out, 0.0);
}

TEST(ResNet, BackpropMatchesFiniteDifference) {
    ResNetConfig c = tiny_config();
    c.seed = 17;
    ResNetParams p = ResNetParams::gaussian(c);
    // give biases nonzero values so their gradients are exercised
    for (double& b : p.b_in) b = 0.05;
    for (auto& blk : p.b_block)
        for (double& b : blk) b = -0.03;
    p.b_out = 0.1;
    double x[] = {1.0, -1.0, 1.0, -1.0};
    const double label = 0.7, h = 1e-5;
    ResNetParams grad = ResNetParams::zeros(c);
    resnet_backprop(p, x, label, resnet_forward(p, x), grad);
    auto loss = [&]() {
        double d = resnet_forward(p, x).output - label;
        return 0.5 * d * d;
    };
    auto check = [&](double& w, double g) {
        double keep = w;
        w = keep + h;
        double up = loss();
        w = keep - h;
        double down = loss();
        w = keep;
        EXPECT_NEAR(g, (up - down) / (2 * h), 1e-6);
    };
    for (std::size_t i = 0; i < p.w_in.size(); i += 7) check(p.w_in[i], grad.w_in[i]);
    for (std::size_t i = 0; i < p.b_in.size(); ++i) check(p.b_in[i], grad.b_in[i]);
    for (int blk = 0; blk < c.depth; ++blk) {
        for (std::size_t i = 0; i < p.w_block[blk].size(); i += 5)
            check(p.w_block[blk][i], grad.w_block[blk][i]);
        for (std::size_t i = 0; i < p.b_block[blk].size(); ++i)
            check(p.b_block[blk][i], grad.b_block[blk][i]);
    }
    for (std::size_t i = 0; i < p.w_out.size(); ++i) check(p.w_out[i], grad.w_out[i]);
    check(p.b_out, grad.b_out);
}

TEST(ResNet, MeasureMonomialVariants) {
    double x[] = {1.0, -1.0, 0.5};
    Subset s = Subset::of({1, 2});
    EXPECT_DOUBLE_EQ(measure_monomial(Measure::unbiased(3), s, x), -1.0);
    EXPECT_DOUBLE_EQ(measure_monomial(Measure::gaussian(3), Subset::of({3}), x), 0.5);
    double c1 = center_biased_coord(1.0, 0.75), c2 = center_biased_coord(-1.0, 0.75);
    EXPECT_DOUBLE_EQ(measure_monomial(Measure::biased(3, 0.75), s, x), c1 * c2);
}

TEST(ResNet, TrainingDeterministicPerSeed) {
    ResNetConfig c = tiny_config();
    ResnetTrace a = sgd_train(c, s2_stream(c.n, 5), {Subset::of({1})});
    ResnetTrace b = sgd_train(c, s2_stream(c.n, 5), {Subset::of({1})});
    ASSERT_EQ(a.rows.size(), b.rows.size());
    for (std::size_t i = 0; i < a.rows.size(); ++i) {
        EXPECT_DOUBLE_EQ(a.rows[i].test_mse, b.rows[i].test_mse);
        EXPECT_DOUBLE_EQ(a.rows[i].f_hat[0], b.rows[i].f_hat[0]);
    }
    // rows at step 0, every eval_interval, and at the end
    EXPECT_EQ(a.rows.front().step, 0u);
    EXPECT_EQ(a.rows.back().step, c.steps);
    EXPECT_EQ(a.rows.size(), c.steps / c.eval_interval + 1);
    EXPECT_FALSE(a.diverged);
}

TEST(ResNet, DivergenceAborts) {
    ResNetConfig c = tiny_config();
    c.step_size = 1e4;  // blows up immediately
    c.steps = 5000;
    ResnetTrace trace = sgd_train(c, s2_stream(c.n, 6));
    EXPECT_TRUE(trace.diverged);
    EXPECT_FALSE(trace.diagnostic.empty());
    // partial trace retained
    EXPECT_FALSE(trace.rows.empty());
}

TEST(ResNet, CsvHeaderGolden) {
    ResnetTrace trace;
    trace.tracked_subsets = {Subset::of({1}), Subset::of({1, 2})};
    ResnetTraceRow row;
    row.step = 0;
    row.train_loss = 1.5;
    row.test_mse = 2.0;
    row.f_hat = {0.1, -0.2};
    trace.rows.push_back(row);
    std::ostringstream os;
    trace.write_csv(os);
    std::istringstream is(os.str());
    std::string header, data;
    std::getline(is, header);
    std::getline(is, data);
    EXPECT_EQ(header, "step,train_loss,test_mse,f_hat_1,f_hat_1_2");
    EXPECT_EQ(data, "0,1.5,2,0.1,-0.2");
}

TEST(ResNet, ConfigValidation) {
    ResNetConfig c = tiny_config();
    c.width = 0;
    EXPECT_THROW(c.validate(), std::invalid_argument);
    c = tiny_config();
    c.step_size = -1.0;
    EXPECT_THROW(c.validate(), std::invalid_argument);
    c = tiny_config();
    c.n = 5;  // stream below is 4-dimensional
    EXPECT_THROW(sgd_train(c, s2_stream(4, 1)), std::invalid_argument);
}

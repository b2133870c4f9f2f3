#pragma once

#include <cmath>
#include <cstdint>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "stairnet/rng.hpp"
#include "stairnet/sampling.hpp"
#include "stairnet/subset.hpp"
#include "stairnet/targets.hpp"

namespace stairnet {

struct ResNetConfig {
    int n = 0;
    int width = 0;
    int depth = 0;
    double init_std = 1.0;    // per-matrix std is init_std / sqrt(width)
    double step_size = 0.01;
    std::size_t batch = 20;
    std::size_t steps = 0;
    std::size_t eval_interval = 1000;
    std::size_t eval_samples = 30000;
    std::uint64_t seed = 0;

    void validate() const {
        if (n < 1 || width < 1 || depth < 1) throw std::invalid_argument("n, width, depth must be >= 1");
        if (step_size <= 0.0) throw std::invalid_argument("step_size must be positive");
        if (batch < 1 || eval_interval < 1) throw std::invalid_argument("batch and eval_interval must be >= 1");
    }
};

/// h_0 = W_in x + b_in; h_j = h_{j-1} + ReLU(W_j h_{j-1} + b_j);
/// output = w_out . h_depth + b_out. Matrices are row-major.
struct ResNetParams {
    int n = 0, width = 0, depth = 0;
    std::vector<double> w_in;                  // width x n
    std::vector<double> b_in;                  // width
    std::vector<std::vector<double>> w_block;  // depth of width x width
    std::vector<std::vector<double>> b_block;  // depth of width
    std::vector<double> w_out;                 // width
    double b_out = 0.0;

    static ResNetParams zeros(const ResNetConfig& c) {
        c.validate();
        ResNetParams p;
        p.n = c.n;
        p.width = c.width;
        p.depth = c.depth;
        p.w_in.assign(static_cast<std::size_t>(c.width) * static_cast<std::size_t>(c.n), 0.0);
        p.b_in.assign(static_cast<std::size_t>(c.width), 0.0);
        p.w_block.assign(static_cast<std::size_t>(c.depth),
                         std::vector<double>(static_cast<std::size_t>(c.width) *
                                             static_cast<std::size_t>(c.width), 0.0));
        p.b_block.assign(static_cast<std::size_t>(c.depth),
                         std::vector<double>(static_cast<std::size_t>(c.width), 0.0));
        p.w_out.assign(static_cast<std::size_t>(c.width), 0.0);
        return p;
    }

    /// Isotropic Gaussian matrices with std init_std/sqrt(width), zero biases.
    static ResNetParams gaussian(const ResNetConfig& c) {
        ResNetParams p = zeros(c);
        rng::Key key(c.seed, "resnet-init");
        const double std_dev = c.init_std / std::sqrt(static_cast<double>(c.width));
        std::uint64_t ctr = 0;
        for (double& w : p.w_in) w = std_dev * key.gaussian(ctr++, 0);
        for (auto& block : p.w_block)
            for (double& w : block) w = std_dev * key.gaussian(ctr++, 0);
        for (double& w : p.w_out) w = std_dev * key.gaussian(ctr++, 0);
        return p;
    }

    void axpy(double scale, const ResNetParams& g) {
        for (std::size_t i = 0; i < w_in.size(); ++i) w_in[i] += scale * g.w_in[i];
        for (std::size_t i = 0; i < b_in.size(); ++i) b_in[i] += scale * g.b_in[i];
        for (int j = 0; j < depth; ++j) {
            auto& w = w_block[static_cast<std::size_t>(j)];
            auto& b = b_block[static_cast<std::size_t>(j)];
            const auto& gw = g.w_block[static_cast<std::size_t>(j)];
            const auto& gb = g.b_block[static_cast<std::size_t>(j)];
            for (std::size_t i = 0; i < w.size(); ++i) w[i] += scale * gw[i];
            for (std::size_t i = 0; i < b.size(); ++i) b[i] += scale * gb[i];
        }
        for (std::size_t i = 0; i < w_out.size(); ++i) w_out[i] += scale * g.w_out[i];
        b_out += scale * g.b_out;
    }
};

struct ResNetActivations {
    std::vector<std::vector<double>> h;    // h[0..depth], each width
    std::vector<std::vector<double>> pre;  // pre[j] = W_{j+1} h_j + b_{j+1}
    double output = 0.0;
};

inline ResNetActivations resnet_forward(const ResNetParams& p, std::span<const double> x) {
    if (static_cast<int>(x.size()) != p.n) throw std::invalid_argument("input dimension mismatch");
    const std::size_t w = static_cast<std::size_t>(p.width);
    ResNetActivations act;
    act.h.assign(static_cast<std::size_t>(p.depth) + 1, std::vector<double>(w));
    act.pre.assign(static_cast<std::size_t>(p.depth), std::vector<double>(w));
    for (std::size_t i = 0; i < w; ++i) {
        double acc = p.b_in[i];
        const double* row = &p.w_in[i * static_cast<std::size_t>(p.n)];
        for (std::size_t j = 0; j < static_cast<std::size_t>(p.n); ++j) acc += row[j] * x[j];
        act.h[0][i] = acc;
    }
    for (int blk = 0; blk < p.depth; ++blk) {
        const auto& wb = p.w_block[static_cast<std::size_t>(blk)];
        const auto& bb = p.b_block[static_cast<std::size_t>(blk)];
        const auto& prev = act.h[static_cast<std::size_t>(blk)];
        auto& pre = act.pre[static_cast<std::size_t>(blk)];
        auto& next = act.h[static_cast<std::size_t>(blk) + 1];
        for (std::size_t i = 0; i < w; ++i) {
            double acc = bb[i];
            const double* row = &wb[i * w];
            for (std::size_t j = 0; j < w; ++j) acc += row[j] * prev[j];
            pre[i] = acc;
            next[i] = prev[i] + (acc > 0.0 ? acc : 0.0);
        }
    }
    act.output = p.b_out;
    for (std::size_t i = 0; i < w; ++i) act.output += p.w_out[i] * act.h.back()[i];
    return act;
}

/// Gradient of the pointwise square loss (1/2)(output - label)^2,
/// accumulated into grad (hand-derived backprop through the blocks).
inline void resnet_backprop(const ResNetParams& p, std::span<const double> x, double label,
                            const ResNetActivations& act, ResNetParams& grad) {
    const std::size_t w = static_cast<std::size_t>(p.width);
    const double delta = act.output - label;
    grad.b_out += delta;
    std::vector<double> dh(w);  // dL/dh_j, starting at j = depth
    for (std::size_t i = 0; i < w; ++i) {
        grad.w_out[i] += delta * act.h.back()[i];
        dh[i] = delta * p.w_out[i];
    }
    std::vector<double> gate(w), dprev(w);
    for (int blk = p.depth - 1; blk >= 0; --blk) {
        const auto& pre = act.pre[static_cast<std::size_t>(blk)];
        const auto& prev = act.h[static_cast<std::size_t>(blk)];
        const auto& wb = p.w_block[static_cast<std::size_t>(blk)];
        auto& gw = grad.w_block[static_cast<std::size_t>(blk)];
        auto& gb = grad.b_block[static_cast<std::size_t>(blk)];
        for (std::size_t i = 0; i < w; ++i) gate[i] = pre[i] > 0.0 ? dh[i] : 0.0;
        for (std::size_t i = 0; i < w; ++i) {
            gb[i] += gate[i];
            if (gate[i] != 0.0) {
                double* row = &gw[i * w];
                for (std::size_t j = 0; j < w; ++j) row[j] += gate[i] * prev[j];
            }
        }
        // dL/dh_{j-1} = dL/dh_j + W_j^T (gate)
        for (std::size_t j = 0; j < w; ++j) dprev[j] = dh[j];
        for (std::size_t i = 0; i < w; ++i)
            if (gate[i] != 0.0) {
                const double* row = &wb[i * w];
                for (std::size_t j = 0; j < w; ++j) dprev[j] += gate[i] * row[j];
            }
        dh.swap(dprev);
    }
    for (std::size_t i = 0; i < w; ++i) {
        grad.b_in[i] += dh[i];
        if (dh[i] != 0.0) {
            double* row = &grad.w_in[i * static_cast<std::size_t>(p.n)];
            for (std::size_t j = 0; j < static_cast<std::size_t>(p.n); ++j) row[j] += dh[i] * x[j];
        }
    }
}

/// Basis monomial for Fourier estimation under the input measure:
/// raw chi_S for unbiased signs, centered chi_S for biased signs,
/// first-order Hermite products for Gaussian inputs.
inline double measure_monomial(const Measure& measure, Subset s, std::span<const double> x) {
    double prod = 1.0;
    for (int v : s.vars()) {
        double xi = x[static_cast<std::size_t>(v - 1)];
        prod *= measure.kind == MeasureKind::Biased ? center_biased_coord(xi, measure.p) : xi;
    }
    return prod;
}

struct ResnetTraceRow {
    std::size_t step = 0;
    double train_loss = 0.0;
    double test_mse = 0.0;
    std::vector<double> f_hat;  // tracked-subset Fourier estimates
};

struct ResnetTrace {
    std::vector<Subset> tracked_subsets;
    std::vector<ResnetTraceRow> rows;
    bool diverged = false;
    std::string diagnostic;

    void write_csv(std::ostream& os) const {
        os << "step,train_loss,test_mse";
        for (Subset s : tracked_subsets) os << ",f_hat_" << s.to_label();
        os << '\n';
        os.precision(12);
        for (const ResnetTraceRow& row : rows) {
            os << row.step << ',' << row.train_loss << ',' << row.test_mse;
            for (double f : row.f_hat) os << ',' << f;
            os << '\n';
        }
    }
};

/// Plain minibatch SGD with constant step on the square loss. Records a
/// row at step 0 and every eval_interval steps: test MSE and Fourier
/// estimates of the network output on a fresh evaluation sample set.
/// Aborts with a divergence flag if the minibatch loss exceeds 1e6.
inline ResnetTrace sgd_train(const ResNetConfig& config, LabeledStream stream,
                             std::vector<Subset> tracked_subsets = {}) {
    config.validate();
    if (stream.measure().n != config.n) throw std::invalid_argument("stream dimension mismatch");
    ResNetParams params = ResNetParams::gaussian(config);
    ResNetParams grad = ResNetParams::zeros(config);
    ResnetTrace trace;
    trace.tracked_subsets = std::move(tracked_subsets);
    LabeledStream eval_stream =
        LabeledStream::fresh(stream.measure(), stream.target(), config.seed, "resnet-eval");

    double last_train_loss = 0.0;
    auto evaluate = [&](std::size_t step, double train_loss) {
        Batch eval = eval_stream.draw(config.eval_samples);
        ResnetTraceRow row;
        row.step = step;
        row.train_loss = train_loss;
        double acc = 0.0;
        std::vector<double> fhat(trace.tracked_subsets.size(), 0.0);
        for (std::size_t i = 0; i < eval.count(); ++i) {
            double out = resnet_forward(params, eval.x(i)).output;
            double diff = out - eval.labels[i];
            acc += diff * diff;
            for (std::size_t j = 0; j < fhat.size(); ++j)
                fhat[j] += out * measure_monomial(stream.measure(), trace.tracked_subsets[j], eval.x(i));
        }
        row.test_mse = acc / static_cast<double>(eval.count());
        for (double& f : fhat) f /= static_cast<double>(eval.count());
        row.f_hat = std::move(fhat);
        trace.rows.push_back(std::move(row));
    };

    for (std::size_t step = 0; step < config.steps; ++step) {
        if (step % config.eval_interval == 0) evaluate(step, last_train_loss);
        Batch batch = stream.draw(config.batch);
        grad = ResNetParams::zeros(config);
        double loss = 0.0;
        for (std::size_t i = 0; i < batch.count(); ++i) {
            ResNetActivations act = resnet_forward(params, batch.x(i));
            double diff = act.output - batch.labels[i];
            loss += 0.5 * diff * diff;
            resnet_backprop(params, batch.x(i), batch.labels[i], act, grad);
        }
        loss /= static_cast<double>(batch.count());
        last_train_loss = loss;
        if (loss > 1e6 || !std::isfinite(loss)) {
            trace.diverged = true;
            trace.diagnostic = "minibatch loss " + std::to_string(loss) + " at step " +
                               std::to_string(step);
            return trace;
        }
        params.axpy(-config.step_size / static_cast<double>(batch.count()), grad);
    }
    evaluate(config.steps, last_train_loss);
    return trace;
}

}  // namespace stairnet

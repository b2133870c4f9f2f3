#pragma once

#include <cmath>
#include <cstdint>
#include <istream>
#include <ostream>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "stairnet/fourier.hpp"
#include "stairnet/rng.hpp"
#include "stairnet/sampling.hpp"

namespace stairnet {

/// Edge source: either an input node (index 0 is the constant-1 input,
/// 1..n are the variables) or a hidden neuron.
struct EdgeSource {
    bool from_input = true;
    int index = 0;  // input index in [0,n] or neuron id

    friend bool operator==(const EdgeSource&, const EdgeSource&) = default;
};

struct Edge {
    EdgeSource src;
    int dst = 0;  // neuron id
};

/// Random sparse layered graph of Definition-2 regular form: every
/// input->neuron edge is an independent p1 coin, every consecutive-layer
/// edge an independent p2 coin.
class NetworkTopology {
public:
    NetworkTopology(int n, int width, int layers, double p1, double p2, std::uint64_t seed)
        : n_(n), width_(width), layers_(layers), p1_(p1), p2_(p2), seed_(seed) {
        if (n < 1 || width < 1 || layers < 1) throw std::out_of_range("n, W, L must be positive");
        if (p1 < 0 || p1 > 1 || p2 < 0 || p2 > 1) throw std::out_of_range("p1, p2 must be in [0,1]");
        in_edges_.resize(static_cast<std::size_t>(neuron_count()));
        out_edges_.resize(static_cast<std::size_t>(neuron_count()));
    }

    static NetworkTopology build(int n, int width, int layers, double p1, double p2,
                                 std::uint64_t seed) {
        NetworkTopology t(n, width, layers, p1, p2, seed);
        rng::Key key(seed, "topology");
        std::uint64_t coin = 0;
        // One independent coin per candidate edge, in a fixed order.
        for (int layer = 0; layer < layers; ++layer)
            for (int slot = 0; slot < width; ++slot)
                for (int input = 0; input <= n; ++input, ++coin)
                    if (key.uniform01(coin, 0) < p1)
                        t.add_edge({true, input}, t.neuron_id(layer, slot));
        for (int layer = 1; layer < layers; ++layer)
            for (int slot = 0; slot < width; ++slot)
                for (int prev = 0; prev < width; ++prev, ++coin)
                    if (key.uniform01(coin, 0) < p2)
                        t.add_edge({false, t.neuron_id(layer - 1, prev)}, t.neuron_id(layer, slot));
        return t;
    }

    int dimension() const { return n_; }
    int width() const { return width_; }
    int layer_count() const { return layers_; }
    double p1() const { return p1_; }
    double p2() const { return p2_; }
    std::uint64_t seed() const { return seed_; }
    int neuron_count() const { return width_ * layers_; }
    int neuron_id(int layer, int slot) const { return layer * width_ + slot; }
    int layer_of(int v) const { return v / width_; }

    const std::vector<Edge>& edges() const { return edges_; }
    /// Edge ids into v, in insertion order.
    const std::vector<int>& in_edges(int v) const { return in_edges_.at(static_cast<std::size_t>(v)); }
    const std::vector<int>& out_edges(int v) const { return out_edges_.at(static_cast<std::size_t>(v)); }

    void add_edge(EdgeSource src, int dst) {
        int id = static_cast<int>(edges_.size());
        edges_.push_back({src, dst});
        in_edges_[static_cast<std::size_t>(dst)].push_back(id);
        if (!src.from_input) out_edges_[static_cast<std::size_t>(src.index)].push_back(id);
    }

private:
    int n_, width_, layers_;
    double p1_, p2_;
    std::uint64_t seed_;
    std::vector<Edge> edges_;
    std::vector<std::vector<int>> in_edges_;
    std::vector<std::vector<int>> out_edges_;
};

inline NetworkTopology build_topology(int n, int width, int layers, double p1, double p2,
                                      std::uint64_t seed) {
    return NetworkTopology::build(n, width, layers, p1, p2, seed);
}

/// Edge weights a_e and neuron biases b_v, keyed by the topology.
struct NetworkParams {
    std::vector<double> a;
    std::vector<double> b;

    static NetworkParams zeros(const NetworkTopology& t) {
        NetworkParams p;
        p.a.assign(t.edges().size(), 0.0);
        p.b.assign(static_cast<std::size_t>(t.neuron_count()), 0.0);
        return p;
    }

    static NetworkParams gaussian(const NetworkTopology& t, double std_dev, std::uint64_t seed) {
        NetworkParams p = zeros(t);
        rng::Key key(seed, "init");
        for (std::size_t i = 0; i < p.a.size(); ++i) p.a[i] = std_dev * key.gaussian(i, 0);
        for (std::size_t i = 0; i < p.b.size(); ++i)
            p.b[i] = std_dev * key.gaussian(p.a.size() + i, 0);
        return p;
    }

    friend bool operator==(const NetworkParams&, const NetworkParams&) = default;
};

struct ForwardRecord {
    std::vector<double> pre;    // per neuron, the weighted input sum
    std::vector<double> value;  // per neuron, f_v = pre^2 + b_v
    double output = 0.0;        // sum of all neuron values
};

inline double source_value(const EdgeSource& src, std::span<const double> x,
                           const std::vector<double>& neuron_values) {
    if (src.from_input)
        return src.index == 0 ? 1.0 : x[static_cast<std::size_t>(src.index - 1)];
    return neuron_values[static_cast<std::size_t>(src.index)];
}

/// Forward pass. upto_neuron < 0 evaluates every neuron; otherwise only
/// ids <= upto_neuron, which is exact whenever the later neurons still
/// have all-zero parameters (the layerwise regime).
inline ForwardRecord forward(const NetworkTopology& t, const NetworkParams& params,
                             std::span<const double> x, int upto_neuron = -1) {
    if (static_cast<int>(x.size()) != t.dimension())
        throw std::invalid_argument("input dimension mismatch");
    ForwardRecord rec;
    rec.pre.assign(static_cast<std::size_t>(t.neuron_count()), 0.0);
    rec.value.assign(static_cast<std::size_t>(t.neuron_count()), 0.0);
    const int last = upto_neuron < 0 ? t.neuron_count() - 1 : upto_neuron;
    // Neuron ids ascend with layer, so a single pass is topological.
    for (int v = 0; v <= last; ++v) {
        double pre = 0.0;
        for (int e : t.in_edges(v))
            pre += params.a[static_cast<std::size_t>(e)] *
                   source_value(t.edges()[static_cast<std::size_t>(e)].src, x, rec.value);
        rec.pre[static_cast<std::size_t>(v)] = pre;
        double val = pre * pre + params.b[static_cast<std::size_t>(v)];
        rec.value[static_cast<std::size_t>(v)] = val;
        rec.output += val;
    }
    return rec;
}

/// R(w) = (lambda1/2) sum over input edges a_e^2 + (lambda2/2) sum over
/// neuron edges a_e^2. Biases are unregularized.
inline double regularizer(const NetworkTopology& t, const NetworkParams& params, double lambda1,
                          double lambda2) {
    double acc = 0.0;
    for (std::size_t e = 0; e < t.edges().size(); ++e) {
        double lam = t.edges()[e].src.from_input ? lambda1 : lambda2;
        acc += 0.5 * lam * params.a[e] * params.a[e];
    }
    return acc;
}

inline double pointwise_loss(const NetworkTopology& t, const NetworkParams& params,
                             std::span<const double> x, double label, double lambda1,
                             double lambda2) {
    double diff = forward(t, params, x).output - label;
    return 0.5 * diff * diff + regularizer(t, params, lambda1, lambda2);
}

/// Gradient of the pointwise regularized loss with respect to
/// w_v = {a_e : e = (u,v)} + {b_v}, all other parameters fixed. Valid in
/// the layerwise regime where v's outgoing weights are zero, so w_v
/// affects the output only through f_v. Layout: one entry per in-edge of
/// v (in in_edges order), then the bias derivative.
struct NeuronGradient {
    std::vector<double> a;  // parallel to t.in_edges(v)
    double b = 0.0;

    double sq_norm() const {
        double acc = b * b;
        for (double g : a) acc += g * g;
        return acc;
    }
};

inline NeuronGradient neuron_grad(const NetworkTopology& t, const NetworkParams& params, int v,
                                  const ForwardRecord& rec, std::span<const double> x, double label,
                                  double lambda1, double lambda2) {
    if (v < 0 || v >= t.neuron_count()) throw std::out_of_range("unknown neuron");
    NeuronGradient grad;
    double resid = rec.output - label;
    double pre = rec.pre[static_cast<std::size_t>(v)];
    grad.a.reserve(t.in_edges(v).size());
    for (int e : t.in_edges(v)) {
        const Edge& edge = t.edges()[static_cast<std::size_t>(e)];
        double fu = source_value(edge.src, x, rec.value);
        double lam = edge.src.from_input ? lambda1 : lambda2;
        grad.a.push_back(resid * 2.0 * pre * fu + lam * params.a[static_cast<std::size_t>(e)]);
    }
    grad.b = resid;
    return grad;
}

inline NeuronGradient neuron_grad(const NetworkTopology& t, const NetworkParams& params, int v,
                                  std::span<const double> x, double label, double lambda1,
                                  double lambda2) {
    return neuron_grad(t, params, v, forward(t, params, x), x, label, lambda1, lambda2);
}

/// Unregularized population loss (1/2) E[(f - g)^2], exact by full-cube
/// enumeration; requires n <= 20.
inline double population_loss_exact(const NetworkTopology& t, const NetworkParams& params,
                                    const TargetFn& target) {
    int n = t.dimension();
    if (n > 20) throw std::out_of_range("exact population loss limited to n <= 20");
    const std::uint64_t size = std::uint64_t{1} << n;
    std::vector<double> x(static_cast<std::size_t>(n));
    double acc = 0.0;
    for (std::uint64_t idx = 0; idx < size; ++idx) {
        cube_point(idx, x);
        double diff = forward(t, params, x).output - target(x);
        acc += diff * diff;
    }
    return 0.5 * acc / static_cast<double>(size);
}

/// Monte-Carlo population loss for larger n.
inline double population_loss_sampled(const NetworkTopology& t, const NetworkParams& params,
                                      LabeledStream stream, std::size_t m) {
    Batch b = stream.draw(m);
    double acc = 0.0;
    for (std::size_t i = 0; i < b.count(); ++i) {
        double diff = forward(t, params, b.x(i)).output - b.labels[i];
        acc += diff * diff;
    }
    return 0.5 * acc / static_cast<double>(m);
}

// --- checkpoint format (versioned text, edge list + weight table) ---

inline void serialize_network(std::ostream& os, const NetworkTopology& t,
                              const NetworkParams& params) {
    os.precision(17);
    os << "stairnet-net 1\n";
    os << t.dimension() << ' ' << t.width() << ' ' << t.layer_count() << ' ' << t.p1() << ' '
       << t.p2() << ' ' << t.seed() << '\n';
    os << t.edges().size() << '\n';
    for (std::size_t e = 0; e < t.edges().size(); ++e) {
        const Edge& edge = t.edges()[e];
        os << (edge.src.from_input ? 'i' : 'n') << ' ' << edge.src.index << ' ' << edge.dst << ' '
           << params.a[e] << '\n';
    }
    for (std::size_t v = 0; v < params.b.size(); ++v) os << params.b[v] << '\n';
}

inline std::pair<NetworkTopology, NetworkParams> deserialize_network(std::istream& is) {
    std::string magic;
    int version = 0;
    is >> magic >> version;
    if (magic != "stairnet-net" || version != 1)
        throw std::runtime_error("unrecognized checkpoint format");
    int n, width, layers;
    double p1, p2;
    std::uint64_t seed;
    is >> n >> width >> layers >> p1 >> p2 >> seed;
    NetworkTopology t(n, width, layers, p1, p2, seed);
    std::size_t edge_count;
    is >> edge_count;
    NetworkParams params;
    params.b.assign(static_cast<std::size_t>(t.neuron_count()), 0.0);
    for (std::size_t e = 0; e < edge_count; ++e) {
        char kind;
        int src, dst;
        double weight;
        is >> kind >> src >> dst >> weight;
        t.add_edge({kind == 'i', src}, dst);
        params.a.push_back(weight);
    }
    for (std::size_t v = 0; v < params.b.size(); ++v) is >> params.b[v];
    if (!is) throw std::runtime_error("truncated checkpoint");
    return {std::move(t), std::move(params)};
}

}  // namespace stairnet

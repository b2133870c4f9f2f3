#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "stairnet/regular_net.hpp"
#include "stairnet/targets.hpp"

using namespace stairnet;

// Single neuron wired to x1 and x2 with weights 1/sqrt(2) and bias -1
// computes exactly x1 x2 on the cube.
static std::pair<NetworkTopology, NetworkParams> product_neuron() {
    NetworkTopology t(2, 1, 1, 0.5, 0.5, 0);
    t.add_edge({true, 1}, 0);
    t.add_edge({true, 2}, 0);
    NetworkParams p = NetworkParams::zeros(t);
    p.a[0] = p.a[1] = 1.0 / std::sqrt(2.0);
    p.b[0] = -1.0;
    return {std::move(t), std::move(p)};
}

TEST(RegularNet, ProductNeuron) {
    auto [t, p] = product_neuron();
    for (double x1 : {-1.0, 1.0})
        for (double x2 : {-1.0, 1.0}) {
            double x[] = {x1, x2};
            EXPECT_NEAR(forward(t, p, x).output, x1 * x2, 1e-15);
        }
    SparsePolynomial g = make_parity(2, 2);
    EXPECT_NEAR(population_loss_exact(t, p, [g](std::span<const double> x) { return g(x); }),
                0.0, 1e-15);
}

TEST(RegularNet, TopologyDeterministicAndRegular) {
    NetworkTopology a = build_topology(6, 10, 3, 0.3, 0.2, 77);
    NetworkTopology b = build_topology(6, 10, 3, 0.3, 0.2, 77);
    NetworkTopology c = build_topology(6, 10, 3, 0.3, 0.2, 78);
    EXPECT_EQ(a.edges().size(), b.edges().size());
    EXPECT_NE(a.edges().size(), c.edges().size());  // overwhelmingly likely
    EXPECT_EQ(a.neuron_count(), 30);
    EXPECT_EQ(a.neuron_id(2, 4), 24);
    EXPECT_EQ(a.layer_of(24), 2);
    // only input->any and consecutive-layer edges exist
    for (const Edge& e : a.edges()) {
        if (!e.src.from_input)
            EXPECT_EQ(a.layer_of(e.src.index) + 1, a.layer_of(e.dst));
    }
    EXPECT_THROW(NetworkTopology(0, 1, 1, 0.5, 0.5, 0), std::out_of_range);
    EXPECT_THROW(NetworkTopology(2, 1, 1, 1.5, 0.5, 0), std::out_of_range);
}

TEST(RegularNet, EdgeCountsNearExpectation) {
    // input->neuron candidates: (n+1) W L; neuron->neuron: W^2 (L-1)
    NetworkTopology t = build_topology(10, 40, 4, 0.25, 0.1, 5);
    std::size_t input_edges = 0, hidden_edges = 0;
    for (const Edge& e : t.edges()) (e.src.from_input ? input_edges : hidden_edges)++;
    EXPECT_NEAR(static_cast<double>(input_edges), 0.25 * 11 * 40 * 4, 120.0);
    EXPECT_NEAR(static_cast<double>(hidden_edges), 0.1 * 40 * 40 * 3, 120.0);
}

TEST(RegularNet, RegularizerSplitsByEdgeKind) {
    NetworkTopology t(2, 2, 2, 0.5, 0.5, 0);
    t.add_edge({true, 1}, 0);
    t.add_edge({false, 0}, 2);
    NetworkParams p = NetworkParams::zeros(t);
    p.a = {2.0, 3.0};
    EXPECT_DOUBLE_EQ(regularizer(t, p, 0.1, 0.01), 0.5 * 0.1 * 4.0 + 0.5 * 0.01 * 9.0);
}

TEST(RegularNet, NeuronGradMatchesFiniteDifference) {
    NetworkTopology t = build_topology(3, 3, 2, 0.7, 0.6, 13);
    NetworkParams p = NetworkParams::gaussian(t, 0.5, 13);
    const int v = 4;  // layer-1 neuron; zero its out-edges (there are none past layer 1)
    double x[] = {1.0, -1.0, 1.0};
    const double label = 0.3, lam1 = 0.02, lam2 = 0.05, h = 1e-5;
    NeuronGradient g = neuron_grad(t, p, v, x, label, lam1, lam2);
    ASSERT_EQ(g.a.size(), t.in_edges(v).size());
    auto loss = [&]() { return pointwise_loss(t, p, x, label, lam1, lam2); };
    for (std::size_t j = 0; j < g.a.size(); ++j) {
        double& w = p.a[static_cast<std::size_t>(t.in_edges(v)[j])];
        double keep = w;
        w = keep + h;
        double up = loss();
        w = keep - h;
        double down = loss();
        w = keep;
        EXPECT_NEAR(g.a[j], (up - down) / (2 * h), 1e-6);
    }
    double keep = p.b[v];
    p.b[v] = keep + h;
    double up = loss();
    p.b[v] = keep - h;
    double down = loss();
    p.b[v] = keep;
    EXPECT_NEAR(g.b, (up - down) / (2 * h), 1e-6);
}

TEST(RegularNet, PrefixForwardExactWhenSuffixZero) {
    NetworkTopology t = build_topology(4, 4, 2, 0.6, 0.5, 3);
    NetworkParams p = NetworkParams::gaussian(t, 0.3, 3);
    const int v = 2;
    // zero everything past v, as in a layerwise sweep
    for (int u = v + 1; u < t.neuron_count(); ++u) {
        p.b[static_cast<std::size_t>(u)] = 0.0;
        for (int e : t.in_edges(u)) p.a[static_cast<std::size_t>(e)] = 0.0;
    }
    double x[] = {1, -1, -1, 1};
    EXPECT_DOUBLE_EQ(forward(t, p, x, v).output, forward(t, p, x).output);
}

TEST(RegularNet, SampledLossTracksExact) {
    auto [t, p] = product_neuron();
    SparsePolynomial g = make_staircase(2, 2);  // x1 + x1x2; net computes x1x2
    TargetFn target = [g](std::span<const double> x) { return g(x); };
    double exact = population_loss_exact(t, p, target);
    EXPECT_NEAR(exact, 0.5, 1e-12);  // residual is -x1
    auto stream = LabeledStream::fresh(Measure::unbiased(2), target, 31);
    EXPECT_NEAR(population_loss_sampled(t, p, stream, 4000), exact, 0.05);
}

TEST(RegularNet, SerializationRoundtrip) {
    NetworkTopology t = build_topology(5, 6, 3, 0.4, 0.3, 99);
    NetworkParams p = NetworkParams::gaussian(t, 0.7, 99);
    std::stringstream ss;
    serialize_network(ss, t, p);
    auto [t2, p2] = deserialize_network(ss);
    EXPECT_EQ(t2.edges().size(), t.edges().size());
    EXPECT_EQ(p2, p);
    double x[] = {1, -1, 1, 1, -1};
    EXPECT_DOUBLE_EQ(forward(t2, p2, x).output, forward(t, p, x).output);
    std::stringstream bad("not-a-checkpoint 7\n");
    EXPECT_THROW(deserialize_network(bad), std::runtime_error);
}

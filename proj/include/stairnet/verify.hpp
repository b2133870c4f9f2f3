#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "stairnet/config.hpp"
#include "stairnet/fourier.hpp"
#include "stairnet/hyperparams.hpp"
#include "stairnet/layerwise.hpp"
#include "stairnet/regular_net.hpp"
#include "stairnet/resnet.hpp"
#include "stairnet/staircase.hpp"
#include "stairnet/targets.hpp"

namespace stairnet::verify {

struct SuiteResult {
    std::string name;
    bool passed = false;
    std::string detail;  // measured values vs. thresholds
};

namespace detail {

inline double rel_err(double a, double b) {
    return std::fabs(a - b) / std::max({std::fabs(a), std::fabs(b), 1.0});
}

inline Hyperparams practical_preset() { return load_preset("layerwise-s3").layerwise; }

/// Single quadratic neuron wired to compute r x_i or r x_i x_j exactly.
inline void wire_monomial(NetworkTopology& t, NetworkParams& p, int neuron, Subset s, double r) {
    auto vars = s.vars();
    if (vars.size() == 1) {
        // (a0 + a1 x)^2 + b = 2 a0 a1 x  with  a0 = a1 = sqrt(|r|/2).
        double a = std::sqrt(std::fabs(r) / 2.0);
        t.add_edge({true, 0}, neuron);
        t.add_edge({true, vars[0]}, neuron);
        std::size_t e = p.a.size();
        p.a.push_back(a);
        p.a.push_back(r >= 0 ? a : -a);
        p.b[static_cast<std::size_t>(neuron)] = -(p.a[e] * p.a[e] + p.a[e + 1] * p.a[e + 1]);
    } else if (vars.size() == 2) {
        double a = std::sqrt(std::fabs(r) / 2.0);
        t.add_edge({true, vars[0]}, neuron);
        t.add_edge({true, vars[1]}, neuron);
        p.a.push_back(a);
        p.a.push_back(r >= 0 ? a : -a);
        p.b[static_cast<std::size_t>(neuron)] = -std::fabs(r);
    } else {
        throw std::invalid_argument("monomial gadgets support |S| in {1,2}");
    }
}

}  // namespace detail

/// Criterion: analytic per-neuron gradients and ResNet backprop match
/// central finite differences (step 1e-5), max relative error < 1e-5
/// over 100 random small instances.
inline SuiteResult gradcheck() {
    const double step = 1e-5, bound = 1e-5;
    double worst = 0.0;

    for (int inst = 0; inst < 50; ++inst) {
        rng::Key key(9000 + static_cast<std::uint64_t>(inst), "gradcheck");
        int n = 3 + inst % 3;
        NetworkTopology t = build_topology(n, 4, 2, 0.6, 0.6, 77 + static_cast<std::uint64_t>(inst));
        NetworkParams p = NetworkParams::gaussian(t, 0.4, 33 + static_cast<std::uint64_t>(inst));
        int v = static_cast<int>(key.bits(0, 0) % static_cast<std::uint64_t>(t.neuron_count()));
        for (int e : t.out_edges(v)) p.a[static_cast<std::size_t>(e)] = 0.0;
        std::vector<double> x(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) x[static_cast<std::size_t>(i)] = key.sign(1, static_cast<std::uint64_t>(i));
        double label = key.gaussian(2, 0);
        NeuronGradient g = neuron_grad(t, p, v, x, label, 1e-2, 1e-3);
        const auto& in_edges = t.in_edges(v);
        for (std::size_t j = 0; j <= in_edges.size(); ++j) {
            double* w = j < in_edges.size() ? &p.a[static_cast<std::size_t>(in_edges[j])]
                                            : &p.b[static_cast<std::size_t>(v)];
            double save = *w;
            *w = save + step;
            double up = pointwise_loss(t, p, x, label, 1e-2, 1e-3);
            *w = save - step;
            double dn = pointwise_loss(t, p, x, label, 1e-2, 1e-3);
            *w = save;
            double numeric = (up - dn) / (2.0 * step);
            double analytic = j < in_edges.size() ? g.a[j] : g.b;
            worst = std::max(worst, detail::rel_err(analytic, numeric));
        }
    }

    for (int inst = 0; inst < 50; ++inst) {
        rng::Key key(9500 + static_cast<std::uint64_t>(inst), "gradcheck");
        ResNetConfig c;
        c.n = 3 + inst % 2;
        c.width = 4 + inst % 3;
        c.depth = 2 + inst % 2;
        c.steps = 1;
        c.seed = 55 + static_cast<std::uint64_t>(inst);
        ResNetParams p = ResNetParams::gaussian(c);
        std::vector<double> x(static_cast<std::size_t>(c.n));
        for (int i = 0; i < c.n; ++i) x[static_cast<std::size_t>(i)] = key.gaussian(0, static_cast<std::uint64_t>(i));
        double label = key.gaussian(1, 0);
        ResNetParams grad = ResNetParams::zeros(c);
        resnet_backprop(p, x, label, resnet_forward(p, x), grad);
        auto loss_at = [&]() {
            double diff = resnet_forward(p, x).output - label;
            return 0.5 * diff * diff;
        };
        auto check = [&](double* w, double analytic) {
            double save = *w;
            *w = save + step;
            double up = loss_at();
            *w = save - step;
            double dn = loss_at();
            *w = save;
            worst = std::max(worst, detail::rel_err(analytic, (up - dn) / (2.0 * step)));
        };
        for (std::size_t i = 0; i < p.w_in.size(); i += 3) check(&p.w_in[i], grad.w_in[i]);
        for (std::size_t i = 0; i < p.b_in.size(); i += 2) check(&p.b_in[i], grad.b_in[i]);
        for (int blk = 0; blk < c.depth; ++blk)
            for (std::size_t i = 0; i < p.w_block[static_cast<std::size_t>(blk)].size(); i += 5)
                check(&p.w_block[static_cast<std::size_t>(blk)][i],
                      grad.w_block[static_cast<std::size_t>(blk)][i]);
        for (std::size_t i = 0; i < p.w_out.size(); ++i) check(&p.w_out[i], grad.w_out[i]);
        check(&p.b_out, grad.b_out);
    }

    SuiteResult r{"gradcheck"};
    r.passed = worst < bound;
    std::ostringstream os;
    os << "max relative error " << worst << " vs bound " << bound;
    r.detail = os.str();
    return r;
}

/// Criterion: exact Fourier roundtrips to 1e-10, Parseval to 1e-9,
/// sampled estimates within 3 stderr in >= 95% of 200 trials.
inline SuiteResult fourier_suite() {
    double worst_roundtrip = 0.0, worst_parseval = 0.0;
    for (int trial = 0; trial < 40; ++trial) {
        rng::Key key(11000 + static_cast<std::uint64_t>(trial), "fourier");
        int n = 4 + trial % 9;  // up to 12
        SparsePolynomial g(n);
        int terms = 2 + static_cast<int>(key.bits(0, 0) % 6);
        for (int i = 0; i < terms; ++i) {
            std::uint64_t mask = key.bits(1, static_cast<std::uint64_t>(i)) &
                                 ((std::uint64_t{1} << n) - 1);
            g.set(Subset(mask), key.gaussian(2, static_cast<std::uint64_t>(i)));
        }
        auto spec = exact_fourier(g);
        for (const auto& [s, c] : g.terms())
            worst_roundtrip = std::max(worst_roundtrip, std::fabs(spec[s] - c));
        double sum_sq = 0.0;
        for (const auto& [s, c] : spec) sum_sq += c * c;
        worst_parseval = std::max(worst_parseval, std::fabs(sum_sq - g.parseval_norm()));
    }

    int within = 0;
    const int trials = 200;
    for (int trial = 0; trial < trials; ++trial) {
        rng::Key key(12000 + static_cast<std::uint64_t>(trial), "fourier-sample");
        int n = 6;
        SparsePolynomial g = make_staircase(n, 4);
        Subset s(key.bits(0, 0) & ((std::uint64_t{1} << n) - 1));
        double exact = g.coefficient(s);
        auto stream = LabeledStream::fresh(
            Measure::unbiased(n), [g](std::span<const double> x) { return g(x); },
            500 + static_cast<std::uint64_t>(trial));
        Batch b = stream.draw(4000);
        FourierEstimate est = estimate_fourier(b.xs, b.labels, n, s);
        if (std::fabs(est.estimate - exact) <= 3.0 * est.stderr_ + 1e-12) ++within;
    }

    SuiteResult r{"fourier"};
    r.passed = worst_roundtrip < 1e-10 && worst_parseval < 1e-9 && within >= 190;
    std::ostringstream os;
    os << "roundtrip " << worst_roundtrip << " (<1e-10), parseval " << worst_parseval
       << " (<1e-9), sampled within 3 stderr " << within << "/" << trials << " (>=190)";
    r.detail = os.str();
    return r;
}

/// Criterion: S_k and S_{k,l} satisfy the staircase property with M = 1;
/// chi_{1:k} (k >= 2) and x1 + x1x2x3 fail with the correct witness.
inline SuiteResult staircase_suite() {
    bool ok = true;
    std::ostringstream os;
    for (int k = 1; k <= 6; ++k) {
        auto rep = check_staircase(make_staircase(8, k), 1.0);
        ok &= rep.satisfies;
    }
    ok &= check_staircase(make_double(10, 4, 3), 1.0).satisfies;
    for (int k = 2; k <= 5; ++k) {
        auto rep = check_staircase(make_parity(8, k), 1.0);
        bool witness_ok = !rep.satisfies && rep.violating_subset == Subset::range(1, k);
        ok &= witness_ok;
        if (!witness_ok) os << "parity k=" << k << " witness wrong; ";
    }
    {
        SparsePolynomial g(4);
        g.set(Subset::of({1}), 1.0);
        g.set(Subset::of({1, 2, 3}), 1.0);
        auto rep = check_staircase(g, 1.0);
        bool witness_ok = !rep.satisfies && rep.violating_subset == Subset::of({1, 2, 3});
        ok &= witness_ok;
        if (!witness_ok) os << "x1+x1x2x3 witness wrong; ";
    }
    SuiteResult r{"staircase"};
    r.passed = ok;
    r.detail = ok ? "all witnesses correct" : os.str();
    return r;
}

/// Criterion: with <= 1 active parent and unbiased residual, train_neuron
/// leaves the parameters unchanged in 100/100 seeded trials.
inline SuiteResult blank_persistence() {
    Hyperparams h = detail::practical_preset();
    int n = 4, unchanged = 0;
    for (int trial = 0; trial < 100; ++trial) {
        // Parent computes x1 x2 exactly; v has edges {parent, const};
        // target x1x2 + x3 leaves the unbiased residual -x3.
        NetworkTopology t(n, 1, 2, 0.5, 0.5, 0);
        NetworkParams p = NetworkParams::zeros(t);
        detail::wire_monomial(t, p, 0, Subset::of({1, 2}), 1.0);
        t.add_edge({false, 0}, 1);
        t.add_edge({true, 0}, 1);
        p.a.push_back(0.0);
        p.a.push_back(0.0);
        TargetFn g = [](std::span<const double> x) { return x[0] * x[1] + x[2]; };
        auto stream = LabeledStream::fresh(Measure::unbiased(n), g,
                                           1000 + static_cast<std::uint64_t>(trial));
        rng::Key pk(2000 + static_cast<std::uint64_t>(trial), "perturb");
        train_neuron(t, p, 1, stream, h, pk, 0);
        unchanged += (p.a[2] == 0.0 && p.a[3] == 0.0 && p.b[1] == 0.0);
    }
    SuiteResult r{"blank-persistence"};
    r.passed = unchanged == 100;
    r.detail = "unchanged " + std::to_string(unchanged) + "/100 (need 100)";
    return r;
}

/// Criterion: two active parents with zero residual coefficient on their
/// product leave the neuron blank in >= 98/100 trials.
inline SuiteResult not_useful() {
    Hyperparams h = detail::practical_preset();
    int n = 4, blank = 0;
    for (int trial = 0; trial < 100; ++trial) {
        NetworkTopology t(n, 1, 1, 0.5, 0.5, 0);
        t.add_edge({true, 1}, 0);
        t.add_edge({true, 2}, 0);
        NetworkParams p = NetworkParams::zeros(t);
        TargetFn g = [](std::span<const double> x) { return x[2]; };
        auto stream = LabeledStream::fresh(Measure::unbiased(n), g,
                                           3000 + static_cast<std::uint64_t>(trial));
        rng::Key pk(4000 + static_cast<std::uint64_t>(trial), "perturb");
        train_neuron(t, p, 0, stream, h, pk, 0);
        blank += (p.a[0] == 0.0 && p.a[1] == 0.0 && p.b[0] == 0.0);
    }
    SuiteResult r{"not-useful"};
    r.passed = blank >= 98;
    r.detail = "blank " + std::to_string(blank) + "/100 (need >=98)";
    return r;
}

/// Criterion: with residual coefficient 1 on the parents' product, the
/// neuron learns it with frequency >= 0.15 over 200 seeds; on success
/// |r - 1| <= 0.25, eps_rel <= 0.25 and |zeta_hat(empty)| <= 12 eps_stop.
inline SuiteResult learns_product() {
    Hyperparams h = detail::practical_preset();
    int n = 4, success = 0;
    for (int trial = 0; trial < 200; ++trial) {
        NetworkTopology t(n, 1, 1, 0.5, 0.5, 0);
        t.add_edge({true, 1}, 0);
        t.add_edge({true, 2}, 0);
        NetworkParams p = NetworkParams::zeros(t);
        TargetFn g = [](std::span<const double> x) { return x[0] * x[1]; };
        auto stream = LabeledStream::fresh(Measure::unbiased(n), g,
                                           5000 + static_cast<std::uint64_t>(trial));
        rng::Key pk(6000 + static_cast<std::uint64_t>(trial), "perturb");
        train_neuron(t, p, 0, stream, h, pk, 0);
        auto st = classify_neuron(t, p, 0);
        if (!st.active || !(st.fit->s == Subset::of({1, 2}))) continue;
        auto zeta = error_spectrum(t, p, g, {Subset{}}, SpectrumMode::Exact);
        if (std::fabs(st.fit->r - 1.0) <= 0.25 && st.fit->eps_rel <= 0.25 &&
            std::fabs(zeta[Subset{}]) <= 12.0 * h.eps_stop)
            ++success;
    }
    SuiteResult r{"learns-product"};
    double freq = success / 200.0;
    r.passed = freq >= 0.15;
    std::ostringstream os;
    os << "success frequency " << freq << " (need >=0.15; theory bound 1/64)";
    r.detail = os.str();
    return r;
}

/// Criterion: end-to-end layerwise training of S_3 (n = 8) with the
/// practical preset reaches exact population loss <= 0.05 in >= 8/10
/// seeds, the represented-monomial set grows monotonically, and no run
/// aborts on the two-active-parent census.
inline SuiteResult layerwise_end_to_end() {
    RunConfig cfg = load_preset("layerwise-s3");
    SparsePolynomial g = cfg.target.build();
    TargetFn target = [g](std::span<const double> x) { return g(x); };
    int good = 0;
    bool monotone = true;
    std::ostringstream os;
    for (std::uint64_t seed : cfg.seeds) {
        auto stream = LabeledStream::fresh(Measure::unbiased(cfg.target.n), target, seed);
        auto res = train_network_layerwise(cfg.target.n, stream, cfg.layerwise, seed,
                                           cfg.tracked_or_default());
        double loss = res.trace.rows.empty() ? 1e9 : res.trace.rows.back().loss;
        std::set<Subset> prev;
        for (const auto& row : res.trace.rows) {
            std::set<Subset> cur;
            for (const auto& fit : row.actives) cur.insert(fit.s);
            for (Subset s : prev) monotone &= cur.count(s) > 0;
            prev = std::move(cur);
        }
        bool ok = !res.trace.aborted && loss <= 0.05;
        good += ok;
        os << "seed " << seed << (res.trace.aborted ? " ABORT" : "") << " loss " << loss << "; ";
    }
    SuiteResult r{"layerwise-e2e"};
    r.passed = good >= 8 && monotone;
    r.detail = os.str() + "passes " + std::to_string(good) + "/10 (need >=8), monotone " +
               (monotone ? "yes" : "NO");
    return r;
}

/// Criterion: the idealized loss with noiseless monomial parents matches
/// the exact population loss restricted to w_v within 1e-9 over 50
/// random configurations.
inline SuiteResult idealized_loss_suite() {
    double worst = 0.0;
    for (int inst = 0; inst < 50; ++inst) {
        rng::Key key(13000 + static_cast<std::uint64_t>(inst), "idealized");
        int n = 5;
        auto rand_subset = [&](std::uint64_t lane) {
            int a = 1 + static_cast<int>(key.bits(0, lane) % static_cast<std::uint64_t>(n));
            int b = 1 + static_cast<int>(key.bits(1, lane) % static_cast<std::uint64_t>(n));
            return a == b ? Subset::of({a}) : Subset::of({a, b});
        };
        Subset s1 = rand_subset(0);
        Subset s2 = inst % 4 == 0 ? s1 : rand_subset(1);
        double r1 = 0.5 + key.uniform01(2, 0);
        double r2 = 0.5 + key.uniform01(2, 1);

        NetworkTopology t(n, 2, 2, 0.5, 0.5, 0);
        NetworkParams p = NetworkParams::zeros(t);
        detail::wire_monomial(t, p, 0, s1, r1);
        detail::wire_monomial(t, p, 1, s2, r2);
        int v = 2;  // layer-1 neuron fed by both parents
        t.add_edge({false, 0}, v);
        t.add_edge({false, 1}, v);
        double a1 = key.uniform_sym(3, 0, 1.0), a2 = key.uniform_sym(3, 1, 1.0);
        double bv = key.uniform_sym(3, 2, 0.5);
        p.a.push_back(a1);
        p.a.push_back(a2);
        p.b[static_cast<std::size_t>(v)] = bv;

        // Residual spectrum at w_v = 0: choose the target to realize it.
        std::map<Subset, double> zeta;
        zeta[Subset{}] = key.uniform_sym(4, 0, 0.5);
        zeta[s1.sym_diff(s2)] = key.uniform_sym(4, 1, 0.5);
        zeta[Subset::of({n})] = key.uniform_sym(4, 2, 0.5);
        SparsePolynomial g(n);
        g.add(s1, r1);
        g.add(s2, r2);
        for (const auto& [s, c] : zeta) g.add(s, -c);

        IdealizedLoss il = idealized_loss(a1, a2, bv, r1, r2, s1, s2, zeta, 1e-3, 1e-3);
        double exact = population_loss_exact(t, p, [g](std::span<const double> x) { return g(x); });
        worst = std::max(worst, std::fabs(il.plain - exact));
    }
    SuiteResult r{"idealized-loss"};
    r.passed = worst < 1e-9;
    std::ostringstream os;
    os << "max |idealized - population| " << worst << " (<1e-9)";
    r.detail = os.str();
    return r;
}

namespace detail {

struct ResnetRunSummary {
    bool reached = false;      // test MSE under the threshold at any row
    double final_mse = 0.0;
    double initial_mse = 0.0;
    double min_mse = 0.0;
    int inversions = 0;        // Fourier crossing-order inversions
    bool crossed_all = false;
};

inline ResnetRunSummary fig2_run(int n, int k, int width, int depth, std::size_t steps,
                                 std::size_t eval_interval, bool parity, std::uint64_t seed,
                                 double mse_threshold) {
    ResNetConfig c;
    c.n = n;
    c.width = width;
    c.depth = depth;
    c.batch = 20;
    c.steps = steps;
    c.eval_interval = eval_interval;
    c.eval_samples = 30000;
    c.init_std = 0.2;
    c.step_size = 0.01;
    c.seed = seed;
    SparsePolynomial g = parity ? make_parity(n, k) : normalize_to_unit(make_staircase(n, k));
    std::vector<Subset> tracked;
    for (int i = 1; i <= k; ++i) tracked.push_back(Subset::range(1, i));
    // Fresh i.i.d. samples per step, matching the expository comparison;
    // with a fixed dataset a parity run can eventually fit the sample and
    // generalize, which is a different (memorization) phenomenon.
    auto stream = LabeledStream::fresh(Measure::unbiased(n),
                                       [g](std::span<const double> x) { return g(x); }, seed);
    ResnetTrace trace = sgd_train(c, stream, tracked);

    ResnetRunSummary out;
    if (trace.rows.empty() || trace.diverged) return out;
    out.initial_mse = trace.rows.front().test_mse;
    out.final_mse = trace.rows.back().test_mse;
    out.min_mse = out.initial_mse;
    for (const auto& row : trace.rows) {
        out.min_mse = std::min(out.min_mse, row.test_mse);
        if (row.test_mse < mse_threshold) out.reached = true;
    }
    // Crossing time t_i: first step where |f_hat_{1:i}| reaches half the
    // target coefficient (1/sqrt(k) for the normalized staircase).
    double half = 0.5 * (parity ? 1.0 : 1.0 / std::sqrt(static_cast<double>(k)));
    std::vector<double> crossing(static_cast<std::size_t>(k), -1.0);
    for (const auto& row : trace.rows)
        for (int i = 0; i < k; ++i)
            if (crossing[static_cast<std::size_t>(i)] < 0 &&
                std::fabs(row.f_hat[static_cast<std::size_t>(i)]) >= half)
                crossing[static_cast<std::size_t>(i)] = static_cast<double>(row.step);
    out.crossed_all = true;
    for (double t : crossing) out.crossed_all &= t >= 0;
    if (out.crossed_all)
        for (int i = 1; i < k; ++i)
            if (crossing[static_cast<std::size_t>(i)] < crossing[static_cast<std::size_t>(i - 1)])
                ++out.inversions;
    return out;
}

}  // namespace detail

/// Criterion (fast variant): n = 16, k = 5, width 32, depth 4, B = 20;
/// test MSE < 0.15 within 5e4 steps in >= 8/10 seeds.
inline SuiteResult resnet_fast() {
    int reached = 0;
    std::ostringstream os;
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        auto s = detail::fig2_run(16, 5, 32, 4, 50000, 2500, false, seed, 0.15);
        reached += s.reached;
        os << "seed " << seed << " final " << s.final_mse << "; ";
    }
    SuiteResult r{"resnet-fast"};
    r.passed = reached >= 8;
    r.detail = os.str() + "reached " + std::to_string(reached) + "/10 (need >=8)";
    return r;
}

/// Criterion (slow variant): full-scale configuration; S_10/sqrt(10) reaches
/// test MSE < 0.1 within 3e5 steps in >= 8/10 seeds; parity chi_{1:10}
/// stays above 0.8 x initial MSE; staircase Fourier crossing times are
/// nondecreasing with at most one inversion per successful run.
inline SuiteResult resnet_fig2_slow() {
    int reached = 0;
    bool ordering = true, parity_flat = true;
    std::ostringstream os;
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        auto s = detail::fig2_run(30, 10, 40, 5, 300000, 3000, false, seed, 0.1);
        reached += s.reached;
        if (s.reached && s.crossed_all && s.inversions > 1) ordering = false;
        os << "stair seed " << seed << " final " << s.final_mse << " inv " << s.inversions << "; ";
    }
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        auto s = detail::fig2_run(30, 10, 40, 5, 300000, 3000, true, seed, 0.1);
        parity_flat &= s.min_mse > 0.8 * s.initial_mse;
        os << "parity seed " << seed << " min " << s.min_mse << "/init " << s.initial_mse << "; ";
    }
    SuiteResult r{"resnet-fig2-slow"};
    r.passed = reached >= 8 && ordering && parity_flat;
    r.detail = os.str() + "reached " + std::to_string(reached) + "/10 (need >=8), ordering " +
               (ordering ? "ok" : "VIOLATED") + ", parity floor " + (parity_flat ? "ok" : "VIOLATED");
    return r;
}

/// Criterion: theorem hyperparameter identities (L = n, eta = 4 tau,
/// tau = 1/(2^20 M^7 L), sqrt(lambda1/lambda2) = 1/(64 M^2 L)) hold for
/// 20 random tuples.
inline SuiteResult theorem_identities() {
    bool ok = true;
    std::ostringstream os;
    for (int trial = 0; trial < 20; ++trial) {
        rng::Key key(14000 + static_cast<std::uint64_t>(trial), "theorem");
        int n = 2 + static_cast<int>(key.bits(0, 0) % 50);
        double s = 1.5 + 10.0 * key.uniform01(1, 0);
        double m = 1.5 + 20.0 * key.uniform01(2, 0);
        double eps = 0.01 + 0.5 * key.uniform01(3, 0);
        double delta = 0.01 + 0.5 * key.uniform01(4, 0);
        TheoremHyperparams h = theorem_hyperparams(n, s, m, eps, delta);
        double tau_expected =
            -(20.0 * std::log10(2.0) + 7.0 * std::log10(m) + std::log10(static_cast<double>(n)));
        double ratio_expected =
            -2.0 * (std::log10(64.0) + 2.0 * std::log10(m) + std::log10(static_cast<double>(n)));
        bool t_ok = h.layers == n && std::fabs(h.log10_eta - h.log10_tau - std::log10(4.0)) < 1e-12 &&
                    std::fabs(h.log10_tau - tau_expected) < 1e-12 &&
                    std::fabs(h.log10_lambda1 - h.log10_lambda2 - ratio_expected) < 1e-9;
        ok &= t_ok;
        if (!t_ok) os << "tuple " << trial << " failed; ";
    }
    SuiteResult r{"theorem-hyperparams"};
    r.passed = ok;
    r.detail = ok ? "all identities hold on 20 tuples" : os.str();
    return r;
}

inline std::vector<std::string> suite_names(bool slow) {
    std::vector<std::string> names = {"gradcheck",      "fourier",        "staircase",
                                      "blank-persistence", "not-useful",  "learns-product",
                                      "layerwise-e2e",  "idealized-loss", "resnet-fast",
                                      "theorem-hyperparams"};
    if (slow) names.push_back("resnet-fig2-slow");
    return names;
}

inline SuiteResult run_suite(const std::string& name) {
    if (name == "gradcheck") return gradcheck();
    if (name == "fourier") return fourier_suite();
    if (name == "staircase") return staircase_suite();
    if (name == "blank-persistence") return blank_persistence();
    if (name == "not-useful") return not_useful();
    if (name == "learns-product") return learns_product();
    if (name == "layerwise-e2e") return layerwise_end_to_end();
    if (name == "idealized-loss") return idealized_loss_suite();
    if (name == "resnet-fast") return resnet_fast();
    if (name == "resnet-fig2-slow") return resnet_fig2_slow();
    if (name == "theorem-hyperparams") return theorem_identities();
    throw std::invalid_argument("unknown suite: " + name);
}

}  // namespace stairnet::verify

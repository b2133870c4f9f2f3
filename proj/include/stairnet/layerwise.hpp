#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <string>
#include <vector>

#include "stairnet/fourier.hpp"
#include "stairnet/hyperparams.hpp"
#include "stairnet/regular_net.hpp"
#include "stairnet/sampling.hpp"
#include "stairnet/subset.hpp"

namespace stairnet {

constexpr double kBlankTolerance = 1e-12;

/// An active neuron's monomial representation: f_v = r chi_S + h with
/// h_hat(S) = 0 and max|h| <= |r| eps_rel.
struct MonomialFit {
    Subset s;
    double r = 0.0;
    double eps_rel = 0.0;
};

struct NeuronStatus {
    bool active = false;
    std::optional<MonomialFit> fit;  // present iff active
    bool sampled_fallback = false;   // classification used sampling, not enumeration
};

/// Per-neuron value tables over the full cube; value_of(v)[idx] is
/// f_v at cube_point(idx). Requires n <= 20.
struct CubeTables {
    int n = 0;
    std::vector<std::vector<double>> values;  // per neuron
    std::vector<double> output;

    static CubeTables compute(const NetworkTopology& t, const NetworkParams& params,
                              int upto_neuron = -1) {
        if (t.dimension() > 20) throw std::out_of_range("cube enumeration limited to n <= 20");
        CubeTables tab;
        tab.n = t.dimension();
        const std::uint64_t size = std::uint64_t{1} << tab.n;
        tab.values.assign(static_cast<std::size_t>(t.neuron_count()), std::vector<double>(size));
        tab.output.assign(size, 0.0);
        std::vector<double> x(static_cast<std::size_t>(tab.n));
        for (std::uint64_t idx = 0; idx < size; ++idx) {
            cube_point(idx, x);
            ForwardRecord rec = forward(t, params, x, upto_neuron);
            for (int v = 0; v < t.neuron_count(); ++v)
                tab.values[static_cast<std::size_t>(v)][idx] = rec.value[static_cast<std::size_t>(v)];
            tab.output[idx] = rec.output;
        }
        return tab;
    }
};

inline bool incident_params_zero(const NetworkTopology& t, const NetworkParams& params, int v) {
    if (params.b[static_cast<std::size_t>(v)] != 0.0) return false;
    for (int e : t.in_edges(v))
        if (params.a[static_cast<std::size_t>(e)] != 0.0) return false;
    for (int e : t.out_edges(v))
        if (params.a[static_cast<std::size_t>(e)] != 0.0) return false;
    return true;
}

/// Classification from a precomputed value table. Argmax ties break
/// toward the smallest bitmask.
inline NeuronStatus classify_from_table(const NetworkTopology& t, const NetworkParams& params,
                                        int v, const std::vector<double>& table) {
    NeuronStatus status;
    double max_abs = 0.0;
    for (double val : table) max_abs = std::max(max_abs, std::fabs(val));
    if (max_abs <= kBlankTolerance && incident_params_zero(t, params, v)) return status;

    status.active = true;
    std::vector<double> spec(table);
    fwht(spec);
    const double scale = 1.0 / static_cast<double>(spec.size());
    std::uint64_t best = 0;
    double best_abs = -1.0;
    for (std::uint64_t m = 0; m < spec.size(); ++m) {
        double mag = std::fabs(spec[m] * scale);
        if (mag > best_abs) {
            best_abs = mag;
            best = m;
        }
    }
    MonomialFit fit;
    fit.s = Subset(best);
    fit.r = spec[best] * scale;
    double max_h = 0.0;
    std::vector<double> x(static_cast<std::size_t>(t.dimension()));
    for (std::uint64_t idx = 0; idx < table.size(); ++idx) {
        cube_point(idx, x);
        max_h = std::max(max_h, std::fabs(table[idx] - fit.r * eval_monomial(fit.s, x)));
    }
    fit.eps_rel = fit.r == 0.0 ? 0.0 : max_h / std::fabs(fit.r);
    status.fit = fit;
    return status;
}

/// Blank iff the full-cube max of |f_v| vanishes (to 1e-12) and all
/// incident weights and the bias are zero; otherwise Active with the
/// dominant-coefficient monomial fit. Falls back to sampled
/// classification (flagged) when n > 20.
inline NeuronStatus classify_neuron(const NetworkTopology& t, const NetworkParams& params, int v,
                                    std::size_t fallback_samples = 4096) {
    if (v < 0 || v >= t.neuron_count()) throw std::out_of_range("unknown neuron");
    const int n = t.dimension();
    if (n <= 20) {
        const std::uint64_t size = std::uint64_t{1} << n;
        std::vector<double> table(size);
        std::vector<double> x(static_cast<std::size_t>(n));
        for (std::uint64_t idx = 0; idx < size; ++idx) {
            cube_point(idx, x);
            table[idx] = forward(t, params, x).value[static_cast<std::size_t>(v)];
        }
        return classify_from_table(t, params, v, table);
    }
    // Sampled fallback: estimate the dominant coefficient among low-order
    // subsets built from v's observed correlations.
    NeuronStatus status;
    status.sampled_fallback = true;
    rng::Key key(t.seed(), "classify");
    std::vector<double> x(static_cast<std::size_t>(n));
    double max_abs = 0.0;
    for (std::size_t i = 0; i < fallback_samples; ++i) {
        for (int j = 0; j < n; ++j) x[static_cast<std::size_t>(j)] = key.sign(i, static_cast<std::uint64_t>(j));
        max_abs = std::max(max_abs, std::fabs(forward(t, params, x).value[static_cast<std::size_t>(v)]));
    }
    status.active = !(max_abs <= kBlankTolerance && incident_params_zero(t, params, v));
    return status;
}

enum class SpectrumMode { Exact, Sampled };

/// Fourier coefficients of the error zeta = f(.; w) - g for the given
/// subsets. Exact mode enumerates the cube (n <= 20); sampled mode uses
/// m fresh samples from the stream.
inline std::map<Subset, double> error_spectrum(const NetworkTopology& t,
                                               const NetworkParams& params, const TargetFn& target,
                                               const std::vector<Subset>& subsets,
                                               SpectrumMode mode, LabeledStream stream = {},
                                               std::size_t m = 30000) {
    std::map<Subset, double> out;
    if (mode == SpectrumMode::Exact) {
        const int n = t.dimension();
        if (n > 20) throw std::out_of_range("exact spectrum limited to n <= 20");
        const std::uint64_t size = std::uint64_t{1} << n;
        std::vector<double> table(size);
        std::vector<double> x(static_cast<std::size_t>(n));
        for (std::uint64_t idx = 0; idx < size; ++idx) {
            cube_point(idx, x);
            table[idx] = forward(t, params, x).output - target(x);
        }
        fwht(table);
        const double scale = 1.0 / static_cast<double>(size);
        for (Subset s : subsets) out[s] = table[s.mask()] * scale;
        return out;
    }
    Batch b = stream.draw(m);
    std::vector<double> resid(b.count());
    for (std::size_t i = 0; i < b.count(); ++i)
        resid[i] = forward(t, params, b.x(i)).output - b.labels[i];
    for (Subset s : subsets)
        out[s] = estimate_fourier(b.xs, resid, t.dimension(), s).estimate;
    return out;
}

/// Idealized loss of a neuron with two noiseless monomial parents
/// (r_i chi_{S_i}), evaluated at weights (a1, a2) and bias b against the
/// residual spectrum zeta_hat(.; w^0). Case split on S1 = S2; for
/// distinct parents the coupled coefficient lives on S = S1 xor S2.
struct IdealizedLoss {
    double plain = 0.0;        // ~loss without the regularizer
    double regularized = 0.0;  // plus (gamma1 a1^2 + gamma2 a2^2)/2
};

inline IdealizedLoss idealized_loss(double a1, double a2, double b, double r1, double r2,
                                    Subset s1, Subset s2,
                                    const std::map<Subset, double>& residual_spectrum,
                                    double gamma1, double gamma2) {
    auto zeta = [&](Subset s) {
        auto it = residual_spectrum.find(s);
        return it == residual_spectrum.end() ? 0.0 : it->second;
    };
    IdealizedLoss out;
    if (s1 == s2) {
        double lin = r1 * a1 + r2 * a2;
        double c0 = lin * lin + b + zeta(Subset{});
        out.plain = 0.5 * c0 * c0;
        for (const auto& [s, z] : residual_spectrum)
            if (!s.empty()) out.plain += 0.5 * z * z;
    } else {
        Subset s = s1.sym_diff(s2);
        double cs = 2.0 * r1 * r2 * a1 * a2 + zeta(s);
        double c0 = (r1 * a1) * (r1 * a1) + (r2 * a2) * (r2 * a2) + b + zeta(Subset{});
        out.plain = 0.5 * cs * cs + 0.5 * c0 * c0;
        for (const auto& [sp, z] : residual_spectrum)
            if (!sp.empty() && !(sp == s)) out.plain += 0.5 * z * z;
    }
    out.regularized = out.plain + 0.5 * gamma1 * a1 * a1 + 0.5 * gamma2 * a2 * a2;
    return out;
}

// --- Algorithms 1-3 ---

struct NeuronSgdResult {
    std::size_t iters = 0;
    bool stationary = false;  // false means the safety cap was hit
};

/// NeuronSGD: minibatch gradient steps on w_v only, until the minibatch
/// gradient norm drops to eps_stop or the safety cap fires. Requires
/// v's outgoing weights to be zero (layerwise regime).
inline NeuronSgdResult neuron_sgd(const NetworkTopology& t, NetworkParams& params, int v,
                                  LabeledStream& stream, const Hyperparams& hyper) {
    for (int e : t.out_edges(v))
        if (params.a[static_cast<std::size_t>(e)] != 0.0)
            throw std::logic_error("neuron_sgd requires zero outgoing weights");
    const auto& in_edges = t.in_edges(v);
    // Later neurons can be skipped in the forward pass iff they are still
    // all-zero, as in a layerwise sweep.
    int upto = v;
    for (int u = v + 1; u < t.neuron_count() && upto == v; ++u) {
        if (params.b[static_cast<std::size_t>(u)] != 0.0) upto = -1;
        for (int e : t.in_edges(u))
            if (params.a[static_cast<std::size_t>(e)] != 0.0) upto = -1;
    }
    NeuronSgdResult result;
    std::vector<double> xi(in_edges.size() + 1);
    while (true) {
        Batch batch = stream.draw(hyper.batch);
        std::fill(xi.begin(), xi.end(), 0.0);
        for (std::size_t i = 0; i < batch.count(); ++i) {
            ForwardRecord rec = forward(t, params, batch.x(i), upto);
            NeuronGradient g = neuron_grad(t, params, v, rec, batch.x(i), batch.labels[i],
                                           hyper.lambda1, hyper.lambda2);
            for (std::size_t j = 0; j < in_edges.size(); ++j) xi[j] += g.a[j];
            xi.back() += g.b;
        }
        double sq = 0.0;
        for (double& g : xi) {
            g /= static_cast<double>(batch.count());
            sq += g * g;
        }
        if (std::sqrt(sq) <= hyper.eps_stop) {
            result.stationary = true;
            return result;
        }
        for (std::size_t j = 0; j < in_edges.size(); ++j)
            params.a[static_cast<std::size_t>(in_edges[j])] -= hyper.alpha * xi[j];
        params.b[static_cast<std::size_t>(v)] -= hyper.alpha * xi.back();
        if (++result.iters >= hyper.max_inner_iters) return result;  // NotStationary
    }
}

/// TrainNeuron: perturb w_v uniformly in [-eta, eta], run NeuronSGD,
/// then prune every entry of w_v with magnitude strictly less than tau.
inline NeuronSgdResult train_neuron(const NetworkTopology& t, NetworkParams& params, int v,
                                    LabeledStream& stream, const Hyperparams& hyper,
                                    const rng::Key& perturb_key, std::uint64_t perturb_counter) {
    const auto& in_edges = t.in_edges(v);
    for (std::size_t j = 0; j < in_edges.size(); ++j)
        params.a[static_cast<std::size_t>(in_edges[j])] +=
            perturb_key.uniform_sym(perturb_counter, j, hyper.eta);
    params.b[static_cast<std::size_t>(v)] +=
        perturb_key.uniform_sym(perturb_counter, in_edges.size(), hyper.eta);

    NeuronSgdResult result = neuron_sgd(t, params, v, stream, hyper);

    for (int e : in_edges) {
        double& w = params.a[static_cast<std::size_t>(e)];
        if (std::fabs(w) < hyper.tau) w = 0.0;
    }
    double& b = params.b[static_cast<std::size_t>(v)];
    if (std::fabs(b) < hyper.tau) b = 0.0;
    return result;
}

struct TraceRow {
    std::size_t iteration = 0;
    int layer = 0;  // 1-based
    int neuron = 0;
    double loss = 0.0;
    int active_count = 0;
    std::size_t inner_iters = 0;
    bool stationary = false;
    std::vector<double> zeta;          // tracked-subset error coefficients
    std::vector<MonomialFit> actives;  // one fit per active neuron
};

struct TrainingTrace {
    std::vector<Subset> tracked_subsets;
    std::vector<TraceRow> rows;
    bool aborted = false;
    std::string diagnostic;

    void write_csv(std::ostream& os) const {
        os << "iteration,layer,neuron,loss,active_count";
        for (Subset s : tracked_subsets) os << ",zeta_hat_" << s.to_label();
        os << '\n';
        os.precision(12);
        for (const TraceRow& row : rows) {
            os << row.iteration << ',' << row.layer << ',' << row.neuron << ',' << row.loss << ','
               << row.active_count;
            for (double z : row.zeta) os << ',' << z;
            os << '\n';
        }
    }
};

/// Number of parents of v that are active hidden neurons. Inputs are
/// excluded from this census: they always compute nonzero functions, so
/// counting them would make the sparsity invariant vacuous at practical
/// connection densities.
inline int active_hidden_parents(const NetworkTopology& t, int v,
                                 const std::vector<NeuronStatus>& statuses) {
    std::set<int> parents;
    for (int e : t.in_edges(v)) {
        const EdgeSource& src = t.edges()[static_cast<std::size_t>(e)].src;
        if (!src.from_input && statuses[static_cast<std::size_t>(src.index)].active)
            parents.insert(src.index);
    }
    return static_cast<int>(parents.size());
}

struct LayerwiseResult {
    NetworkTopology topology;
    NetworkParams params;
    TrainingTrace trace;
};

/// TrainNetworkLayerwise: zero-initialize, then train each neuron once,
/// layer by layer, in ascending neuron id. Records a trace row after
/// every neuron. Aborts with a diagnostic if any neuron ever has more
/// than two active hidden parents.
inline LayerwiseResult train_network_layerwise(int n, LabeledStream stream,
                                               const Hyperparams& hyper, std::uint64_t seed,
                                               std::vector<Subset> tracked_subsets = {}) {
    hyper.validate();
    LayerwiseResult result{
        build_topology(n, hyper.width, hyper.layers, hyper.p1, hyper.p2, seed),
        NetworkParams{}, TrainingTrace{}};
    const NetworkTopology& t = result.topology;
    result.params = NetworkParams::zeros(t);
    result.trace.tracked_subsets = std::move(tracked_subsets);
    rng::Key perturb_key(seed, "perturb");

    std::vector<NeuronStatus> statuses(static_cast<std::size_t>(t.neuron_count()));
    std::size_t iteration = 0;
    for (int v = 0; v < t.neuron_count(); ++v) {
        NeuronSgdResult sgd = train_neuron(t, result.params, v, stream, hyper, perturb_key, iteration);
        ++iteration;

        CubeTables tables = CubeTables::compute(t, result.params, v);
        for (int u = 0; u <= v; ++u)
            statuses[static_cast<std::size_t>(u)] =
                classify_from_table(t, result.params, u, tables.values[static_cast<std::size_t>(u)]);

        TraceRow row;
        row.iteration = iteration;
        row.layer = t.layer_of(v) + 1;
        row.neuron = v;
        row.inner_iters = sgd.iters;
        row.stationary = sgd.stationary;
        {
            // Exact population loss and error spectrum from the cube tables.
            std::vector<double> resid(tables.output.size());
            std::vector<double> x(static_cast<std::size_t>(n));
            double acc = 0.0;
            for (std::uint64_t idx = 0; idx < resid.size(); ++idx) {
                cube_point(idx, x);
                resid[idx] = tables.output[idx] - stream.target()(x);
                acc += resid[idx] * resid[idx];
            }
            row.loss = 0.5 * acc / static_cast<double>(resid.size());
            fwht(resid);
            const double scale = 1.0 / static_cast<double>(resid.size());
            for (Subset s : result.trace.tracked_subsets)
                row.zeta.push_back(resid[s.mask()] * scale);
        }
        for (const NeuronStatus& st : statuses)
            if (st.active) {
                ++row.active_count;
                row.actives.push_back(*st.fit);
            }
        result.trace.rows.push_back(std::move(row));

        for (int u = 0; u < t.neuron_count(); ++u) {
            if (active_hidden_parents(t, u, statuses) > 2) {
                result.trace.aborted = true;
                result.trace.diagnostic = "neuron " + std::to_string(u) +
                                          " has more than two active hidden parents after "
                                          "training neuron " + std::to_string(v);
                return result;
            }
        }
    }
    return result;
}

}  // namespace stairnet

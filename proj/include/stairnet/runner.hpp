#pragma once

#include <filesystem>
#include <fstream>
#include <mutex>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "stairnet/config.hpp"
#include "stairnet/fourier.hpp"
#include "stairnet/layerwise.hpp"
#include "stairnet/resnet.hpp"
#include "stairnet/staircase.hpp"
#include "stairnet/svg.hpp"

namespace stairnet {

/// Short stable hash of the configuration, embedded in artifact file
/// names so runs with different settings never collide.
inline std::string config_fingerprint(const RunConfig& c) {
    std::ostringstream os;
    os.precision(17);
    os << static_cast<int>(c.kind) << '|' << c.target.type << ',' << c.target.n << ','
       << c.target.k << ',' << c.target.j << ',' << c.target.l << ',' << c.target.normalize << '|'
       << c.measure.type << ',' << c.measure.p << '|' << c.layerwise.width << ','
       << c.layerwise.layers << ',' << c.layerwise.p1 << ',' << c.layerwise.p2 << ','
       << c.layerwise.lambda1 << ',' << c.layerwise.lambda2 << ',' << c.layerwise.eta << ','
       << c.layerwise.batch << ',' << c.layerwise.eps_stop << ',' << c.layerwise.alpha << ','
       << c.layerwise.tau << ',' << c.layerwise.max_inner_iters << '|' << c.resnet.width << ','
       << c.resnet.depth << ',' << c.resnet.init_std << ',' << c.resnet.step_size << ','
       << c.resnet.batch << ',' << c.resnet.steps << ',' << c.resnet.eval_samples << '|'
       << c.dataset << ',' << c.eval_interval;
    for (Subset s : c.tracked) os << ';' << s.to_label();
    std::uint64_t h = 1469598103934665603ull;
    for (char ch : os.str()) {
        h ^= static_cast<unsigned char>(ch);
        h *= 1099511628211ull;
    }
    std::ostringstream hex;
    hex << std::hex << (h & 0xffffffffull);
    return hex.str();
}

struct SeedOutcome {
    std::uint64_t seed = 0;
    bool completed = false;  // no abort/divergence/exception
    bool success = false;    // final loss under the experiment's threshold
    double final_loss = 0.0;
    std::string error;  // empty when completed
    std::string csv_path;
};

struct RunReport {
    std::vector<SeedOutcome> outcomes;
    std::string summary_path;
    std::string error_path;

    bool all_completed() const {
        for (const auto& o : outcomes)
            if (!o.completed) return false;
        return true;
    }
};

namespace detail {

inline LabeledStream make_stream(const RunConfig& c, const SparsePolynomial& g,
                                 std::uint64_t seed) {
    TargetFn target = [g](std::span<const double> x) { return g(x); };
    Measure measure = c.measure.build(c.target.n);
    if (c.dataset > 0) return LabeledStream::cyclic(measure, target, c.dataset, seed);
    return LabeledStream::fresh(measure, target, seed);
}

inline void json_escape(std::ostream& os, const std::string& s) {
    for (char ch : s) {
        if (ch == '"' || ch == '\\') os << '\\' << ch;
        else if (ch == '\n') os << "\\n";
        else os << ch;
    }
}

}  // namespace detail

/// Runs every seed of the configuration (bounded worker pool), writing
/// one trace CSV per seed, loss/Fourier SVG charts, a summary CSV, and
/// a JSON-lines error record for failed seeds. Partial outputs are
/// retained on failure.
inline RunReport run_experiment(const RunConfig& config, const std::string& out_dir,
                                unsigned jobs = 1) {
    config.validate();
    namespace fs = std::filesystem;
    fs::create_directories(out_dir);
    const std::string tag = config_fingerprint(config);
    const SparsePolynomial target = config.target.build();
    const std::vector<Subset> tracked = config.tracked_or_default();

    RunReport report;
    report.outcomes.resize(config.seeds.size());

    // Per-seed series captured for the charts.
    std::vector<std::vector<std::pair<double, double>>> loss_series(config.seeds.size());
    std::vector<std::vector<std::vector<std::pair<double, double>>>> fourier_series(
        config.seeds.size());

    std::mutex mu;
    std::size_t next = 0;
    auto worker = [&]() {
        while (true) {
            std::size_t i;
            {
                std::lock_guard lock(mu);
                if (next >= config.seeds.size()) return;
                i = next++;
            }
            std::uint64_t seed = config.seeds[i];
            SeedOutcome out;
            out.seed = seed;
            std::string csv_name = (config.kind == ExperimentKind::Layerwise ? "layerwise_" : "resnet_");
            csv_name += "seed" + std::to_string(seed) + "_" + tag + ".csv";
            out.csv_path = (fs::path(out_dir) / csv_name).string();
            try {
                if (config.kind == ExperimentKind::Layerwise) {
                    auto res = train_network_layerwise(config.target.n,
                                                       detail::make_stream(config, target, seed),
                                                       config.layerwise, seed, tracked);
                    std::ofstream csv(out.csv_path);
                    res.trace.write_csv(csv);
                    if (!res.trace.rows.empty()) out.final_loss = res.trace.rows.back().loss;
                    out.completed = !res.trace.aborted;
                    out.success = out.completed && out.final_loss <= 0.05;
                    if (res.trace.aborted) out.error = res.trace.diagnostic;
                    for (const auto& row : res.trace.rows) {
                        loss_series[i].push_back({static_cast<double>(row.iteration), row.loss});
                        fourier_series[i].resize(tracked.size());
                        for (std::size_t t = 0; t < row.zeta.size(); ++t)
                            fourier_series[i][t].push_back(
                                {static_cast<double>(row.iteration), row.zeta[t]});
                    }
                } else if (config.kind == ExperimentKind::Resnet) {
                    ResNetConfig rc = config.resnet;
                    rc.n = config.target.n;
                    rc.seed = seed;
                    rc.eval_interval = config.eval_interval;
                    auto trace = sgd_train(rc, detail::make_stream(config, target, seed), tracked);
                    std::ofstream csv(out.csv_path);
                    trace.write_csv(csv);
                    if (!trace.rows.empty()) out.final_loss = trace.rows.back().test_mse;
                    out.completed = !trace.diverged;
                    out.success = out.completed && out.final_loss < 0.1;
                    if (trace.diverged) out.error = trace.diagnostic;
                    for (const auto& row : trace.rows) {
                        loss_series[i].push_back({static_cast<double>(row.step), row.test_mse});
                        fourier_series[i].resize(tracked.size());
                        for (std::size_t t = 0; t < row.f_hat.size(); ++t)
                            fourier_series[i][t].push_back(
                                {static_cast<double>(row.step), row.f_hat[t]});
                    }
                } else if (config.kind == ExperimentKind::FourierTrace) {
                    // Spectrum and staircase report of the target itself.
                    std::ofstream csv(out.csv_path);
                    csv << "subset,coefficient\n";
                    csv.precision(17);
                    for (const auto& [s, coef] : exact_fourier(target))
                        csv << s.to_label() << ',' << coef << '\n';
                    StaircaseReport sr = check_staircase(target, 1e12);
                    csv << "# staircase_m_required," << sr.m_required.value_or(-1.0) << '\n';
                    out.completed = true;
                    out.success = true;
                } else {
                    throw std::invalid_argument("verify configs run through the verify command");
                }
            } catch (const std::exception& e) {
                out.completed = false;
                out.error = e.what();
            }
            std::lock_guard lock(mu);
            report.outcomes[i] = std::move(out);
        }
    };

    if (jobs <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (unsigned j = 0; j < jobs; ++j) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }

    // Summary CSV.
    report.summary_path = (fs::path(out_dir) / ("summary_" + tag + ".csv")).string();
    {
        std::ofstream sum(report.summary_path);
        sum << "seed,completed,success,final_loss,error\n";
        sum.precision(12);
        for (const auto& o : report.outcomes) {
            std::string err = o.error;
            for (char& ch : err)
                if (ch == ',' || ch == '\n') ch = ';';
            sum << o.seed << ',' << o.completed << ',' << o.success << ',' << o.final_loss << ','
                << err << '\n';
        }
    }

    // Machine-readable error records for failed seeds.
    bool any_error = false;
    for (const auto& o : report.outcomes) any_error |= !o.completed;
    if (any_error) {
        report.error_path = (fs::path(out_dir) / ("errors_" + tag + ".jsonl")).string();
        std::ofstream ej(report.error_path);
        for (const auto& o : report.outcomes) {
            if (o.completed) continue;
            ej << "{\"seed\":" << o.seed << ",\"error\":\"";
            detail::json_escape(ej, o.error);
            ej << "\"}\n";
        }
    }

    if (config.kind == ExperimentKind::FourierTrace) return report;

    const bool layerwise = config.kind == ExperimentKind::Layerwise;
    {
        SvgChart chart(layerwise ? "Population loss by neuron iteration" : "Test MSE by step",
                       layerwise ? "neuron iteration" : "step",
                       layerwise ? "loss" : "test MSE", true);
        for (std::size_t i = 0; i < config.seeds.size(); ++i)
            if (!loss_series[i].empty())
                chart.add_series("seed " + std::to_string(config.seeds[i]), loss_series[i]);
        std::ofstream svg(fs::path(out_dir) / ("loss_" + tag + ".svg"));
        chart.render(svg);
    }
    for (std::size_t i = 0; i < config.seeds.size(); ++i) {
        if (fourier_series[i].empty()) continue;
        SvgChart chart(layerwise ? "Error spectrum by neuron iteration"
                                 : "Fourier coefficients by step",
                       layerwise ? "neuron iteration" : "step",
                       layerwise ? "zeta_hat" : "f_hat", false);
        for (std::size_t t = 0; t < tracked.size(); ++t)
            chart.add_series((layerwise ? "zeta_" : "f_") + tracked[t].to_label(),
                             fourier_series[i][t]);
        std::ofstream svg(fs::path(out_dir) /
                          ("fourier_seed" + std::to_string(config.seeds[i]) + "_" + tag + ".svg"));
        chart.render(svg);
    }
    return report;
}

}  // namespace stairnet

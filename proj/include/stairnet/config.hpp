#pragma once

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <istream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "stairnet/hyperparams.hpp"
#include "stairnet/resnet.hpp"
#include "stairnet/sampling.hpp"
#include "stairnet/subset.hpp"
#include "stairnet/targets.hpp"

namespace stairnet {

enum class ExperimentKind { Layerwise, Resnet, FourierTrace, Verify };

struct TargetSpec {
    std::string type = "staircase";  // staircase | parity | truncated | double
    int n = 0;
    int k = 0;
    int j = 1;  // truncated start
    int l = 1;  // double-staircase second chain length
    bool normalize = false;

    SparsePolynomial build() const {
        SparsePolynomial g(0);
        if (type == "staircase") g = make_staircase(n, k);
        else if (type == "parity") g = make_parity(n, k);
        else if (type == "truncated") g = make_truncated(n, j, k);
        else if (type == "double") g = make_double(n, k, l);
        else throw std::invalid_argument("unknown target type: " + type);
        return normalize ? normalize_to_unit(g) : g;
    }
};

struct MeasureSpec {
    std::string type = "unbiased";  // unbiased | biased | gaussian
    double p = 0.5;

    Measure build(int n) const {
        if (type == "unbiased") return Measure::unbiased(n);
        if (type == "biased") return Measure::biased(n, p);
        if (type == "gaussian") return Measure::gaussian(n);
        throw std::invalid_argument("unknown measure type: " + type);
    }
};

struct RunConfig {
    ExperimentKind kind = ExperimentKind::Resnet;
    TargetSpec target;
    MeasureSpec measure;
    Hyperparams layerwise;
    ResNetConfig resnet;
    std::size_t dataset = 0;  // cyclic dataset size; 0 = fresh samples
    std::vector<std::uint64_t> seeds;
    std::string out_dir;
    std::size_t eval_interval = 1000;
    std::vector<Subset> tracked;  // empty for layerwise/resnet = prefix chain 1..k
    std::string verify_suite = "all";

    void validate() const {
        if (seeds.empty()) throw std::invalid_argument("seeds list must be nonempty");
        if (target.n < 1) throw std::invalid_argument("target dimension must be positive");
    }

    /// Prefix parities chi_{1:1}, ..., chi_{1:k} if no explicit list given.
    std::vector<Subset> tracked_or_default() const {
        if (!tracked.empty()) return tracked;
        std::vector<Subset> out;
        int top = target.type == "double" ? target.k + target.l - 1 : target.k;
        for (int i = 1; i <= top; ++i) out.push_back(Subset::range(1, i));
        return out;
    }
};

namespace detail {

inline std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

inline bool parse_bool(const std::string& v) {
    if (v == "true" || v == "1" || v == "yes") return true;
    if (v == "false" || v == "0" || v == "no") return false;
    throw std::invalid_argument("expected a boolean, got: " + v);
}

inline std::vector<Subset> parse_subset_list(const std::string& v) {
    std::vector<Subset> out;
    std::stringstream ss(v);
    std::string item;
    while (std::getline(ss, item, ';')) {
        item = trim(item);
        if (!item.empty()) out.push_back(Subset::parse(item));
    }
    return out;
}

}  // namespace detail

/// Key-value configuration with [section] headers, # comments, and
/// key = value lines. Unknown keys are errors so typos fail loudly.
inline RunConfig parse_run_config(std::istream& is) {
    RunConfig c;
    std::string line, section;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = detail::trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']') throw std::invalid_argument("bad section header at line " + std::to_string(lineno));
            section = detail::trim(line.substr(1, line.size() - 2));
            continue;
        }
        auto eq = line.find('=');
        if (eq == std::string::npos) throw std::invalid_argument("expected key = value at line " + std::to_string(lineno));
        std::string key = detail::trim(line.substr(0, eq));
        std::string value = detail::trim(line.substr(eq + 1));
        auto fail = [&]() -> double {
            throw std::invalid_argument("unknown key '" + section + "." + key + "' at line " + std::to_string(lineno));
        };
        if (section.empty()) {
            if (key == "kind") {
                if (value == "layerwise") c.kind = ExperimentKind::Layerwise;
                else if (value == "resnet") c.kind = ExperimentKind::Resnet;
                else if (value == "fourier-trace") c.kind = ExperimentKind::FourierTrace;
                else if (value == "verify") c.kind = ExperimentKind::Verify;
                else throw std::invalid_argument("unknown experiment kind: " + value);
            } else fail();
        } else if (section == "target") {
            if (key == "type") c.target.type = value;
            else if (key == "n") c.target.n = std::stoi(value);
            else if (key == "k") c.target.k = std::stoi(value);
            else if (key == "j") c.target.j = std::stoi(value);
            else if (key == "l") c.target.l = std::stoi(value);
            else if (key == "normalize") c.target.normalize = detail::parse_bool(value);
            else fail();
        } else if (section == "measure") {
            if (key == "type") c.measure.type = value;
            else if (key == "p") c.measure.p = std::stod(value);
            else fail();
        } else if (section == "layerwise") {
            if (key == "width") c.layerwise.width = std::stoi(value);
            else if (key == "layers") c.layerwise.layers = std::stoi(value);
            else if (key == "p1") c.layerwise.p1 = std::stod(value);
            else if (key == "p2") c.layerwise.p2 = std::stod(value);
            else if (key == "lambda1") c.layerwise.lambda1 = std::stod(value);
            else if (key == "lambda2") c.layerwise.lambda2 = std::stod(value);
            else if (key == "eta") c.layerwise.eta = std::stod(value);
            else if (key == "batch") c.layerwise.batch = std::stoul(value);
            else if (key == "eps_stop") c.layerwise.eps_stop = std::stod(value);
            else if (key == "alpha") c.layerwise.alpha = std::stod(value);
            else if (key == "tau") c.layerwise.tau = std::stod(value);
            else if (key == "max_inner_iters") c.layerwise.max_inner_iters = std::stoul(value);
            else fail();
        } else if (section == "resnet") {
            if (key == "width") c.resnet.width = std::stoi(value);
            else if (key == "depth") c.resnet.depth = std::stoi(value);
            else if (key == "init_std") c.resnet.init_std = std::stod(value);
            else if (key == "step_size") c.resnet.step_size = std::stod(value);
            else if (key == "batch") c.resnet.batch = std::stoul(value);
            else if (key == "steps") c.resnet.steps = std::stoul(value);
            else if (key == "eval_samples") c.resnet.eval_samples = std::stoul(value);
            else fail();
        } else if (section == "run") {
            if (key == "seeds") {
                c.seeds.clear();
                std::stringstream ss(value);
                std::string item;
                while (std::getline(ss, item, ',')) {
                    item = detail::trim(item);
                    if (!item.empty()) c.seeds.push_back(std::stoull(item));
                }
            } else if (key == "dataset") c.dataset = std::stoul(value);
            else if (key == "out") c.out_dir = value;
            else if (key == "eval_interval") c.eval_interval = std::stoul(value);
            else if (key == "tracked") c.tracked = detail::parse_subset_list(value);
            else if (key == "suite") c.verify_suite = value;
            else fail();
        } else {
            throw std::invalid_argument("unknown section [" + section + "] at line " + std::to_string(lineno));
        }
    }
    return c;
}

inline RunConfig parse_run_config(const std::string& text) {
    std::istringstream is(text);
    return parse_run_config(is);
}

/// Built-in presets; the files under presets/ carry the same contents.
inline const std::map<std::string, std::string>& preset_table() {
    static const std::map<std::string, std::string> table = {
        {"fig2-staircase",
         "kind = resnet\n"
         "[target]\n"
         "type = staircase\nn = 30\nk = 10\nnormalize = true\n"
         "[measure]\ntype = unbiased\n"
         "[resnet]\ninit_std = 0.2\nwidth = 40\ndepth = 5\nbatch = 20\nsteps = 300000\nstep_size = 0.01\n"
         "[run]\nseeds = 1,2,3,4,5,6,7,8,9,10\ndataset = 60000\neval_interval = 3000\n"},
        {"fig2-parity",
         "kind = resnet\n"
         "[target]\n"
         "type = parity\nn = 30\nk = 10\n"
         "[measure]\ntype = unbiased\n"
         "[resnet]\ninit_std = 0.2\nwidth = 40\ndepth = 5\nbatch = 20\nsteps = 300000\nstep_size = 0.01\n"
         "[run]\nseeds = 1,2,3,4,5,6,7,8,9,10\ndataset = 60000\neval_interval = 3000\n"},
        {"fig2-fast",
         "kind = resnet\n"
         "[target]\n"
         "type = staircase\nn = 16\nk = 5\nnormalize = true\n"
         "[measure]\ntype = unbiased\n"
         "[resnet]\ninit_std = 0.2\nwidth = 32\ndepth = 4\nbatch = 20\nsteps = 50000\nstep_size = 0.01\n"
         "[run]\nseeds = 1,2,3,4,5,6,7,8,9,10\ndataset = 60000\neval_interval = 2000\n"},
        {"appendixA-gaussian",
         "kind = resnet\n"
         "[target]\n"
         "type = staircase\nn = 100\nk = 5\nnormalize = true\n"
         "[measure]\ntype = gaussian\n"
         "[resnet]\ninit_std = 0.2\nwidth = 50\ndepth = 8\nbatch = 20\nsteps = 300000\nstep_size = 0.01\n"
         "[run]\nseeds = 1,2,3\ndataset = 300000\neval_interval = 3000\n"},
        {"appendixA-biased",
         "kind = resnet\n"
         "[target]\n"
         "type = staircase\nn = 30\nk = 7\nnormalize = true\n"
         "[measure]\ntype = biased\np = 0.75\n"
         "[resnet]\ninit_std = 0.2\nwidth = 40\ndepth = 5\nbatch = 20\nsteps = 300000\nstep_size = 0.01\n"
         "[run]\nseeds = 1,2,3\ndataset = 60000\neval_interval = 3000\n"},
        {"appendixA-double",
         "kind = resnet\n"
         "[target]\n"
         "type = double\nn = 30\nk = 7\nl = 7\nnormalize = true\n"
         "[measure]\ntype = unbiased\n"
         "[resnet]\ninit_std = 0.2\nwidth = 50\ndepth = 5\nbatch = 20\nsteps = 300000\nstep_size = 0.01\n"
         "[run]\nseeds = 1,2,3\ndataset = 100000\neval_interval = 3000\n"},
        {"layerwise-s3",
         "kind = layerwise\n"
         "[target]\n"
         "type = staircase\nn = 8\nk = 3\n"
         "[measure]\ntype = unbiased\n"
         "[layerwise]\nwidth = 72\nlayers = 4\np1 = 0.12\np2 = 0.35\nlambda1 = 1e-4\nlambda2 = 1e-3\n"
         "eta = 0.02\nbatch = 512\neps_stop = 0.01\nalpha = 0.012\ntau = 0.12\nmax_inner_iters = 3000\n"
         "[run]\nseeds = 100,200,300,400,500,600,700,800,900,1000\n"},
    };
    return table;
}

inline RunConfig load_preset(const std::string& name) {
    auto it = preset_table().find(name);
    if (it == preset_table().end()) throw std::invalid_argument("unknown preset: " + name);
    return parse_run_config(it->second);
}

}  // namespace stairnet

#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

namespace stairnet {

/// Hyperparameters for layerwise training (Algorithms 1-3), plus a
/// safety cap on NeuronSGD iterations that the theory does not need.
struct Hyperparams {
    int width = 0;
    int layers = 0;
    double p1 = 0.0;
    double p2 = 0.0;
    double lambda1 = 0.0;
    double lambda2 = 0.0;
    double eta = 0.0;       // perturbation radius
    std::size_t batch = 0;  // minibatch size B
    double eps_stop = 0.0;
    double alpha = 0.0;     // step size
    double tau = 0.0;       // prune threshold
    std::size_t max_inner_iters = 1'000'000;

    void validate() const {
        if (width < 1 || layers < 1 || batch < 1) throw std::invalid_argument("counts must be positive");
        if (!(p1 > 0.0 && p1 <= 1.0 && p2 >= 0.0 && p2 <= 1.0))
            throw std::invalid_argument("connection probabilities out of range");
        if (lambda1 <= 0 || lambda2 <= 0 || eta <= 0 || eps_stop <= 0 || alpha <= 0 || tau <= 0)
            throw std::invalid_argument("rates and thresholds must be positive");
    }
};

/// Theorem-scale hyperparameter formulas. The resulting magnitudes are
/// astronomical, so each value is carried in log10; the double view
/// saturates to 0/inf with an explicit overflow flag, never silently.
struct TheoremHyperparams {
    int layers = 0;  // L = n
    double log10_width = 0.0;
    double log10_p1 = 0.0;
    double log10_p2 = 0.0;
    double log10_tau = 0.0;
    double log10_eta = 0.0;
    double log10_kappa = 0.0;
    double log10_lambda1 = 0.0;
    double log10_lambda2 = 0.0;
    double log10_eps_stop = 0.0;
    double log10_alpha = 0.0;
    double log10_batch = 0.0;
    bool overflow = false;
    std::string overflow_note;

    static double to_double(double log10_value) {
        if (log10_value > 308.0) return std::numeric_limits<double>::infinity();
        if (log10_value < -308.0) return 0.0;
        return std::pow(10.0, log10_value);
    }

    double width() const { return to_double(log10_width); }
    double tau() const { return to_double(log10_tau); }
    double eta() const { return to_double(log10_eta); }
};

/// Constants the theorem leaves as "sufficiently small/large"; values
/// here are configuration, not claims.
struct TheoremConstants {
    double c_lambda = 1e-3;
    double c_stop = 1e-3;
    double c_alpha = 1e-3;
    double c_batch = 1e3;
};

inline TheoremHyperparams theorem_hyperparams(int n, double s, double m, double eps, double delta,
                                              TheoremConstants c = {}) {
    if (!(s > 1.0 && m > 1.0)) throw std::invalid_argument("theorem requires s, M > 1");
    if (!(eps > 0.0 && eps < 1.0 && delta > 0.0 && delta < 1.0))
        throw std::invalid_argument("eps, delta must be in (0,1)");
    TheoremHyperparams h;
    h.layers = n;
    const double nd = static_cast<double>(n);
    // base = 64 M^2 (n+s+1)^3 L / delta
    const double log10_base =
        std::log10(64.0) + 2.0 * std::log10(m) + 3.0 * std::log10(nd + s + 1.0) + std::log10(nd) -
        std::log10(delta);
    h.log10_width = 24.0 * log10_base;
    h.log10_p1 = -9.0 * log10_base;
    h.log10_p2 = -13.0 * log10_base;
    h.log10_tau = -(20.0 * std::log10(2.0) + 7.0 * std::log10(m) + std::log10(nd));
    h.log10_eta = std::log10(4.0) + h.log10_tau;
    // kappa = W L M s / (eps delta)
    h.log10_kappa = h.log10_width + std::log10(nd) + std::log10(m) + std::log10(s) -
                    std::log10(eps) - std::log10(delta);
    h.log10_lambda2 = std::log10(c.c_lambda) - 28.0 * h.log10_kappa;
    // sqrt(lambda1/lambda2) = 1/(64 M^2 L)
    h.log10_lambda1 = h.log10_lambda2 - 2.0 * (std::log10(64.0) + 2.0 * std::log10(m) + std::log10(nd));
    h.log10_eps_stop = std::log10(c.c_stop) - 430.0 * h.log10_kappa;
    h.log10_alpha = std::log10(c.c_alpha) + 5.0 * (h.log10_lambda1 + h.log10_lambda2) -
                    72.0 * h.log10_kappa;
    h.log10_batch = std::log10(c.c_batch) - 4.0 * (h.log10_lambda1 + h.log10_lambda2) +
                    910.0 * h.log10_kappa;
    if (h.log10_width > 308.0 || h.log10_batch > 308.0 || h.log10_alpha < -308.0 ||
        h.log10_eps_stop < -308.0) {
        h.overflow = true;
        h.overflow_note =
            "theorem-scale values exceed double range; log10 fields remain exact";
    }
    return h;
}

}  // namespace stairnet

#pragma once

#include <algorithm>
#include <cmath>
#include <optional>

#include "stairnet/sparse_poly.hpp"

namespace stairnet {

struct StaircaseReport {
    bool satisfies = false;
    /// Smallest M for which the [1/M, M] magnitude condition holds,
    /// present only when the chain condition is satisfied.
    std::optional<double> m_required;
    std::optional<Subset> violating_subset;
};

/// Checks the [1/M,M]-staircase property: every nonzero coefficient has
/// magnitude in [1/M, M], and every nonzero S with |S| >= 2 has a
/// nonzero coefficient on some S' c S with |S \ S'| = 1. Degree-2 sets
/// need a nonzero singleton; the constant term never serves as a
/// predecessor.
inline StaircaseReport check_staircase(const SparsePolynomial& g, double m_bound) {
    if (m_bound < 1.0) throw std::invalid_argument("M must be >= 1");
    StaircaseReport report;

    // Chain condition first, so a violation witness is always a chain
    // witness when one exists.
    for (const auto& [s, c] : g.terms()) {
        (void)c;
        if (s.size() < 2) continue;
        bool has_parent = false;
        for (int v : s.vars()) {
            if (g.coefficient(s.without(v)) != 0.0) {
                has_parent = true;
                break;
            }
        }
        if (!has_parent) {
            report.violating_subset = s;
            return report;
        }
    }

    double min_required = 1.0;
    for (const auto& [s, c] : g.terms()) {
        double mag = std::fabs(c);
        min_required = std::max({min_required, mag, 1.0 / mag});
        if (mag > m_bound || mag < 1.0 / m_bound) {
            report.violating_subset = s;
            return report;
        }
    }
    report.satisfies = true;
    report.m_required = min_required;
    return report;
}

}  // namespace stairnet

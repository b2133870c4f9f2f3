#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <span>
#include <stdexcept>
#include <vector>

#include "stairnet/sparse_poly.hpp"
#include "stairnet/subset.hpp"

namespace stairnet {

constexpr int kMaxExactFourierDim = 24;

// Coefficients below this magnitude after a transform are float noise,
// not terms; snap them to zero before sparsity checks.
constexpr double kCoefficientSnap = 1e-12;

/// Sign vector for cube point `idx` (bit i of idx set -> x_{i+1} = -1).
inline void cube_point(std::uint64_t idx, std::span<double> x) {
    for (std::size_t i = 0; i < x.size(); ++i)
        x[i] = (idx >> i) & 1 ? -1.0 : 1.0;
}

/// In-place fast Walsh-Hadamard transform, unnormalized. Fixed butterfly
/// order, so results are bitwise deterministic.
inline void fwht(std::span<double> data) {
    const std::size_t size = data.size();
    if (size == 0 || (size & (size - 1)) != 0)
        throw std::invalid_argument("fwht length must be a power of two");
    for (std::size_t half = 1; half < size; half <<= 1) {
        for (std::size_t base = 0; base < size; base += 2 * half) {
            for (std::size_t i = base; i < base + half; ++i) {
                double a = data[i], b = data[i + half];
                data[i] = a + b;
                data[i + half] = a - b;
            }
        }
    }
}

/// All values of f on the cube, indexed by cube_point order.
inline std::vector<double> tabulate_on_cube(const std::function<double(std::span<const double>)>& f, int n) {
    if (n < 0 || n > kMaxExactFourierDim)
        throw std::out_of_range("exact enumeration limited to n <= 24");
    const std::uint64_t size = std::uint64_t{1} << n;
    std::vector<double> table(size);
    std::vector<double> x(static_cast<std::size_t>(n));
    for (std::uint64_t idx = 0; idx < size; ++idx) {
        cube_point(idx, x);
        table[idx] = f(x);
    }
    return table;
}

/// Exact spectrum from a table of cube values (destroys the table).
/// Entry at mask m is the coefficient of chi over the variables in m,
/// since chi_S(x(idx)) = (-1)^{popcount(S & idx)}.
inline std::map<Subset, double> spectrum_from_table(std::vector<double>& table, int n) {
    fwht(table);
    const double scale = 1.0 / static_cast<double>(table.size());
    std::map<Subset, double> out;
    for (std::uint64_t m = 0; m < table.size(); ++m) {
        double c = table[m] * scale;
        if (std::fabs(c) > kCoefficientSnap) out[Subset(m)] = c;
    }
    (void)n;
    return out;
}

/// Exact Fourier coefficients of a black-box function on {-1,+1}^n via
/// full-cube enumeration and FWHT; O(n 2^n).
inline std::map<Subset, double> exact_fourier(const std::function<double(std::span<const double>)>& f, int n) {
    auto table = tabulate_on_cube(f, n);
    return spectrum_from_table(table, n);
}

inline std::map<Subset, double> exact_fourier(const SparsePolynomial& g) {
    return exact_fourier([&g](std::span<const double> x) { return g(x); }, g.dimension());
}

inline SparsePolynomial poly_from_spectrum(const std::map<Subset, double>& spec, int n) {
    SparsePolynomial out(n);
    for (const auto& [s, c] : spec)
        if (std::fabs(c) > kCoefficientSnap) out.set(s, c);
    return out;
}

struct FourierEstimate {
    double estimate = 0.0;
    double stderr_ = 0.0;
    std::size_t samples = 0;
};

/// Empirical mean of f(x) chi_S(x) and its standard error over a batch
/// of labeled samples (x laid out row-major, one label per row).
inline FourierEstimate estimate_fourier(std::span<const double> xs, std::span<const double> labels,
                                        int n, Subset s) {
    const std::size_t m = labels.size();
    if (m < 2) throw std::invalid_argument("need at least 2 samples");
    if (xs.size() != m * static_cast<std::size_t>(n))
        throw std::invalid_argument("sample buffer size mismatch");
    double sum = 0.0, sumsq = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        double v = labels[i] * eval_monomial(s, xs.subspan(i * n, n));
        sum += v;
        sumsq += v * v;
    }
    double mean = sum / static_cast<double>(m);
    double var = (sumsq - static_cast<double>(m) * mean * mean) / static_cast<double>(m - 1);
    return {mean, std::sqrt(std::max(var, 0.0) / static_cast<double>(m)), m};
}

}  // namespace stairnet

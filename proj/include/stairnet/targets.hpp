#pragma once

#include <cmath>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "stairnet/sparse_poly.hpp"

namespace stairnet {

/// Staircase S_k = x_1 + x_1 x_2 + ... + x_1...x_k.
inline SparsePolynomial make_staircase(int n, int k) {
    if (k < 1 || k > n) throw std::out_of_range("need 1 <= k <= n");
    SparsePolynomial g(n);
    for (int i = 1; i <= k; ++i) g.set(Subset::range(1, i), 1.0);
    return g;
}

/// Single parity chi_{1:k}.
inline SparsePolynomial make_parity(int n, int k) {
    if (k < 1 || k > n) throw std::out_of_range("need 1 <= k <= n");
    SparsePolynomial g(n);
    g.set(Subset::range(1, k), 1.0);
    return g;
}

/// Truncated staircase S_{j->k} = sum_{i=j}^k chi_{i:k}.
inline SparsePolynomial make_truncated(int n, int j, int k) {
    if (j < 1 || j > k || k > n) throw std::out_of_range("need 1 <= j <= k <= n");
    SparsePolynomial g(n);
    for (int i = j; i <= k; ++i) g.set(Subset::range(i, k), 1.0);
    return g;
}

/// Double staircase S_{k,l} = S_k + x_1 x_{k+1} + x_1 x_{k+1} x_{k+2}
/// + ... + x_1 x_{k+1}...x_{k+l-1}.
inline SparsePolynomial make_double(int n, int k, int l) {
    if (k < 1 || l < 1 || k + l - 1 > n) throw std::out_of_range("need k + l - 1 <= n");
    SparsePolynomial g = make_staircase(n, k);
    Subset chain = Subset::of({1});
    for (int i = k + 1; i <= k + l - 1; ++i) {
        chain = chain.with(i);
        g.add(chain, 1.0);
    }
    return g;
}

/// Divides all coefficients by sqrt(parseval_norm), e.g. S_k -> S_k/sqrt(k).
inline SparsePolynomial normalize_to_unit(const SparsePolynomial& g) {
    double norm = g.parseval_norm();
    if (norm <= 0.0) throw std::invalid_argument("cannot normalize the zero polynomial");
    return g.scaled(1.0 / std::sqrt(norm));
}

/// Centering transform for biased +/-1 coordinates with P(x_i = 1) = p:
/// (x_i - 2p + 1) / sqrt(4p(1-p)), mean 0 and variance 1 under the bias.
inline double center_biased_coord(double xi, double p) {
    if (!(p > 0.0 && p < 1.0)) throw std::out_of_range("p must be in (0,1)");
    return (xi - 2.0 * p + 1.0) / std::sqrt(4.0 * p * (1.0 - p));
}

inline std::vector<double> center_biased(std::span<const double> x, double p) {
    std::vector<double> out(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) out[i] = center_biased_coord(x[i], p);
    return out;
}

/// Orthonormal probabilists' Hermite polynomial h_k(y) = He_k(y)/sqrt(k!),
/// so E[h_j(Z) h_k(Z)] = delta_jk under the standard normal; h_0 = 1.
inline double hermite_eval(int k, double y) {
    if (k < 0) throw std::out_of_range("degree must be >= 0");
    double prev = 1.0;        // He_0
    if (k == 0) return prev;
    double cur = y;           // He_1
    for (int j = 1; j < k; ++j) {
        double next = y * cur - static_cast<double>(j) * prev;
        prev = cur;
        cur = next;
    }
    double fact = 1.0;
    for (int j = 2; j <= k; ++j) fact *= static_cast<double>(j);
    return cur / std::sqrt(fact);
}

enum class BasisKind { IdentitySign, CenteredSign, Hermite };

/// (H,A)-hierarchical polynomial: f(x) = sum_k alpha_k prod_i h_{k_i}(y_i)
/// with y = Ax + b. For the sign bases only degrees 0 and 1 are defined
/// (h_0 = 1, h_1 = identity); the Hermite basis allows any degree.
struct GeneralHierarchicalPolynomial {
    struct Term {
        std::vector<int> degrees;  // one per coordinate
        double coefficient = 0.0;
    };

    int n = 0;
    BasisKind basis = BasisKind::IdentitySign;
    double bias_p = 0.5;                     // for CenteredSign
    std::vector<std::vector<double>> a;      // affine matrix, empty = identity
    std::vector<double> shift;               // empty = zero
    std::vector<Term> terms;

    static GeneralHierarchicalPolynomial from_sparse(const SparsePolynomial& g, BasisKind basis,
                                                     double bias_p = 0.5) {
        GeneralHierarchicalPolynomial out;
        out.n = g.dimension();
        out.basis = basis;
        out.bias_p = bias_p;
        for (const auto& [s, c] : g.terms()) {
            Term t;
            t.degrees.assign(static_cast<std::size_t>(out.n), 0);
            for (int v : s.vars()) t.degrees[static_cast<std::size_t>(v - 1)] = 1;
            t.coefficient = c;
            out.terms.push_back(std::move(t));
        }
        return out;
    }

    double basis_eval(int degree, double y) const {
        if (degree == 0) return 1.0;
        switch (basis) {
            case BasisKind::IdentitySign:
                if (degree != 1) throw std::invalid_argument("sign basis has degrees {0,1}");
                return y;
            case BasisKind::CenteredSign:
                if (degree != 1) throw std::invalid_argument("sign basis has degrees {0,1}");
                return center_biased_coord(y, bias_p);
            case BasisKind::Hermite:
                return hermite_eval(degree, y);
        }
        throw std::logic_error("unreachable");
    }

    double operator()(std::span<const double> x) const {
        if (static_cast<int>(x.size()) != n) throw std::invalid_argument("dimension mismatch");
        std::vector<double> y(x.begin(), x.end());
        if (!a.empty()) {
            if (static_cast<int>(a.size()) != n) throw std::invalid_argument("affine matrix shape mismatch");
            for (int i = 0; i < n; ++i) {
                if (static_cast<int>(a[static_cast<std::size_t>(i)].size()) != n)
                    throw std::invalid_argument("affine matrix shape mismatch");
                double acc = 0.0;
                for (int j = 0; j < n; ++j)
                    acc += a[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] * x[static_cast<std::size_t>(j)];
                y[static_cast<std::size_t>(i)] = acc;
            }
        }
        if (!shift.empty()) {
            if (static_cast<int>(shift.size()) != n) throw std::invalid_argument("shift shape mismatch");
            for (int i = 0; i < n; ++i) y[static_cast<std::size_t>(i)] += shift[static_cast<std::size_t>(i)];
        }
        double acc = 0.0;
        for (const Term& t : terms) {
            double prod = t.coefficient;
            for (int i = 0; i < n; ++i) {
                int d = t.degrees[static_cast<std::size_t>(i)];
                if (d != 0) prod *= basis_eval(d, y[static_cast<std::size_t>(i)]);
            }
            acc += prod;
        }
        return acc;
    }
};

inline double eval_general(const GeneralHierarchicalPolynomial& f, std::span<const double> x) {
    return f(x);
}

}  // namespace stairnet

#pragma once

#include <cmath>
#include <cstdlib>
#include <istream>
#include <map>
#include <ostream>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>

#include "stairnet/subset.hpp"

namespace stairnet {

/// Multilinear monomial chi_S(x) = prod_{i in S} x_i. Exact for +/-1
/// inputs and equally valid for real inputs (Gaussian case).
inline double eval_monomial(Subset s, std::span<const double> x) {
    if (!s.fits(static_cast<int>(x.size())))
        throw std::invalid_argument("monomial subset exceeds input dimension");
    double p = 1.0;
    for (std::uint64_t m = s.mask(); m; m &= m - 1)
        p *= x[static_cast<std::size_t>(std::countr_zero(m))];
    return p;
}

/// Sparse multilinear polynomial: a finite map Subset -> coefficient.
/// Zero coefficients are never stored.
class SparsePolynomial {
public:
    explicit SparsePolynomial(int n = 0) : n_(n) {
        if (n < 0 || n > 64) throw std::out_of_range("dimension must be in [0,64]");
    }

    int dimension() const { return n_; }
    std::size_t sparsity() const { return terms_.size(); }
    const std::map<Subset, double>& terms() const { return terms_; }

    double coefficient(Subset s) const {
        auto it = terms_.find(s);
        return it == terms_.end() ? 0.0 : it->second;
    }

    void set(Subset s, double c) {
        if (!s.fits(n_)) throw std::out_of_range("subset exceeds polynomial dimension");
        if (!std::isfinite(c)) throw std::invalid_argument("coefficient must be finite");
        if (c == 0.0) terms_.erase(s);
        else terms_[s] = c;
    }

    void add(Subset s, double c) { set(s, coefficient(s) + c); }

    double operator()(std::span<const double> x) const {
        if (static_cast<int>(x.size()) != n_)
            throw std::invalid_argument("input dimension mismatch");
        double acc = 0.0;
        for (const auto& [s, c] : terms_) acc += c * eval_monomial(s, x);
        return acc;
    }

    /// Sum of squared coefficients; equals E[g(X)^2] under the uniform
    /// measure by Parseval.
    double parseval_norm() const {
        double acc = 0.0;
        for (const auto& [s, c] : terms_) acc += c * c;
        return acc;
    }

    SparsePolynomial scaled(double factor) const {
        SparsePolynomial out(n_);
        for (const auto& [s, c] : terms_) out.set(s, c * factor);
        return out;
    }

    /// One term per line: "i1,i2,...:coefficient", empty index list for
    /// the constant term.
    void serialize(std::ostream& os) const {
        os.precision(17);
        for (const auto& [s, c] : terms_) os << s.to_string() << ':' << c << '\n';
    }

    std::string serialize() const {
        std::ostringstream ss;
        serialize(ss);
        return ss.str();
    }

    static SparsePolynomial parse(std::istream& is, int n) {
        SparsePolynomial out(n);
        std::string line;
        while (std::getline(is, line)) {
            if (line.empty()) continue;
            auto colon = line.rfind(':');
            if (colon == std::string::npos)
                throw std::runtime_error("malformed polynomial line: " + line);
            Subset s;
            std::string idx = line.substr(0, colon);
            if (!idx.empty()) {
                std::istringstream ss(idx);
                std::string tok;
                while (std::getline(ss, tok, ','))
                    s = s.with(std::stoi(tok));
            }
            out.set(s, std::strtod(line.c_str() + colon + 1, nullptr));
        }
        return out;
    }

    static SparsePolynomial parse(const std::string& text, int n) {
        std::istringstream ss(text);
        return parse(ss, n);
    }

private:
    int n_;
    std::map<Subset, double> terms_;
};

}  // namespace stairnet

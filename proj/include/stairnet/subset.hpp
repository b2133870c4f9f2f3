#pragma once

#include <bit>
#include <cstdint>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace stairnet {

/// A subset of variable indices {1..n}, stored as a 64-bit mask.
/// Bit i-1 set means variable i is in the subset. The empty subset
/// denotes the constant monomial.
class Subset {
public:
    constexpr Subset() = default;
    constexpr explicit Subset(std::uint64_t mask) : mask_(mask) {}

    static Subset of(std::initializer_list<int> vars) {
        std::uint64_t m = 0;
        for (int v : vars) {
            if (v < 1 || v > 64) throw std::out_of_range("variable index out of [1,64]");
            m |= std::uint64_t{1} << (v - 1);
        }
        return Subset(m);
    }

    /// Contiguous range {lo..hi}, 1-based inclusive.
    static Subset range(int lo, int hi) {
        if (lo < 1 || hi > 64 || lo > hi) throw std::out_of_range("bad subset range");
        std::uint64_t m = (hi == 64) ? ~std::uint64_t{0} : ((std::uint64_t{1} << hi) - 1);
        m &= ~((std::uint64_t{1} << (lo - 1)) - 1);
        return Subset(m);
    }

    constexpr std::uint64_t mask() const { return mask_; }
    constexpr bool empty() const { return mask_ == 0; }
    constexpr int size() const { return std::popcount(mask_); }
    constexpr bool contains(int var) const { return (mask_ >> (var - 1)) & 1; }
    constexpr bool subset_of(Subset other) const { return (mask_ & ~other.mask_) == 0; }
    constexpr bool fits(int n) const { return n >= 64 || (mask_ >> n) == 0; }

    constexpr Subset with(int var) const { return Subset(mask_ | (std::uint64_t{1} << (var - 1))); }
    constexpr Subset without(int var) const { return Subset(mask_ & ~(std::uint64_t{1} << (var - 1))); }
    constexpr Subset sym_diff(Subset other) const { return Subset(mask_ ^ other.mask_); }

    std::vector<int> vars() const {
        std::vector<int> out;
        for (std::uint64_t m = mask_; m; m &= m - 1) out.push_back(std::countr_zero(m) + 1);
        return out;
    }

    /// Comma-joined 1-based indices; empty string for the constant term.
    std::string to_string() const {
        std::ostringstream ss;
        bool first = true;
        for (int v : vars()) {
            if (!first) ss << ',';
            ss << v;
            first = false;
        }
        return ss.str();
    }

    /// Underscore-joined variant, for CSV column names.
    std::string to_label() const {
        std::string s = to_string();
        for (char& c : s) if (c == ',') c = '_';
        return s.empty() ? std::string("const") : s;
    }

    /// Inverse of to_string(); also accepts "const" for the empty subset.
    static Subset parse(const std::string& text) {
        if (text.empty() || text == "const") return Subset{};
        Subset s;
        std::istringstream ss(text);
        std::string item;
        while (std::getline(ss, item, ',')) {
            std::size_t pos = 0;
            int v = std::stoi(item, &pos);
            if (pos != item.size() || v < 1 || v > 64)
                throw std::invalid_argument("bad subset element: " + item);
            s = s.with(v);
        }
        return s;
    }

    friend constexpr bool operator==(Subset a, Subset b) { return a.mask_ == b.mask_; }
    friend constexpr bool operator<(Subset a, Subset b) { return a.mask_ < b.mask_; }

private:
    std::uint64_t mask_ = 0;
};

}  // namespace stairnet

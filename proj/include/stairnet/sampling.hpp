#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "stairnet/rng.hpp"

namespace stairnet {

enum class MeasureKind { Unbiased, Biased, Gaussian };

/// Product input measure: uniform +/-1, biased +/-1 coins with
/// P(x_i = 1) = p, or i.i.d. standard Gaussian coordinates.
struct Measure {
    MeasureKind kind = MeasureKind::Unbiased;
    int n = 0;
    double p = 0.5;

    static Measure unbiased(int n) { return {MeasureKind::Unbiased, n, 0.5}; }
    static Measure biased(int n, double p) {
        if (!(p > 0.0 && p < 1.0)) throw std::out_of_range("p must be in (0,1)");
        return {MeasureKind::Biased, n, p};
    }
    static Measure gaussian(int n) { return {MeasureKind::Gaussian, n, 0.5}; }

    double coord(const rng::Key& key, std::uint64_t counter, int i) const {
        switch (kind) {
            case MeasureKind::Unbiased:
                return key.sign(counter, static_cast<std::uint64_t>(i));
            case MeasureKind::Biased:
                return key.uniform01(counter, static_cast<std::uint64_t>(i)) < p ? 1.0 : -1.0;
            case MeasureKind::Gaussian:
                return key.gaussian(counter, static_cast<std::uint64_t>(i));
        }
        throw std::logic_error("unreachable");
    }

    void fill(const rng::Key& key, std::uint64_t counter, std::span<double> x) const {
        for (int i = 0; i < n; ++i) x[static_cast<std::size_t>(i)] = coord(key, counter, i);
    }
};

struct Batch {
    int n = 0;
    std::vector<double> xs;      // row-major, count * n
    std::vector<double> labels;  // count

    std::size_t count() const { return labels.size(); }
    std::span<const double> x(std::size_t i) const {
        return std::span<const double>(xs).subspan(i * static_cast<std::size_t>(n),
                                                   static_cast<std::size_t>(n));
    }
};

using TargetFn = std::function<double(std::span<const double>)>;

/// Stream of labeled examples (x, g(x)), noiseless supervision.
/// Value-like: copies advance independently. Fresh mode never repeats a
/// counter state; cyclic mode materializes m samples once and wraps.
class LabeledStream {
public:
    static LabeledStream fresh(Measure measure, TargetFn target, std::uint64_t seed,
                               std::string purpose = "samples") {
        LabeledStream s;
        s.measure_ = measure;
        s.target_ = std::move(target);
        s.key_ = rng::Key(seed, purpose);
        return s;
    }

    /// Fixed-sample regime: m samples drawn once, then cycled in order.
    static LabeledStream cyclic(Measure measure, TargetFn target, std::size_t m, std::uint64_t seed,
                                std::string purpose = "dataset",
                                std::size_t memory_cap_doubles = std::size_t{1} << 28) {
        if (m < 1) throw std::invalid_argument("dataset size must be >= 1");
        if (m * static_cast<std::size_t>(measure.n) > memory_cap_doubles)
            throw std::length_error("cyclic dataset exceeds memory cap");
        LabeledStream s;
        s.measure_ = measure;
        s.target_ = std::move(target);
        s.key_ = rng::Key(seed, purpose);
        s.dataset_size_ = m;
        s.data_.n = measure.n;
        s.data_.xs.resize(m * static_cast<std::size_t>(measure.n));
        s.data_.labels.resize(m);
        std::vector<double> x(static_cast<std::size_t>(measure.n));
        for (std::size_t i = 0; i < m; ++i) {
            s.measure_.fill(s.key_, i, x);
            std::copy(x.begin(), x.end(),
                      s.data_.xs.begin() + static_cast<std::ptrdiff_t>(i * x.size()));
            s.data_.labels[i] = s.target_(x);
        }
        return s;
    }

    const Measure& measure() const { return measure_; }
    const TargetFn& target() const { return target_; }
    bool is_cyclic() const { return dataset_size_ > 0; }
    std::uint64_t position() const { return counter_; }

    Batch draw(std::size_t count) {
        if (count < 1) throw std::invalid_argument("count must be >= 1");
        Batch b;
        b.n = measure_.n;
        b.xs.resize(count * static_cast<std::size_t>(measure_.n));
        b.labels.resize(count);
        std::vector<double> x(static_cast<std::size_t>(measure_.n));
        for (std::size_t i = 0; i < count; ++i) {
            if (is_cyclic()) {
                std::size_t row = static_cast<std::size_t>(counter_ % dataset_size_);
                auto src = data_.x(row);
                std::copy(src.begin(), src.end(),
                          b.xs.begin() + static_cast<std::ptrdiff_t>(i * src.size()));
                b.labels[i] = data_.labels[row];
            } else {
                measure_.fill(key_, counter_, x);
                std::copy(x.begin(), x.end(),
                          b.xs.begin() + static_cast<std::ptrdiff_t>(i * x.size()));
                b.labels[i] = target_(x);
            }
            ++counter_;
        }
        return b;
    }

private:
    Measure measure_;
    TargetFn target_;
    rng::Key key_;
    std::uint64_t counter_ = 0;
    std::size_t dataset_size_ = 0;  // 0 = fresh regime
    Batch data_;
};

}  // namespace stairnet

#pragma once

#include <algorithm>
#include <cmath>
#include <span>
#include <stdexcept>
#include <vector>

namespace rhtunnel {

/// Real coefficients indexed over a closed integer window [lo, hi].
/// Reads outside the window return zero, matching series truncation.
class OffsetSeries {
public:
    OffsetSeries() = default;
    OffsetSeries(int lo, int hi) : lo_(lo), values_(static_cast<std::size_t>(std::max(hi - lo + 1, 0)), 0.0) {}

    int lo() const noexcept { return lo_; }
    int hi() const noexcept { return lo_ + static_cast<int>(values_.size()) - 1; }
    std::size_t size() const noexcept { return values_.size(); }
    bool contains(int k) const noexcept { return k >= lo_ && k <= hi(); }

    double operator[](int k) const noexcept {
        return contains(k) ? values_[static_cast<std::size_t>(k - lo_)] : 0.0;
    }

    double& at(int k) {
        if (!contains(k)) throw std::out_of_range("OffsetSeries index outside window");
        return values_[static_cast<std::size_t>(k - lo_)];
    }

    std::span<const double> values() const noexcept { return values_; }
    std::span<double> values() noexcept { return values_; }

    double max_abs() const noexcept {
        double m = 0.0;
        for (double v : values_) m = std::max(m, std::abs(v));
        return m;
    }

    OffsetSeries& operator+=(const OffsetSeries& other) {
        if (other.lo_ != lo_ || other.size() != size())
            throw std::invalid_argument("OffsetSeries windows differ");
        for (std::size_t i = 0; i < values_.size(); ++i) values_[i] += other.values_[i];
        return *this;
    }

    bool operator==(const OffsetSeries&) const = default;

private:
    int lo_ = 0;
    std::vector<double> values_;
};

}  // namespace rhtunnel

#pragma once

#include <cmath>
#include <cstddef>
#include <span>

namespace eulerdiv {

/// Neumaier's improved Kahan summation. Once the running sum overflows the
/// accumulator keeps the non-finite value instead of producing Inf - Inf.
class CompensatedSum {
public:
    void add(double x) noexcept {
        const double t = sum_ + x;
        if (!std::isfinite(t)) {
            sum_ = t;
            comp_ = 0.0;
            return;
        }
        if (std::fabs(sum_) >= std::fabs(x)) {
            comp_ += (sum_ - t) + x;
        } else {
            comp_ += (x - t) + sum_;
        }
        sum_ = t;
    }

    void merge(const CompensatedSum& other) noexcept {
        add(other.sum_);
        if (std::isfinite(sum_)) comp_ += other.comp_;
    }

    double value() const noexcept { return std::isfinite(sum_) ? sum_ + comp_ : sum_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

/// Pairwise (cascade) reduction of partial results with a fixed tree shape:
/// the result depends only on the order of `parts`, never on who produced
/// them. `combine(a, b)` must return the merge of a and b.
template <class T, class Combine>
T pairwise_reduce(std::span<const T> parts, Combine&& combine) {
    if (parts.size() == 1) return parts[0];
    const std::size_t half = parts.size() / 2;
    return combine(pairwise_reduce(parts.first(half), combine), pairwise_reduce(parts.subspan(half), combine));
}

} // namespace eulerdiv

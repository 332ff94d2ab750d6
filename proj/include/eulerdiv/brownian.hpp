#pragma once

// Discretized Brownian paths on uniform grids.

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "eulerdiv/errors.hpp"
#include "eulerdiv/philox.hpp"

namespace eulerdiv {

/// Identifies the random stream a sampled grid was drawn from.
struct StreamKey {
    std::uint64_t seed = 0;
    std::uint64_t run_index = 0;

    friend bool operator==(const StreamKey&, const StreamKey&) = default;
};

/// Brownian motion observed at t_k = k T / N, k = 0..N, starting at W_0 = 0.
///
/// values() is the left-to-right prefix sum of increments(). A grid built
/// from a random stream remembers its StreamKey so that later refinement
/// (Brownian bridge) stays a pure function of the same key.
class BrownianGrid {
public:
    BrownianGrid(double horizon, std::vector<double> increments,
                 std::optional<StreamKey> source = std::nullopt)
        : horizon_(horizon), increments_(std::move(increments)), source_(source) {
        detail::require(!increments_.empty(), "BrownianGrid: at least one step is required");
        detail::require(horizon_ > 0.0 && std::isfinite(horizon_),
                        "BrownianGrid: horizon must be positive and finite");
        values_.resize(increments_.size() + 1);
        values_[0] = 0.0;
        for (std::size_t k = 0; k < increments_.size(); ++k) {
            values_[k + 1] = values_[k] + increments_[k];
        }
    }

    std::size_t steps() const noexcept { return increments_.size(); }
    double horizon() const noexcept { return horizon_; }
    double dt() const noexcept { return horizon_ / static_cast<double>(steps()); }
    double time(std::size_t k) const noexcept {
        return horizon_ * static_cast<double>(k) / static_cast<double>(steps());
    }

    std::span<const double> increments() const noexcept { return increments_; }
    std::span<const double> values() const noexcept { return values_; }
    double terminal() const noexcept { return values_.back(); }

    const std::optional<StreamKey>& source() const noexcept { return source_; }

    friend bool operator==(const BrownianGrid&, const BrownianGrid&) = default;

private:
    double horizon_;
    std::vector<double> increments_;
    std::vector<double> values_;
    std::optional<StreamKey> source_;
};

/// N i.i.d. Normal(0, T/N) increments drawn from the stream (seed, run_index).
inline BrownianGrid sample_increments(std::uint64_t seed, std::uint64_t run_index, std::size_t steps,
                                      double horizon) {
    detail::require(steps >= 1, "sample_increments: N must be at least 1");
    detail::require(horizon > 0.0 && std::isfinite(horizon), "sample_increments: T must be positive");
    const double scale = std::sqrt(horizon / static_cast<double>(steps));
    std::vector<double> inc;
    inc.reserve(steps);
    NormalStream(seed, run_index, Stream::increments).generate(steps, [&](double z) {
        inc.push_back(scale * z);
    });
    return BrownianGrid(horizon, std::move(inc), StreamKey{seed, run_index});
}

/// max_k |W_{t_k}|.
inline double path_sup(const BrownianGrid& grid) noexcept {
    double sup = 0.0;
    for (double w : grid.values()) sup = std::fmax(sup, std::fabs(w));
    return sup;
}

/// The two large-increment events on which the Euler iterates provably grow
/// double-exponentially.
///
/// additive_cubic: |dW_0| >= r_N and |dW_k| <= 1 for k >= 1 (the event used
/// for dX = -X^3 dt + dW).
/// general: |dW_0| >= K (r_N + K) and |dW_k| in [T/N, 2T/N] for k >= 1 (the
/// event used for a general growth certificate).
enum class DivergenceEvent { additive_cubic, general };

/// Deterministic grid with increments [first, s_1 m, ..., s_{N-1} m].
inline BrownianGrid force_event_increments(std::size_t steps, double horizon, double first,
                                           double subsequent_magnitude, std::span<const int> signs,
                                           DivergenceEvent event) {
    detail::require(steps >= 1, "force_event_increments: N must be at least 1");
    detail::require(horizon > 0.0, "force_event_increments: T must be positive");
    detail::require(signs.size() + 1 == steps, "force_event_increments: need exactly N-1 signs");
    detail::require(std::isfinite(first), "force_event_increments: first increment must be finite");
    const double dt = horizon / static_cast<double>(steps);
    const double m = subsequent_magnitude;
    if (event == DivergenceEvent::general) {
        detail::require(m >= dt && m <= 2.0 * dt,
                        "force_event_increments: magnitude must lie in [T/N, 2T/N]");
    } else {
        detail::require(m >= 0.0 && m <= 1.0, "force_event_increments: magnitude must lie in [0, 1]");
    }
    std::vector<double> inc;
    inc.reserve(steps);
    inc.push_back(first);
    for (int s : signs) {
        detail::require(s == 1 || s == -1, "force_event_increments: signs must be +1 or -1");
        inc.push_back(s > 0 ? m : -m);
    }
    return BrownianGrid(horizon, std::move(inc));
}

/// Membership in the additive-cubic event with first-increment threshold r.
inline bool in_additive_cubic_event(const BrownianGrid& grid, double r) noexcept {
    const auto inc = grid.increments();
    if (!(std::fabs(inc[0]) >= r)) return false;
    for (std::size_t k = 1; k < inc.size(); ++k) {
        if (!(std::fabs(inc[k]) <= 1.0)) return false;
    }
    return true;
}

/// Membership in the general event with first-increment threshold
/// first_threshold = K (r_N + K).
inline bool in_general_event(const BrownianGrid& grid, double first_threshold) noexcept {
    const auto inc = grid.increments();
    const double dt = grid.dt();
    if (!(std::fabs(inc[0]) >= first_threshold)) return false;
    for (std::size_t k = 1; k < inc.size(); ++k) {
        const double a = std::fabs(inc[k]);
        if (!(a >= dt && a <= 2.0 * dt)) return false;
    }
    return true;
}

/// Visits the path on the grid refined to N*M uniform points, calling
/// visit(t, w) for every fine point from t = 0 to t = T inclusive.
///
/// Interior points of a sampled grid are Brownian-bridge draws conditional on
/// the coarse values (taken from the bridge stream of the grid's StreamKey).
/// A grid without a source is a fixed path and is refined by linear
/// interpolation.
template <class Visit>
void for_each_refined_point(const BrownianGrid& grid, std::size_t substeps, Visit&& visit) {
    detail::require(substeps >= 1, "refinement: substeps must be at least 1");
    const auto values = grid.values();
    const std::size_t n = grid.steps();
    const double total = static_cast<double>(n * substeps);
    const double fine_dt = grid.horizon() / total;
    auto fine_time = [&](std::size_t i) { return grid.horizon() * static_cast<double>(i) / total; };

    visit(0.0, values[0]);
    if (substeps == 1 || !grid.source()) {
        const double inv_m = 1.0 / static_cast<double>(substeps);
        for (std::size_t k = 0; k < n; ++k) {
            const double a = values[k];
            const double b = values[k + 1];
            for (std::size_t j = 1; j < substeps; ++j) {
                const double frac = static_cast<double>(j) * inv_m;
                visit(fine_time(k * substeps + j), a + frac * (b - a));
            }
            visit(fine_time((k + 1) * substeps), b);
        }
        return;
    }

    const NormalStream normals(grid.source()->seed, grid.source()->run_index, Stream::bridge);
    std::uint32_t block = 0;
    double buffered[2] = {0.0, 0.0};
    int available = 0;
    auto next_normal = [&]() {
        if (available == 0) {
            normals.pair(block++, buffered[0], buffered[1]);
            available = 2;
        }
        return buffered[2 - available--];
    };

    const double m = static_cast<double>(substeps);
    for (std::size_t k = 0; k < n; ++k) {
        double w = values[k];
        const double end = values[k + 1];
        for (std::size_t j = 1; j < substeps; ++j) {
            // Remaining fine steps to the coarse endpoint before this draw.
            const double remaining = m - static_cast<double>(j - 1);
            const double weight = 1.0 / remaining;
            const double var = fine_dt * (remaining - 1.0) / remaining;
            w += weight * (end - w) + std::sqrt(var) * next_normal();
            visit(fine_time(k * substeps + j), w);
        }
        visit(fine_time((k + 1) * substeps), end);
    }
}

/// The refined path as a vector of N*M + 1 values.
inline std::vector<double> refined_values(const BrownianGrid& grid, std::size_t substeps) {
    std::vector<double> out;
    out.reserve(grid.steps() * substeps + 1);
    for_each_refined_point(grid, substeps, [&](double, double w) { out.push_back(w); });
    return out;
}

} // namespace eulerdiv

#pragma once

// Explicit Euler-Maruyama recursion
//   Y_{k+1} = Y_k + (T/N) f(Y_k) + g(Y_k) (W_{t_{k+1}} - W_{t_k})
// in plain IEEE double arithmetic. Overflow is data: Inf and NaN propagate
// exactly as the hardware produces them, with no clamping or early exit.

#include <cmath>
#include <cstddef>
#include <optional>
#include <vector>

#include "eulerdiv/brownian.hpp"
#include "eulerdiv/errors.hpp"
#include "eulerdiv/models.hpp"

namespace eulerdiv {

struct Trajectory {
    std::vector<double> values;
    std::optional<std::size_t> explosion_index;

    double terminal() const noexcept { return values.back(); }
    bool exploded() const noexcept { return explosion_index.has_value(); }
};

inline double euler_step(const SdeSpec& spec, double y, double dt, double dw) {
    return y + dt * spec.drift(y) + spec.diffusion(y) * dw;
}

namespace detail {

inline void require_matching_horizon(const SdeSpec& spec, const BrownianGrid& grid) {
    require(std::fabs(grid.horizon() - spec.horizon) <= 1e-12 * spec.horizon,
            "euler_path: grid horizon does not match the SDE horizon");
}

} // namespace detail

inline Trajectory euler_path(const SdeSpec& spec, const BrownianGrid& grid) {
    detail::require_matching_horizon(spec, grid);
    const double dt = grid.dt();
    Trajectory out;
    out.values.reserve(grid.steps() + 1);
    double y = spec.x0;
    out.values.push_back(y);
    if (!std::isfinite(y)) out.explosion_index = 0;
    for (double dw : grid.increments()) {
        y = euler_step(spec, y, dt, dw);
        if (!out.explosion_index && !std::isfinite(y)) out.explosion_index = out.values.size();
        out.values.push_back(y);
    }
    return out;
}

/// Y_N only; the Monte Carlo hot path.
inline double euler_terminal(const SdeSpec& spec, const BrownianGrid& grid) {
    detail::require_matching_horizon(spec, grid);
    const double dt = grid.dt();
    double y = spec.x0;
    for (double dw : grid.increments()) y = euler_step(spec, y, dt, dw);
    return y;
}

/// sqrt(2N/T): the noiseless cubic recursion y <- y - (T/N) y^3 contracts
/// iff (T/N) y^2 <= 2.
inline double deterministic_explosion_threshold(std::size_t steps, double horizon) {
    detail::require(steps >= 1, "deterministic_explosion_threshold: N must be at least 1");
    detail::require(horizon > 0.0, "deterministic_explosion_threshold: T must be positive");
    return std::sqrt(2.0 * static_cast<double>(steps) / horizon);
}

} // namespace eulerdiv

#pragma once

// Closed-form solutions of the Ginzburg-Landau and Verhulst equations,
// evaluated pathwise on a Brownian grid. The time integral in each formula
// is approximated by the trapezoidal rule on the grid refined M-fold.

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <utility>

#include "eulerdiv/brownian.hpp"
#include "eulerdiv/errors.hpp"
#include "eulerdiv/euler.hpp"
#include "eulerdiv/models.hpp"

namespace eulerdiv {

struct QuadratureConfig {
    std::size_t substeps = 32;

    void validate() const { detail::require(substeps >= 1, "QuadratureConfig: substeps must be at least 1"); }
};

namespace detail {

// Trapezoidal approximation of int_0^T exp(rate * s + vol * W_s) ds.
inline double exponential_functional(const BrownianGrid& grid, const QuadratureConfig& cfg, double rate,
                                     double vol) {
    cfg.validate();
    const double h = grid.horizon() / static_cast<double>(grid.steps() * cfg.substeps);
    double sum = 0.0;
    double first = 0.0;
    double last = 0.0;
    bool have_first = false;
    for_each_refined_point(grid, cfg.substeps, [&](double t, double w) {
        last = std::exp(rate * t + vol * w);
        if (!have_first) {
            first = last;
            have_first = true;
        }
        sum += last;
    });
    return h * (sum - 0.5 * (first + last));
}

} // namespace detail

/// X_T = x0 exp(eta T + sigma W_T) / sqrt(1 + 2 x0^2 lambda int_0^T exp(2 eta s + 2 sigma W_s) ds).
inline double gl_exact_terminal(double eta, double lambda, double sigma, double x0, const BrownianGrid& grid,
                                const QuadratureConfig& cfg) {
    const double T = grid.horizon();
    const double integral = detail::exponential_functional(grid, cfg, 2.0 * eta, 2.0 * sigma);
    return x0 * std::exp(eta * T + sigma * grid.terminal()) / std::sqrt(1.0 + 2.0 * x0 * x0 * lambda * integral);
}

/// X_T = x0 exp(eta T + sigma W_T) / (1 + x0 lambda int_0^T exp(eta s + sigma W_s) ds).
inline double verhulst_exact_terminal(double eta, double lambda, double sigma, double x0,
                                      const BrownianGrid& grid, const QuadratureConfig& cfg) {
    const double T = grid.horizon();
    const double integral = detail::exponential_functional(grid, cfg, eta, sigma);
    return x0 * std::exp(eta * T + sigma * grid.terminal()) / (1.0 + x0 * lambda * integral);
}

/// Exact terminal value of an SDE that carries a closed-form oracle.
inline double exact_terminal(const SdeSpec& spec, const BrownianGrid& grid, const QuadratureConfig& cfg) {
    detail::require(spec.oracle.has_value(), "exact_terminal: '" + spec.label + "' has no exact solution");
    const ExactOracle& o = *spec.oracle;
    switch (o.kind) {
    case ExactOracle::Kind::ginzburg_landau:
        return gl_exact_terminal(o.eta, o.lambda, o.sigma, spec.x0, grid, cfg);
    case ExactOracle::Kind::verhulst:
        return verhulst_exact_terminal(o.eta, o.lambda, o.sigma, spec.x0, grid, cfg);
    }
    throw invalid_argument("exact_terminal: unknown oracle kind");
}

struct CoupledSample {
    double exact;
    double euler;
};

/// One grid drawn from (seed, run); X_T from the bridge-refined path, Y_N
/// from the coarse grid, so both see the same Brownian path.
inline CoupledSample coupled_error_sample(const SdeSpec& spec, std::size_t steps, const QuadratureConfig& cfg,
                                          std::uint64_t seed, std::uint64_t run_index) {
    detail::require(spec.oracle.has_value(),
                    "coupled_error_sample: '" + spec.label + "' has no exact solution");
    const BrownianGrid grid = sample_increments(seed, run_index, steps, spec.horizon);
    return {exact_terminal(spec, grid, cfg), euler_terminal(spec, grid)};
}

} // namespace eulerdiv

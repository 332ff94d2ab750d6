#pragma once

// The experiment drivers behind the command-line harness. Each driver is a
// pure function of its configuration (seed included) and returns rows; the
// writers in tools/ turn rows into CSV or JSON.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "eulerdiv/bounds.hpp"
#include "eulerdiv/errors.hpp"
#include "eulerdiv/exact.hpp"
#include "eulerdiv/models.hpp"
#include "eulerdiv/montecarlo.hpp"
#include "eulerdiv/philox.hpp"

namespace eulerdiv {

// Purpose tags for derive_seed; every experiment cell gets its own stream.
enum class SeedPurpose : std::uint64_t { table1_euler = 1, table1_exact = 2, figure1 = 3 };

inline std::uint64_t cell_seed(std::uint64_t seed, SeedPurpose purpose, std::uint64_t cell) {
    return derive_seed(seed, static_cast<std::uint64_t>(purpose), cell);
}

// --- second moment of dX = -X^3 dt + sigma X o dW, X_0 = 1, t in [0, 3] ----

struct Table1Config {
    std::vector<double> sigmas{2.0, 4.0, 5.0, 6.0, 7.0};
    std::size_t steps = 1000;
    std::uint64_t runs_euler = 100000;
    std::uint64_t runs_exact = 1000000;
    std::size_t exact_steps = 320;
    std::size_t substeps = 32;
    std::uint64_t seed = 0;
    unsigned workers = 1;
};

struct Table1Row {
    double sigma;
    MomentEstimate exact;
    MomentEstimate euler;
};

inline std::vector<Table1Row> run_table1(const Table1Config& cfg) {
    detail::require(!cfg.sigmas.empty(), "table1: sigma list is empty");
    detail::require(cfg.steps >= 1 && cfg.exact_steps >= 1, "table1: step counts must be at least 1");
    detail::require(cfg.runs_euler >= 1 && cfg.runs_exact >= 1, "table1: run counts must be at least 1");
    const QuadratureConfig quad{cfg.substeps};
    quad.validate();
    std::vector<Table1Row> rows;
    rows.reserve(cfg.sigmas.size());
    for (std::size_t i = 0; i < cfg.sigmas.size(); ++i) {
        const double sigma = cfg.sigmas[i];
        const SdeSpec spec = catalog("stratonovich_gl", {{"sigma", sigma}}).spec;
        rows.push_back({sigma,
                        estimate_exact_moment(spec, cfg.exact_steps, quad, 2.0, cfg.runs_exact,
                                              cell_seed(cfg.seed, SeedPurpose::table1_exact, i), cfg.workers),
                        estimate_euler_moment(spec, cfg.steps, 2.0, cfg.runs_euler,
                                              cell_seed(cfg.seed, SeedPurpose::table1_euler, i), cfg.workers)});
    }
    return rows;
}

// --- E|Y_N| for the power-drift model, N = 1..N_max -------------------------

struct Figure1Config {
    std::size_t steps_max = 53;
    std::uint64_t runs = 10000;
    std::uint64_t seed = 0;
    unsigned workers = 1;
    Parameters params;  // power_drift overrides (x0, T)
};

struct Figure1Row {
    std::size_t steps;
    MomentEstimate estimate;
};

inline std::vector<Figure1Row> run_figure1(const Figure1Config& cfg) {
    detail::require(cfg.steps_max >= 1, "figure1: N_max must be at least 1");
    detail::require(cfg.runs >= 1, "figure1: runs must be at least 1");
    const SdeSpec spec = catalog("power_drift", cfg.params).spec;
    std::vector<Figure1Row> rows;
    rows.reserve(cfg.steps_max);
    for (std::size_t n = 1; n <= cfg.steps_max; ++n) {
        rows.push_back({n, estimate_euler_moment(spec, n, 1.0, cfg.runs,
                                                 cell_seed(cfg.seed, SeedPurpose::figure1, n), cfg.workers)});
    }
    return rows;
}

// --- analytic lower bounds, N = 1..N_max ------------------------------------

enum class BoundsMode { simple, general };

struct BoundsConfig {
    double horizon = 1.0;
    std::size_t steps_max = 64;
    BoundsMode mode = BoundsMode::simple;
    std::string model;  // general mode only
    Parameters params;
};

inline std::vector<DivergenceCertificateReport> run_bounds(const BoundsConfig& cfg) {
    detail::require(cfg.steps_max >= 1, "bounds: N_max must be at least 1");
    detail::require(cfg.horizon > 0.0, "bounds: T must be positive");
    DivergenceMode mode = SimpleCubicMode{};
    if (cfg.mode == BoundsMode::general) {
        detail::require(!cfg.model.empty(), "bounds: general mode needs a model");
        Parameters params = cfg.params;
        params.insert_or_assign("T", cfg.horizon);
        const CatalogEntry entry = catalog(cfg.model, params);
        detail::require(entry.certificate.has_value(), "bounds: model '" + cfg.model + "' has no growth certificate");
        const KAndMu km = k_and_mu(entry.spec);
        mode = GeneralMode{*entry.certificate, km.K, km.mu};
    }
    std::vector<DivergenceCertificateReport> rows;
    rows.reserve(cfg.steps_max);
    for (std::size_t n = 1; n <= cfg.steps_max; ++n) rows.push_back(divergence_lower_bound(n, cfg.horizon, mode));
    return rows;
}

// --- generic front end --------------------------------------------------------

struct SimulateConfig {
    std::string model;
    Parameters params;
    std::size_t steps = 100;
    std::uint64_t runs = 10000;
    double p = 1.0;
    std::uint64_t seed = 0;
    unsigned workers = 1;
};

struct SimulateResult {
    MomentEstimate estimate;
    double explosion_fraction;
};

inline SimulateResult run_simulate(const SimulateConfig& cfg) {
    detail::require(cfg.steps >= 1, "simulate: N must be at least 1");
    const SdeSpec spec = catalog(cfg.model, cfg.params).spec;
    return {estimate_euler_moment(spec, cfg.steps, cfg.p, cfg.runs, cfg.seed, cfg.workers),
            explosion_fraction(spec, cfg.steps, cfg.runs, cfg.seed, cfg.workers)};
}

} // namespace eulerdiv

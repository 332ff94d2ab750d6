#pragma once

// Monte Carlo moment estimation with explosion accounting.
//
// Runs are split into fixed-size chunks; each chunk is a pure function of
// (seed, run indices) and the chunk partials are combined by a fixed
// pairwise tree. Estimates are therefore bit-identical for any worker count.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <mutex>
#include <span>
#include <thread>
#include <vector>

#include "eulerdiv/brownian.hpp"
#include "eulerdiv/errors.hpp"
#include "eulerdiv/euler.hpp"
#include "eulerdiv/exact.hpp"
#include "eulerdiv/models.hpp"
#include "eulerdiv/summation.hpp"

namespace eulerdiv {

/// Estimate of E|S|^p for a sampled quantity S.
///
/// ieee_mean is what a naive IEEE average of |S|^p over all runs returns
/// (NaN if any run produced NaN, Inf if any run overflowed). finite_mean and
/// finite_stderr use only the finite runs.
struct MomentEstimate {
    double p = 1.0;
    std::uint64_t runs = 0;
    double ieee_mean = 0.0;
    double finite_mean = 0.0;
    double finite_stderr = 0.0;
    std::uint64_t count_finite = 0;
    std::uint64_t count_pos_inf = 0;
    std::uint64_t count_neg_inf = 0;
    std::uint64_t count_nan = 0;

    std::uint64_t count_inf() const noexcept { return count_pos_inf + count_neg_inf; }
};

/// Runs per chunk; part of the reduction order, so changing it changes the
/// last bits of every estimate.
inline constexpr std::uint64_t kChunkRuns = 1024;

inline unsigned default_workers() noexcept { return std::max(1u, std::thread::hardware_concurrency()); }

namespace detail {

/// Calls body(chunk) for chunk = 0..chunks-1 on `workers` threads.
template <class Body>
void parallel_chunks(std::size_t chunks, unsigned workers, Body&& body) {
    workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(std::max<std::size_t>(chunks, 1))));
    if (workers == 1) {
        for (std::size_t c = 0; c < chunks; ++c) body(c);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto worker = [&]() {
        try {
            for (std::size_t c = next++; c < chunks; c = next++) body(c);
        } catch (...) {
            const std::lock_guard lock(failure_mutex);
            if (!failure) failure = std::current_exception();
            next = chunks;
        }
    };
    std::vector<std::jthread> pool;
    pool.reserve(workers - 1);
    for (unsigned w = 1; w < workers; ++w) pool.emplace_back(worker);
    worker();
    pool.clear();
    if (failure) std::rethrow_exception(failure);
}

struct MomentPartial {
    double ieee_sum = 0.0;
    CompensatedSum finite_sum;
    CompensatedSum finite_sq;
    std::uint64_t finite = 0;
    std::uint64_t pos_inf = 0;
    std::uint64_t neg_inf = 0;
    std::uint64_t nan = 0;

    void add(double sample, double p) noexcept {
        const double a = std::fabs(sample);
        const double v = p == 1.0 ? a : (p == 2.0 ? a * a : std::pow(a, p));
        ieee_sum += v;
        if (std::isnan(sample)) {
            ++nan;
        } else if (std::isinf(sample)) {
            ++(sample > 0.0 ? pos_inf : neg_inf);
        } else {
            ++finite;
            finite_sum.add(v);
            finite_sq.add(v * v);
        }
    }

    static MomentPartial merge(MomentPartial a, const MomentPartial& b) noexcept {
        a.ieee_sum += b.ieee_sum;
        a.finite_sum.merge(b.finite_sum);
        a.finite_sq.merge(b.finite_sq);
        a.finite += b.finite;
        a.pos_inf += b.pos_inf;
        a.neg_inf += b.neg_inf;
        a.nan += b.nan;
        return a;
    }
};

inline std::size_t chunk_count(std::uint64_t runs) { return static_cast<std::size_t>((runs + kChunkRuns - 1) / kChunkRuns); }

} // namespace detail

/// Estimates E|S|^p from S_i = sampler(seed, i), i = 0..runs-1.
template <class Sampler>
MomentEstimate estimate_moment(Sampler&& sampler, double p, std::uint64_t runs, std::uint64_t seed,
                               unsigned workers = 1) {
    detail::require(p >= 1.0 && std::isfinite(p), "estimate_moment: p must be finite and at least 1");
    detail::require(runs >= 1, "estimate_moment: runs must be at least 1");

    std::vector<detail::MomentPartial> parts(detail::chunk_count(runs));
    detail::parallel_chunks(parts.size(), workers, [&](std::size_t c) {
        const std::uint64_t begin = c * kChunkRuns;
        const std::uint64_t end = std::min(runs, begin + kChunkRuns);
        detail::MomentPartial local;
        for (std::uint64_t i = begin; i < end; ++i) local.add(static_cast<double>(sampler(seed, i)), p);
        parts[c] = local;
    });
    const auto total = pairwise_reduce(std::span<const detail::MomentPartial>(parts), detail::MomentPartial::merge);

    MomentEstimate est;
    est.p = p;
    est.runs = runs;
    est.ieee_mean = total.ieee_sum / static_cast<double>(runs);
    est.count_finite = total.finite;
    est.count_pos_inf = total.pos_inf;
    est.count_neg_inf = total.neg_inf;
    est.count_nan = total.nan;
    if (total.finite == 0) {
        est.finite_mean = std::nan("");
        est.finite_stderr = std::nan("");
        return est;
    }
    const double n = static_cast<double>(total.finite);
    const double sum = total.finite_sum.value();
    est.finite_mean = sum / n;
    if (total.finite > 1) {
        const double var = std::max(0.0, (total.finite_sq.value() - sum * est.finite_mean) / (n - 1.0));
        est.finite_stderr = std::sqrt(var / n);
    }
    return est;
}

/// E|Y_N|^p of the Euler scheme with N steps.
inline MomentEstimate estimate_euler_moment(const SdeSpec& spec, std::size_t steps, double p, std::uint64_t runs,
                                            std::uint64_t seed, unsigned workers = 1) {
    return estimate_moment(
        [&](std::uint64_t s, std::uint64_t run) {
            return euler_terminal(spec, sample_increments(s, run, steps, spec.horizon));
        },
        p, runs, seed, workers);
}

/// E|X_T|^p of the exact solution, sampled on grids of `steps` coarse steps.
inline MomentEstimate estimate_exact_moment(const SdeSpec& spec, std::size_t steps, const QuadratureConfig& cfg,
                                            double p, std::uint64_t runs, std::uint64_t seed, unsigned workers = 1) {
    detail::require(spec.oracle.has_value(), "estimate_exact_moment: '" + spec.label + "' has no exact solution");
    cfg.validate();
    return estimate_moment(
        [&](std::uint64_t s, std::uint64_t run) {
            return exact_terminal(spec, sample_increments(s, run, steps, spec.horizon), cfg);
        },
        p, runs, seed, workers);
}

/// E|X_T - Y_N|^p over coupled samples.
inline MomentEstimate estimate_strong_error(const SdeSpec& spec, std::size_t steps, double p, std::uint64_t runs,
                                            const QuadratureConfig& cfg, std::uint64_t seed, unsigned workers = 1) {
    detail::require(spec.oracle.has_value(), "estimate_strong_error: '" + spec.label + "' has no exact solution");
    cfg.validate();
    return estimate_moment(
        [&](std::uint64_t s, std::uint64_t run) {
            const CoupledSample c = coupled_error_sample(spec, steps, cfg, s, run);
            return c.exact - c.euler;
        },
        p, runs, seed, workers);
}

/// Fraction of Euler trajectories that reach a non-finite value.
inline double explosion_fraction(const SdeSpec& spec, std::size_t steps, std::uint64_t runs, std::uint64_t seed,
                                 unsigned workers = 1) {
    detail::require(runs >= 1, "explosion_fraction: runs must be at least 1");
    std::vector<std::uint64_t> exploded(detail::chunk_count(runs), 0);
    detail::parallel_chunks(exploded.size(), workers, [&](std::size_t c) {
        const std::uint64_t begin = c * kChunkRuns;
        const std::uint64_t end = std::min(runs, begin + kChunkRuns);
        std::uint64_t count = 0;
        for (std::uint64_t i = begin; i < end; ++i) {
            const BrownianGrid grid = sample_increments(seed, i, steps, spec.horizon);
            const double dt = grid.dt();
            double y = spec.x0;
            bool blown = !std::isfinite(y);
            for (double dw : grid.increments()) {
                y = euler_step(spec, y, dt, dw);
                blown = blown || !std::isfinite(y);
            }
            count += blown ? 1 : 0;
        }
        exploded[c] = count;
    });
    std::uint64_t total = 0;
    for (std::uint64_t c : exploded) total += c;
    return static_cast<double>(total) / static_cast<double>(runs);
}

} // namespace eulerdiv

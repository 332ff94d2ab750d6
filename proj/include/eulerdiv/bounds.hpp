#pragma once

// Analytic lower bounds behind the divergence of E|Y_N| for the Euler scheme.
//
// The bound has the form P[event] * r^(a^(N-1)): an exponentially small
// probability times a double-exponentially large value. Both factors leave
// double range for modest N, so every product here is formed in log2 space.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <variant>

#include "eulerdiv/errors.hpp"
#include "eulerdiv/models.hpp"

namespace eulerdiv {

// Lower bounds for a standard normal Z:
//   P[|Z| >= x] >= x e^{-x^2} / 4,   P[|Z| in [x, 2x]] >= x e^{-2 x^2} / 2.

inline double gaussian_tail_lower(double x) {
    detail::require(x >= 0.0, "gaussian_tail_lower: x must be non-negative");
    return x * std::exp(-x * x) / 4.0;
}

inline double gaussian_band_lower(double x) {
    detail::require(x >= 0.0, "gaussian_band_lower: x must be non-negative");
    return x * std::exp(-2.0 * x * x) / 2.0;
}

/// P[|Z| >= x].
inline double gaussian_tail_exact(double x) noexcept {
    if (x <= 0.0) return 1.0;
    return std::erfc(x / std::numbers::sqrt2);
}

namespace detail {

inline double strip_rate(double a, double horizon) {
    return std::numbers::pi * std::numbers::pi * horizon / (8.0 * a * a);
}

} // namespace detail

/// P[sup_{0<=t<=T} |W_t| <= a] from the eigenfunction expansion
///   (4/pi) sum_{k>=0} (-1)^k / (2k+1) exp(-(2k+1)^2 pi^2 T / (8 a^2)),
/// truncated once a term drops below 1e-15 (alternating series, so the
/// remainder is smaller than the first omitted term).
inline double strip_stay_probability(double a, double horizon) {
    detail::require(a > 0.0 && std::isfinite(a), "strip_stay_probability: a must be positive");
    detail::require(horizon > 0.0 && std::isfinite(horizon), "strip_stay_probability: T must be positive");
    const double c = detail::strip_rate(a, horizon);
    double sum = 0.0;
    for (std::size_t k = 0;; ++k) {
        const double odd = static_cast<double>(2 * k + 1);
        const double term = 4.0 / std::numbers::pi / odd * std::exp(-odd * odd * c);
        if (term < 1e-15) break;
        sum += (k % 2 == 0) ? term : -term;
    }
    return std::clamp(sum, 0.0, 1.0);
}

/// log2 of strip_stay_probability, finite even when the probability
/// underflows (for large T/a^2 the leading term is exact to double precision).
inline double log2_strip_stay_probability(double a, double horizon) {
    detail::require(a > 0.0, "log2_strip_stay_probability: a must be positive");
    detail::require(horizon > 0.0, "log2_strip_stay_probability: T must be positive");
    const double c = detail::strip_rate(a, horizon);
    if (c > 40.0) return (std::log(4.0 / std::numbers::pi) - c) / std::numbers::ln2;
    return std::log2(strip_stay_probability(a, horizon));
}

/// max(3N/T, 1): first-increment radius for dX = -X^3 dt + dW.
inline double r_simple(std::size_t steps, double horizon) {
    detail::require(steps >= 1, "r_simple: N must be at least 1");
    detail::require(horizon > 0.0, "r_simple: T must be positive");
    return std::max(3.0 * static_cast<double>(steps) / horizon, 1.0);
}

/// max(2, C, (2CN/T + 2C^2)^(1/(beta-alpha))). Guarantees
/// (T/(NC)) r^(beta-alpha) >= 2 + 2TC/N.
inline double r_general(std::size_t steps, double horizon, const GrowthCertificate& cert) {
    detail::require(steps >= 1, "r_general: N must be at least 1");
    detail::require(horizon > 0.0, "r_general: T must be positive");
    detail::require(cert.beta > cert.alpha, "r_general: need beta > alpha");
    detail::require(cert.C > 0.0, "r_general: C must be positive");
    const double C = cert.C;
    const double base = 2.0 * C * static_cast<double>(steps) / horizon + 2.0 * C * C;
    return std::max({2.0, C, std::pow(base, 1.0 / (cert.beta - cert.alpha))});
}

/// A certificate usable by the growth induction |Y_{k+1}| >= |Y_k|^alpha,
/// which needs alpha > 1 and C >= 1. Since |x| >= 1 on the region of
/// interest, an upper bound C|x|^alpha with alpha <= 1 implies the same
/// bound with any larger exponent; alpha is lifted to (1 + beta) / 2.
inline GrowthCertificate induction_certificate(const GrowthCertificate& cert) {
    cert.validate();
    GrowthCertificate out = cert;
    out.C = std::max(cert.C, 1.0);
    if (cert.alpha <= 1.0) out.alpha = 0.5 * (1.0 + cert.beta);
    return out;
}

struct KAndMu {
    double K;
    double mu;
};

/// For a deterministic start x0 the event {|g(x0)| >= 1/K, |x0| + T|f(x0)| <= K}
/// is sure once K = max(2, 1/|g(x0)|, |x0| + T|f(x0)|), so mu = 1.
inline KAndMu k_and_mu(const SdeSpec& spec) {
    const double g0 = std::fabs(spec.diffusion(spec.x0));
    if (!(g0 > 0.0) || !std::isfinite(g0)) {
        throw precondition_violation("k_and_mu: g(x0) must be finite and non-zero for '" + spec.label + "'");
    }
    const double drift_reach = std::fabs(spec.x0) + spec.horizon * std::fabs(spec.drift(spec.x0));
    return {std::max({2.0, 1.0 / g0, drift_reach}), 1.0};
}

struct SimpleCubicMode {};

struct GeneralMode {
    GrowthCertificate certificate;
    double K;
    double mu;
};

using DivergenceMode = std::variant<SimpleCubicMode, GeneralMode>;

/// Lower bound log2 E|Y_N| >= log2 P[event] + growth, with the factors of
/// the probability bound kept separately for inspection.
struct DivergenceCertificateReport {
    std::size_t N = 0;
    double r_N = 0.0;
    double growth_exponent = 2.0;   // a in |Y_k| >= r_N^(a^(k-1))
    double log2_prob_lower = 0.0;
    double log2_expectation_lower = 0.0;
    bool certified = false;

    // Audit terms; log2_prob_lower is their sum.
    double log2_band_factor = 0.0;      // subsequent increments (general mode), else 0
    double log2_first_increment = 0.0;  // -(N/T) * threshold^2 / ln 2
    double log2_constant = 0.0;         // N-independent prefactor
};

/// Reference level for `certified`: the bound exceeds 2^64.
inline constexpr double kCertifiedLog2Level = 64.0;

inline DivergenceCertificateReport divergence_lower_bound(std::size_t steps, double horizon,
                                                          const DivergenceMode& mode) {
    detail::require(steps >= 1, "divergence_lower_bound: N must be at least 1");
    detail::require(horizon > 0.0 && std::isfinite(horizon), "divergence_lower_bound: T must be positive");
    const double n = static_cast<double>(steps);
    const double T = horizon;
    DivergenceCertificateReport rep;
    rep.N = steps;

    if (std::holds_alternative<SimpleCubicMode>(mode)) {
        detail::require(steps <= 1024, "divergence_lower_bound: 2^(N-1) overflows for N > 1024");
        rep.r_N = r_simple(steps, T);
        rep.growth_exponent = 2.0;
        rep.log2_constant = std::log2(1.0 / (4.0 * std::sqrt(T))) + log2_strip_stay_probability(0.5, T);
        rep.log2_first_increment = -(n / T) * rep.r_N * rep.r_N / std::numbers::ln2;
        rep.log2_prob_lower = rep.log2_constant + rep.log2_first_increment;
        rep.log2_expectation_lower = rep.log2_prob_lower + std::ldexp(1.0, static_cast<int>(steps) - 1) * std::log2(rep.r_N);
    } else {
        const auto& general = std::get<GeneralMode>(mode);
        detail::require(general.K > 1.0, "divergence_lower_bound: K must exceed 1");
        detail::require(general.mu > 0.0 && general.mu <= 1.0, "divergence_lower_bound: mu must lie in (0, 1]");
        const GrowthCertificate cert = induction_certificate(general.certificate);
        const double a = cert.alpha;
        detail::require((n - 1.0) * std::log2(a) < 1023.0,
                        "divergence_lower_bound: alpha^(N-1) overflows double range");
        rep.r_N = r_general(steps, T, cert);
        rep.growth_exponent = a;
        const double K = general.K;
        const double first = K * (rep.r_N + K);
        rep.log2_band_factor = n * std::log2(0.5 * std::sqrt(T / n));
        rep.log2_first_increment = -(n / T) * first * first / std::numbers::ln2;
        rep.log2_constant = std::log2(general.mu) - 2.0 * T / std::numbers::ln2 - std::log2(4.0 * std::sqrt(T));
        rep.log2_prob_lower = rep.log2_band_factor + rep.log2_first_increment + rep.log2_constant;
        // r_N >= 2, so r_N^(a^(N-1)) >= 2^(a^(N-1)).
        rep.log2_expectation_lower = rep.log2_prob_lower + std::pow(a, n - 1.0);
    }
    rep.certified = rep.log2_expectation_lower > kCertifiedLog2Level;
    return rep;
}

/// 2 e^{-N}: upper bound on P[sup_{0<=t<=1} |W_t| >= sqrt(2N)].
inline double reflection_explosion_bound(std::size_t steps) {
    detail::require(steps >= 1, "reflection_explosion_bound: N must be at least 1");
    return 2.0 * std::exp(-static_cast<double>(steps));
}

/// alpha^(k-1) log2 r: certified lower bound on log2 |Y_k| on the event.
inline double certified_growth_floor(std::size_t steps, std::size_t k, double r, double alpha) {
    detail::require(k >= 1 && k <= steps, "certified_growth_floor: need 1 <= k <= N");
    detail::require(r >= 2.0, "certified_growth_floor: r must be at least 2");
    detail::require(alpha > 0.0, "certified_growth_floor: alpha must be positive");
    return std::pow(alpha, static_cast<double>(k - 1)) * std::log2(r);
}

} // namespace eulerdiv

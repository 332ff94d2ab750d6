#pragma once

// Counter-based random numbers.
//
// Every draw is a pure function of (key, counter), so a Monte Carlo run can
// regenerate its Brownian path from (seed, run_index) alone, independent of
// which worker thread evaluates it or in what order.

#include <array>
#include <cmath>
#include <cstdint>

namespace eulerdiv {

/// Philox4x32 with 10 rounds (Salmon et al., "Parallel random numbers: as
/// easy as 1, 2, 3").
class Philox4x32 {
public:
    using counter_type = std::array<std::uint32_t, 4>;
    using key_type = std::array<std::uint32_t, 2>;

    static constexpr counter_type apply(counter_type ctr, key_type key) noexcept {
        for (int round = 0; round < 10; ++round) {
            if (round > 0) {
                key[0] += kWeyl0;
                key[1] += kWeyl1;
            }
            ctr = single_round(ctr, key);
        }
        return ctr;
    }

private:
    static constexpr std::uint32_t kMul0 = 0xD2511F53u;
    static constexpr std::uint32_t kMul1 = 0xCD9E8D57u;
    static constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
    static constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;

    static constexpr counter_type single_round(const counter_type& c, const key_type& k) noexcept {
        const std::uint64_t p0 = std::uint64_t{kMul0} * c[0];
        const std::uint64_t p1 = std::uint64_t{kMul1} * c[2];
        const auto hi0 = static_cast<std::uint32_t>(p0 >> 32);
        const auto lo0 = static_cast<std::uint32_t>(p0);
        const auto hi1 = static_cast<std::uint32_t>(p1 >> 32);
        const auto lo1 = static_cast<std::uint32_t>(p1);
        return {hi1 ^ c[1] ^ k[0], lo1, hi0 ^ c[3] ^ k[1], lo0};
    }
};

/// SplitMix64 finalizer; used to derive independent seeds for experiment
/// cells from a user seed.
constexpr std::uint64_t mix64(std::uint64_t x) noexcept {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

constexpr std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b = 0) noexcept {
    return mix64(mix64(mix64(seed) ^ a) ^ (b + 0x632BE59BD9B4E019ull));
}

/// Inverse of the standard normal CDF (Wichura, AS 241, PPND16). Relative
/// accuracy about 1e-16 on (0, 1).
inline double normal_quantile(double p) noexcept {
    const double q = p - 0.5;
    if (std::fabs(q) <= 0.425) {
        const double r = 0.180625 - q * q;
        return q *
               (((((((2.5090809287301226727e+3 * r + 3.3430575583588128105e+4) * r +
                     6.7265770927008700853e+4) * r + 4.5921953931549871457e+4) * r +
                   1.3731693765509461125e+4) * r + 1.9715909503065514427e+3) * r +
                 1.3314166789178437745e+2) * r + 3.3871328727963666080e+0) /
               (((((((5.2264952788528545610e+3 * r + 2.8729085735721942674e+4) * r +
                     3.9307895800092710610e+4) * r + 2.1213794301586595867e+4) * r +
                   5.3941960214247511077e+3) * r + 6.8718700749205790830e+2) * r +
                 4.2313330701600911252e+1) * r + 1.0);
    }
    double r = q < 0.0 ? p : 1.0 - p;
    r = std::sqrt(-std::log(r));
    double z;
    if (r <= 5.0) {
        r -= 1.6;
        z = (((((((7.74545014278341407640e-4 * r + 2.27238449892691845833e-2) * r +
                  2.41780725177450611770e-1) * r + 1.27045825245236838258e+0) * r +
                3.64784832476320460504e+0) * r + 5.76949722146069140550e+0) * r +
              4.63033784615654529590e+0) * r + 1.42343711074968357734e+0) /
            (((((((1.05075007164441684324e-9 * r + 5.47593808499534494600e-4) * r +
                  1.51986665636164571966e-2) * r + 1.48103976427480074590e-1) * r +
                6.89767334985100004550e-1) * r + 1.67638483018380384940e+0) * r +
              2.05319162663775882187e+0) * r + 1.0);
    } else {
        r -= 5.0;
        z = (((((((2.01033439929228813265e-7 * r + 2.71155556874348757815e-5) * r +
                  1.24266094738807843860e-3) * r + 2.65321895265761230930e-2) * r +
                2.96560571828504891230e-1) * r + 1.78482653991729133580e+0) * r +
              5.46378491116411436990e+0) * r + 6.65790464350110377720e+0) /
            (((((((2.04426310338993978564e-15 * r + 1.42151175831644588870e-7) * r +
                  1.84631831751005468180e-5) * r + 7.86869131145613259100e-4) * r +
                1.48753612908506148525e-2) * r + 1.36929880922735805310e-1) * r +
              5.99832206555887937690e-1) * r + 1.0);
    }
    return q < 0.0 ? -z : z;
}

/// Uniform on a 2^-52 lattice in the open interval (0, 1).
constexpr double open_unit(std::uint64_t bits) noexcept {
    return (static_cast<double>(bits >> 12) + 0.5) * 0x1.0p-52;
}

/// Stream identifiers share one key (the seed) and are separated through
/// the counter words, so no two (run, stream, index) triples collide.
enum class Stream : std::uint32_t {
    increments = 0,
    bridge = 1,
};

/// A pure, random-access source of standard normals for one Monte Carlo run.
class NormalStream {
public:
    constexpr NormalStream(std::uint64_t seed, std::uint64_t run_index, Stream stream) noexcept
        : key_{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)},
          run_index_(run_index),
          stream_(static_cast<std::uint32_t>(stream)) {}

    /// The normals at positions 2*block and 2*block+1.
    void pair(std::uint32_t block, double& first, double& second) const noexcept {
        const Philox4x32::counter_type ctr{block, stream_, static_cast<std::uint32_t>(run_index_),
                                           static_cast<std::uint32_t>(run_index_ >> 32)};
        const auto out = Philox4x32::apply(ctr, key_);
        const std::uint64_t b0 = (std::uint64_t{out[0]} << 32) | out[1];
        const std::uint64_t b1 = (std::uint64_t{out[2]} << 32) | out[3];
        first = normal_quantile(open_unit(b0));
        second = normal_quantile(open_unit(b1));
    }

    /// Calls sink(z) for the first `count` normals of the stream, in order.
    template <class Sink>
    void generate(std::size_t count, Sink&& sink) const {
        double a = 0.0;
        double b = 0.0;
        std::uint32_t block = 0;
        std::size_t i = 0;
        for (; i + 1 < count; i += 2, ++block) {
            pair(block, a, b);
            sink(a);
            sink(b);
        }
        if (i < count) {
            pair(block, a, b);
            sink(a);
        }
    }

private:
    Philox4x32::key_type key_;
    std::uint64_t run_index_;
    std::uint32_t stream_;
};

} // namespace eulerdiv

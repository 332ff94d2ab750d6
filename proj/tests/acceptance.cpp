// End-to-end acceptance checks. Prints one PASS/FAIL line per criterion and
// exits non-zero if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "eulerdiv/eulerdiv.hpp"
#include "report.hpp"

using namespace eulerdiv;

namespace {

struct Outcome {
    bool pass;
    std::string detail;
};

std::string fmt(const char* f, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

const unsigned kWorkers = default_workers();

Outcome gaussian_domination() {
    int violations = 0;
    for (int i = 0; i <= 600; ++i) {
        const double x = 0.01 * i;
        if (gaussian_tail_lower(x) > gaussian_tail_exact(x) + 1e-15) ++violations;
        if (gaussian_band_lower(x) > gaussian_tail_exact(x) - gaussian_tail_exact(2.0 * x) + 1e-15) ++violations;
    }
    return {violations == 0, fmt("%d violations on 601 grid points", violations)};
}

Outcome forced_event_growth() {
    std::mt19937_64 gen(2);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const auto spec = catalog("cubic_additive", {{"sigma", 1.0}, {"T", 1.0}}).spec;
    int grids = 0, checks = 0, violations = 0;
    for (std::size_t n : {4u, 8u, 16u, 32u}) {
        const double r = r_simple(n, 1.0);
        for (int trial = 0; trial < 200; ++trial) {
            std::vector<int> signs(n - 1);
            for (int& s : signs) s = unit(gen) < 0.5 ? -1 : 1;
            const double first = (unit(gen) < 0.5 ? -1.0 : 1.0) * r * (1.0 + unit(gen));
            const double magnitude = trial == 0 ? 0.0 : (trial == 1 ? 1.0 : unit(gen));
            const auto grid =
                force_event_increments(n, 1.0, first, magnitude, signs, DivergenceEvent::additive_cubic);
            const auto traj = euler_path(spec, grid);
            ++grids;
            for (std::size_t k = 1; k <= n && std::isfinite(traj.values[k]); ++k) {
                ++checks;
                if (std::log(std::fabs(traj.values[k])) < std::ldexp(1.0, static_cast<int>(k) - 1) * std::log(r)) {
                    ++violations;
                }
            }
        }
    }
    return {violations == 0, fmt("%d grids, %d finite iterates checked, %d violations", grids, checks, violations)};
}

Outcome exact_moments() {
    const QuadratureConfig quad{32};
    const struct {
        double sigma, target, tol;
    } cases[] = {{2.0, 0.4739, 0.02}, {5.0, 1.2357, 0.06}};
    bool pass = true;
    std::string detail;
    for (const auto& c : cases) {
        const auto spec = catalog("ginzburg_landau", {{"eta", 0.0}, {"lambda", 1.0}, {"sigma", c.sigma},
                                                      {"x0", 1.0}, {"T", 3.0}})
                              .spec;
        const auto e = estimate_exact_moment(spec, 300, quad, 2.0, 1000000, 3000 + static_cast<int>(c.sigma), kWorkers);
        const bool ok = std::fabs(e.ieee_mean - c.target) <= c.tol;
        pass = pass && ok;
        detail += fmt("sigma=%g: %.4f (target %.4f +- %.2f, stderr %.4f); ", c.sigma, e.ieee_mean, c.target, c.tol,
                      e.finite_stderr);
    }
    return {pass, detail};
}

Outcome euler_column() {
    const auto mild = catalog("stratonovich_gl", {{"sigma", 2.0}}).spec;
    const auto e2 = estimate_euler_moment(mild, 1000, 2.0, 100000, 4002, kWorkers);
    const auto wild = catalog("stratonovich_gl", {{"sigma", 7.0}}).spec;
    const auto e7 = estimate_euler_moment(wild, 1000, 2.0, 100000, 4007, kWorkers);
    const bool ok2 = e2.ieee_mean >= 0.43 && e2.ieee_mean <= 0.49;
    const bool ok7 = e7.count_nan + e7.count_inf() >= 1 && !std::isfinite(e7.ieee_mean);
    return {ok2 && ok7,
            fmt("sigma=2: %.4f in [0.43, 0.49]; sigma=7: ieee_mean=%s, %llu NaN, %llu Inf", e2.ieee_mean,
                report::format_real(e7.ieee_mean).c_str(), static_cast<unsigned long long>(e7.count_nan),
                static_cast<unsigned long long>(e7.count_inf()))};
}

Outcome power_drift_divergence() {
    Figure1Config cfg;
    cfg.steps_max = 60;
    cfg.runs = 10000;
    cfg.seed = 5;
    cfg.workers = kWorkers;
    const auto rows = run_figure1(cfg);
    const double at1 = rows[0].estimate.ieee_mean;
    const double at5 = rows[4].estimate.ieee_mean;
    std::size_t first_inf = 0;
    for (const auto& r : rows) {
        if (std::isinf(r.estimate.ieee_mean)) {
            first_inf = r.steps;
            break;
        }
    }
    const bool pass = at1 >= 5.0 && at1 <= 20.0 && at5 > 1e6 && first_inf != 0;
    return {pass, fmt("N=1: %.4f in [5, 20]; N=5: %.4g > 1e6; first Inf at N=%zu", at1, at5, first_inf)};
}

Outcome deterministic_threshold() {
    bool pass = true;
    std::string detail;
    for (std::size_t n : {8u, 64u, 512u}) {
        const double threshold = deterministic_explosion_threshold(n, 1.0);
        const BrownianGrid quiet(1.0, std::vector<double>(n, 0.0));
        const auto below = euler_path(catalog("cubic_additive", {{"sigma", 0.0}, {"x0", 0.99 * threshold}}).spec, quiet);
        bool monotone = true;
        for (std::size_t k = 1; k <= n; ++k) monotone = monotone && std::fabs(below.values[k]) <= std::fabs(below.values[k - 1]);
        const auto above = euler_path(catalog("cubic_additive", {{"sigma", 0.0}, {"x0", 1.01 * threshold}}).spec, quiet);
        const bool blows = above.exploded() || std::fabs(above.terminal()) > 1e100;
        pass = pass && monotone && blows;
        detail += fmt("N=%zu: %s/%s; ", n, monotone ? "stable" : "NOT stable", blows ? "explodes" : "NO explosion");
    }
    return {pass, detail};
}

Outcome certificate_suite() {
    bool pass = true;
    std::string detail;
    for (const std::string name : {"cubic_additive", "ginzburg_landau", "verhulst", "feller_logistic", "ohta_kimura"}) {
        const auto entry = catalog(name);
        const auto r = check_growth_certificate(entry.spec, *entry.certificate, 10000, 1e6);
        pass = pass && r.holds;
        detail += name + (r.holds ? " ok; " : " VIOLATED; ");
    }
    return {pass, detail};
}

Outcome divergence_certificate() {
    std::vector<double> lb(201);
    for (std::size_t n = 1; n <= 200; ++n) lb[n] = divergence_lower_bound(n, 1.0, SimpleCubicMode{}).log2_expectation_lower;
    // Smallest N0 with lb strictly increasing on [N0, 200].
    std::size_t n0 = 200;
    while (n0 > 1 && lb[n0 - 1] < lb[n0]) --n0;
    const bool certified = divergence_lower_bound(200, 1.0, SimpleCubicMode{}).certified;
    return {n0 <= 64 && certified, fmt("increasing on [%zu, 200]; log2 bound at N=200 is %.4g", n0, lb[200])};
}

Outcome reflection_bound() {
    const double level = std::sqrt(2.0 * 3.0);
    const auto e = estimate_moment(
        [&](std::uint64_t seed, std::uint64_t run) {
            return path_sup(sample_increments(seed, run, 1000, 1.0)) >= level ? 1.0 : 0.0;
        },
        1.0, 1000000, 9009, kWorkers);
    const double bound = reflection_explosion_bound(3);
    const double limit = bound + 3.0 * e.finite_stderr;
    return {e.finite_mean <= limit, fmt("P=%.5f (se %.5f) <= %.5f", e.finite_mean, e.finite_stderr, limit)};
}

std::string csv(const report::Table& t) {
    std::ostringstream out;
    report::write(out, t, report::Format::csv);
    return out.str();
}

Outcome worker_determinism() {
    Table1Config t1;
    t1.runs_euler = 20000;
    t1.runs_exact = 20000;
    t1.exact_steps = 100;
    t1.substeps = 8;
    t1.seed = 10;
    Figure1Config f1;
    f1.runs = 10000;
    f1.seed = 10;
    t1.workers = f1.workers = 1;
    const std::string table_1 = csv(report::table1(run_table1(t1)));
    const std::string figure_1 = csv(report::figure1(run_figure1(f1)));
    t1.workers = f1.workers = 8;
    const std::string table_8 = csv(report::table1(run_table1(t1)));
    const std::string figure_8 = csv(report::figure1(run_figure1(f1)));
    return {table_1 == table_8 && figure_1 == figure_8,
            fmt("table1 %s, figure1 %s", table_1 == table_8 ? "identical" : "DIFFERS",
                figure_1 == figure_8 ? "identical" : "DIFFERS")};
}

} // namespace

int main() {
    const std::pair<const char*, std::function<Outcome()>> criteria[] = {
        {"gaussian tail bounds dominated by exact probabilities", gaussian_domination},
        {"double-exponential growth on forced events", forced_event_growth},
        {"exact second moment of the Stratonovich model", exact_moments},
        {"Euler second moment and IEEE breakdown", euler_column},
        {"power-drift first moment diverges", power_drift_divergence},
        {"deterministic explosion threshold", deterministic_threshold},
        {"growth certificates for the catalog models", certificate_suite},
        {"divergence lower bound eventually increasing", divergence_certificate},
        {"reflection bound on Brownian excursions", reflection_bound},
        {"output independent of worker count", worker_determinism},
    };
    int failures = 0;
    int index = 0;
    for (const auto& [name, check] : criteria) {
        ++index;
        const auto start = std::chrono::steady_clock::now();
        Outcome out;
        try {
            out = check();
        } catch (const std::exception& e) {
            out = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        std::printf("%s %2d %s: %s (%.1fs)\n", out.pass ? "PASS" : "FAIL", index, name, out.detail.c_str(), secs);
        std::fflush(stdout);
        failures += out.pass ? 0 : 1;
    }
    return failures == 0 ? 0 : 1;
}

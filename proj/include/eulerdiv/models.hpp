#pragma once

// Scalar Ito SDEs dX = f(X) dt + g(X) dW, X_0 = x0, t in [0, T], the
// catalog of super-linear examples and a grid checker for growth
// certificates.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "eulerdiv/errors.hpp"

namespace eulerdiv {

using Coefficient = std::function<double(double)>;
using Parameters = std::map<std::string, double, std::less<>>;

/// Closed-form solution family available for an SDE (see exact.hpp).
struct ExactOracle {
    enum class Kind { ginzburg_landau, verhulst };
    Kind kind;
    double eta;
    double lambda;
    double sigma;
};

struct SdeSpec {
    Coefficient drift;
    Coefficient diffusion;
    double x0 = 0.0;
    double horizon = 1.0;
    std::string label;
    std::optional<ExactOracle> oracle;
};

inline SdeSpec make_sde(std::string label, Coefficient drift, Coefficient diffusion, double x0,
                        double horizon) {
    detail::require(static_cast<bool>(drift) && static_cast<bool>(diffusion),
                    "make_sde: drift and diffusion must be callable");
    detail::require(horizon > 0.0 && std::isfinite(horizon), "make_sde: T must be positive");
    detail::require(std::isfinite(x0), "make_sde: x0 must be finite");
    return SdeSpec{std::move(drift), std::move(diffusion), x0, horizon, std::move(label), std::nullopt};
}

enum class Dominating { drift, diffusion };

/// Constants (C, alpha, beta) such that, for all |x| >= C,
///   max(|f(x)|, |g(x)|) >= |x|^beta / C   and   min(|f(x)|, |g(x)|) <= C |x|^alpha.
struct GrowthCertificate {
    double C;
    double alpha;
    double beta;
    Dominating dominating;

    void validate() const {
        detail::require(std::isfinite(C) && C > 0.0, "GrowthCertificate: C must be positive");
        detail::require(alpha >= 0.0, "GrowthCertificate: alpha must be non-negative");
        detail::require(beta > 1.0 && beta > alpha, "GrowthCertificate: need beta > max(alpha, 1)");
    }
};

struct CatalogEntry {
    SdeSpec spec;
    std::optional<GrowthCertificate> certificate;
};

inline const std::vector<std::string>& catalog_names() {
    static const std::vector<std::string> names{"cubic_additive", "ginzburg_landau", "verhulst",
                                                "feller_logistic", "ohta_kimura",     "power_drift",
                                                "stratonovich_gl"};
    return names;
}

namespace detail {

class ParamReader {
public:
    ParamReader(std::string_view model, const Parameters& params, std::set<std::string, std::less<>> allowed)
        : model_(model), params_(params) {
        for (const auto& [key, value] : params_) {
            require(allowed.contains(key), std::string(model_) + ": unknown parameter '" + key + "'");
            require(std::isfinite(value), std::string(model_) + ": parameter '" + key + "' must be finite");
        }
    }

    double get(std::string_view key, double fallback) const {
        const auto it = params_.find(key);
        return it == params_.end() ? fallback : it->second;
    }

    void check(bool ok, std::string_view what) const {
        require(ok, std::string(model_) + ": " + std::string(what));
    }

private:
    std::string_view model_;
    const Parameters& params_;
};

inline double sgn(double x) noexcept { return static_cast<double>((x > 0.0) - (x < 0.0)); }

inline CatalogEntry ginzburg_landau_entry(std::string label, double eta, double lambda, double sigma,
                                          double x0, double horizon) {
    const double a = eta + 0.5 * sigma * sigma;
    SdeSpec spec = make_sde(
        std::move(label), [a, lambda](double x) { return a * x - lambda * x * x * x; },
        [sigma](double x) { return sigma * x; }, x0, horizon);
    spec.oracle = ExactOracle{ExactOracle::Kind::ginzburg_landau, eta, lambda, sigma};
    const double C = std::max({1.0, sigma, 2.0 / lambda, (2.0 * eta + sigma * sigma) / lambda});
    return {std::move(spec), GrowthCertificate{C, 1.0, 3.0, Dominating::drift}};
}

} // namespace detail

/// Builds a catalog SDE. Recognised parameter keys per model:
///   cubic_additive   sigma (1), x0 (0), T (1)
///   ginzburg_landau  eta (0), lambda (1), sigma (1), x0 (1), T (1)
///   verhulst         eta (1), lambda (1), sigma (1), x0 (1), T (1)
///   feller_logistic  lambda (1), K (1), sigma (1), x0 (1), T (1)
///   ohta_kimura      sigma (1), x0 (0.5), T (1)
///   power_drift      x0 (0), T (10)
///   stratonovich_gl  sigma (1), x0 (1), T (3)
inline CatalogEntry catalog(std::string_view name, const Parameters& params = {}) {
    using detail::ParamReader;
    if (name == "cubic_additive") {
        const ParamReader p(name, params, {"sigma", "x0", "T"});
        const double sigma = p.get("sigma", 1.0);
        p.check(sigma >= 0.0, "sigma must be non-negative");
        SdeSpec spec = make_sde(
            "cubic_additive", [](double x) { return -(x * x * x); }, [sigma](double) { return sigma; },
            p.get("x0", 0.0), p.get("T", 1.0));
        return {std::move(spec), GrowthCertificate{std::max(1.0, sigma), 0.0, 3.0, Dominating::drift}};
    }
    if (name == "ginzburg_landau") {
        const ParamReader p(name, params, {"eta", "lambda", "sigma", "x0", "T"});
        const double eta = p.get("eta", 0.0);
        const double lambda = p.get("lambda", 1.0);
        const double sigma = p.get("sigma", 1.0);
        const double x0 = p.get("x0", 1.0);
        p.check(eta >= 0.0, "eta must be non-negative");
        p.check(lambda > 0.0, "lambda must be positive");
        p.check(sigma >= 0.0, "sigma must be non-negative");
        p.check(x0 > 0.0, "x0 must be positive");
        return detail::ginzburg_landau_entry("ginzburg_landau", eta, lambda, sigma, x0, p.get("T", 1.0));
    }
    if (name == "stratonovich_gl") {
        // dX = -X^3 dt + sigma X o dW in Ito form: drift gains (1/2) g g' = sigma^2 x / 2.
        const ParamReader p(name, params, {"sigma", "x0", "T"});
        const double sigma = p.get("sigma", 1.0);
        const double x0 = p.get("x0", 1.0);
        p.check(sigma >= 0.0, "sigma must be non-negative");
        p.check(x0 > 0.0, "x0 must be positive");
        return detail::ginzburg_landau_entry("stratonovich_gl", 0.0, 1.0, sigma, x0, p.get("T", 3.0));
    }
    if (name == "verhulst") {
        const ParamReader p(name, params, {"eta", "lambda", "sigma", "x0", "T"});
        const double eta = p.get("eta", 1.0);
        const double lambda = p.get("lambda", 1.0);
        const double sigma = p.get("sigma", 1.0);
        const double x0 = p.get("x0", 1.0);
        p.check(eta > 0.0, "eta must be positive");
        p.check(lambda > 0.0, "lambda must be positive");
        p.check(sigma > 0.0, "sigma must be positive");
        p.check(x0 > 0.0, "x0 must be positive");
        const double a = eta + 0.5 * sigma * sigma;
        SdeSpec spec = make_sde(
            "verhulst", [a, lambda](double x) { return a * x - lambda * x * x; },
            [sigma](double x) { return sigma * x; }, x0, p.get("T", 1.0));
        spec.oracle = ExactOracle{ExactOracle::Kind::verhulst, eta, lambda, sigma};
        const double C = std::max({sigma, 2.0 / lambda, (2.0 * eta + sigma * sigma) / lambda});
        return {std::move(spec), GrowthCertificate{C, 1.0, 2.0, Dominating::drift}};
    }
    if (name == "feller_logistic") {
        const ParamReader p(name, params, {"lambda", "K", "sigma", "x0", "T"});
        const double lambda = p.get("lambda", 1.0);
        const double K = p.get("K", 1.0);
        const double sigma = p.get("sigma", 1.0);
        const double x0 = p.get("x0", 1.0);
        p.check(lambda > 0.0, "lambda must be positive");
        p.check(K > 0.0, "K must be positive");
        p.check(sigma > 0.0, "sigma must be positive");
        p.check(x0 > 0.0, "x0 must be positive");
        // Negative iterates see zero noise rather than a complex square root.
        SdeSpec spec = make_sde(
            "feller_logistic", [lambda, K](double x) { return lambda * x * (K - x); },
            [sigma](double x) { return sigma * std::sqrt(std::max(x, 0.0)); }, x0, p.get("T", 1.0));
        const double C = std::max({1.0, 2.0 / lambda, sigma, 2.0 * K});
        return {std::move(spec), GrowthCertificate{C, 1.0, 2.0, Dominating::drift}};
    }
    if (name == "ohta_kimura") {
        const ParamReader p(name, params, {"sigma", "x0", "T"});
        const double sigma = p.get("sigma", 1.0);
        const double x0 = p.get("x0", 0.5);
        p.check(sigma > 0.0, "sigma must be positive");
        p.check(x0 > 0.0 && x0 < 1.0, "x0 must lie in (0, 1)");
        SdeSpec spec = make_sde(
            "ohta_kimura", [](double) { return 0.0; },
            [sigma](double x) { return sigma * x * (1.0 - x); }, x0, p.get("T", 1.0));
        return {std::move(spec), GrowthCertificate{std::max(2.0, 2.0 / sigma), 0.0, 2.0, Dominating::diffusion}};
    }
    if (name == "power_drift") {
        const ParamReader p(name, params, {"x0", "T"});
        SdeSpec spec = make_sde(
            "power_drift",
            [](double x) { return -10.0 * detail::sgn(x) * std::pow(std::fabs(x), 1.1); },
            [](double) { return 4.0; }, p.get("x0", 0.0), p.get("T", 10.0));
        return {std::move(spec), std::nullopt};
    }
    throw invalid_argument("catalog: unknown model '" + std::string(name) + "'");
}

struct CertificateCheck {
    bool holds = true;
    std::optional<double> first_violation;
};

/// Samples both growth inequalities on sample_count log-spaced magnitudes in
/// [C, x_max], each at +x and -x. Non-finite coefficient values count as
/// violations. first_violation is the violating point of smallest |x|.
inline CertificateCheck check_growth_certificate(const SdeSpec& spec, const GrowthCertificate& cert,
                                                 std::size_t sample_count, double x_max) {
    cert.validate();
    detail::require(sample_count >= 2, "check_growth_certificate: need at least 2 sample points");
    detail::require(x_max > cert.C, "check_growth_certificate: x_max must exceed C");

    // Tolerates rounding where an inequality is tight (e.g. equality at |x| = C).
    constexpr double slack = 1e-12;
    auto violates = [&](double x) {
        const double f = std::fabs(spec.drift(x));
        const double g = std::fabs(spec.diffusion(x));
        if (!std::isfinite(f) || !std::isfinite(g)) return true;
        const double ax = std::fabs(x);
        const double lower = std::pow(ax, cert.beta) / cert.C;
        const double upper = cert.C * std::pow(ax, cert.alpha);
        return std::max(f, g) < lower * (1.0 - slack) || std::min(f, g) > upper * (1.0 + slack);
    };

    const double log_lo = std::log(cert.C);
    const double log_hi = std::log(x_max);
    const double span = static_cast<double>(sample_count - 1);
    for (std::size_t i = 0; i < sample_count; ++i) {
        double x = i == 0 ? cert.C
                          : (i + 1 == sample_count
                                 ? x_max
                                 : std::exp(log_lo + (log_hi - log_lo) * static_cast<double>(i) / span));
        for (double candidate : {x, -x}) {
            if (violates(candidate)) return {false, candidate};
        }
    }
    return {};
}

} // namespace eulerdiv

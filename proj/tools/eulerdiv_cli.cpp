// Command-line harness: simulate | table1 | figure1 | bounds | check-certificate.
//
// Exit codes: 0 success, 1 usage error, 2 certificate violation, 3 I/O error.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "eulerdiv/eulerdiv.hpp"
#include "report.hpp"

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitViolation = 2;
constexpr int kExitIo = 3;

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

eulerdiv::Parameters parse_params(const std::vector<std::string>& items) {
    eulerdiv::Parameters params;
    for (const auto& item : items) {
        const auto eq = item.find('=');
        if (eq == std::string::npos || eq == 0) {
            throw eulerdiv::invalid_argument("--param expects key=value, got '" + item + "'");
        }
        const std::string key = item.substr(0, eq);
        const std::string text = item.substr(eq + 1);
        std::size_t used = 0;
        double value = 0.0;
        try {
            value = std::stod(text, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used == 0 || used != text.size()) {
            throw eulerdiv::invalid_argument("--param " + key + ": '" + text + "' is not a number");
        }
        params.insert_or_assign(key, value);
    }
    return params;
}

void emit(const eulerdiv::report::Table& table, eulerdiv::report::Format format, const std::string& path) {
    if (path.empty() || path == "-") {
        eulerdiv::report::write(std::cout, table, format);
        std::cout.flush();
        if (!std::cout) throw IoError("failed writing to standard output");
        return;
    }
    std::ofstream file(path, std::ios::binary | std::ios::trunc);
    if (!file) throw IoError("cannot open '" + path + "' for writing");
    eulerdiv::report::write(file, table, format);
    file.close();
    if (!file) throw IoError("failed writing '" + path + "'");
}

} // namespace

int main(int argc, char** argv) {
    using namespace eulerdiv;

    CLI::App app{"Euler-Maruyama divergence experiments for super-linear scalar SDEs"};
    app.require_subcommand(1);

    const std::map<std::string, report::Format> formats{{"csv", report::Format::csv},
                                                        {"json", report::Format::json}};
    std::string out;
    report::Format format = report::Format::csv;
    unsigned workers = 1;
    std::uint64_t seed = 0;

    auto add_output = [&](CLI::App* cmd) {
        cmd->add_option("--out", out, "Output file (default: stdout)");
        cmd->add_option("--format", format, "Output format")
            ->transform(CLI::CheckedTransformer(formats, CLI::ignore_case));
    };
    auto add_parallel = [&](CLI::App* cmd) {
        cmd->add_option("--seed", seed, "Random seed (required)")->required();
        cmd->add_option("--workers", workers, "Worker threads; results do not depend on it")
            ->check(CLI::Range(1u, 1024u));
    };

    // simulate
    SimulateConfig sim;
    std::vector<std::string> sim_params;
    auto* simulate = app.add_subcommand("simulate", "Moment estimate and explosion fraction of the Euler scheme");
    simulate->add_option("--model", sim.model, "Catalog model")->required();
    simulate->add_option("--param", sim_params, "Model parameter key=value (repeatable)");
    simulate->add_option("--steps", sim.steps, "Time steps N")->check(CLI::PositiveNumber);
    simulate->add_option("--runs", sim.runs, "Monte Carlo runs")->check(CLI::PositiveNumber);
    simulate->add_option("--moment-p", sim.p, "Moment order p >= 1");
    add_parallel(simulate);
    add_output(simulate);

    // table1
    Table1Config t1;
    auto* table1 = app.add_subcommand("table1", "Second moments of the Stratonovich Ginzburg-Landau equation");
    table1->add_option("--sigma", t1.sigmas, "Noise intensities")->delimiter(',');
    table1->add_option("--steps", t1.steps, "Euler time steps N")->check(CLI::PositiveNumber);
    table1->add_option("--exact-steps", t1.exact_steps, "Coarse grid steps for the exact solution")
        ->check(CLI::PositiveNumber);
    table1->add_option("--runs", t1.runs_euler, "Euler Monte Carlo runs")->check(CLI::PositiveNumber);
    table1->add_option("--runs-exact", t1.runs_exact, "Exact-solution Monte Carlo runs")->check(CLI::PositiveNumber);
    table1->add_option("--substeps", t1.substeps, "Quadrature refinement M")->check(CLI::PositiveNumber);
    add_parallel(table1);
    add_output(table1);

    // figure1
    Figure1Config f1;
    std::vector<std::string> f1_params;
    auto* figure1 = app.add_subcommand("figure1", "First absolute moment of the power-drift model for N = 1..N_max");
    figure1->add_option("--steps-max", f1.steps_max, "Largest N")->check(CLI::PositiveNumber);
    figure1->add_option("--runs", f1.runs, "Monte Carlo runs per N")->check(CLI::PositiveNumber);
    figure1->add_option("--param", f1_params, "power_drift parameter key=value (x0, T)");
    add_parallel(figure1);
    add_output(figure1);

    // bounds
    BoundsConfig bc;
    std::vector<std::string> bc_params;
    std::size_t bounds_steps_max = 64;
    const std::map<std::string, BoundsMode> modes{{"simple", BoundsMode::simple}, {"general", BoundsMode::general}};
    auto* bounds = app.add_subcommand("bounds", "Analytic lower bounds for log2 E|Y_N|");
    bounds->add_option("--horizon,-T", bc.horizon, "Time horizon T")->check(CLI::PositiveNumber);
    bounds->add_option("--steps-max", bounds_steps_max, "Largest N");
    bounds->add_option("--mode", bc.mode, "simple (cubic additive) or general")
        ->transform(CLI::CheckedTransformer(modes, CLI::ignore_case));
    bounds->add_option("--model", bc.model, "Catalog model (general mode)");
    bounds->add_option("--param", bc_params, "Model parameter key=value (repeatable)");
    add_output(bounds);

    // check-certificate
    std::string cert_model;
    std::vector<std::string> cert_params;
    double x_max = 1e6;
    std::size_t points = 10000;
    std::optional<double> beta_override;
    std::optional<double> alpha_override;
    std::optional<double> c_override;
    auto* check = app.add_subcommand("check-certificate", "Check a model's growth certificate on a log grid");
    check->add_option("--model", cert_model, "Catalog model")->required();
    check->add_option("--param", cert_params, "Model parameter key=value (repeatable)");
    check->add_option("--x-max", x_max, "Largest |x| sampled");
    check->add_option("--points", points, "Number of log-spaced magnitudes");
    check->add_option("--beta", beta_override, "Override the certificate's beta");
    check->add_option("--alpha", alpha_override, "Override the certificate's alpha");
    check->add_option("--cert-c", c_override, "Override the certificate's C");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    }

    try {
        if (*simulate) {
            sim.params = parse_params(sim_params);
            sim.seed = seed;
            sim.workers = workers;
            emit(report::simulate(sim, run_simulate(sim)), format, out);
        } else if (*table1) {
            t1.seed = seed;
            t1.workers = workers;
            emit(report::table1(run_table1(t1)), format, out);
        } else if (*figure1) {
            f1.params = parse_params(f1_params);
            f1.seed = seed;
            f1.workers = workers;
            emit(report::figure1(run_figure1(f1)), format, out);
        } else if (*bounds) {
            bc.params = parse_params(bc_params);
            bc.steps_max = bounds_steps_max;
            emit(report::bounds(run_bounds(bc)), format, out);
        } else if (*check) {
            const CatalogEntry entry = catalog(cert_model, parse_params(cert_params));
            if (!entry.certificate) {
                throw eulerdiv::invalid_argument("model '" + cert_model + "' has no growth certificate");
            }
            GrowthCertificate cert = *entry.certificate;
            if (beta_override) cert.beta = *beta_override;
            if (alpha_override) cert.alpha = *alpha_override;
            if (c_override) cert.C = *c_override;
            const CertificateCheck result = check_growth_certificate(entry.spec, cert, points, x_max);
            std::cout << cert_model << ": C=" << report::format_real(cert.C)
                      << " alpha=" << report::format_real(cert.alpha) << " beta=" << report::format_real(cert.beta)
                      << " on [" << report::format_real(cert.C) << ", " << report::format_real(x_max) << "] with "
                      << points << " points: ";
            if (result.holds) {
                std::cout << "holds\n";
                return 0;
            }
            std::cout << "violated at x=" << report::format_real(*result.first_violation) << '\n';
            return kExitViolation;
        }
    } catch (const IoError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitIo;
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const precondition_violation& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return kExitUsage;
    }
    return 0;
}

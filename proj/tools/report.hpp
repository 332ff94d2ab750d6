#pragma once

// CSV and JSON serialization of experiment rows. Non-finite values are
// written as the literals NaN, Inf and -Inf (JSON: as strings).

#include <cmath>
#include <cstdio>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "eulerdiv/experiments.hpp"

namespace eulerdiv::report {

enum class Format { csv, json };

inline std::string format_real(double x) {
    if (std::isnan(x)) return "NaN";
    if (std::isinf(x)) return x > 0 ? "Inf" : "-Inf";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

inline nlohmann::ordered_json json_real(double x) {
    if (std::isfinite(x)) return x;
    return format_real(x);
}

/// Column names and one row of cells per record.
struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<nlohmann::ordered_json>> rows;
};

inline std::string csv_cell(const nlohmann::ordered_json& v) {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
    if (v.is_number_float()) return format_real(v.get<double>());
    return v.dump();
}

inline void write(std::ostream& out, const Table& table, Format format) {
    if (format == Format::csv) {
        for (std::size_t i = 0; i < table.header.size(); ++i) out << (i ? "," : "") << table.header[i];
        out << '\n';
        for (const auto& row : table.rows) {
            for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << csv_cell(row[i]);
            out << '\n';
        }
        return;
    }
    auto doc = nlohmann::ordered_json::array();
    for (const auto& row : table.rows) {
        nlohmann::ordered_json obj;
        for (std::size_t i = 0; i < row.size(); ++i) obj[table.header[i]] = row[i];
        doc.push_back(std::move(obj));
    }
    out << doc.dump(2) << '\n';
}

inline Table table1(const std::vector<Table1Row>& rows) {
    Table t{{"sigma", "exact_E_X3_sq", "euler_ieee_mean", "euler_finite_mean", "count_nan", "count_inf", "stderr"}, {}};
    for (const auto& r : rows) {
        t.rows.push_back({json_real(r.sigma), json_real(r.exact.ieee_mean), json_real(r.euler.ieee_mean),
                          json_real(r.euler.finite_mean), r.euler.count_nan, r.euler.count_inf(),
                          json_real(r.euler.finite_stderr)});
    }
    return t;
}

inline Table figure1(const std::vector<Figure1Row>& rows) {
    Table t{{"N", "E_abs_ieee", "E_abs_finite", "count_inf", "count_nan"}, {}};
    for (const auto& r : rows) {
        t.rows.push_back({r.steps, json_real(r.estimate.ieee_mean), json_real(r.estimate.finite_mean),
                          r.estimate.count_inf(), r.estimate.count_nan});
    }
    return t;
}

inline Table bounds(const std::vector<DivergenceCertificateReport>& rows) {
    Table t{{"N", "r_N", "log2_prob_lower", "log2_expectation_lower", "certified"}, {}};
    for (const auto& r : rows) {
        t.rows.push_back({r.N, json_real(r.r_N), json_real(r.log2_prob_lower), json_real(r.log2_expectation_lower),
                          r.certified});
    }
    return t;
}

inline Table simulate(const SimulateConfig& cfg, const SimulateResult& res) {
    const MomentEstimate& e = res.estimate;
    Table t{{"model", "N", "p", "runs", "ieee_mean", "finite_mean", "finite_stderr", "count_finite",
             "count_pos_inf", "count_neg_inf", "count_nan", "explosion_fraction"},
            {}};
    t.rows.push_back({cfg.model, cfg.steps, json_real(e.p), e.runs, json_real(e.ieee_mean), json_real(e.finite_mean),
                      json_real(e.finite_stderr), e.count_finite, e.count_pos_inf, e.count_neg_inf, e.count_nan,
                      json_real(res.explosion_fraction)});
    return t;
}

} // namespace eulerdiv::report

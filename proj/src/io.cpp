#include "wqed/io.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>

#include <nlohmann/json.hpp>

namespace wqed {

using nlohmann::json;

std::string format_double(double value) {
    char buffer[64];
    std::snprintf(buffer, sizeof(buffer), "%.17g", value);
    return buffer;
}

std::string spectrum_csv(const SpectrumResult& result) {
    const bool with_derivative = !result.rows.empty() && result.rows.front().dT_domega.has_value();
    std::string out = with_derivative ? "omega,T,R,dT_domega\n" : "omega,T,R\n";
    for (const auto& row : result.rows) {
        out += format_double(row.omega);
        out += ',';
        out += format_double(row.T);
        out += ',';
        out += format_double(row.R);
        if (with_derivative) {
            out += ',';
            out += format_double(row.dT_domega.value());
        }
        out += '\n';
    }
    return out;
}

namespace {

json config_echo(const RunConfig& config) { return json::parse(config_to_json(config)); }

json interval_json(const BandInterval& interval) {
    return {{"kind", interval.kind == BandKind::forbidden ? "forbidden" : "allowed"},
            {"omega_lo", interval.omega_lo},
            {"omega_hi", interval.omega_hi}};
}

json gap_report_json(const GapReport& report) {
    json j{{"spacing_lambda0", report.spacing_lambda0}, {"gap_found", report.gap_found}};
    json intervals = json::array();
    for (const auto& interval : report.intervals)
        intervals.push_back(interval_json(interval));
    j["intervals"] = intervals;
    if (report.gap_found) {
        j["gap_above_resonance"] = {{"omega_lo", report.gap_lo}, {"omega_hi", report.gap_hi}};
        if (report.linear_reference) {
            j["linear_gap_above_resonance"] = {{"omega_lo", report.linear_gap_lo},
                                               {"omega_hi", report.linear_gap_hi}};
            j["width_ratio"] = report.width_ratio;
            j["delta_omega_b"] = report.delta_omega_b;
        }
    }
    return j;
}

}  // namespace

std::string spectrum_json(const RunConfig& config, const SpectrumResult& result) {
    json document;
    document["config"] = config_echo(config);
    const bool with_derivative = !result.rows.empty() && result.rows.front().dT_domega.has_value();
    json columns = json::array({"omega", "T", "R"});
    if (with_derivative)
        columns.push_back("dT_domega");
    document["columns"] = columns;
    json rows = json::array();
    for (const auto& row : result.rows) {
        json r = json::array({row.omega, row.T, row.R});
        if (with_derivative)
            r.push_back(row.dT_domega.value());
        rows.push_back(r);
    }
    document["rows"] = rows;
    if (!result.notices.empty())
        document["notices"] = result.notices;
    return document.dump(2) + "\n";
}

std::string bands_csv(const BandsResult& result) {
    std::string out = "omega,T,R,cos_KL,forbidden,spacing\n";
    for (const auto& row : result.rows) {
        out += format_double(row.omega);
        out += ',';
        out += format_double(row.T);
        out += ',';
        out += format_double(row.R);
        out += ',';
        out += format_double(row.cos_kl);
        out += ',';
        out += row.forbidden ? '1' : '0';
        out += ',';
        out += format_double(row.spacing_lambda0);
        out += '\n';
    }
    return out;
}

std::string gap_reports_json(const BandsResult& result) {
    json reports = json::array();
    for (const auto& report : result.reports)
        reports.push_back(gap_report_json(report));
    return reports.dump(2) + "\n";
}

std::string bands_json(const RunConfig& config, const BandsResult& result) {
    json document;
    document["config"] = config_echo(config);
    document["columns"] = json::array({"omega", "T", "R", "cos_KL", "forbidden", "spacing"});
    json rows = json::array();
    for (const auto& row : result.rows)
        rows.push_back(json::array({row.omega, row.T, row.R, row.cos_kl,
                                    row.forbidden ? 1 : 0, row.spacing_lambda0}));
    document["rows"] = rows;
    json reports = json::array();
    for (const auto& report : result.reports)
        reports.push_back(gap_report_json(report));
    document["gap_reports"] = reports;
    if (!result.notices.empty())
        document["notices"] = result.notices;
    return document.dump(2) + "\n";
}

std::string gapfit_csv(const GapFitReport& report) {
    std::string out = "j,delta_omega_b\n";
    for (const auto& [j, d] : report.fit.j_samples) {
        out += format_double(j);
        out += ',';
        out += format_double(d);
        out += '\n';
    }
    return out;
}

std::string gapfit_json(const RunConfig& config, const GapFitReport& report) {
    json document;
    document["config"] = config_echo(config);
    json samples = json::array();
    for (const auto& [j, d] : report.fit.j_samples)
        samples.push_back(json::array({j, d}));
    document["fit"] = {{"base_b", report.fit.base_b},
                       {"xi", report.fit.xi},
                       {"rms_residual", report.fit.rms_residual},
                       {"samples", samples}};
    document["linear_gap_end"] = report.linear_gap_end;
    document["crossing_found"] = report.crossing_found;
    if (report.crossing_found)
        document["crossing_j"] = report.crossing_j;
    if (!report.notices.empty())
        document["notices"] = report.notices;
    return document.dump(2) + "\n";
}

void write_text(const std::string& path, const std::string& content) {
    if (path.empty()) {
        std::cout << content;
        std::cout.flush();
        return;
    }
    std::ofstream file(path, std::ios::binary);
    if (!file)
        throw Error(errc::io_error, "cannot open '" + path + "' for writing");
    file << content;
    if (!file)
        throw Error(errc::io_error, "failed to write '" + path + "'");
}

}  // namespace wqed

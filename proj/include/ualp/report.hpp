#ifndef UALP_REPORT_HPP
#define UALP_REPORT_HPP

#include <charconv>
#include <chrono>
#include <cmath>
#include <ctime>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include <json.hpp>

#include "ualp/identities.hpp"
#include "ualp/quadrature.hpp"

namespace ualp {

inline constexpr std::string_view tool_version = "1.0.0";

/// Shortest decimal string that parses back to the same double. Locale
/// independent. Non-finite values become "nan", "inf", "-inf".
inline std::string format_number(double value)
{
    if (std::isnan(value)) {
        return "nan";
    }
    if (std::isinf(value)) {
        return value > 0 ? "inf" : "-inf";
    }
    char buffer[64];
    const auto [end, ec] = std::to_chars(buffer, buffer + sizeof buffer, value);
    if (ec != std::errc{}) {
        throw std::runtime_error("format_number: conversion failed");
    }
    return std::string(buffer, end);
}

struct ToleranceConfig {
    double abs_tol = 1e-7;
    double rel_tol = 1e-7;
    QuadratureSpec engine;
};

struct ReportSummary {
    std::size_t total = 0;
    std::size_t passed = 0;
    std::size_t failed = 0;
};

struct ReportDocument {
    std::string tool_version{ualp::tool_version};
    std::optional<std::string> timestamp;  // ISO-8601 UTC; absent for reproducible output
    std::string identity_name;
    ToleranceConfig tolerance_config;
    std::vector<VerificationRecord> records;

    [[nodiscard]] ReportSummary summary() const
    {
        ReportSummary s;
        s.total = records.size();
        for (const auto& r : records) {
            (r.passed ? s.passed : s.failed) += 1;
        }
        return s;
    }

    [[nodiscard]] bool all_passed() const { return summary().failed == 0; }
};

inline std::string utc_timestamp_now()
{
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buffer[32];
    std::strftime(buffer, sizeof buffer, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buffer;
}

namespace detail {

/// Non-finite numbers are not representable in JSON; they serialize as null.
inline nlohmann::ordered_json json_number(double value)
{
    if (!std::isfinite(value)) {
        return nullptr;
    }
    return value;
}

}  // namespace detail

inline nlohmann::ordered_json to_json(const VerificationRecord& record)
{
    nlohmann::ordered_json parameters = nlohmann::ordered_json::object();
    for (const auto& [key, value] : record.parameters) {
        parameters[key] = detail::json_number(value);
    }
    nlohmann::ordered_json j;
    j["identity_name"] = record.identity_name;
    j["parameters"] = std::move(parameters);
    j["closed_form"] = detail::json_number(record.closed_form);
    j["numeric"] = detail::json_number(record.numeric);
    j["abs_diff"] = detail::json_number(record.abs_diff);
    j["rel_diff"] = detail::json_number(record.rel_diff);
    j["passed"] = record.passed;
    j["numeric_error_estimate"] = detail::json_number(record.numeric_error_estimate);
    if (record.note) {
        j["note"] = *record.note;
    }
    return j;
}

inline nlohmann::ordered_json to_json(const ReportDocument& report)
{
    nlohmann::ordered_json j;
    j["tool_version"] = report.tool_version;
    j["timestamp"] = report.timestamp ? nlohmann::ordered_json(*report.timestamp) : nlohmann::ordered_json(nullptr);
    j["identity_name"] = report.identity_name;
    const auto& tol = report.tolerance_config;
    j["tolerance_config"] = {
        {"abs_tol", tol.abs_tol},
        {"rel_tol", tol.rel_tol},
        {"engine_abs_tol", tol.engine.abs_tol},
        {"engine_rel_tol", tol.engine.rel_tol},
        {"max_levels", tol.engine.max_levels},
        {"max_segments", tol.engine.max_segments},
    };
    nlohmann::ordered_json records = nlohmann::ordered_json::array();
    for (const auto& r : report.records) {
        records.push_back(to_json(r));
    }
    j["records"] = std::move(records);
    const ReportSummary s = report.summary();
    j["summary"] = {{"total", s.total}, {"passed", s.passed}, {"failed", s.failed}};
    return j;
}

inline std::string report_to_json_string(const ReportDocument& report)
{
    return to_json(report).dump(2) + "\n";
}

namespace detail {

inline std::string csv_field(std::string_view text)
{
    if (text.find_first_of(",\"\n") == std::string_view::npos) {
        return std::string(text);
    }
    std::string quoted = "\"";
    for (char c : text) {
        if (c == '"') {
            quoted += '"';
        }
        quoted += c;
    }
    quoted += '"';
    return quoted;
}

}  // namespace detail

/// One CSV row per record; parameters are packed as "key=value;key=value".
inline std::string report_to_csv_string(const ReportDocument& report)
{
    std::ostringstream out;
    out << "identity_name,parameters,closed_form,numeric,abs_diff,rel_diff,passed,numeric_error_estimate,note\n";
    for (const auto& r : report.records) {
        std::string params;
        for (const auto& [key, value] : r.parameters) {
            if (!params.empty()) {
                params += ';';
            }
            params += key + "=" + format_number(value);
        }
        out << detail::csv_field(r.identity_name) << ',' << detail::csv_field(params) << ','
            << format_number(r.closed_form) << ',' << format_number(r.numeric) << ',' << format_number(r.abs_diff)
            << ',' << format_number(r.rel_diff) << ',' << (r.passed ? "true" : "false") << ','
            << format_number(r.numeric_error_estimate) << ',' << detail::csv_field(r.note.value_or("")) << "\n";
    }
    return out.str();
}

}  // namespace ualp

#endif  // UALP_REPORT_HPP

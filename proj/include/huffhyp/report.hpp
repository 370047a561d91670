#pragma once

// JSON and CSV rendering of audit reports. One record per (identity, point),
// then one summary record per identity.

#include "huffhyp/audit.hpp"

#include <json.hpp>

#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace huffhyp {

enum class ReportFormat { json, csv };

inline ReportFormat parse_report_format(const std::string& s)
{
    if (s == "json") {
        return ReportFormat::json;
    }
    if (s == "csv") {
        return ReportFormat::csv;
    }
    throw std::invalid_argument("unknown format '" + s + "' (expected json or csv)");
}

namespace detail {

inline nlohmann::ordered_json param_json(const Param& p, bool prime_field)
{
    if (prime_field) {
        return p.value.code;
    }
    return p.text;
}

inline nlohmann::ordered_json record_json(const std::string& id, const PointRecord& rec)
{
    nlohmann::ordered_json j;
    j["identity"] = id;
    j["q"] = rec.q;
    if (rec.a) {
        j["a"] = param_json(*rec.a, rec.prime_field);
    }
    if (rec.b) {
        j["b"] = param_json(*rec.b, rec.prime_field);
    }
    if (rec.lambda) {
        j["lambda"] = param_json(*rec.lambda, rec.prime_field);
    }
    j["lhs"] = to_string(rec.lhs);
    j["rhs"] = to_string(rec.rhs);
    j["residual"] = to_string(rec.residual);
    j["pass"] = rec.pass;
    return j;
}

inline nlohmann::ordered_json summary_json(const IdentityReport& r)
{
    nlohmann::ordered_json j;
    j["identity"] = r.id;
    j["summary"] = true;
    j["provenance"] = to_string(r.provenance);
    j["description"] = r.description;
    j["domain"] = r.domain;
    j["fields"] = r.fields;
    j["points"] = r.records.size();
    j["failures"] = r.failures;
    nlohmann::ordered_json ce = nlohmann::ordered_json::array();
    for (const auto& rec : r.counterexamples) {
        ce.push_back(record_json(r.id, rec));
    }
    j["counterexamples"] = std::move(ce);
    j["truncated"] = r.truncated;
    j["status"] = r.pass() ? "PASS" : "FAIL";
    return j;
}

// RFC 4180 quoting: fields holding a comma, quote or newline are quoted.
inline std::string csv_field(const std::string& s)
{
    if (s.find_first_of(",\"\n\r") == std::string::npos) {
        return s;
    }
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') {
            out += '"';
        }
        out += c;
    }
    out += '"';
    return out;
}

inline std::string csv_param(const std::optional<Param>& p) { return p ? csv_field(p->text) : std::string(); }

}  // namespace detail

inline nlohmann::ordered_json reports_json(const std::vector<IdentityReport>& reports)
{
    nlohmann::ordered_json out = nlohmann::ordered_json::array();
    for (const auto& r : reports) {
        for (const auto& rec : r.records) {
            out.push_back(detail::record_json(r.id, rec));
        }
        out.push_back(detail::summary_json(r));
    }
    return out;
}

inline void emit(std::ostream& os, const std::vector<IdentityReport>& reports, ReportFormat format)
{
    if (format == ReportFormat::json) {
        os << reports_json(reports).dump() << '\n';
        return;
    }
    os << "identity,q,a,b,lambda,lhs,rhs,residual,pass\r\n";
    for (const auto& r : reports) {
        for (const auto& rec : r.records) {
            os << detail::csv_field(r.id) << ',' << rec.q << ',' << detail::csv_param(rec.a) << ','
               << detail::csv_param(rec.b) << ',' << detail::csv_param(rec.lambda) << ',' << to_string(rec.lhs)
               << ',' << to_string(rec.rhs) << ',' << to_string(rec.residual) << ','
               << (rec.pass ? "true" : "false") << "\r\n";
        }
        os << detail::csv_field(r.id) << ",,,,,,,," << (r.pass() ? "PASS" : "FAIL") << "\r\n";
    }
}

inline std::string emit(const std::vector<IdentityReport>& reports, const std::string& format)
{
    const ReportFormat f = parse_report_format(format);
    std::ostringstream os;
    emit(os, reports, f);
    return os.str();
}

}  // namespace huffhyp

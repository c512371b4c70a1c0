#pragma once

#include <cmath>
#include <iomanip>
#include <sstream>
#include <string>

#include <json.hpp>

#include "chaostream/analysis.hpp"

namespace chaostream {

// Plain-text report: one line per test (name, statistic, p-value, verdict),
// followed by the scalar metrics and any sensitivity rows.
inline std::string report_text(const AnalysisReport& rep) {
    std::ostringstream out;
    out << std::setprecision(6) << std::fixed;
    if (!rep.tests.empty()) {
        out << "bits analyzed: " << rep.bit_count << "\n";
        out << "alpha: " << rep.alpha << "\n";
        out << std::left << std::setw(22) << "test" << std::right
            << std::setw(14) << "statistic" << std::setw(12) << "p-value"
            << "  verdict\n";
        for (const auto& t : rep.tests) {
            out << std::left << std::setw(22) << t.name << std::right;
            if (!t.implemented) {
                out << std::setw(14) << "-" << std::setw(12) << "-"
                    << "  not implemented\n";
            } else if (!t.run) {
                out << std::setw(14) << "-" << std::setw(12) << "-"
                    << "  not run (" << t.note << ")\n";
            } else {
                out << std::setw(14) << t.statistic << std::setw(12)
                    << t.p_value << "  " << (t.passed ? "PASS" : "FAIL")
                    << "\n";
            }
        }
    }
    if (!std::isnan(rep.max_offpeak_autocorr))
        out << "max off-peak autocorrelation (lags 1.."
            << rep.autocorr_max_lag << "): " << rep.max_offpeak_autocorr
            << "\n";
    if (!std::isnan(rep.prd)) out << "prd: " << rep.prd << "\n";
    if (!rep.sensitivity_rows.empty()) {
        out << "key sensitivity (delta = " << std::defaultfloat
            << rep.sensitivity_delta << std::fixed << ")\n";
        out << std::left << std::setw(12) << "parameter"
            << "  % difference\n";
        for (const auto& row : rep.sensitivity_rows) {
            out << std::left << std::setw(12) << row.parameter << "  "
                << std::right << std::setw(10) << row.percent_difference;
            if (row.sub_ulp) out << "  (sub-ulp perturbation)";
            out << "\n";
        }
    }
    return out.str();
}

// Machine-readable report: one JSON record per line. Test records carry
// {"test", "implemented", "run", "statistic", "p_value", "alpha", "passed"}
// plus any test-specific extras; metric records carry {"metric", "value"};
// sensitivity records carry {"parameter", "percent_difference", "sub_ulp"}.
inline std::string report_json(const AnalysisReport& rep) {
    using nlohmann::json;
    std::ostringstream out;
    for (const auto& t : rep.tests) {
        json rec;
        rec["test"] = t.name;
        rec["implemented"] = t.implemented;
        if (t.implemented) {
            rec["run"] = t.run;
            if (t.run) {
                rec["statistic"] = t.statistic;
                rec["p_value"] = t.p_value;
                rec["alpha"] = rep.alpha;
                rec["passed"] = t.passed;
                for (const auto& [k, v] : t.details) rec[k] = v;
            }
        }
        if (!t.note.empty()) rec["note"] = t.note;
        out << rec.dump() << "\n";
    }
    if (!std::isnan(rep.max_offpeak_autocorr)) {
        json rec;
        rec["metric"] = "max_offpeak_autocorrelation";
        rec["max_lag"] = rep.autocorr_max_lag;
        rec["value"] = rep.max_offpeak_autocorr;
        out << rec.dump() << "\n";
    }
    if (!std::isnan(rep.prd)) {
        json rec;
        rec["metric"] = "prd";
        rec["value"] = rep.prd;
        out << rec.dump() << "\n";
    }
    for (const auto& row : rep.sensitivity_rows) {
        json rec;
        rec["parameter"] = row.parameter;
        rec["percent_difference"] = row.percent_difference;
        rec["sub_ulp"] = row.sub_ulp;
        out << rec.dump() << "\n";
    }
    return out.str();
}

}  // namespace chaostream

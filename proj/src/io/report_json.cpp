#include "phasembed/io/report_json.hpp"

#include <json.hpp>

namespace phasembed::io {

std::string report_to_json(const dynamics::DynamicsReport& report) {
    using ordered_json = nlohmann::ordered_json;

    ordered_json doc;
    doc["version"] = "1";
    doc["channels"] = ordered_json::array();
    for (const dynamics::ChannelDiagnostics& ch : report.channels) {
        ordered_json entry;
        entry["name"] = ch.name;
        entry["dominant_period"] =
            ch.has_period ? ordered_json(ch.dominant_period_samples) : ordered_json(nullptr);
        entry["tau"] = ch.has_tau ? ordered_json(ch.tau_samples) : ordered_json(nullptr);
        entry["m_cc"] = ch.has_m ? ordered_json(ch.m_cc) : ordered_json(nullptr);
        entry["lle"] = ch.has_lle ? ordered_json(ch.lle_per_time) : ordered_json(nullptr);
        entry["warnings"] = ch.warnings;
        doc["channels"].push_back(entry);
    }
    doc["mi_matrix"] = ordered_json::array();
    for (std::size_t i = 0; i < report.mi_matrix.rows(); ++i) {
        ordered_json row = ordered_json::array();
        for (std::size_t j = 0; j < report.mi_matrix.cols(); ++j)
            row.push_back(report.mi_matrix(i, j));
        doc["mi_matrix"].push_back(row);
    }
    doc["strategy"] = report.strategy == core::ChannelStrategy::CD ? "CD" : "CI";
    doc["rationale"] = report.rationale;
    return doc.dump(2) + "\n";
}

}  // namespace phasembed::io

#include <cstdio>

#include <json.hpp>

#include "gleak/leakage.hpp"

namespace gleak {

namespace {

// Values carry at most 12 significant digits in reports; infinities are the
// string "inf" so they survive any JSON reader.
nlohmann::ordered_json render_value(const ExtendedReal& v) {
    if (v.is_infinite()) return "inf";
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", v.value());
    return std::stod(buf);
}

} // namespace

std::string report_to_json(const LeakageReport& report, int indent) {
    nlohmann::ordered_json j;
    j["source"] = report.source;
    j["log_base"] = report.base == LogBase::Two ? "2" : "e";
    j["rho_list"] = report.rho_list;
    j["entries"] = nlohmann::ordered_json::array();
    for (const auto& e : report.entries) {
        nlohmann::ordered_json je;
        je["name"] = e.name;
        je["value"] = render_value(e.value);
        je["method"] = e.method;
        nlohmann::ordered_json params = nlohmann::ordered_json::object();
        for (const auto& [k, v] : e.parameters) params[k] = v;
        je["parameters"] = params;
        j["entries"].push_back(je);
    }
    return j.dump(indent);
}

} // namespace gleak

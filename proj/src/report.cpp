#include "thetalab/report.hpp"

#include <iomanip>
#include <sstream>

namespace thetalab {

std::string kind_name(RecordKind k) {
    switch (k) {
        case RecordKind::SeriesVanishing: return "series-vanishing";
        case RecordKind::SeriesEquality: return "series-equality";
        case RecordKind::NumericVanishing: return "numeric-vanishing";
        case RecordKind::Count: return "count";
        case RecordKind::ExactRelation: return "exact-relation";
    }
    return "unknown";
}

nlohmann::json record_to_json(const IdentityRecord& r) {
    nlohmann::json j{
        {"schema", kReportSchema},
        {"name", r.name},
        {"level", r.level},
        {"kind", kind_name(r.kind)},
        {"status", r.pass ? "pass" : "fail"},
        {"residual", r.residual},
        {"detail", r.detail},
        {"informational", r.informational},
    };
    j["order"] = r.order ? nlohmann::json(*r.order) : nlohmann::json(nullptr);
    j["tolerance"] = r.tolerance ? nlohmann::json(*r.tolerance) : nlohmann::json(nullptr);
    return j;
}

nlohmann::json report_to_json(const std::vector<IdentityRecord>& rs) {
    nlohmann::json a = nlohmann::json::array();
    for (const auto& r : rs) a.push_back(record_to_json(r));
    return a;
}

std::string report_to_text(const std::vector<IdentityRecord>& rs) {
    std::ostringstream os;
    for (const auto& r : rs) {
        os << (r.informational ? (r.pass ? "info-pass " : "info-fail ") : (r.pass ? "PASS " : "FAIL "));
        os << "N=" << r.level << " " << r.name << " [" << kind_name(r.kind);
        if (r.order) os << ", order " << *r.order;
        if (r.tolerance) os << ", tol " << std::setprecision(3) << *r.tolerance;
        os << "]";
        if (r.kind == RecordKind::NumericVanishing) os << " residual " << std::setprecision(3) << r.residual;
        if (!r.detail.empty()) os << " : " << r.detail;
        os << "\n";
    }
    return os.str();
}

bool aggregate_pass(const std::vector<IdentityRecord>& rs) {
    for (const auto& r : rs)
        if (!r.informational && !r.pass) return false;
    return true;
}

}  // namespace thetalab

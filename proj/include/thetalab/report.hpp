#pragma once

#include <json.hpp>

#include <optional>
#include <string>
#include <vector>

namespace thetalab {

enum class RecordKind { SeriesVanishing, SeriesEquality, NumericVanishing, Count, ExactRelation };

std::string kind_name(RecordKind k);

// One row of a verification report.
struct IdentityRecord {
    std::string name;
    int level = 0;
    RecordKind kind = RecordKind::SeriesVanishing;
    std::optional<int> order;        // series checks: q-order used
    std::optional<double> tolerance;  // numeric checks
    bool pass = false;
    double residual = 0;              // numeric residual; 0 for exact checks
    std::string detail;               // first failing coefficient, counts, matched candidate...
    // Records a printed statement that is known not to hold; never affects the aggregate.
    bool informational = false;
};

inline constexpr int kReportSchema = 1;

nlohmann::json record_to_json(const IdentityRecord& r);
// JSON array; every element carries "schema": 1.
nlohmann::json report_to_json(const std::vector<IdentityRecord>& rs);
std::string report_to_text(const std::vector<IdentityRecord>& rs);
bool aggregate_pass(const std::vector<IdentityRecord>& rs);

}  // namespace thetalab

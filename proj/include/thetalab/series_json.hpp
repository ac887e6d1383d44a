#pragma once

#include "thetalab/puiseux.hpp"

#include <json.hpp>

namespace thetalab {

// {"ram": r, "field": "Q" | "Q(zeta_m)", "trunc": T | null, "terms": [[k, coeff], ...]}
nlohmann::json series_to_json(const QSeries& s);
nlohmann::json series_to_json(const CSeries& s);

QSeries qseries_from_json(const nlohmann::json& j);
CSeries cseries_from_json(const nlohmann::json& j);

nlohmann::json cyclotomic_to_json(const CyclotomicNumber& c);
CyclotomicNumber cyclotomic_from_json(int m, const nlohmann::json& j);

}  // namespace thetalab

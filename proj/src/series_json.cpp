#include "thetalab/series_json.hpp"

#include <numeric>
#include <stdexcept>

namespace thetalab {

using nlohmann::json;

namespace {

json trunc_json(int64_t t) {
    if (t == QSeries::kExact) return nullptr;
    return t;
}

int64_t trunc_from(const json& j) {
    if (!j.contains("trunc") || j.at("trunc").is_null()) return QSeries::kExact;
    return j.at("trunc").get<int64_t>();
}

int field_order(const std::string& f) {
    if (f == "Q") return 1;
    const std::string pre = "Q(zeta_";
    if (f.rfind(pre, 0) != 0 || f.back() != ')') throw std::invalid_argument("unknown field tag '" + f + "'");
    return std::stoi(f.substr(pre.size(), f.size() - pre.size() - 1));
}

}  // namespace

json cyclotomic_to_json(const CyclotomicNumber& c) {
    json a = json::array();
    for (const auto& x : c.coeffs()) a.push_back(x.str());
    return a;
}

CyclotomicNumber cyclotomic_from_json(int m, const json& j) {
    std::vector<Rational> v;
    for (const auto& x : j) v.push_back(Rational::parse(x.get<std::string>()));
    return CyclotomicNumber::from_coeffs(m, std::move(v));
}

json series_to_json(const QSeries& s) {
    json terms = json::array();
    for (const auto& [k, c] : s.terms()) terms.push_back(json::array({k, c.str()}));
    return json{{"ram", s.ram()}, {"field", "Q"}, {"trunc", trunc_json(s.trunc())}, {"terms", terms}};
}

json series_to_json(const CSeries& s) {
    int m = 1;
    for (const auto& [k, c] : s.terms()) m = std::lcm(m, c.order());
    json terms = json::array();
    for (const auto& [k, c] : s.terms()) terms.push_back(json::array({k, cyclotomic_to_json(c.embed(m))}));
    std::string field = m == 1 ? "Q" : "Q(zeta_" + std::to_string(m) + ")";
    return json{{"ram", s.ram()}, {"field", field}, {"trunc", trunc_json(s.trunc())}, {"terms", terms}};
}

QSeries qseries_from_json(const json& j) {
    if (j.at("field").get<std::string>() != "Q") throw std::invalid_argument("series is not over Q");
    QSeries::Terms t;
    for (const auto& term : j.at("terms"))
        t.emplace(term.at(0).get<int64_t>(), Rational::parse(term.at(1).get<std::string>()));
    return QSeries(j.at("ram").get<int64_t>(), std::move(t), trunc_from(j));
}

CSeries cseries_from_json(const json& j) {
    int m = field_order(j.at("field").get<std::string>());
    CSeries::Terms t;
    for (const auto& term : j.at("terms")) {
        const json& c = term.at(1);
        CyclotomicNumber v = c.is_string() ? CyclotomicNumber(Rational::parse(c.get<std::string>()))
                                           : cyclotomic_from_json(m, c);
        t.emplace(term.at(0).get<int64_t>(), v);
    }
    return CSeries(j.at("ram").get<int64_t>(), std::move(t), trunc_from(j));
}

}  // namespace thetalab

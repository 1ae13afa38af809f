#pragma once
/**
 * @file json_io.hpp
 * @brief JSON interchange for the value types used by the CLI.
 *
 * Rationals travel as canonical strings so exactness survives the round trip:
 *   {"family":"D1","n":3,"coords":["1","2","3","4","5"]}
 * parse(print(v)) == v for every valid value.
 */

#include <json.hpp>

#include <string>
#include <vector>

#include "trlab/crystal.hpp"
#include "trlab/errors.hpp"
#include "trlab/rat.hpp"

namespace trlab {

using Json = nlohmann::json;

inline Json rat_to_json(const Rat& r) { return Json(r.to_string()); }

inline Rat rat_from_json(const Json& j) {
    if (!j.is_string()) throw ConfigError("rational must be a JSON string");
    return Rat::parse(j.get<std::string>());
}

inline Json rats_to_json(const std::vector<Rat>& v) {
    Json arr = Json::array();
    for (const Rat& r : v) arr.push_back(rat_to_json(r));
    return arr;
}

inline std::vector<Rat> rats_from_json(const Json& j) {
    if (!j.is_array()) throw ConfigError("expected a JSON array of rationals");
    std::vector<Rat> out;
    out.reserve(j.size());
    for (const Json& e : j) out.push_back(rat_from_json(e));
    return out;
}

inline Json element_to_json(const CrystalElement& x) {
    return Json{{"family", family_name(x.family())},
                {"n", x.rank()},
                {"coords", rats_to_json(x.coords())}};
}

inline CrystalElement element_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("family") || !j.contains("n") || !j.contains("coords"))
        throw ConfigError("element JSON needs family, n, coords");
    return CrystalElement(family_parse(j.at("family").get<std::string>()),
                          j.at("n").get<int>(), rats_from_json(j.at("coords")));
}

}  // namespace trlab

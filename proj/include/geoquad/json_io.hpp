#pragma once

// Maps as JSON: { "half_edges": N, "alpha": [..], "sigma": [..], "root": h, "origin": v }
// with 0-based ids. root and origin may be omitted or null.

#include "geoquad/planar_map.hpp"

#include <json.hpp>

#include <fstream>
#include <stdexcept>
#include <string>

namespace geoquad {

class MapFileError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

inline nlohmann::ordered_json map_to_json(const Quadrangulation& q) {
    nlohmann::ordered_json j;
    j["half_edges"] = q.map.half_edges();
    j["alpha"] = q.map.alpha_vector();
    j["sigma"] = q.map.sigma_vector();
    j["root"] = q.root ? nlohmann::ordered_json(*q.root) : nlohmann::ordered_json(nullptr);
    j["origin"] = q.origin ? nlohmann::ordered_json(*q.origin) : nlohmann::ordered_json(nullptr);
    return j;
}

/// Validates through build_map; every failure surfaces as MapFileError.
inline Quadrangulation map_from_json(const nlohmann::json& j) {
    try {
        if (!j.is_object()) throw MapFileError("map JSON must be an object");
        auto alpha = j.at("alpha").get<std::vector<int>>();
        auto sigma = j.at("sigma").get<std::vector<int>>();
        if (j.contains("half_edges") && j.at("half_edges").get<int>() != static_cast<int>(alpha.size()))
            throw MapFileError("half_edges does not match the length of alpha");
        std::optional<int> root, origin;
        if (j.contains("root") && !j.at("root").is_null()) root = j.at("root").get<int>();
        if (j.contains("origin") && !j.at("origin").is_null()) origin = j.at("origin").get<int>();
        return build_map(std::move(alpha), std::move(sigma), root, origin);
    } catch (const MapFileError&) {
        throw;
    } catch (const std::exception& e) {
        throw MapFileError(std::string("invalid map: ") + e.what());
    }
}

inline Quadrangulation read_map_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw MapFileError("cannot open map file: " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw MapFileError("map file is not JSON: " + std::string(e.what()));
    }
    return map_from_json(j);
}

}  // namespace geoquad

#pragma once

#include <fstream>
#include <string>

#include <json.hpp>

#include "core.hpp"
#include "morphology.hpp"
#include "spec.hpp"

namespace sponge {

// JSON schemas used by the CLI and tests:
//   {"family":"inner_product","dim":2}
//   {"family":"epigraph","dim":3,"profile":{"kind":"power","c":1.0,"p":2.0}}
//   {"family":"hyperbolic","dim":2}
//   {"family":"angle","kappa":3.14159,"period":6.28318}       (period optional)
//   {"family":"product","components":[ ... ]}
//   {"lo":[-2,-2],"hi":[2,2],"step":0.01}                     (grid)
//   {"offsets":[[0,0],[1,0],[-1,0]]}                          (structuring element)

inline Profile parse_profile(const nlohmann::json& j) {
    if (!j.is_object() || j.value("kind", "") != "power")
        throw std::invalid_argument("profile must be {\"kind\":\"power\",\"c\":...,\"p\":...}");
    Profile f;
    f.c = j.at("c").get<double>();
    f.p = j.at("p").get<double>();
    return f;
}

inline SpongeSpec parse_sponge_spec(const nlohmann::json& j) {
    if (!j.is_object()) throw std::invalid_argument("spec must be a JSON object");
    const std::string family = j.at("family").get<std::string>();
    if (family == "inner_product")
        return SpongeSpec::inner_product(j.at("dim").get<int>());
    if (family == "epigraph")
        return SpongeSpec::epigraph(parse_profile(j.at("profile")), j.at("dim").get<int>());
    if (family == "hyperbolic")
        return SpongeSpec::hyperbolic(j.at("dim").get<int>());
    if (family == "angle") {
        ConeSpec1D cone;
        cone.kappa = j.at("kappa").get<double>();
        if (j.contains("period") && !j.at("period").is_null())
            cone.period = j.at("period").get<double>();
        return SpongeSpec::angle(cone);
    }
    if (family == "product") {
        std::vector<SpongeSpec> comps;
        for (const auto& c : j.at("components")) comps.push_back(parse_sponge_spec(c));
        return SpongeSpec::product(std::move(comps));
    }
    throw std::invalid_argument("unknown family '" + family + "'");
}

inline SpongeSpec parse_sponge_spec_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open '" + path + "'");
    nlohmann::json j;
    in >> j;
    return parse_sponge_spec(j);
}

inline GridSpec parse_grid_spec(const nlohmann::json& j) {
    GridSpec g;
    g.lo = Point(j.at("lo").get<std::vector<double>>());
    g.hi = Point(j.at("hi").get<std::vector<double>>());
    g.step = j.at("step").get<double>();
    if (g.lo.dim() != g.hi.dim() || !(g.step > 0.0))
        throw std::invalid_argument("bad grid spec");
    return g;
}

inline StructuringElement parse_structuring_element(const nlohmann::json& j) {
    StructuringElement se;
    for (const auto& o : j.at("offsets")) {
        if (!o.is_array() || o.size() != 2)
            throw std::invalid_argument("structuring element offsets must be [dx,dy] pairs");
        se.offsets.emplace_back(o[0].get<int>(), o[1].get<int>());
    }
    if (se.offsets.empty()) throw std::invalid_argument("empty structuring element");
    return se;
}

inline StructuringElement parse_structuring_element_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open '" + path + "'");
    nlohmann::json j;
    in >> j;
    return parse_structuring_element(j);
}

}  // namespace sponge

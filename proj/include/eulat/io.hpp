#pragma once

#include <json.hpp>
#include <string>
#include <vector>

#include "eulat/chirotope.hpp"
#include "eulat/fvector.hpp"
#include "eulat/lattice.hpp"

namespace eulat {

struct FacetListFile {
    FVector f;
    std::vector<std::vector<int>> facets;
};

// {"f": [f0,f1,f2,f3], "facets": [[...], ...]} with 0-indexed vertices
FacetListFile parse_facet_list(const nlohmann::json& j);
FacetListFile load_facet_list(const std::string& path);
nlohmann::json facet_list_json(const FVector& f, const std::vector<std::vector<int>>& facets);

// {"points": [["p/q","p/q","p/q"], ...]} exact rationals
std::vector<Point3> load_coords3(const std::string& path);
std::vector<Point4> load_coords4(const std::string& path);
Rational parse_rational(const std::string& s);

nlohmann::json certificate_json(const Certificate& cert);
Certificate parse_certificate(const nlohmann::json& j);

nlohmann::json load_json(const std::string& path);
void save_json(const std::string& path, const nlohmann::json& j);

}  // namespace eulat

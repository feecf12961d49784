#pragma once

#include <nlohmann/json.hpp>

#include "hotspots/geometry.hpp"

namespace hotspots::geometry {

/// Serializes a DomainSpec.
///
/// Chain entries are {"seg":[x1,y1,x2,y2]} or {"arc":[cx,cy,r,t1,t2]}.
/// Dirichlet entries are one of
///   {"kind":"boundary_arc","chain":c,"from":s,"to":t}
///   {"kind":"disk","center":[x,y],"radius":r}
///   {"kind":"segment","a":[x,y],"b":[x,y]}
///   {"kind":"edge","index":i}
nlohmann::json domain_to_json(const DomainSpec& spec);

/// Inverse of domain_to_json. A document of the form
/// {"example": name, "params": [...]} is expanded through make_example.
/// Throws GeometryError on malformed input; the result is validated.
DomainSpec domain_from_json(const nlohmann::json& doc);

}  // namespace hotspots::geometry

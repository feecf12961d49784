#include "hotspots/domain_json.hpp"

#include "hotspots/error.hpp"

namespace hotspots::geometry {

using nlohmann::json;

namespace {

json point(Vec2 p) { return json::array({p.x, p.y}); }

json chain_to_json(const Chain& chain) {
  json out = json::array();
  for (const auto& piece : chain.pieces) {
    if (const auto* s = std::get_if<Segment>(&piece)) {
      out.push_back({{"seg", {s->a.x, s->a.y, s->b.x, s->b.y}}});
    } else {
      const auto& a = std::get<Arc>(piece);
      out.push_back({{"arc", {a.center.x, a.center.y, a.radius, a.theta_start, a.theta_end}}});
    }
  }
  return out;
}

std::vector<double> numbers(const json& j, std::size_t count, const char* what) {
  if (!j.is_array() || j.size() != count) {
    throw GeometryError(std::string("malformed ") + what + ": expected " + std::to_string(count) + " numbers");
  }
  std::vector<double> v;
  for (const auto& x : j) {
    if (!x.is_number()) throw GeometryError(std::string("malformed ") + what + ": non-numeric entry");
    v.push_back(x.get<double>());
  }
  return v;
}

Vec2 point_from(const json& j, const char* what) {
  const auto v = numbers(j, 2, what);
  return {v[0], v[1]};
}

const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw GeometryError(std::string("missing field '") + key + "'");
  return j.at(key);
}

double number(const json& j, const char* key) {
  const json& v = field(j, key);
  if (!v.is_number()) throw GeometryError(std::string("field '") + key + "' must be a number");
  return v.get<double>();
}

Chain chain_from_json(const json& j) {
  if (!j.is_array() || j.empty()) throw GeometryError("a chain must be a non-empty array");
  Chain chain;
  for (const auto& entry : j) {
    if (entry.contains("seg")) {
      const auto v = numbers(entry.at("seg"), 4, "seg");
      chain.pieces.push_back(Segment{{v[0], v[1]}, {v[2], v[3]}});
    } else if (entry.contains("arc")) {
      const auto v = numbers(entry.at("arc"), 5, "arc");
      chain.pieces.push_back(Arc{{v[0], v[1]}, v[2], v[3], v[4]});
    } else {
      throw GeometryError("chain entry must be {\"seg\":...} or {\"arc\":...}");
    }
  }
  return chain;
}

DirichletPiece piece_from_json(const json& j) {
  const json& kind_field = field(j, "kind");
  if (!kind_field.is_string()) throw GeometryError("Dirichlet 'kind' must be a string");
  const auto kind = kind_field.get<std::string>();
  if (kind == "boundary_arc") {
    return BoundaryArc{static_cast<int>(number(j, "chain")), number(j, "from"), number(j, "to")};
  }
  if (kind == "disk") return ClosedDisk{point_from(field(j, "center"), "center"), number(j, "radius")};
  if (kind == "segment") return InteriorSegment{point_from(field(j, "a"), "a"), point_from(field(j, "b"), "b")};
  if (kind == "edge") return PolygonEdge{static_cast<int>(number(j, "index"))};
  throw GeometryError("unknown Dirichlet kind '" + kind + "'");
}

}  // namespace

json domain_to_json(const DomainSpec& spec) {
  json doc;
  doc["name"] = spec.name;
  doc["outer"] = chain_to_json(spec.outer);
  doc["holes"] = json::array();
  for (const auto& h : spec.holes) doc["holes"].push_back(chain_to_json(h));
  doc["dirichlet"] = json::array();
  for (const auto& piece : spec.dirichlet) {
    json p;
    if (const auto* a = std::get_if<BoundaryArc>(&piece)) {
      p = {{"kind", "boundary_arc"}, {"chain", a->chain}, {"from", a->from}, {"to", a->to}};
    } else if (const auto* d = std::get_if<ClosedDisk>(&piece)) {
      p = {{"kind", "disk"}, {"center", point(d->center)}, {"radius", d->radius}};
    } else if (const auto* s = std::get_if<InteriorSegment>(&piece)) {
      p = {{"kind", "segment"}, {"a", point(s->a)}, {"b", point(s->b)}};
    } else {
      p = {{"kind", "edge"}, {"index", std::get<PolygonEdge>(piece).index}};
    }
    doc["dirichlet"].push_back(p);
  }
  if (!spec.seeds.empty()) {
    doc["seeds"] = json::array();
    for (const auto& s : spec.seeds) doc["seeds"].push_back(point(s));
  }
  if (!spec.mirrors.empty()) {
    doc["mirrors"] = json::array();
    for (const auto& m : spec.mirrors) doc["mirrors"].push_back({{"axis", m.axis}, {"offset", m.offset}});
    doc["fundamental"] = domain_to_json(spec.fundamental.at(0));
  }
  return doc;
}

DomainSpec domain_from_json(const json& doc) {
  if (!doc.is_object()) throw GeometryError("domain document must be a JSON object");
  if (doc.contains("example")) {
    if (!doc.at("example").is_string()) throw GeometryError("'example' must be a string");
    std::vector<double> params;
    if (doc.contains("params")) {
      if (!doc.at("params").is_array()) throw GeometryError("'params' must be an array");
      for (const auto& x : doc.at("params")) {
        if (!x.is_number()) throw GeometryError("'params' must hold numbers");
        params.push_back(x.get<double>());
      }
    }
    return make_example(doc.at("example").get<std::string>(), params);
  }
  DomainSpec spec;
  if (doc.contains("name")) spec.name = doc.at("name").get<std::string>();
  spec.outer = chain_from_json(field(doc, "outer"));
  if (doc.contains("holes")) {
    for (const auto& h : doc.at("holes")) spec.holes.push_back(chain_from_json(h));
  }
  if (doc.contains("dirichlet")) {
    for (const auto& p : doc.at("dirichlet")) spec.dirichlet.push_back(piece_from_json(p));
  }
  if (doc.contains("seeds")) {
    for (const auto& s : doc.at("seeds")) spec.seeds.push_back(point_from(s, "seed"));
  }
  if (doc.contains("mirrors")) {
    for (const auto& m : doc.at("mirrors")) {
      const auto& axis = field(m, "axis");
      const auto& offset = field(m, "offset");
      if (!axis.is_number_integer() || !offset.is_number()) throw GeometryError("mirror needs integer 'axis' and numeric 'offset'");
      spec.mirrors.push_back({axis.get<int>(), offset.get<double>()});
    }
    spec.fundamental.push_back(domain_from_json(field(doc, "fundamental")));
  }
  validate(spec);
  return spec;
}

}  // namespace hotspots::geometry

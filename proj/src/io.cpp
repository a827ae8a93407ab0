#include "treeinv/io.hpp"

#include <sstream>

#include "treeinv/error.hpp"

namespace treeinv::io {

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

Json to_json(const Portrait& h) {
  Json map = Json::object();
  for (std::size_t i = 0; i < h.size(); ++i) {
    map[Address::from_index(i).str()] = Address::from_index(h.image(i)).str();
  }
  return Json{{"depth", h.depth()}, {"map", std::move(map)}};
}

Portrait portrait_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("depth") || !j.contains("map")) {
    throw Error(Errc::ParseError, "portrait needs 'depth' and 'map'");
  }
  if (!j["depth"].is_number_integer()) throw Error(Errc::ParseError, "'depth' must be an integer");
  const auto depth = j["depth"].get<std::int64_t>();
  if (depth < 0 || depth > 24) throw Error(Errc::InvalidPortrait, "depth out of range");
  const Json& map = j["map"];
  if (!map.is_object()) throw Error(Errc::ParseError, "'map' must be an object");
  const int d = static_cast<int>(depth);
  const std::size_t n = ball_size(d);
  if (map.size() != n) {
    throw Error(Errc::InvalidPortrait, "map has " + std::to_string(map.size()) + " entries, B(e," +
                                           std::to_string(d) + ") has " + std::to_string(n));
  }
  std::vector<std::uint32_t> images(n, UINT32_MAX);
  for (const auto& [key, value] : map.items()) {
    if (!value.is_string()) throw Error(Errc::ParseError, "image of '" + key + "' is not a string");
    const Address from = Address::parse(key);
    const Address to = Address::parse(value.get<std::string>());
    if (from.level() > d || to.level() > d) {
      throw Error(Errc::InvalidPortrait, "'" + key + "' maps outside B(e," + std::to_string(d) + ")");
    }
    if (images[from.index()] != UINT32_MAX) throw Error(Errc::InvalidPortrait, "duplicate key '" + key + "'");
    images[from.index()] = static_cast<std::uint32_t>(to.index());
  }
  return Portrait::from_images(d, std::move(images));
}

Portrait portrait_from_string(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(Errc::ParseError, e.what());
  }
  return portrait_from_json(j);
}

Json to_json(const SearchReport& r) {
  Json found = Json::array();
  for (const auto& h : r.found) found.push_back(to_json(h));
  return Json{{"depth", r.depth},
              {"k", r.k},
              {"predicate", r.predicate},
              {"expanded", r.expanded},
              {"exhaustive", r.exhaustive},
              {"budget_exhausted", r.budget_exhausted},
              {"found_count", r.found_count},
              {"found", std::move(found)}};
}

Json to_json(const MinOrderResult& r) {
  Json j{{"depth", r.depth},
         {"k", r.k},
         {"order", r.order},
         {"lower_bound", r.lower_bound},
         {"lower_bound_exhaustive", r.lower_bound_exhaustive},
         {"saturated", r.saturated},
         {"budget_exhausted", r.budget_exhausted},
         {"expanded", r.expanded}};
  j["witness"] = r.witness ? to_json(*r.witness) : Json(nullptr);
  return j;
}

Json to_json(const LocalTestResult& r) {
  return Json{{"center", r.center.str()},
              {"radius", r.radius},
              {"period", r.period},
              {"witnesses", r.witnesses},
              {"passed", r.passed}};
}

std::vector<std::vector<std::uint64_t>> cycle_type_table(const Portrait& h) {
  std::vector<std::vector<std::uint64_t>> rows;
  for (int n = 0; n <= h.depth(); ++n) rows.push_back(sphere_cycle_type(h, n));
  return rows;
}

namespace {

std::string join(const std::vector<std::uint64_t>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i > 0) out += ',';
    out += std::to_string(v[i]);
  }
  return out;
}

}  // namespace

std::string cycle_type_text(const Portrait& h) {
  std::string out;
  const auto rows = cycle_type_table(h);
  for (std::size_t n = 0; n < rows.size(); ++n) out += std::to_string(n) + ": " + join(rows[n]) + "\n";
  return out;
}

std::string cycle_type_csv(const Portrait& h) {
  std::string out = "n,cycle_type\n";
  const auto rows = cycle_type_table(h);
  for (std::size_t n = 0; n < rows.size(); ++n) out += std::to_string(n) + ",\"" + join(rows[n]) + "\"\n";
  return out;
}

std::string gadget_name(const gadget::GadgetComplex& c, int g) {
  const std::string& id = c.gadget(g).id;
  return id.empty() ? "base" : id;
}

std::string node_name(const gadget::GadgetComplex& c, int node) {
  return gadget::role_name(gadget::GadgetComplex::role_of(node)) + "@" +
         gadget_name(c, gadget::GadgetComplex::gadget_of(node));
}

Json to_json(const gadget::GadgetComplex& c) {
  using gadget::GadgetComplex;
  Json gadgets = Json::array();
  for (int g = 0; g < static_cast<int>(c.gadget_count()); ++g) {
    const auto& x = c.gadget(g);
    auto name_or_null = [&c](int h) { return h < 0 ? Json(nullptr) : Json(gadget_name(c, h)); };
    gadgets.push_back(Json{{"id", gadget_name(c, g)},
                           {"distance", x.distance},
                           {"parent", name_or_null(x.parent)},
                           {"green", name_or_null(x.green)},
                           {"children", Json::array({name_or_null(x.children[0]), name_or_null(x.children[1])})}});
  }
  Json nodes = Json::array();
  for (int v = 0; v < static_cast<int>(c.node_count()); ++v) {
    nodes.push_back(Json{{"name", node_name(c, v)},
                         {"gadget", gadget_name(c, GadgetComplex::gadget_of(v))},
                         {"color", gadget::to_string(GadgetComplex::color(v))}});
  }
  Json arcs = Json::array();
  for (const auto& a : c.arcs()) {
    arcs.push_back(Json{{"from", node_name(c, a.from)}, {"to", node_name(c, a.to)}, {"color", gadget::to_string(a.color)}});
  }
  return Json{{"radius", c.radius()},
              {"anchoring", c.anchoring() == gadget::Anchoring::Standard ? "standard" : "swapped"},
              {"gadget_count", c.gadget_count()},
              {"node_count", c.node_count()},
              {"arc_count", c.arcs().size()},
              {"gadgets", std::move(gadgets)},
              {"nodes", std::move(nodes)},
              {"arcs", std::move(arcs)}};
}

std::string to_dot(const gadget::GadgetComplex& c) {
  using gadget::GadgetComplex;
  std::ostringstream out;
  out << "digraph sigma {\n  node [style=filled, fontsize=9];\n";
  for (int g = 0; g < static_cast<int>(c.gadget_count()); ++g) {
    out << "  subgraph \"cluster_" << gadget_name(c, g) << "\" {\n    label=\"" << gadget_name(c, g) << "\";\n";
    for (int r = 0; r < gadget::kNodesPerGadget; ++r) {
      const int v = GadgetComplex::node(g, r);
      const bool black = GadgetComplex::color(v) == gadget::NodeColor::Black;
      out << "    \"" << node_name(c, v) << "\" [label=\"" << gadget::role_name(r) << "\", fillcolor="
          << (black ? "black, fontcolor=white" : "lightblue") << "];\n";
    }
    out << "  }\n";
  }
  for (const auto& a : c.arcs()) {
    const char* color = a.color == gadget::ArcColor::Internal ? "gray30"
                        : a.color == gadget::ArcColor::Red    ? "red"
                                                              : "darkgreen";
    out << "  \"" << node_name(c, a.from) << "\" -> \"" << node_name(c, a.to) << "\" [color=" << color << "];\n";
  }
  out << "}\n";
  return out.str();
}

Json to_json(const gadget::GadgetComplex& c, const gadget::ColorAutomorphism& f) {
  Json map = Json::object();
  for (std::size_t i = 0; i < f.domain.size(); ++i) map[node_name(c, f.domain[i])] = node_name(c, f.image[i]);
  return map;
}

Json to_json(const gadget::BlueSwapReport& r) {
  return Json{{"gadget", r.gadget},
              {"maps", r.maps},
              {"blue_swap_maps", r.blue_swap_maps},
              {"blue_fix_maps", r.blue_fix_maps},
              {"black_cycle_types", r.black_cycle_types},
              {"grandchildren_orders", r.grandchildren_orders},
              {"children_swapped", r.children_swapped},
              {"blue_fix_rotations", r.blue_fix_rotations},
              {"blue_fix_consistent", r.blue_fix_consistent},
              {"identity_seen", r.identity_seen},
              {"expanded", r.expanded},
              {"holds", r.holds()}};
}

Json to_json(const gadget::EdgeSwapReport& r) {
  return Json{{"first", r.first},
              {"second", r.second},
              {"edge_color", gadget::to_string(r.edge_color)},
              {"maps", r.maps},
              {"orders", r.orders},
              {"expanded", r.expanded},
              {"holds", r.holds()}};
}

Json to_json(const gadget::TorsionReport& r) {
  auto cases = [](const std::vector<gadget::TorsionCenter>& v) {
    Json out = Json::array();
    for (const auto& t : v) {
      out.push_back(Json{{"center", t.center},
                         {"maps", t.maps},
                         {"min_order", t.min_order},
                         {"involutions", t.involutions},
                         {"expanded", t.expanded}});
    }
    return out;
  };
  return Json{{"radius", r.radius},
              {"expanded", r.expanded},
              {"exhaustive", r.exhaustive},
              {"involution_candidates", r.involution_candidates()},
              {"min_order", r.min_order()},
              {"vertex_cases", cases(r.vertex_cases)},
              {"edge_cases", cases(r.edge_cases)}};
}

}  // namespace treeinv::io

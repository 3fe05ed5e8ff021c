#pragma once

// Structured-text (JSON) schemas, all tagged {"format": 1, "kind": ...}, and
// DOT exports. Parsing reports the JSON location of the first violation.

#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "normtori/error.hpp"
#include "normtori/normal_graph.hpp"
#include "normtori/normalize.hpp"
#include "normtori/position.hpp"
#include "normtori/sphere_graph.hpp"

namespace normtori {

using Json = nlohmann::json;

inline constexpr int kFormatVersion = 1;

namespace detail {

inline const Json& field(const Json& j, const char* key, const std::string& where) {
  if (!j.is_object()) throw ParseError(where + ": expected an object");
  const auto it = j.find(key);
  if (it == j.end()) throw ParseError(where + "." + key + ": missing");
  return *it;
}

inline int int_field(const Json& j, const char* key, const std::string& where) {
  const auto& v = field(j, key, where);
  if (!v.is_number_integer()) throw ParseError(where + "." + key + ": expected an integer");
  return v.get<int>();
}

inline std::string str_field(const Json& j, const char* key, const std::string& where) {
  const auto& v = field(j, key, where);
  if (!v.is_string()) throw ParseError(where + "." + key + ": expected a string");
  return v.get<std::string>();
}

inline const Json& array_field(const Json& j, const char* key, const std::string& where) {
  const auto& v = field(j, key, where);
  if (!v.is_array()) throw ParseError(where + "." + key + ": expected an array");
  return v;
}

inline Side parse_side(const Json& v, const std::string& where) {
  if (v == "A") return Side::A;
  if (v == "B") return Side::B;
  throw ParseError(where + ": expected \"A\" or \"B\"");
}

inline std::string side_str(Side s) { return s == Side::A ? "A" : "B"; }

inline void check_header(const Json& j, const char* kind, const std::string& where) {
  if (j.contains("format") && j["format"] != kFormatVersion)
    throw ParseError(where + ".format: unsupported version");
  if (j.contains("kind") && j["kind"] != kind)
    throw ParseError(where + ".kind: expected \"" + std::string(kind) + "\"");
}

inline Json half_edge_json(const SphereGraph& g, HalfEdge h) {
  return {{"edge", g.edges[h.edge].id}, {"end", h.end}};
}

inline HalfEdge parse_half_edge(const SphereGraph& g, const Json& j, const std::string& where) {
  const auto id = str_field(j, "edge", where);
  const int e = g.find_edge(id);
  if (e < 0) throw ParseError(where + ".edge: unknown sphere '" + id + "'");
  const int end = int_field(j, "end", where);
  if (end != 0 && end != 1) throw ParseError(where + ".end: expected 0 or 1");
  return {e, end};
}

}  // namespace detail

inline Json to_json(const SphereGraph& g) {
  Json edges = Json::array();
  for (const auto& e : g.edges) {
    Json ends = Json::array();
    for (const auto& x : e.ends) ends.push_back({{"p", g.p_vertices.at(x.p)}, {"slot", x.slot}});
    edges.push_back({{"id", e.id}, {"ends", ends}});
  }
  return {{"format", kFormatVersion}, {"kind", "sphere_graph"}, {"rank", g.rank},
          {"p_vertices", g.p_vertices}, {"edges", edges}};
}

inline SphereGraph graph_from_json(const Json& j, const std::string& where = "$") {
  detail::check_header(j, "sphere_graph", where);
  SphereGraph g;
  g.rank = detail::int_field(j, "rank", where);
  const auto& ps = detail::array_field(j, "p_vertices", where);
  for (std::size_t i = 0; i < ps.size(); ++i) {
    if (!ps[i].is_string()) throw ParseError(where + ".p_vertices[" + std::to_string(i) + "]: expected a string");
    g.p_vertices.push_back(ps[i].get<std::string>());
  }
  const auto& es = detail::array_field(j, "edges", where);
  for (std::size_t i = 0; i < es.size(); ++i) {
    const auto w = where + ".edges[" + std::to_string(i) + "]";
    SphereEdge e;
    e.id = detail::str_field(es[i], "id", w);
    const auto& ends = detail::array_field(es[i], "ends", w);
    if (ends.size() != 2) throw ParseError(w + ".ends: expected two ends");
    for (int k = 0; k < 2; ++k) {
      const auto wk = w + ".ends[" + std::to_string(k) + "]";
      const auto p = detail::str_field(ends[k], "p", wk);
      const int pi = g.find_vertex(p);
      if (pi < 0) throw ParseError(wk + ".p: unknown P-vertex '" + p + "'");
      e.ends[k] = {pi, detail::int_field(ends[k], "slot", wk)};
    }
    g.edges.push_back(e);
  }
  return g;
}

inline Json to_json(const TorusPosition& t) {
  const auto& g = t.graph;
  Json pieces = Json::array();
  for (const auto& [pid, p] : t.pieces) {
    Json boundary = Json::array();
    for (const auto& s : p.boundary)
      boundary.push_back({{"circle", s.circle},
                          {"half_edge", detail::half_edge_json(g, s.half_edge)},
                          {"facing", detail::side_str(s.facing)}});
    Json unc = Json::array();
    for (const auto& [h, s] : p.uncrossed_sides)
      unc.push_back({{"half_edge", detail::half_edge_json(g, h)}, {"side", detail::side_str(s)}});
    pieces.push_back({{"id", pid}, {"pants", g.p_vertices.at(p.pants)}, {"genus", p.genus},
                      {"boundary", boundary}, {"uncrossed_sides", unc}});
  }
  Json circles = Json::array();
  for (const auto& [cid, c] : t.circles)
    circles.push_back({{"id", cid}, {"sphere", g.edges.at(c.sphere).id}, {"regions", c.regions}});
  Json trees = Json::array();
  for (int e = 0; e < g.edge_count(); ++e) {
    Json nodes = Json::array();
    for (const auto& [rid, s] : t.regions)
      if (s == e) nodes.push_back(rid);
    trees.push_back({{"sphere", g.edges[e].id}, {"nodes", nodes}});
  }
  Json transport = Json::object();
  for (const auto& [cid, b] : t.side_transport) transport[cid] = b;
  return {{"format", kFormatVersion}, {"kind", "torus_position"}, {"graph", to_json(g)},
          {"pieces", pieces}, {"circles", circles}, {"region_trees", trees}, {"side_transport", transport}};
}

inline TorusPosition position_from_json(const Json& j, const std::string& where = "$") {
  detail::check_header(j, "torus_position", where);
  TorusPosition t;
  t.graph = graph_from_json(detail::field(j, "graph", where), where + ".graph");
  const auto& g = t.graph;
  const auto& trees = detail::array_field(j, "region_trees", where);
  for (std::size_t i = 0; i < trees.size(); ++i) {
    const auto w = where + ".region_trees[" + std::to_string(i) + "]";
    const auto sid = detail::str_field(trees[i], "sphere", w);
    const int e = g.find_edge(sid);
    if (e < 0) throw ParseError(w + ".sphere: unknown sphere '" + sid + "'");
    for (const auto& n : detail::array_field(trees[i], "nodes", w)) {
      if (!n.is_string()) throw ParseError(w + ".nodes: expected strings");
      if (!t.regions.emplace(n.get<std::string>(), e).second)
        throw ParseError(w + ".nodes: region '" + n.get<std::string>() + "' listed twice");
    }
  }
  const auto& cs = detail::array_field(j, "circles", where);
  for (std::size_t i = 0; i < cs.size(); ++i) {
    const auto w = where + ".circles[" + std::to_string(i) + "]";
    Circle c;
    c.id = detail::str_field(cs[i], "id", w);
    const auto sid = detail::str_field(cs[i], "sphere", w);
    c.sphere = g.find_edge(sid);
    if (c.sphere < 0) throw ParseError(w + ".sphere: unknown sphere '" + sid + "'");
    const auto& rs = detail::array_field(cs[i], "regions", w);
    if (rs.size() != 2 || !rs[0].is_string() || !rs[1].is_string())
      throw ParseError(w + ".regions: expected two region ids");
    c.regions = {rs[0].get<std::string>(), rs[1].get<std::string>()};
    if (!t.circles.emplace(c.id, c).second) throw ParseError(w + ".id: duplicate circle '" + c.id + "'");
  }
  const auto& ps = detail::array_field(j, "pieces", where);
  for (std::size_t i = 0; i < ps.size(); ++i) {
    const auto w = where + ".pieces[" + std::to_string(i) + "]";
    Piece p;
    p.id = detail::str_field(ps[i], "id", w);
    const auto pants = detail::str_field(ps[i], "pants", w);
    p.pants = g.find_vertex(pants);
    if (p.pants < 0) throw ParseError(w + ".pants: unknown P-vertex '" + pants + "'");
    p.genus = detail::int_field(ps[i], "genus", w);
    const auto& bs = detail::array_field(ps[i], "boundary", w);
    for (std::size_t k = 0; k < bs.size(); ++k) {
      const auto wk = w + ".boundary[" + std::to_string(k) + "]";
      BoundarySlot s;
      s.circle = detail::str_field(bs[k], "circle", wk);
      s.half_edge = detail::parse_half_edge(g, detail::field(bs[k], "half_edge", wk), wk + ".half_edge");
      s.facing = detail::parse_side(detail::field(bs[k], "facing", wk), wk + ".facing");
      p.boundary.push_back(s);
    }
    const auto& us = detail::array_field(ps[i], "uncrossed_sides", w);
    for (std::size_t k = 0; k < us.size(); ++k) {
      const auto wk = w + ".uncrossed_sides[" + std::to_string(k) + "]";
      const auto h = detail::parse_half_edge(g, detail::field(us[k], "half_edge", wk), wk + ".half_edge");
      p.uncrossed_sides[h] = detail::parse_side(detail::field(us[k], "side", wk), wk + ".side");
    }
    if (!t.pieces.emplace(p.id, p).second) throw ParseError(w + ".id: duplicate piece '" + p.id + "'");
  }
  const auto& tr = detail::field(j, "side_transport", where);
  if (!tr.is_object()) throw ParseError(where + ".side_transport: expected an object");
  for (const auto& [cid, b] : tr.items()) {
    if (!b.is_boolean()) throw ParseError(where + ".side_transport." + cid + ": expected a boolean");
    t.side_transport[cid] = b.get<bool>();
  }
  return t;
}

inline Json to_json(const NormalTorus& nt) {
  const auto& g = nt.graph;
  Json nodes = Json::array();
  for (const auto& n : nt.nodes)
    nodes.push_back({{"piece", n.piece}, {"pants", g.p_vertices.at(n.pants)}, {"kind", kind_name(n.kind)},
                     {"type", static_cast<int>(n.kind)}});
  Json edges = Json::array();
  for (const auto& e : nt.edges)
    edges.push_back({{"circle", e.circle},
                     {"sphere", g.edges.at(e.sphere).id},
                     {"nodes", {nt.nodes.at(e.nodes[0]).piece, nt.nodes.at(e.nodes[1]).piece}},
                     {"transport", e.transport}});
  Json leaves = Json::array();
  for (const auto& l : nt.leaves)
    leaves.push_back({{"piece", nt.nodes.at(l.node).piece},
                      {"half_edge", detail::half_edge_json(g, l.half_edge)},
                      {"label", detail::side_str(l.label)}});
  return {{"format", kFormatVersion}, {"kind", "normal_torus"}, {"graph", to_json(g)},
          {"y_nodes", nodes}, {"crossing_edges", edges}, {"leaves", leaves}};
}

inline NormalTorus normal_torus_from_json(const Json& j, const std::string& where = "$") {
  NormalTorus nt;
  nt.graph = graph_from_json(detail::field(j, "graph", where), where + ".graph");
  const auto& g = nt.graph;
  const auto& ns = detail::array_field(j, "y_nodes", where);
  for (std::size_t i = 0; i < ns.size(); ++i) {
    const auto w = where + ".y_nodes[" + std::to_string(i) + "]";
    YNode n;
    n.piece = detail::str_field(ns[i], "piece", w);
    n.pants = g.find_vertex(detail::str_field(ns[i], "pants", w));
    if (n.pants < 0) throw ParseError(w + ".pants: unknown P-vertex");
    const int type = detail::int_field(ns[i], "type", w);
    if (type < 1 || type > 3) throw ParseError(w + ".type: expected 1, 2 or 3");
    n.kind = static_cast<PieceKind>(type);
    nt.nodes.push_back(n);
  }
  auto node_of = [&](const Json& v, const std::string& w) {
    if (!v.is_string()) throw ParseError(w + ": expected a piece id");
    const int k = nt.find_node(v.get<std::string>());
    if (k < 0) throw ParseError(w + ": unknown piece '" + v.get<std::string>() + "'");
    return k;
  };
  const auto& es = detail::array_field(j, "crossing_edges", where);
  for (std::size_t i = 0; i < es.size(); ++i) {
    const auto w = where + ".crossing_edges[" + std::to_string(i) + "]";
    CrossingEdge e;
    e.circle = detail::str_field(es[i], "circle", w);
    e.sphere = g.find_edge(detail::str_field(es[i], "sphere", w));
    if (e.sphere < 0) throw ParseError(w + ".sphere: unknown sphere");
    const auto& nn = detail::array_field(es[i], "nodes", w);
    if (nn.size() != 2) throw ParseError(w + ".nodes: expected two pieces");
    e.nodes = {node_of(nn[0], w + ".nodes[0]"), node_of(nn[1], w + ".nodes[1]")};
    const auto& tr = detail::field(es[i], "transport", w);
    if (!tr.is_boolean()) throw ParseError(w + ".transport: expected a boolean");
    e.transport = tr.get<bool>();
    nt.edges.push_back(e);
  }
  const auto& ls = detail::array_field(j, "leaves", where);
  for (std::size_t i = 0; i < ls.size(); ++i) {
    const auto w = where + ".leaves[" + std::to_string(i) + "]";
    LeafStub l;
    l.node = node_of(detail::field(ls[i], "piece", w), w + ".piece");
    l.half_edge = detail::parse_half_edge(g, detail::field(ls[i], "half_edge", w), w + ".half_edge");
    l.label = detail::parse_side(detail::field(ls[i], "label", w), w + ".label");
    nt.leaves.push_back(l);
  }
  if (const auto diag = validate_normal_torus(nt); !diag.empty())
    throw ParseError(where + ": " + join(diag, "; "));
  return nt;
}

inline Json to_json(const DecoratedGraph& d) {
  Json j = to_json(d.torus);
  j["kind"] = "decorated_graph";
  for (std::size_t i = 0; i < d.signs.size(); ++i) j["leaves"][i]["sign"] = std::string(1, sign_char(d.signs[i]));
  return j;
}

inline DecoratedGraph decorated_from_json(const Json& j, const std::string& where = "$") {
  detail::check_header(j, "decorated_graph", where);
  DecoratedGraph d;
  d.torus = normal_torus_from_json(j, where);
  const auto& ls = detail::array_field(j, "leaves", where);
  for (std::size_t i = 0; i < ls.size(); ++i) {
    const auto w = where + ".leaves[" + std::to_string(i) + "]";
    const auto s = detail::str_field(ls[i], "sign", w);
    if (s != "+" && s != "-") throw ParseError(w + ".sign: expected \"+\" or \"-\"");
    d.signs.push_back(s == "+" ? Sign::Plus : Sign::Minus);
  }
  return d;
}

inline Json to_json(const SphereGraph& g, const TraceStep& s) {
  Json j = {{"move", describe(g, s.move)}, {"before", s.before}, {"after", s.after}};
  if (const auto* m = std::get_if<SlideMove>(&s.move)) {
    j["variant"] = "slide";
    j["piece"] = m->piece;
    j["half_edge"] = detail::half_edge_json(g, m->half_edge);
    j["circles"] = {m->first, m->second};
    j["region"] = m->region;
  } else {
    const auto& c = std::get<CapMove>(s.move);
    j["variant"] = "cap";
    j["piece"] = c.disk;
    j["circles"] = {c.circle};
  }
  return j;
}

inline Json to_json(const NormalizeResult& r) {
  Json trace = Json::array();
  for (const auto& s : r.trace) trace.push_back(to_json(r.position.graph, s));
  return {{"format", kFormatVersion}, {"kind", "normalized_torus"}, {"position", to_json(r.position)},
          {"normal_torus", to_json(r.torus)}, {"intersection_vector", intersection_vector(r.position)},
          {"total_intersections", total_intersections(r.position)}, {"trace", trace}};
}

/// Accepts a bare position or any document embedding one under "position".
inline TorusPosition position_from_document(const Json& j) {
  if (j.is_object() && j.contains("position")) return position_from_json(j["position"], "$.position");
  return position_from_json(j);
}

inline Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw ParseError(path + ": " + e.what());
  }
}

inline std::string position_to_dot(const TorusPosition& t) {
  const auto& g = t.graph;
  std::ostringstream os;
  os << "graph pieces {\n";
  for (const auto& [pid, p] : t.pieces)
    os << "  \"" << pid << "\" [label=\"" << pid << "\\n" << g.p_vertices[p.pants] << " b=" << p.boundary.size()
       << (p.genus ? " g=" + std::to_string(p.genus) : std::string()) << "\"];\n";
  for (const auto& [cid, ce] : circle_ends(t))
    os << "  \"" << ce.piece[0] << "\" -- \"" << ce.piece[1] << "\" [label=\"" << cid << " ("
       << g.edges[t.circles.count(cid) ? t.circles.at(cid).sphere : 0].id << ")\"];\n";
  os << "}\n";
  return os.str();
}

/// Type-1/2/3 nodes drawn as triangles/boxes/ellipses; leaves carry their sign.
inline std::string decorated_to_dot(const DecoratedGraph& d) {
  const auto& nt = d.torus;
  const auto& g = nt.graph;
  std::ostringstream os;
  os << "graph decorated {\n";
  for (const auto& n : nt.nodes) {
    const char* shape = n.kind == PieceKind::Disk ? "triangle" : n.kind == PieceKind::Cylinder ? "box" : "ellipse";
    os << "  \"" << n.piece << "\" [shape=" << shape << ", label=\"" << n.piece << "\\n"
       << g.p_vertices[n.pants] << " type-" << static_cast<int>(n.kind) << "\"];\n";
  }
  for (const auto& e : nt.edges)
    os << "  \"" << nt.nodes[e.nodes[0]].piece << "\" -- \"" << nt.nodes[e.nodes[1]].piece << "\" [label=\""
       << e.circle << " (" << g.edges[e.sphere].id << ")\"];\n";
  for (std::size_t i = 0; i < nt.leaves.size(); ++i) {
    const auto& l = nt.leaves[i];
    const std::string leaf = "leaf" + std::to_string(i);
    os << "  \"" << leaf << "\" [shape=plaintext, label=\""
       << (d.signs.empty() ? '?' : sign_char(d.signs[i])) << "\"];\n";
    os << "  \"" << nt.nodes[l.node].piece << "\" -- \"" << leaf << "\" [label=\"" << g.half_edge_name(l.half_edge)
       << "\", style=dashed];\n";
  }
  os << "}\n";
  return os.str();
}

}  // namespace normtori

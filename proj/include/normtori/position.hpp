#pragma once

// A torus position relative to the sphere system: pieces inside pants,
// intersection circles on spheres, the region tree of each sphere, and
// co-orientation data.
//
// Side data. Every piece separates its pants into two sides labelled A and B
// (labels are local to the piece). A sphere the piece does not cross lies on
// one side, recorded in `uncrossed_sides`. For a crossed sphere, each boundary
// slot records `facing`: the side of the piece containing the collar of the
// circle's first region, regions[0], on this pants' side of the sphere.
// `side_transport[c]` says whether label A on one side of c continues to
// label A on the other; it must agree with the facings at both ends.

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "normtori/error.hpp"
#include "normtori/sphere_graph.hpp"

namespace normtori {

enum class Side : std::uint8_t { A, B };

[[nodiscard]] inline Side flip(Side s) { return s == Side::A ? Side::B : Side::A; }
[[nodiscard]] inline Side flip_if(Side s, bool f) { return f ? flip(s) : s; }
[[nodiscard]] inline char side_char(Side s) { return s == Side::A ? 'A' : 'B'; }

struct BoundarySlot {
  std::string circle;
  HalfEdge half_edge;
  Side facing = Side::A;
  friend bool operator==(const BoundarySlot&, const BoundarySlot&) = default;
};

struct Piece {
  std::string id;
  int pants = 0;
  int genus = 0;
  std::vector<BoundarySlot> boundary;
  std::map<HalfEdge, Side> uncrossed_sides;

  [[nodiscard]] int euler_characteristic() const {
    return 2 - 2 * genus - static_cast<int>(boundary.size());
  }
  [[nodiscard]] bool crosses(HalfEdge h) const {
    return std::any_of(boundary.begin(), boundary.end(), [&](const auto& s) { return s.half_edge == h; });
  }
  friend bool operator==(const Piece&, const Piece&) = default;
};

struct Circle {
  std::string id;
  int sphere = 0;
  std::array<std::string, 2> regions;

  [[nodiscard]] const std::string& other_region(const std::string& r) const {
    return regions[0] == r ? regions[1] : regions[0];
  }
  friend bool operator==(const Circle&, const Circle&) = default;
};

struct TorusPosition {
  SphereGraph graph;
  std::map<std::string, Piece> pieces;
  std::map<std::string, Circle> circles;
  std::map<std::string, int> regions;  // region-tree node -> sphere edge
  std::map<std::string, bool> side_transport;

  friend bool operator==(const TorusPosition&, const TorusPosition&) = default;
};

/// Where a circle is glued: the piece holding the slot at each end of its sphere.
struct CircleEnds {
  std::array<std::string, 2> piece;
  std::array<int, 2> count{0, 0};
};

inline std::map<std::string, CircleEnds> circle_ends(const TorusPosition& t) {
  std::map<std::string, CircleEnds> out;
  for (const auto& [pid, p] : t.pieces)
    for (const auto& s : p.boundary) {
      auto& ce = out[s.circle];
      const int end = s.half_edge.end & 1;
      ce.piece[end] = pid;
      ++ce.count[end];
    }
  return out;
}

/// Region adjacency on one sphere: region -> (circle, neighbour region).
using RegionAdjacency = std::map<std::string, std::vector<std::pair<std::string, std::string>>>;

inline RegionAdjacency region_adjacency(const TorusPosition& t, int sphere) {
  RegionAdjacency adj;
  for (const auto& [rid, s] : t.regions)
    if (s == sphere) adj[rid];
  for (const auto& [cid, c] : t.circles) {
    if (c.sphere != sphere) continue;
    adj[c.regions[0]].emplace_back(cid, c.regions[1]);
    adj[c.regions[1]].emplace_back(cid, c.regions[0]);
  }
  return adj;
}

inline int incident_circle_count(const TorusPosition& t, const std::string& region) {
  int n = 0;
  for (const auto& [cid, c] : t.circles)
    n += static_cast<int>(c.regions[0] == region) + static_cast<int>(c.regions[1] == region);
  return n;
}

/// Side of `piece` containing each region collar of the sphere at `h`, seen
/// from h's pants. Uniform when the piece does not cross h; otherwise
/// propagated through the region tree, flipping at the piece's own circles.
/// Regions unreachable from the seed are omitted.
inline std::map<std::string, Side> region_sides(const TorusPosition& t, const Piece& piece, HalfEdge h) {
  std::map<std::string, Side> out;
  std::set<std::string> own;
  const BoundarySlot* seed = nullptr;
  for (const auto& s : piece.boundary)
    if (s.half_edge == h) {
      own.insert(s.circle);
      if (!seed) seed = &s;
    }
  if (!seed) {
    const auto it = piece.uncrossed_sides.find(h);
    if (it == piece.uncrossed_sides.end()) return out;
    for (const auto& [rid, s] : t.regions)
      if (s == h.edge) out[rid] = it->second;
    return out;
  }
  const auto cit = t.circles.find(seed->circle);
  if (cit == t.circles.end()) return out;
  const auto adj = region_adjacency(t, h.edge);
  std::vector<std::string> stack{cit->second.regions[0]};
  out[cit->second.regions[0]] = seed->facing;
  while (!stack.empty()) {
    const std::string r = stack.back();
    stack.pop_back();
    const auto ait = adj.find(r);
    if (ait == adj.end()) continue;
    for (const auto& [cid, nb] : ait->second) {
      if (out.count(nb)) continue;
      out[nb] = flip_if(out[r], own.count(cid) > 0);
      stack.push_back(nb);
    }
  }
  return out;
}

inline Side side_toward(const TorusPosition& t, const Piece& piece, HalfEdge h, const std::string& region) {
  const auto sides = region_sides(t, piece, h);
  const auto it = sides.find(region);
  if (it == sides.end()) throw Error("region " + region + " not on the sphere of piece " + piece.id);
  return it->second;
}

/// Transport bit implied by the facings at both ends of each circle.
inline std::map<std::string, bool> derived_transport(const TorusPosition& t) {
  std::map<std::string, std::array<Side, 2>> facing;
  for (const auto& [pid, p] : t.pieces)
    for (const auto& s : p.boundary) facing[s.circle][s.half_edge.end & 1] = s.facing;
  std::map<std::string, bool> out;
  for (const auto& [cid, f] : facing) out[cid] = f[0] == f[1];
  return out;
}

inline int euler_characteristic(const TorusPosition& t) {
  int chi = 0;
  for (const auto& [id, p] : t.pieces) chi += p.euler_characteristic();
  return chi;
}

/// Circle count per sphere edge, indexed like graph.edges.
inline std::vector<int> intersection_vector(const TorusPosition& t) {
  std::vector<int> out(t.graph.edge_count(), 0);
  for (const auto& [cid, c] : t.circles)
    if (c.sphere >= 0 && c.sphere < t.graph.edge_count()) ++out[c.sphere];
  return out;
}

inline int total_intersections(const TorusPosition& t) { return static_cast<int>(t.circles.size()); }

inline std::string format_counts(const SphereGraph& g, const std::vector<int>& counts) {
  std::string s = "{";
  for (std::size_t e = 0; e < counts.size(); ++e) {
    if (e) s += ", ";
    s += g.edges[e].id + ":" + std::to_string(counts[e]);
  }
  return s + "}";
}

namespace detail {

struct PieceGraphEdge {
  std::string circle;
  std::string a, b;
  bool transport = true;
};

inline std::vector<PieceGraphEdge> piece_graph_edges(const TorusPosition& t,
                                                     const std::map<std::string, bool>& transport) {
  std::vector<PieceGraphEdge> out;
  for (const auto& [cid, ce] : circle_ends(t)) {
    if (ce.count[0] != 1 || ce.count[1] != 1) continue;
    const auto it = transport.find(cid);
    out.push_back({cid, ce.piece[0], ce.piece[1], it == transport.end() ? true : it->second});
  }
  return out;
}

}  // namespace detail

inline Diagnostics validate_position(const TorusPosition& t) {
  Diagnostics out;
  for (const auto& d : validate_graph(t.graph)) out.push_back("graph: " + d);
  if (!out.empty()) return out;
  const auto& g = t.graph;

  for (const auto& [pid, p] : t.pieces) {
    if (p.id != pid) out.push_back("piece key " + pid + " holds id " + p.id);
    if (p.pants < 0 || p.pants >= g.vertex_count()) {
      out.push_back("piece " + pid + " in unknown pants");
      continue;
    }
    if (p.genus < 0) out.push_back("piece " + pid + " has negative genus");
    if (p.boundary.empty()) out.push_back("piece " + pid + " is closed (no boundary circles)");
    const auto hs = g.half_edges_at(p.pants);
    std::set<HalfEdge> crossed;
    for (const auto& s : p.boundary) {
      if (s.half_edge.edge < 0 || s.half_edge.edge >= g.edge_count() || s.half_edge.end < 0 ||
          s.half_edge.end > 1) {
        out.push_back("piece " + pid + " slot for " + s.circle + " has an invalid half-edge");
        continue;
      }
      if (g.pants_of(s.half_edge) != p.pants)
        out.push_back("piece " + pid + " boundary circle " + s.circle + " sits on half-edge " +
                      g.half_edge_name(s.half_edge) + " outside its pants");
      const auto cit = t.circles.find(s.circle);
      if (cit == t.circles.end())
        out.push_back("piece " + pid + " references unknown circle " + s.circle);
      else if (cit->second.sphere != s.half_edge.edge)
        out.push_back("piece " + pid + " places circle " + s.circle + " on the wrong sphere");
      crossed.insert(s.half_edge);
    }
    for (HalfEdge h : hs) {
      if (crossed.count(h)) {
        if (p.uncrossed_sides.count(h))
          out.push_back("piece " + pid + " labels crossed half-edge " + g.half_edge_name(h));
      } else if (!p.uncrossed_sides.count(h)) {
        out.push_back("piece " + pid + " lacks a side label for uncrossed half-edge " + g.half_edge_name(h));
      }
    }
    for (const auto& [h, s] : p.uncrossed_sides)
      if (std::find(hs.begin(), hs.end(), h) == hs.end())
        out.push_back("piece " + pid + " labels a half-edge outside its pants");
  }

  const auto ends = circle_ends(t);
  for (const auto& [cid, c] : t.circles) {
    if (c.id != cid) out.push_back("circle key " + cid + " holds id " + c.id);
    if (c.sphere < 0 || c.sphere >= g.edge_count()) {
      out.push_back("circle " + cid + " on unknown sphere");
      continue;
    }
    const auto it = ends.find(cid);
    const int n = it == ends.end() ? 0 : it->second.count[0] + it->second.count[1];
    if (n == 0)
      out.push_back("circle " + cid + " has no incident piece");
    else if (n == 1)
      out.push_back("circle " + cid + " has one incident piece");
    else if (n > 2)
      out.push_back("circle " + cid + " has " + std::to_string(n) + " incident pieces");
    else if (it->second.count[0] != 1)
      out.push_back("circle " + cid + " is met twice from the same side of its sphere");
    for (const auto& r : c.regions) {
      const auto rit = t.regions.find(r);
      if (rit == t.regions.end())
        out.push_back("circle " + cid + " references unknown region " + r);
      else if (rit->second != c.sphere)
        out.push_back("circle " + cid + " references region " + r + " of another sphere");
    }
    if (c.regions[0] == c.regions[1]) out.push_back("circle " + cid + " has equal regions on both sides");
  }
  for (const auto& [cid, ce] : ends)
    if (!t.circles.count(cid)) out.push_back("slot references missing circle " + cid);

  for (int e = 0; e < g.edge_count(); ++e) {
    const auto adj = region_adjacency(t, e);
    int circles = 0;
    for (const auto& [cid, c] : t.circles) circles += c.sphere == e;
    if (adj.size() != static_cast<std::size_t>(circles) + 1) {
      out.push_back("region tree of " + g.edges[e].id + " has " + std::to_string(adj.size()) +
                    " nodes for " + std::to_string(circles) + " circles");
      continue;
    }
    std::set<std::string> seen{adj.begin()->first};
    std::vector<std::string> stack{adj.begin()->first};
    while (!stack.empty()) {
      const auto r = stack.back();
      stack.pop_back();
      for (const auto& [cid, nb] : adj.at(r))
        if (seen.insert(nb).second) stack.push_back(nb);
    }
    if (seen.size() != adj.size()) out.push_back("region tree of " + g.edges[e].id + " is not a tree");
  }
  if (!out.empty()) return out;

  // Facings must follow the region tree, flipping only at the piece's own circles.
  for (const auto& [pid, p] : t.pieces) {
    std::set<HalfEdge> crossed;
    for (const auto& s : p.boundary) crossed.insert(s.half_edge);
    for (HalfEdge h : crossed) {
      const auto sides = region_sides(t, p, h);
      for (const auto& s : p.boundary) {
        if (s.half_edge != h) continue;
        const auto& c = t.circles.at(s.circle);
        if (sides.at(c.regions[0]) != s.facing || sides.at(c.regions[1]) == s.facing) {
          out.push_back("piece " + pid + " sides inconsistent on half-edge " + g.half_edge_name(h));
          break;
        }
      }
    }
  }
  const auto implied = derived_transport(t);
  for (const auto& [cid, c] : t.circles) {
    const auto it = t.side_transport.find(cid);
    if (it == t.side_transport.end())
      out.push_back("circle " + cid + " has no side transport bit");
    else if (it->second != implied.at(cid))
      out.push_back("side transport of " + cid + " disagrees with region sides");
  }
  for (const auto& [cid, bit] : t.side_transport)
    if (!t.circles.count(cid)) out.push_back("side transport given for unknown circle " + cid);

  const int chi = euler_characteristic(t);
  if (chi != 0) out.push_back("Euler characteristic " + std::to_string(chi) + ", expected 0");

  // Piece graph: connectivity and orientation monodromy.
  const auto edges = detail::piece_graph_edges(t, t.side_transport);
  std::map<std::string, std::vector<const detail::PieceGraphEdge*>> adj;
  for (const auto& [pid, p] : t.pieces) adj[pid];
  for (const auto& e : edges) {
    adj[e.a].push_back(&e);
    if (e.b != e.a) adj[e.b].push_back(&e);
  }
  if (!t.pieces.empty()) {
    std::map<std::string, bool> orient;
    std::map<std::string, std::string> parent;
    std::vector<std::string> order{t.pieces.begin()->first};
    orient[order[0]] = false;
    bool reported = false;
    for (std::size_t i = 0; i < order.size(); ++i) {
      const auto u = order[i];
      for (const auto* e : adj[u]) {
        const auto w = e->a == u ? e->b : e->a;
        const bool want = orient[u] ^ !e->transport;
        if (!orient.count(w)) {
          orient[w] = want;
          parent[w] = u;
          order.push_back(w);
        } else if (orient[w] != want && !reported) {
          // Cycle = tree path u..lca..w closed by e.
          std::vector<std::string> pu{u}, pw{w};
          while (parent.count(pu.back())) pu.push_back(parent[pu.back()]);
          while (parent.count(pw.back())) pw.push_back(parent[pw.back()]);
          while (pu.size() > 1 && pw.size() > 1 && pu[pu.size() - 2] == pw[pw.size() - 2]) {
            pu.pop_back();
            pw.pop_back();
          }
          std::vector<std::string> cycle(pu.begin(), pu.end());
          if (w != u)
            for (auto it = pw.rbegin() + 1; it != pw.rend(); ++it) cycle.push_back(*it);
          std::sort(cycle.begin(), cycle.end());
          cycle.erase(std::unique(cycle.begin(), cycle.end()), cycle.end());
          out.push_back("monodromy nontrivial on cycle (" + join(cycle, ",") + ")");
          reported = true;
        }
      }
    }
    if (order.size() != t.pieces.size()) out.push_back("piece graph disconnected");
    int genus = 0;
    for (const auto& [pid, p] : t.pieces) genus += p.genus;
    const int betti = static_cast<int>(edges.size()) - static_cast<int>(t.pieces.size()) + 1;
    if (genus == 0 && order.size() == t.pieces.size() && betti != 1)
      out.push_back("piece graph has first Betti number " + std::to_string(betti) + ", expected 1");
  } else {
    out.push_back("position has no pieces");
  }
  return out;
}

namespace detail {

// Oriented sphere crossings as letters: +(e+1) from end 0 to end 1, -(e+1) back.
inline void push_reduced(std::vector<int>& w, int letter) {
  if (!w.empty() && w.back() == -letter)
    w.pop_back();
  else
    w.push_back(letter);
}

inline std::vector<int> reduced_product(std::vector<int> a, const std::vector<int>& b) {
  for (int l : b) push_reduced(a, l);
  return a;
}

inline std::vector<int> inverse_word(const std::vector<int>& w) {
  std::vector<int> out;
  for (auto it = w.rbegin(); it != w.rend(); ++it) out.push_back(-*it);
  return out;
}

}  // namespace detail

/// Pieces whose lifts share a pants copy of the universal cover must be
/// disjoint there, so one of the four side combinations over that pants'
/// region collars is empty. Names each pair that violates this. Expects a
/// valid position.
inline Diagnostics lift_conflicts(const TorusPosition& t) {
  Diagnostics out;
  if (t.pieces.empty()) return out;
  // Reduced path in the sphere graph to each piece from the first, along a
  // spanning tree of the piece graph; non-tree edges give the cycle word.
  std::map<std::string, std::vector<std::pair<std::string, int>>> adj;
  for (const auto& [cid, ce] : circle_ends(t)) {
    if (ce.count[0] != 1 || ce.count[1] != 1) continue;
    const int e = t.circles.at(cid).sphere + 1;
    adj[ce.piece[0]].emplace_back(ce.piece[1], e);
    adj[ce.piece[1]].emplace_back(ce.piece[0], -e);
  }
  std::map<std::string, std::vector<int>> word{{t.pieces.begin()->first, {}}};
  std::vector<std::string> queue{t.pieces.begin()->first};
  std::vector<int> cycle;
  for (std::size_t i = 0; i < queue.size(); ++i) {
    const auto u = queue[i];
    for (const auto& [v, l] : adj[u]) {
      auto w = word.at(u);
      detail::push_reduced(w, l);
      if (!word.contains(v)) {
        word[v] = w;
        queue.push_back(v);
      } else if (cycle.empty()) {
        cycle = detail::reduced_product(w, detail::inverse_word(word.at(v)));
      }
    }
  }
  const int reach = static_cast<int>(t.pieces.size()) + 1;
  auto same_copy = [&](const std::string& a, const std::string& b) {
    const auto target = word.at(b);
    std::vector<int> up = word.at(a), down = word.at(a);
    if (up == target) return true;
    if (cycle.empty()) return false;
    const auto inv = detail::inverse_word(cycle);
    for (int k = 1; k <= reach; ++k) {
      up = detail::reduced_product(cycle, up);
      down = detail::reduced_product(inv, down);
      if (up == target || down == target) return true;
    }
    return false;
  };
  std::map<int, std::vector<const Piece*>> by_pants;
  for (const auto& [pid, p] : t.pieces)
    if (word.contains(pid)) by_pants[p.pants].push_back(&p);
  for (const auto& [pants, ps] : by_pants)
    for (std::size_t i = 0; i < ps.size(); ++i)
      for (std::size_t j = i + 1; j < ps.size(); ++j) {
        if (!same_copy(ps[i]->id, ps[j]->id)) continue;
        bool seen[2][2] = {{false, false}, {false, false}};
        for (HalfEdge x : t.graph.half_edges_at(pants)) {
          const auto si = region_sides(t, *ps[i], x);
          const auto sj = region_sides(t, *ps[j], x);
          for (const auto& [r, a] : si)
            if (const auto it = sj.find(r); it != sj.end())
              seen[static_cast<int>(a)][static_cast<int>(it->second)] = true;
        }
        if (seen[0][0] && seen[0][1] && seen[1][0] && seen[1][1])
          out.push_back("pieces " + ps[i]->id + " and " + ps[j]->id + " overlap in a pants copy of " +
                        t.graph.p_vertices[pants]);
      }
  return out;
}

struct NormalityReport {
  bool normal = true;
  std::vector<std::string> violations;
};

/// Normal iff every piece is an essential disk, a cylinder joining two
/// distinct boundary spheres, or a pants piece meeting all three.
inline NormalityReport is_normal(const TorusPosition& t) {
  NormalityReport rep;
  const auto& g = t.graph;
  for (const auto& [pid, p] : t.pieces) {
    if (p.genus != 0) rep.violations.push_back("piece " + pid + " has genus " + std::to_string(p.genus));
    std::map<HalfEdge, int> per;
    for (const auto& s : p.boundary) ++per[s.half_edge];
    for (const auto& [h, n] : per)
      if (n > 1)
        rep.violations.push_back("piece " + pid + " meets half-edge (" + g.half_edge_name(h) + ") " +
                                 (n == 2 ? std::string("twice") : std::to_string(n) + " times"));
    const auto b = p.boundary.size();
    if (b == 0) rep.violations.push_back("piece " + pid + " is closed");
    if (b == 1 && p.genus == 0) {
      std::vector<Side> labels;
      for (const auto& [h, s] : p.uncrossed_sides) labels.push_back(s);
      if (labels.size() == 2 && labels[0] == labels[1])
        rep.violations.push_back("disk " + pid + " boundary-parallel");
    }
    if (b > 3) rep.violations.push_back("piece " + pid + " has " + std::to_string(b) + " boundary circles");
  }
  rep.normal = rep.violations.empty();
  return rep;
}

}  // namespace normtori

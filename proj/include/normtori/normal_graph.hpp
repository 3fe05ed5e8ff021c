#pragma once

// Dual-graph picture of a normal torus. Each piece becomes a Y-node over its
// pants, each circle a crossing edge over its sphere, each uncrossed sphere-end
// of a piece a leaf stub. The graph is immersed in the sphere graph and has
// exactly one cycle (the quotient of the axis); the universal cover is never
// built because unique path lifting makes it implicit.

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <string>
#include <vector>

#include "normtori/error.hpp"
#include "normtori/position.hpp"
#include "normtori/sphere_graph.hpp"

namespace normtori {

enum class PieceKind : std::uint8_t { Disk = 1, Cylinder = 2, Pants = 3 };

inline const char* kind_name(PieceKind k) {
  switch (k) {
    case PieceKind::Disk: return "disk";
    case PieceKind::Cylinder: return "cylinder";
    case PieceKind::Pants: return "pants";
  }
  return "?";
}

struct YNode {
  std::string piece;
  int pants = 0;
  PieceKind kind = PieceKind::Cylinder;
  friend bool operator==(const YNode&, const YNode&) = default;
};

struct CrossingEdge {
  std::string circle;
  int sphere = 0;
  std::array<int, 2> nodes{};  // node at end 0 / end 1 of the sphere
  bool transport = true;
  friend bool operator==(const CrossingEdge&, const CrossingEdge&) = default;
};

struct LeafStub {
  int node = 0;
  HalfEdge half_edge;
  Side label = Side::A;
  friend bool operator==(const LeafStub&, const LeafStub&) = default;
};

struct NormalTorus {
  SphereGraph graph;
  std::vector<YNode> nodes;
  std::vector<CrossingEdge> edges;
  std::vector<LeafStub> leaves;

  [[nodiscard]] int find_node(const std::string& piece) const {
    for (std::size_t i = 0; i < nodes.size(); ++i)
      if (nodes[i].piece == piece) return static_cast<int>(i);
    return -1;
  }
  friend bool operator==(const NormalTorus&, const NormalTorus&) = default;
};

enum class Sign : std::uint8_t { Plus, Minus };
[[nodiscard]] inline Sign flip(Sign s) { return s == Sign::Plus ? Sign::Minus : Sign::Plus; }
[[nodiscard]] inline char sign_char(Sign s) { return s == Sign::Plus ? '+' : '-'; }

/// A normal torus with a sign on every leaf stub (parallel to torus.leaves).
struct DecoratedGraph {
  NormalTorus torus;
  std::vector<Sign> signs;
  friend bool operator==(const DecoratedGraph&, const DecoratedGraph&) = default;
};

struct CanonicalForm {
  std::string code;
  friend auto operator<=>(const CanonicalForm&, const CanonicalForm&) = default;
};

namespace detail {

// What occupies a half-edge of a Y-node.
struct Item {
  enum class Kind : std::uint8_t { Leaf, Edge } kind = Kind::Leaf;
  int index = -1;
};

struct Incidence {
  // items[node][slot]
  std::vector<std::array<Item, 3>> items;
  std::vector<std::array<HalfEdge, 3>> half_edges;
};

inline Incidence incidence(const NormalTorus& nt) {
  Incidence inc;
  inc.items.resize(nt.nodes.size());
  inc.half_edges.resize(nt.nodes.size());
  for (std::size_t n = 0; n < nt.nodes.size(); ++n) inc.half_edges[n] = nt.graph.half_edges_at(nt.nodes[n].pants);
  for (std::size_t l = 0; l < nt.leaves.size(); ++l) {
    const auto& lf = nt.leaves[l];
    inc.items[lf.node][nt.graph.slot_of(lf.half_edge)] = {Item::Kind::Leaf, static_cast<int>(l)};
  }
  for (std::size_t e = 0; e < nt.edges.size(); ++e)
    for (int end = 0; end < 2; ++end) {
      const HalfEdge h{nt.edges[e].sphere, end};
      inc.items[nt.edges[e].nodes[end]][nt.graph.slot_of(h)] = {Item::Kind::Edge, static_cast<int>(e)};
    }
  return inc;
}

inline std::string he_code(const SphereGraph& g, HalfEdge h) {
  return g.edges[h.edge].id + "." + std::to_string(h.end);
}

// One step around the cycle: leave `node` through `exit`, arriving at the next
// node through exit.other().
struct CycleStep {
  int node = 0;
  HalfEdge entry, exit;
  int edge = 0;
};

}  // namespace detail

/// Structural invariants of a NormalTorus (immersion, betti 1, kind/degree).
inline Diagnostics validate_normal_torus(const NormalTorus& nt) {
  Diagnostics out;
  const auto& g = nt.graph;
  std::vector<std::array<int, 3>> use(nt.nodes.size(), std::array<int, 3>{0, 0, 0});
  std::vector<int> degree(nt.nodes.size(), 0);
  auto mark = [&](int node, HalfEdge h) {
    if (g.pants_of(h) != nt.nodes[node].pants) {
      out.push_back("node " + nt.nodes[node].piece + " uses half-edge " + g.half_edge_name(h) + " outside its pants");
      return;
    }
    ++use[node][g.slot_of(h)];
  };
  for (const auto& e : nt.edges)
    for (int end = 0; end < 2; ++end) {
      mark(e.nodes[end], {e.sphere, end});
      ++degree[e.nodes[end]];
    }
  for (const auto& l : nt.leaves) mark(l.node, l.half_edge);
  int disks = 0, pants = 0;
  for (std::size_t n = 0; n < nt.nodes.size(); ++n) {
    for (int s = 0; s < 3; ++s)
      if (use[n][s] != 1) {
        out.push_back("node " + nt.nodes[n].piece + " is not locally injective");
        break;
      }
    if (degree[n] != static_cast<int>(nt.nodes[n].kind))
      out.push_back("node " + nt.nodes[n].piece + " kind does not match its crossing degree");
    disks += nt.nodes[n].kind == PieceKind::Disk;
    pants += nt.nodes[n].kind == PieceKind::Pants;
  }
  if (disks != pants) out.push_back("type-1 count differs from type-3 count");
  const int betti = static_cast<int>(nt.edges.size()) - static_cast<int>(nt.nodes.size()) + 1;
  std::vector<int> parent(nt.nodes.size());
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
  for (const auto& e : nt.edges) parent[find(e.nodes[0])] = find(e.nodes[1]);
  for (std::size_t n = 1; n < nt.nodes.size(); ++n)
    if (find(static_cast<int>(n)) != find(0)) {
      out.push_back("normal graph disconnected");
      break;
    }
  if (betti != 1) out.push_back("normal graph has first Betti number " + std::to_string(betti));
  return out;
}

inline NormalTorus to_normal_torus(const TorusPosition& t) {
  const auto rep = is_normal(t);
  if (!rep.normal) throw Error("non-normal input: " + join(rep.violations, "; "));
  NormalTorus nt;
  nt.graph = t.graph;
  std::map<std::string, int> index;
  for (const auto& [pid, p] : t.pieces) {
    index[pid] = static_cast<int>(nt.nodes.size());
    nt.nodes.push_back({pid, p.pants, static_cast<PieceKind>(p.boundary.size())});
  }
  const auto ends = circle_ends(t);
  for (const auto& [cid, c] : t.circles) {
    const auto& ce = ends.at(cid);
    const auto tr = t.side_transport.find(cid);
    nt.edges.push_back({cid, c.sphere, {index.at(ce.piece[0]), index.at(ce.piece[1])},
                        tr == t.side_transport.end() ? true : tr->second});
  }
  for (const auto& [pid, p] : t.pieces)
    for (const auto& [h, s] : p.uncrossed_sides) nt.leaves.push_back({index.at(pid), h, s});
  const auto diag = validate_normal_torus(nt);
  if (!diag.empty()) throw Error("invalid normal torus: " + join(diag, "; "));
  return nt;
}

/// Signs leaves by transporting a co-orientation from `base`: the side
/// `base_side` of the base piece is +.
inline DecoratedGraph decorate(const NormalTorus& nt, const std::string& base, Side base_side) {
  const int root = nt.find_node(base);
  if (root < 0) throw Error("unknown base piece " + base);
  std::vector<int> orient(nt.nodes.size(), -1);
  orient[root] = 0;
  std::vector<int> queue{root};
  for (std::size_t i = 0; i < queue.size(); ++i) {
    const int u = queue[i];
    for (const auto& e : nt.edges) {
      for (int end = 0; end < 2; ++end) {
        if (e.nodes[end] != u) continue;
        const int w = e.nodes[1 - end];
        const int want = orient[u] ^ static_cast<int>(!e.transport);
        if (orient[w] < 0) {
          orient[w] = want;
          queue.push_back(w);
        } else if (orient[w] != want) {
          throw Error("nontrivial monodromy (Klein bottle): cannot co-orient through " + e.circle);
        }
      }
    }
  }
  if (queue.size() != nt.nodes.size()) throw Error("normal graph disconnected");
  DecoratedGraph d{nt, {}};
  for (const auto& l : nt.leaves)
    d.signs.push_back(flip_if(l.label, orient[l.node] != 0) == base_side ? Sign::Plus : Sign::Minus);
  return d;
}

inline DecoratedGraph decorate(const NormalTorus& nt) {
  if (nt.nodes.empty()) throw Error("empty normal torus");
  return decorate(nt, nt.nodes.front().piece, Side::A);
}

inline DecoratedGraph flip_signs(DecoratedGraph d) {
  for (auto& s : d.signs) s = flip(s);
  return d;
}

/// The unique cycle, read from the node with the least piece id and leaving
/// through its cycle edge with the least circle id.
inline std::vector<detail::CycleStep> axis_cycle(const NormalTorus& nt) {
  const std::size_t n = nt.nodes.size();
  std::vector<int> degree(n, 0);
  for (const auto& e : nt.edges) {
    ++degree[e.nodes[0]];
    ++degree[e.nodes[1]];
  }
  std::vector<bool> removed(n, false), edge_dead(nt.edges.size(), false);
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t v = 0; v < n; ++v) {
      if (removed[v] || degree[v] > 1) continue;
      removed[v] = true;
      changed = true;
      for (std::size_t e = 0; e < nt.edges.size(); ++e) {
        if (edge_dead[e]) continue;
        const auto& ed = nt.edges[e];
        if (ed.nodes[0] == static_cast<int>(v) || ed.nodes[1] == static_cast<int>(v)) {
          edge_dead[e] = true;
          --degree[ed.nodes[0]];
          --degree[ed.nodes[1]];
        }
      }
    }
  }
  int start = -1;
  for (std::size_t v = 0; v < n; ++v)
    if (!removed[v] && (start < 0 || nt.nodes[v].piece < nt.nodes[start].piece)) start = static_cast<int>(v);
  if (start < 0) throw Error("normal graph has no cycle");
  int first_edge = -1;
  for (std::size_t e = 0; e < nt.edges.size(); ++e)
    if (!edge_dead[e] && (nt.edges[e].nodes[0] == start || nt.edges[e].nodes[1] == start) &&
        (first_edge < 0 || nt.edges[e].circle < nt.edges[first_edge].circle))
      first_edge = static_cast<int>(e);

  std::vector<detail::CycleStep> steps;
  int node = start;
  int edge = first_edge;
  HalfEdge entry{};
  while (true) {
    // A self-loop leaves through end 0.
    const HalfEdge exit{nt.edges[edge].sphere, nt.edges[edge].nodes[0] == node ? 0 : 1};
    steps.push_back({node, entry, exit, edge});
    const HalfEdge arrive = exit.other();
    const int next_node = nt.edges[edge].nodes[arrive.end];
    if (next_node == start) {
      steps.front().entry = arrive;
      break;
    }
    int next_edge = -1;
    for (std::size_t e = 0; e < nt.edges.size(); ++e) {
      if (edge_dead[e] || static_cast<int>(e) == edge) continue;
      if (nt.edges[e].nodes[0] == next_node || nt.edges[e].nodes[1] == next_node) next_edge = static_cast<int>(e);
    }
    if (next_edge < 0 || steps.size() > nt.nodes.size()) throw Error("normal graph cycle is broken");
    node = next_node;
    edge = next_edge;
    entry = arrive;
  }
  return steps;
}

namespace detail {

inline std::string item_code(const NormalTorus& nt, const Incidence& inc, const std::vector<Sign>& signs,
                             int node, int slot, bool flip_all);

// Code of the subtree hanging off `node`, entered through half-edge `from`.
inline std::string subtree_code(const NormalTorus& nt, const Incidence& inc, const std::vector<Sign>& signs,
                                int node, HalfEdge from, bool flip_all) {
  std::string s = "(" + nt.graph.p_vertices[nt.nodes[node].pants] + ":";
  bool first = true;
  for (int slot = 0; slot < 3; ++slot) {
    if (inc.half_edges[node][slot] == from) continue;
    if (!first) s += ",";
    first = false;
    s += item_code(nt, inc, signs, node, slot, flip_all);
  }
  return s + ")";
}

inline std::string item_code(const NormalTorus& nt, const Incidence& inc, const std::vector<Sign>& signs,
                             int node, int slot, bool flip_all) {
  const HalfEdge h = inc.half_edges[node][slot];
  const Item it = inc.items[node][slot];
  std::string s = he_code(nt.graph, h);
  if (it.kind == Item::Kind::Leaf) {
    if (signs.empty()) return s + "*";
    const Sign sg = signs[it.index];
    return s + sign_char(flip_all ? flip(sg) : sg);
  }
  const auto& e = nt.edges[it.index];
  const HalfEdge arrive = h.other();
  return s + ">" + subtree_code(nt, inc, signs, e.nodes[arrive.end], arrive, flip_all);
}

inline int slot_not(const Incidence& inc, int node, HalfEdge a, HalfEdge b) {
  for (int slot = 0; slot < 3; ++slot)
    if (inc.half_edges[node][slot] != a && inc.half_edges[node][slot] != b) return slot;
  return -1;
}

// Cycle codes for one traversal direction; `signs` empty means undecorated.
inline std::vector<std::string> cycle_codes(const NormalTorus& nt, const Incidence& inc,
                                            const std::vector<CycleStep>& cyc, const std::vector<Sign>& signs,
                                            bool reversed, bool flip_all) {
  std::vector<std::string> codes;
  for (const auto& st : cyc) {
    const HalfEdge in = reversed ? st.exit : st.entry;
    const HalfEdge out = reversed ? st.entry : st.exit;
    std::string s = nt.graph.p_vertices[nt.nodes[st.node].pants] + "[" + he_code(nt.graph, in) + ">" +
                    he_code(nt.graph, out) + "]";
    const int third = slot_not(inc, st.node, in, out);
    if (third >= 0) s += item_code(nt, inc, signs, st.node, third, flip_all);
    codes.push_back(s);
  }
  if (reversed) std::reverse(codes.begin(), codes.end());
  return codes;
}

inline std::string least_rotation(const std::vector<std::string>& codes) {
  std::string best;
  for (std::size_t r = 0; r < codes.size(); ++r) {
    std::string s;
    for (std::size_t i = 0; i < codes.size(); ++i) {
      if (i) s += "|";
      s += codes[(r + i) % codes.size()];
    }
    if (r == 0 || s < best) best = s;
  }
  return best;
}

}  // namespace detail

/// Text code equal for two decorated graphs iff they are isomorphic over the
/// sphere graph up to a global sign flip (and, unless disabled, reversal of
/// the axis direction).
inline CanonicalForm canonicalize(const DecoratedGraph& d, bool allow_reversal = true) {
  const auto& nt = d.torus;
  const auto inc = detail::incidence(nt);
  const auto cyc = axis_cycle(nt);
  std::string best;
  bool have = false;
  for (int rev = 0; rev < (allow_reversal ? 2 : 1); ++rev)
    for (int fl = 0; fl < 2; ++fl) {
      const auto s = detail::least_rotation(detail::cycle_codes(nt, inc, cyc, d.signs, rev != 0, fl != 0));
      if (!have || s < best) best = s;
      have = true;
    }
  return {best};
}

inline bool equivalent(const DecoratedGraph& a, const DecoratedGraph& b, bool allow_reversal = true) {
  if (!(a.torus.graph == b.torus.graph)) throw Error("decorated graphs over different sphere graphs");
  return canonicalize(a, allow_reversal) == canonicalize(b, allow_reversal);
}

/// Leaf indices partitioned by sign: the boundary spheres S+ and S-.
struct SideLists {
  std::vector<int> plus;
  std::vector<int> minus;
};

inline SideLists sides(const DecoratedGraph& d) {
  SideLists out;
  for (std::size_t i = 0; i < d.signs.size(); ++i)
    (d.signs[i] == Sign::Plus ? out.plus : out.minus).push_back(static_cast<int>(i));
  return out;
}

/// The torus bounds a solid torus iff every leaf carries the same sign.
inline bool bounds_solid_torus(const DecoratedGraph& d) {
  const auto s = sides(d);
  return s.plus.empty() || s.minus.empty();
}

struct Branch {
  std::string axis_piece;
  std::string circle;
  std::string tree_code;
  std::vector<std::string> pieces;
};

struct FundamentalDomain {
  std::vector<std::string> axis;          // pieces around the cycle
  std::vector<std::string> axis_circles;  // circle leaving each axis piece
  std::vector<Branch> branches;
};

inline FundamentalDomain fundamental_domain(const NormalTorus& nt) {
  const auto inc = detail::incidence(nt);
  const auto cyc = axis_cycle(nt);
  FundamentalDomain fd;
  for (const auto& st : cyc) {
    fd.axis.push_back(nt.nodes[st.node].piece);
    fd.axis_circles.push_back(nt.edges[st.edge].circle);
    const int third = detail::slot_not(inc, st.node, st.entry, st.exit);
    if (third < 0) continue;
    const auto it = inc.items[st.node][third];
    if (it.kind != detail::Item::Kind::Edge) continue;
    Branch br;
    br.axis_piece = nt.nodes[st.node].piece;
    br.circle = nt.edges[it.index].circle;
    const HalfEdge h = inc.half_edges[st.node][third];
    br.tree_code = detail::item_code(nt, inc, {}, st.node, third, false);
    // Collect the pieces of the hanging tree.
    std::vector<std::pair<int, HalfEdge>> stack{{nt.edges[it.index].nodes[h.other().end], h.other()}};
    while (!stack.empty()) {
      const auto [node, from] = stack.back();
      stack.pop_back();
      br.pieces.push_back(nt.nodes[node].piece);
      for (int slot = 0; slot < 3; ++slot) {
        const HalfEdge hh = inc.half_edges[node][slot];
        const auto item = inc.items[node][slot];
        if (hh == from || item.kind != detail::Item::Kind::Edge) continue;
        stack.emplace_back(nt.edges[item.index].nodes[hh.other().end], hh.other());
      }
    }
    std::sort(br.pieces.begin(), br.pieces.end());
    fd.branches.push_back(br);
  }
  return fd;
}

/// Cyclic word in the free group: letters +i for x_i, -i for its inverse.
struct CyclicWord {
  std::vector<int> letters;

  /// "x1X2": lower case for a generator, upper case for its inverse.
  [[nodiscard]] std::string str() const {
    std::string s;
    for (int l : letters) s += (l > 0 ? "x" : "X") + std::to_string(l > 0 ? l : -l);
    return s;
  }
  friend bool operator==(const CyclicWord&, const CyclicWord&) = default;
};

namespace detail {

inline std::vector<int> cyclically_reduce(std::vector<int> w) {
  std::vector<int> st;
  for (int l : w) {
    if (!st.empty() && st.back() == -l)
      st.pop_back();
    else
      st.push_back(l);
  }
  std::size_t i = 0, j = st.size();
  while (j - i >= 2 && st[i] == -st[j - 1]) {
    ++i;
    --j;
  }
  return {st.begin() + static_cast<std::ptrdiff_t>(i), st.begin() + static_cast<std::ptrdiff_t>(j)};
}

// x1 < X1 < x2 < X2 < ...
inline bool letter_less(int a, int b) {
  const int ka = 2 * std::abs(a) + (a < 0), kb = 2 * std::abs(b) + (b < 0);
  return ka < kb;
}

inline std::vector<int> least_cyclic_form(const std::vector<int>& w) {
  std::vector<int> inv(w.rbegin(), w.rend());
  for (int& l : inv) l = -l;
  std::vector<int> best = w;
  for (const std::vector<int>* cand : std::array<const std::vector<int>*, 2>{&w, &inv})
    for (std::size_t r = 0; r < cand->size(); ++r) {
      std::vector<int> rot(cand->begin() + static_cast<std::ptrdiff_t>(r), cand->end());
      rot.insert(rot.end(), cand->begin(), cand->begin() + static_cast<std::ptrdiff_t>(r));
      if (std::lexicographical_compare(rot.begin(), rot.end(), best.begin(), best.end(), letter_less)) best = rot;
    }
  return best;
}

}  // namespace detail

/// Conjugacy class of the axis generator, normalized to the least rotation of
/// the word or its inverse.
inline CyclicWord axis_word(const NormalTorus& nt, const GeneratorLabeling& lab) {
  std::vector<int> w;
  for (const auto& st : axis_cycle(nt)) {
    const int l = lab.letter(st.exit.edge, st.exit.end);
    if (l != 0) w.push_back(l);
  }
  w = detail::cyclically_reduce(std::move(w));
  if (w.empty()) throw Error("axis word is trivial: torus is not essential");
  return {detail::least_cyclic_form(w)};
}

}  // namespace normtori

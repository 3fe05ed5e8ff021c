#pragma once

// The dual graph of M cut along a maximal sphere system: one trivalent
// vertex per pants, one edge per sphere. The unit of incidence is the
// sphere-end (half-edge), so a sphere bounding a once-punctured S^2 x S^1
// is simply a loop edge.

#include <algorithm>
#include <array>
#include <compare>
#include <cstdint>
#include <numeric>
#include <queue>
#include <random>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "normtori/error.hpp"

namespace normtori {

struct HalfEdge {
  int edge = 0;
  int end = 0;

  [[nodiscard]] HalfEdge other() const { return {edge, 1 - end}; }
  friend auto operator<=>(const HalfEdge&, const HalfEdge&) = default;
};

struct EdgeEnd {
  int p = 0;
  int slot = 0;
  friend auto operator<=>(const EdgeEnd&, const EdgeEnd&) = default;
};

struct SphereEdge {
  std::string id;
  std::array<EdgeEnd, 2> ends{};
  friend bool operator==(const SphereEdge&, const SphereEdge&) = default;
};

/// Plain data; may hold an invalid graph until validate_graph() says otherwise.
struct SphereGraph {
  int rank = 0;
  std::vector<std::string> p_vertices;
  std::vector<SphereEdge> edges;

  [[nodiscard]] int vertex_count() const { return static_cast<int>(p_vertices.size()); }
  [[nodiscard]] int edge_count() const { return static_cast<int>(edges.size()); }
  [[nodiscard]] int pants_of(HalfEdge h) const { return edges[h.edge].ends[h.end].p; }
  [[nodiscard]] int slot_of(HalfEdge h) const { return edges[h.edge].ends[h.end].slot; }
  [[nodiscard]] bool is_loop(int e) const { return edges[e].ends[0].p == edges[e].ends[1].p; }

  /// Half-edges at P-vertex p indexed by slot. Requires a valid graph.
  [[nodiscard]] std::array<HalfEdge, 3> half_edges_at(int p) const {
    std::array<HalfEdge, 3> out{};
    for (int e = 0; e < edge_count(); ++e)
      for (int end = 0; end < 2; ++end)
        if (edges[e].ends[end].p == p) out[edges[e].ends[end].slot] = {e, end};
    return out;
  }

  [[nodiscard]] int find_vertex(std::string_view id) const {
    for (int i = 0; i < vertex_count(); ++i)
      if (p_vertices[i] == id) return i;
    return -1;
  }
  [[nodiscard]] int find_edge(std::string_view id) const {
    for (int i = 0; i < edge_count(); ++i)
      if (edges[i].id == id) return i;
    return -1;
  }

  /// "s0@p1"; loop ends get the end index appended ("s2@p0/1").
  [[nodiscard]] std::string half_edge_name(HalfEdge h) const {
    std::string s = edges[h.edge].id + "@" + p_vertices[pants_of(h)];
    if (is_loop(h.edge)) s += "/" + std::to_string(h.end);
    return s;
  }

  friend bool operator==(const SphereGraph&, const SphereGraph&) = default;
};

inline Diagnostics validate_graph(const SphereGraph& g) {
  Diagnostics out;
  if (g.rank < 2) out.push_back("rank " + std::to_string(g.rank) + " below 2");
  const int v = g.vertex_count();
  std::vector<std::array<int, 3>> slot_use(v, std::array<int, 3>{0, 0, 0});
  std::vector<int> valence(v, 0);
  bool refs_ok = true;
  for (const auto& e : g.edges) {
    for (int end = 0; end < 2; ++end) {
      const auto& x = e.ends[end];
      if (x.p < 0 || x.p >= v) {
        out.push_back("edge " + e.id + " end " + std::to_string(end) + " references unknown P-vertex");
        refs_ok = false;
        continue;
      }
      ++valence[x.p];
      if (x.slot < 0 || x.slot > 2) {
        out.push_back("edge " + e.id + " end " + std::to_string(end) + " has slot " +
                      std::to_string(x.slot) + " outside 0..2");
        continue;
      }
      ++slot_use[x.p][x.slot];
    }
  }
  for (int p = 0; p < v; ++p) {
    if (valence[p] != 3)
      out.push_back("P-vertex " + g.p_vertices[p] + " has " + std::to_string(valence[p]) + " half-edges");
    for (int s = 0; s < 3; ++s)
      if (slot_use[p][s] > 1)
        out.push_back("P-vertex " + g.p_vertices[p] + " slot " + std::to_string(s) + " used twice");
  }
  if (refs_ok && v > 0) {
    std::vector<int> parent(v);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
      while (parent[x] != x) x = parent[x] = parent[parent[x]];
      return x;
    };
    for (const auto& e : g.edges) parent[find(e.ends[0].p)] = find(e.ends[1].p);
    for (int p = 1; p < v; ++p)
      if (find(p) != find(0)) {
        out.push_back("graph disconnected");
        break;
      }
  }
  if (v == 0) out.push_back("graph has no P-vertices");
  const int betti = g.edge_count() - v + 1;
  if (betti != g.rank)
    out.push_back("first Betti number E-V+1 = " + std::to_string(betti) + " differs from rank " +
                  std::to_string(g.rank));
  return out;
}

/// Necklace of theta blocks: block k is p(2k), p(2k+1) joined by two parallel
/// spheres; consecutive blocks are joined by one sphere, the last back to the
/// first. For n = 2 this is the theta graph with every edge running p0 -> p1.
inline SphereGraph build_standard(int n) {
  if (n < 2) throw Error("rank below 2 unsupported");
  SphereGraph g;
  g.rank = n;
  const int blocks = n - 1;
  for (int i = 0; i < 2 * blocks; ++i) g.p_vertices.push_back("p" + std::to_string(i));
  auto add = [&g](EdgeEnd a, EdgeEnd b) {
    g.edges.push_back({"s" + std::to_string(g.edges.size()), {a, b}});
  };
  for (int k = 0; k < blocks; ++k) {
    const int a = 2 * k, b = 2 * k + 1;
    add({a, 0}, {b, 0});
    add({a, 1}, {b, 1});
    if (k + 1 < blocks)
      add({b, 2}, {2 * (k + 1), 2});
    else
      add({0, 2}, {b, 2});
  }
  return g;
}

/// Uniform random pairing of the 6n-6 vertex slots, rejected until connected.
/// Edges are named in order of their lesser slot; end 0 is the lesser slot.
inline SphereGraph random_cubic(int n, std::uint64_t seed) {
  if (n < 2) throw Error("rank below 2 unsupported");
  const int v = 2 * n - 2;
  std::mt19937_64 rng(seed);
  std::vector<EdgeEnd> stubs;
  for (int p = 0; p < v; ++p)
    for (int s = 0; s < 3; ++s) stubs.push_back({p, s});
  for (int attempt = 0; attempt < 100000; ++attempt) {
    auto pool = stubs;
    std::shuffle(pool.begin(), pool.end(), rng);
    std::vector<std::array<EdgeEnd, 2>> pairs;
    for (std::size_t i = 0; i < pool.size(); i += 2) {
      std::array<EdgeEnd, 2> pr{pool[i], pool[i + 1]};
      if (pr[1] < pr[0]) std::swap(pr[0], pr[1]);
      pairs.push_back(pr);
    }
    std::sort(pairs.begin(), pairs.end());
    SphereGraph g;
    g.rank = n;
    for (int p = 0; p < v; ++p) g.p_vertices.push_back("p" + std::to_string(p));
    for (std::size_t i = 0; i < pairs.size(); ++i) g.edges.push_back({"s" + std::to_string(i), pairs[i]});
    if (validate_graph(g).empty()) return g;
  }
  throw Error("random_cubic: no connected pairing found");
}

/// Fn basis from a breadth-first spanning tree. label[e] == 0 marks a tree
/// edge, otherwise e carries generator x_label[e], read forward when the edge
/// is traversed starting from end forward_end[e].
struct GeneratorLabeling {
  std::vector<int> tree_edges;
  std::vector<int> label;
  std::vector<int> forward_end;

  [[nodiscard]] int generator_count() const {
    return static_cast<int>(std::count_if(label.begin(), label.end(), [](int l) { return l != 0; }));
  }
  /// Signed letter for crossing edge `e` leaving through end `from_end`; 0 on tree edges.
  [[nodiscard]] int letter(int e, int from_end) const {
    if (label[e] == 0) return 0;
    return from_end == forward_end[e] ? label[e] : -label[e];
  }
};

inline GeneratorLabeling label_generators(const SphereGraph& g) {
  GeneratorLabeling lab;
  const int v = g.vertex_count();
  lab.label.assign(g.edge_count(), -1);
  lab.forward_end.assign(g.edge_count(), 0);
  std::vector<bool> seen(v, false);
  std::queue<int> q;
  seen[0] = true;
  q.push(0);
  while (!q.empty()) {
    const int p = q.front();
    q.pop();
    for (HalfEdge h : g.half_edges_at(p)) {
      const int w = g.pants_of(h.other());
      if (seen[w]) continue;
      seen[w] = true;
      lab.label[h.edge] = 0;
      lab.tree_edges.push_back(h.edge);
      q.push(w);
    }
  }
  std::sort(lab.tree_edges.begin(), lab.tree_edges.end());
  int next = 1;
  for (int e = 0; e < g.edge_count(); ++e) {
    if (lab.label[e] == 0) continue;
    lab.label[e] = next++;
    const auto& ends = g.edges[e].ends;
    lab.forward_end[e] = ends[1].p < ends[0].p ? 1 : 0;
  }
  return lab;
}

inline std::string graph_to_dot(const SphereGraph& g) {
  std::ostringstream os;
  os << "graph spheres {\n  node [shape=circle];\n";
  for (const auto& p : g.p_vertices) os << "  \"" << p << "\";\n";
  for (const auto& e : g.edges)
    os << "  \"" << g.p_vertices[e.ends[0].p] << "\" -- \"" << g.p_vertices[e.ends[1].p]
       << "\" [label=\"" << e.id << "\"];\n";
  os << "}\n";
  return os.str();
}

}  // namespace normtori

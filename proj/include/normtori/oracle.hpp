#pragma once

// Test oracles: random normal tori, perturbation by inverse moves, exhaustive
// move-order search, and the fuzz / minimality drivers built on them.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "normtori/normal_graph.hpp"
#include "normtori/normalize.hpp"
#include "normtori/position.hpp"
#include "normtori/serialize.hpp"
#include "normtori/sphere_graph.hpp"

namespace normtori {

namespace detail {

using Rng = std::mt19937_64;

inline int uniform(Rng& rng, int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng); }
inline bool coin(Rng& rng) { return uniform(rng, 2) == 1; }

inline std::uint64_t mix_seed(std::uint64_t base, std::uint64_t i) {
  std::uint64_t z = base + 0x9E3779B97F4A7C15ULL * (i + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

template <class Map>
std::string fresh_id(const Map& m, const char* prefix) {
  for (int i = 0;; ++i) {
    auto id = prefix + std::to_string(i);
    if (!m.contains(id)) return id;
  }
}

// Abstract normal graph before it is dressed as a position.
struct ShapeNode {
  int pants = 0;
  std::array<int, 3> cross{-1, -1, -1};  // crossing index per slot, -1 for a leaf
};
struct ShapeCross {
  int sphere = 0;
  std::array<int, 2> node{};
};
struct Shape {
  std::vector<ShapeNode> nodes;
  std::vector<ShapeCross> cross;

  void link(const SphereGraph& g, int from, HalfEdge exit, int to) {
    ShapeCross c{exit.edge, {}};
    c.node[exit.end] = from;
    c.node[1 - exit.end] = to;
    cross.push_back(c);
    const int idx = static_cast<int>(cross.size()) - 1;
    nodes[from].cross[g.slot_of(exit)] = idx;
    nodes[to].cross[g.slot_of(exit.other())] = idx;
  }
};

// Random immersed closed walk of at most `bound` nodes.
inline bool random_axis(const SphereGraph& g, Rng& rng, int bound, Shape& s) {
  s = {};
  const int start = uniform(rng, g.vertex_count());
  const HalfEdge first = g.half_edges_at(start)[uniform(rng, 3)];
  s.nodes.push_back({start, {-1, -1, -1}});
  int cur = 0;
  HalfEdge exit = first;
  for (;;) {
    const HalfEdge arrive = exit.other();
    const int q = g.pants_of(arrive);
    const int len = static_cast<int>(s.nodes.size());
    if (q == start && arrive != first && (coin(rng) || len >= bound)) {
      s.link(g, cur, exit, 0);
      return true;
    }
    if (len >= bound) return false;
    s.nodes.push_back({q, {-1, -1, -1}});
    const int next = len;
    s.link(g, cur, exit, next);
    std::vector<HalfEdge> opts;
    for (HalfEdge h : g.half_edges_at(q))
      if (h != arrive) opts.push_back(h);
    exit = opts[uniform(rng, 2)];
    cur = next;
  }
}

inline void grow_trees(const SphereGraph& g, Rng& rng, int bound, Shape& s) {
  int budget = bound - static_cast<int>(s.nodes.size());
  std::function<void(int, HalfEdge)> branch = [&](int from, HalfEdge exit) {
    const HalfEdge arrive = exit.other();
    s.nodes.push_back({g.pants_of(arrive), {-1, -1, -1}});
    const int me = static_cast<int>(s.nodes.size()) - 1;
    --budget;
    s.link(g, from, exit, me);
    for (HalfEdge h : g.half_edges_at(s.nodes[me].pants))
      if (h != arrive && budget > 0 && uniform(rng, 3) == 0) branch(me, h);
  };
  const std::size_t axis = s.nodes.size();
  for (std::size_t n = 0; n < axis; ++n) {
    const auto hs = g.half_edges_at(s.nodes[n].pants);
    for (int k = 0; k < 3; ++k)
      if (s.nodes[n].cross[k] < 0 && budget > 0 && uniform(rng, 3) == 0) branch(static_cast<int>(n), hs[k]);
  }
}

}  // namespace detail

namespace detail {

// Dresses an abstract normal graph as a position: random nested region trees
// and random co-orientations.
inline TorusPosition dress(const SphereGraph& g, const Shape& shape, Rng& rng) {
  TorusPosition t;
  t.graph = g;
  std::vector<bool> flipped(shape.nodes.size());
  for (std::size_t n = 0; n < shape.nodes.size(); ++n) {
    flipped[n] = coin(rng);
    Piece p;
    p.id = "F" + std::to_string(n);
    p.pants = shape.nodes[n].pants;
    t.pieces[p.id] = p;
  }
  std::vector<std::vector<std::string>> sphere_regions(static_cast<std::size_t>(g.edge_count()));
  int region_count = 0;
  auto new_region = [&](int e) {
    auto id = "r" + std::to_string(region_count++);
    t.regions[id] = e;
    sphere_regions[static_cast<std::size_t>(e)].push_back(id);
    return id;
  };
  for (int e = 0; e < g.edge_count(); ++e) new_region(e);

  std::vector<int> order(shape.cross.size());
  std::iota(order.begin(), order.end(), 0);
  std::shuffle(order.begin(), order.end(), rng);
  for (int ci : order) {
    const auto& cr = shape.cross[static_cast<std::size_t>(ci)];
    const auto& rs = sphere_regions[static_cast<std::size_t>(cr.sphere)];
    const auto parent = rs[static_cast<std::size_t>(uniform(rng, static_cast<int>(rs.size())))];
    const auto child = new_region(cr.sphere);
    Circle c{"c" + std::to_string(ci), cr.sphere, {parent, child}};
    if (coin(rng)) std::swap(c.regions[0], c.regions[1]);
    const Side global = coin(rng) ? Side::A : Side::B;
    for (int end = 0; end < 2; ++end) {
      const int n = cr.node[end];
      t.pieces["F" + std::to_string(n)].boundary.push_back(
          {c.id, HalfEdge{cr.sphere, end}, flip_if(global, flipped[static_cast<std::size_t>(n)])});
    }
    t.circles[c.id] = c;
  }
  for (std::size_t n = 0; n < shape.nodes.size(); ++n) {
    auto& p = t.pieces["F" + std::to_string(n)];
    const auto hs = g.half_edges_at(p.pants);
    std::optional<Side> prev;
    for (int k = 0; k < 3; ++k) {
      if (shape.nodes[n].cross[k] >= 0) continue;
      // A disk's two leaves lie on opposite sides, else it is boundary-parallel.
      const Side sign = prev ? flip(*prev) : (coin(rng) ? Side::A : Side::B);
      prev = sign;
      p.uncrossed_sides[hs[k]] = flip_if(sign, flipped[n]);
    }
  }
  t.side_transport = derived_transport(t);
  return t;
}

}  // namespace detail

/// A random normal torus on `g` with at most `size_bound` pieces: a random
/// immersed cycle with random trees hung on it, dressed with random nested
/// region trees and co-orientations.
inline TorusPosition random_normal_torus(const SphereGraph& g, std::uint64_t seed, int size_bound) {
  if (size_bound < 1) throw Error("size bound must be positive");
  if (const auto d = validate_graph(g); !d.empty()) throw Error("invalid sphere graph: " + join(d, "; "));
  detail::Rng rng(seed);
  detail::Shape shape;
  bool ok = false;
  for (int attempt = 0; attempt < 1000 && !ok; ++attempt) ok = detail::random_axis(g, rng, size_bound, shape);
  if (!ok) throw Error("no immersed cycle within " + std::to_string(size_bound) + " pieces");
  detail::grow_trees(g, rng, size_bound, shape);
  auto t = detail::dress(g, shape, rng);
  if (const auto d = validate_position(t); !d.empty()) throw Error("generated position invalid: " + join(d, "; "));
  if (const auto r = is_normal(t); !r.normal) throw Error("generated position not normal: " + join(r.violations, "; "));
  return t;
}

namespace detail {

// Inverse of a slide with distinct far pieces: split circle c into C1, C2
// around region R, and split the far piece into two parts joined by the band.
inline std::optional<TorusPosition> inverse_slide(const TorusPosition& t, Rng& rng) {
  const auto ends = circle_ends(t);
  std::vector<std::pair<std::string, int>> cands;
  for (const auto& [cid, ce] : ends)
    if (ce.piece[0] != ce.piece[1])
      for (int e = 0; e < 2; ++e) cands.emplace_back(cid, e);
  if (cands.empty()) return std::nullopt;
  const auto [cid, e] = cands[static_cast<std::size_t>(uniform(rng, static_cast<int>(cands.size())))];
  const Circle c = t.circles.at(cid);
  const int S = c.sphere;
  const HalfEdge h{S, e};
  const HalfEdge hp = h.other();
  const std::string fid = ends.at(cid).piece[e];
  const std::string mid = ends.at(cid).piece[1 - e];
  const int ri = uniform(rng, 2);
  const std::string R = c.regions[ri];
  const std::string R12 = c.regions[1 - ri];
  const Piece F = t.pieces.at(fid);
  const Piece M = t.pieces.at(mid);
  const Side sigma = side_toward(t, F, h, R);
  const Side ell = side_toward(t, M, hp, R);

  TorusPosition n = t;
  n.circles.erase(cid);
  n.side_transport.erase(cid);
  const std::string C1 = fresh_id(n.circles, "c");
  n.circles[C1] = {};
  const std::string C2 = fresh_id(n.circles, "c");
  const std::string R1 = fresh_id(n.regions, "r");
  n.regions[R1] = S;
  const std::string R2 = fresh_id(n.regions, "r");
  n.regions[R2] = S;
  n.regions.erase(R12);
  for (auto& [xid, x] : n.circles)
    for (auto& r : x.regions)
      if (r == R12) r = coin(rng) ? R1 : R2;
  n.circles[C1] = Circle{C1, S, {R, R1}};
  n.circles[C2] = Circle{C2, S, {R, R2}};

  Piece nf = F;
  std::erase_if(nf.boundary, [&](const BoundarySlot& s) { return s.circle == cid; });
  nf.boundary.push_back({C1, h, sigma});
  nf.boundary.push_back({C2, h, sigma});
  n.pieces[fid] = nf;

  // The far sides of the two parts partition the far side of M. On each
  // sphere M crosses, its circles cut the region tree into zones; every far
  // zone (with the circles bounding it) goes to one part, the zone under C1
  // to the first and the zone under C2 to the second.
  Piece mn = M;
  std::erase_if(mn.boundary, [&](const BoundarySlot& s) { return s.circle == cid; });
  mn.boundary.push_back({C1, hp, ell});
  mn.boundary.push_back({C2, hp, ell});
  std::map<HalfEdge, std::map<std::string, bool>> far_m;   // far-side bit of M per region
  std::map<HalfEdge, std::map<std::string, int>> part_of;  // owning part of each far region
  std::map<HalfEdge, int> uncrossed_part;
  for (HalfEdge x : n.graph.half_edges_at(M.pants)) {
    for (const auto& [r, side] : region_sides(n, mn, x)) far_m[x][r] = side != ell;
    if (!mn.crosses(x)) {
      uncrossed_part[x] = uniform(rng, 2);
      continue;
    }
    std::set<std::string> own;
    for (const auto& sl : mn.boundary)
      if (sl.half_edge == x) own.insert(sl.circle);
    const auto adj = region_adjacency(n, x.edge);
    auto& owner = part_of[x];
    std::vector<std::string> order;
    if (x == hp) order = {R1, R2};
    for (const auto& [r, f] : far_m[x]) order.push_back(r);
    for (const auto& start : order) {
      if (!far_m[x][start] || owner.contains(start)) continue;
      const int k = start == R1 && x == hp ? 0 : start == R2 && x == hp ? 1 : uniform(rng, 2);
      std::vector<std::string> stack{start};
      owner[start] = k;
      while (!stack.empty()) {
        const auto u = stack.back();
        stack.pop_back();
        for (const auto& [xid, w] : adj.at(u))
          if (!own.contains(xid) && !owner.contains(w)) {
            owner[w] = k;
            stack.push_back(w);
          }
      }
    }
  }
  auto far_in = [&](std::size_t k, HalfEdge x, const std::string& r) {
    if (!mn.crosses(x)) return far_m.at(x).begin()->second && uncrossed_part.at(x) == static_cast<int>(k);
    const auto& owner = part_of.at(x);
    const auto it = owner.find(r);
    return it != owner.end() && it->second == static_cast<int>(k);
  };

  std::array<Piece, 2> parts;
  parts[0].id = mid;
  parts[1].id = fresh_id(t.pieces, "F");
  for (auto& p : parts) p.pants = M.pants;
  parts[0].genus = uniform(rng, M.genus + 1);
  parts[1].genus = M.genus - parts[0].genus;
  for (const auto& sl : mn.boundary) {
    const auto& xc = n.circles.at(sl.circle);
    const std::size_t k = far_in(0, sl.half_edge, xc.regions[0]) || far_in(0, sl.half_edge, xc.regions[1]) ? 0 : 1;
    parts[k].boundary.push_back(
        {sl.circle, sl.half_edge, far_in(k, sl.half_edge, xc.regions[0]) ? flip(ell) : ell});
  }
  for (HalfEdge x : n.graph.half_edges_at(M.pants))
    for (std::size_t k = 0; k < 2; ++k)
      if (!parts[k].crosses(x)) {
        const bool far = !mn.crosses(x) && far_in(k, x, "");
        parts[k].uncrossed_sides[x] = far ? flip(ell) : ell;
      }
  // Side names of the second part are arbitrary.
  if (coin(rng)) {
    for (auto& sl : parts[1].boundary) sl.facing = flip(sl.facing);
    for (auto& [x, sd] : parts[1].uncrossed_sides) sd = flip(sd);
  }
  n.pieces.erase(mid);
  for (auto& p : parts) n.pieces[p.id] = p;
  n.side_transport = derived_transport(n);
  return n;
}

// Inverse of a cap: a new leaf region under a new circle, bounded on one side
// by a new disk whose two uncrossed labels agree.
inline TorusPosition inverse_cap(const TorusPosition& t, Rng& rng) {
  std::vector<std::pair<std::string, HalfEdge>> cands;
  for (const auto& [pid, p] : t.pieces)
    for (HalfEdge x : t.graph.half_edges_at(p.pants)) cands.emplace_back(pid, x);
  const auto [nid, hn] = cands[static_cast<std::size_t>(uniform(rng, static_cast<int>(cands.size())))];
  const int S = hn.edge;
  const HalfEdge hd = hn.other();
  std::vector<std::string> rs;
  for (const auto& [rid, s] : t.regions)
    if (s == S) rs.push_back(rid);
  const std::string r = rs[static_cast<std::size_t>(uniform(rng, static_cast<int>(rs.size())))];
  const Side toward_r = side_toward(t, t.pieces.at(nid), hn, r);

  TorusPosition n = t;
  const std::string rin = fresh_id(n.regions, "r");
  n.regions[rin] = S;
  const std::string cid = fresh_id(n.circles, "c");
  n.circles[cid] = Circle{cid, S, {rin, r}};
  Piece& nb = n.pieces.at(nid);
  nb.uncrossed_sides.erase(hn);
  nb.boundary.push_back({cid, hn, flip(toward_r)});
  const Side ld = coin(rng) ? Side::A : Side::B;
  Piece d;
  d.id = fresh_id(n.pieces, "F");
  d.pants = t.graph.pants_of(hd);
  d.boundary.push_back({cid, hd, flip(ld)});
  for (HalfEdge x : t.graph.half_edges_at(d.pants))
    if (x != hd) d.uncrossed_sides[x] = ld;
  n.pieces[d.id] = d;
  n.side_transport = derived_transport(n);
  return n;
}

}  // namespace detail

namespace detail {

inline bool acceptable(const TorusPosition& t) { return validate_position(t).empty() && lift_conflicts(t).empty(); }

}  // namespace detail

/// Applies `k` random inverse moves (slides about three times in four), each
/// adding exactly one intersection circle.
inline TorusPosition perturb(const TorusPosition& t, std::uint64_t seed, int k) {
  detail::Rng rng(seed);
  TorusPosition cur = t;
  for (int i = 0; i < k; ++i) {
    std::optional<TorusPosition> next;
    for (int attempt = 0; attempt < 200 && !next; ++attempt) {
      std::optional<TorusPosition> cand;
      if (detail::uniform(rng, 4) != 0) cand = detail::inverse_slide(cur, rng);
      if (!cand) cand = detail::inverse_cap(cur, rng);
      if (detail::acceptable(*cand)) next = std::move(cand);
    }
    if (!next) throw Error("no applicable inverse move");
    cur = std::move(*next);
  }
  return cur;
}

/// Identity of a position up to slot order.
inline std::string state_key(const TorusPosition& t) {
  std::string k;
  for (const auto& [pid, p] : t.pieces) {
    std::vector<std::string> slots;
    for (const auto& s : p.boundary)
      slots.push_back(s.circle + "@" + std::to_string(s.half_edge.edge) + "." + std::to_string(s.half_edge.end) +
                      side_char(s.facing));
    std::sort(slots.begin(), slots.end());
    k += pid + ":" + std::to_string(p.pants) + "," + std::to_string(p.genus) + "[" + join(slots, ",") + "]";
    for (const auto& [h, s] : p.uncrossed_sides)
      k += std::to_string(h.edge) + "." + std::to_string(h.end) + side_char(s);
    k += ";";
  }
  for (const auto& [cid, c] : t.circles) k += cid + "(" + c.regions[0] + "," + c.regions[1] + ")";
  k += "|";
  for (const auto& [rid, s] : t.regions) k += rid + ":" + std::to_string(s) + ",";
  return k;
}

/// Canonical code of the decorated graph of a normal position.
inline std::string outcome_code(const TorusPosition& t) { return canonicalize(decorate(to_normal_torus(t))).code; }

struct ConfluenceResult {
  bool confluent = true;
  bool complete = true;  // false when a bound cut the search short
  std::set<std::string> outcomes;
  std::set<std::vector<int>> outcome_counts;
  std::size_t states = 0;
  std::size_t terminals = 0;
  std::vector<std::string> stuck;
};

/// Explores every move order from `t` and collects the decorated normal forms
/// of all terminal positions.
inline ConfluenceResult confluence_search(const TorusPosition& t, int depth_bound = 64,
                                          std::size_t max_states = 200000) {
  ConfluenceResult out;
  std::set<std::string> seen{state_key(t)};
  std::vector<std::pair<TorusPosition, int>> stack{{t, 0}};
  while (!stack.empty()) {
    auto [cur, depth] = std::move(stack.back());
    stack.pop_back();
    ++out.states;
    const auto moves = find_moves(cur);
    if (moves.empty()) {
      ++out.terminals;
      if (const auto r = is_normal(cur); !r.normal) {
        out.stuck.push_back(join(r.violations, "; "));
        continue;
      }
      out.outcomes.insert(outcome_code(cur));
      out.outcome_counts.insert(intersection_vector(cur));
      continue;
    }
    if (depth >= depth_bound) {
      out.complete = false;
      continue;
    }
    for (const auto& m : moves) {
      TorusPosition next;
      try {
        next = apply_move(cur, m);
      } catch (const Error& e) {
        out.stuck.push_back(describe(cur.graph, m) + ": " + e.what());
        continue;
      }
      if (!seen.insert(state_key(next)).second) continue;
      if (seen.size() > max_states) {
        out.complete = false;
        break;
      }
      stack.emplace_back(std::move(next), depth + 1);
    }
  }
  out.confluent = out.stuck.empty() && out.outcomes.size() == 1 && out.outcome_counts.size() == 1;
  return out;
}

/// A random normal torus on a random rank-`rank` graph, perturbed by one to six
/// inverse moves, with at most `max_total` circles in all.
inline TorusPosition confluence_instance(int rank, std::uint64_t seed, int max_total = 12) {
  for (std::uint64_t attempt = 0; attempt < 100; ++attempt) {
    detail::Rng rng(detail::mix_seed(seed, attempt));
    const auto g = random_cubic(rank, rng());
    const auto nt = random_normal_torus(g, rng(), 6);
    const int budget = max_total - total_intersections(nt);
    if (budget < 0) continue;
    return perturb(nt, rng(), std::min(budget, 1 + detail::uniform(rng, 6)));
  }
  throw Error("no instance within the circle budget");
}

struct TrialRecord {
  std::uint64_t seed = 0;
  int rank = 0;
  int k = 0;
  int pieces = 0;
  int trace_length = 0;
};

struct Failure {
  std::uint64_t seed = 0;
  int k = 0;
  std::string message;
  Json counterexample;
};

struct FuzzReport {
  std::vector<TrialRecord> trials;
  std::vector<Failure> failures;
  [[nodiscard]] bool passed() const { return failures.empty(); }
};

/// Perturbs the normal position `nt` by `k` inverse moves and checks that
/// normalization returns exactly k moves to an equivalent normal torus with
/// the same per-sphere counts. Returns the failure message, if any.
inline std::optional<std::string> check_round_trip(const TorusPosition& nt, std::uint64_t seed, int k,
                                                   TrialRecord& rec, TorusPosition& perturbed) {
  perturbed = perturb(nt, seed, k);
  rec.seed = seed;
  rec.k = k;
  rec.rank = nt.graph.rank;
  rec.pieces = static_cast<int>(perturbed.pieces.size());
  if (const auto d = validate_position(perturbed); !d.empty()) return "perturbed position invalid: " + join(d, "; ");
  if (total_intersections(perturbed) != total_intersections(nt) + k) return "perturbation did not add k circles";
  NormalizeResult r;
  try {
    r = normalize(perturbed, {.validate_steps = true});
  } catch (const Error& e) {
    return std::string("normalize failed: ") + e.what();
  }
  rec.trace_length = static_cast<int>(r.trace.size());
  const auto want = intersection_vector(nt);
  const auto got = intersection_vector(r.position);
  if (got != want)
    return "counts " + format_counts(nt.graph, got) + " differ from " + format_counts(nt.graph, want);
  if (r.trace.size() != static_cast<std::size_t>(k))
    return "trace length " + std::to_string(r.trace.size()) + ", expected " + std::to_string(k);
  if (!equivalent(decorate(r.torus), decorate(to_normal_torus(nt))))
    return "normal form not equivalent to the original";
  return std::nullopt;
}

/// Minimality experiment on one normal position: trial i uses k = i mod (k_max+1).
inline FuzzReport minimality_experiment(const TorusPosition& nt, int trials, int k_max, std::uint64_t base_seed) {
  FuzzReport rep;
  for (int i = 0; i < trials; ++i) {
    const std::uint64_t seed = detail::mix_seed(base_seed, static_cast<std::uint64_t>(i));
    const int k = i % (k_max + 1);
    TrialRecord rec;
    TorusPosition perturbed;
    if (auto msg = check_round_trip(nt, seed, k, rec, perturbed))
      rep.failures.push_back({seed, k, *msg, to_json(perturbed)});
    rep.trials.push_back(rec);
  }
  return rep;
}

struct FuzzOptions {
  std::vector<int> ranks{2, 3, 4};
  int trials = 100;
  int k_max = 8;
  int size_bound = 8;
  std::uint64_t seed = 1;
};

/// Random graph, random normal torus, random perturbation, normalize, compare.
inline FuzzReport fuzz(const FuzzOptions& opt) {
  FuzzReport rep;
  for (int i = 0; i < opt.trials; ++i) {
    const std::uint64_t seed = detail::mix_seed(opt.seed, static_cast<std::uint64_t>(i));
    detail::Rng rng(seed);
    const int rank = opt.ranks[static_cast<std::size_t>(i) % opt.ranks.size()];
    const int k = detail::uniform(rng, opt.k_max + 1);
    const auto g = random_cubic(rank, rng());
    const auto nt = random_normal_torus(g, rng(), std::max(opt.size_bound, 2));
    TrialRecord rec;
    TorusPosition perturbed;
    if (auto msg = check_round_trip(nt, rng(), k, rec, perturbed))
      rep.failures.push_back({seed, k, *msg, {{"original", to_json(nt)}, {"perturbed", to_json(perturbed)}}});
    rep.trials.push_back(rec);
  }
  return rep;
}

inline Json to_json(const FuzzReport& r) {
  Json trials = Json::array();
  for (const auto& t : r.trials)
    trials.push_back({{"seed", t.seed}, {"rank", t.rank}, {"k", t.k}, {"pieces", t.pieces},
                      {"trace_length", t.trace_length}});
  Json failures = Json::array();
  for (const auto& f : r.failures)
    failures.push_back({{"seed", f.seed}, {"k", f.k}, {"message", f.message}, {"counterexample", f.counterexample}});
  return {{"format", kFormatVersion}, {"kind", "fuzz_report"}, {"passed", r.passed()},
          {"trial_count", r.trials.size()}, {"trials", trials}, {"failures", failures}};
}

/// Equivalence by direct search for a sign-respecting isomorphism over the
/// sphere graph (node 0 of `a` tried against every node of `b`).
inline bool brute_force_equivalent(const DecoratedGraph& a, const DecoratedGraph& b) {
  const auto& na = a.torus;
  const auto& nb = b.torus;
  if (na.nodes.size() != nb.nodes.size() || na.leaves.size() != nb.leaves.size() || na.nodes.empty()) return false;
  const auto ia = detail::incidence(na);
  const auto ib = detail::incidence(nb);
  for (std::size_t start = 0; start < nb.nodes.size(); ++start)
    for (int fl = 0; fl < 2; ++fl) {
      std::vector<int> map(na.nodes.size(), -1);
      std::vector<bool> used(nb.nodes.size(), false);
      map[0] = static_cast<int>(start);
      used[start] = true;
      std::vector<int> queue{0};
      bool ok = true;
      for (std::size_t q = 0; q < queue.size() && ok; ++q) {
        const int u = queue[q];
        const int v = map[static_cast<std::size_t>(u)];
        if (na.nodes[static_cast<std::size_t>(u)].pants != nb.nodes[static_cast<std::size_t>(v)].pants) {
          ok = false;
          break;
        }
        for (int k = 0; k < 3 && ok; ++k) {
          const auto& x = ia.items[static_cast<std::size_t>(u)][static_cast<std::size_t>(k)];
          const auto& y = ib.items[static_cast<std::size_t>(v)][static_cast<std::size_t>(k)];
          if (x.kind != y.kind) {
            ok = false;
          } else if (x.kind == detail::Item::Kind::Leaf) {
            const Sign sa = a.signs[static_cast<std::size_t>(x.index)];
            const Sign sb = b.signs[static_cast<std::size_t>(y.index)];
            ok = (fl ? flip(sa) : sa) == sb;
          } else {
            const HalfEdge h = ia.half_edges[static_cast<std::size_t>(u)][static_cast<std::size_t>(k)];
            const int u2 = na.edges[static_cast<std::size_t>(x.index)].nodes[static_cast<std::size_t>(1 - h.end)];
            const int v2 = nb.edges[static_cast<std::size_t>(y.index)].nodes[static_cast<std::size_t>(1 - h.end)];
            int& m = map[static_cast<std::size_t>(u2)];
            if (m < 0) {
              if (used[static_cast<std::size_t>(v2)]) {
                ok = false;
              } else {
                m = v2;
                used[static_cast<std::size_t>(v2)] = true;
                queue.push_back(u2);
              }
            } else if (m != v2) {
              ok = false;
            }
          }
        }
      }
      if (ok && queue.size() == na.nodes.size()) return true;
    }
  return false;
}

}  // namespace normtori

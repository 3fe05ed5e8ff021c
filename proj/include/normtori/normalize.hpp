#pragma once

// Normalization as a terminating rewrite system. Each move is the net effect
// of one elementary homotopy and removes exactly one intersection circle.
//
//   Slide: a piece F meets the sphere S (through half-edge h) in circles C1, C2
//   that both bound the region R of S. The tube of F at C1 is slid along an arc
//   in R and out of the pants: C1 and C2 become one circle C, F is cut along
//   the arc, and the far-side pieces at C1 and C2 are banded together across C.
//
//   Cap: a disk piece D with both uncrossed spheres on the same side is
//   parallel into S. If the disk of S it is parallel to holds no other circle,
//   D is pushed across S and the neighbouring piece is capped off.
//
// New objects reuse the lesser of the ids they replace, so commuting moves
// reach identical states regardless of order.

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "normtori/error.hpp"
#include "normtori/normal_graph.hpp"
#include "normtori/position.hpp"

namespace normtori {

struct SlideMove {
  std::string piece;
  HalfEdge half_edge;
  std::string first;   // C1
  std::string second;  // C2
  std::string region;  // R
  friend bool operator==(const SlideMove&, const SlideMove&) = default;
};

struct CapMove {
  std::string disk;
  std::string circle;
  friend bool operator==(const CapMove&, const CapMove&) = default;
};

using Move = std::variant<SlideMove, CapMove>;

inline std::string describe(const SphereGraph& g, const Move& m) {
  if (const auto* s = std::get_if<SlideMove>(&m))
    return "slide " + s->piece + " " + g.half_edge_name(s->half_edge) + " " + s->first + " " + s->second + " " +
           s->region;
  const auto& c = std::get<CapMove>(m);
  return "cap " + c.disk + " " + c.circle;
}

namespace detail {

inline const std::string& piece_at(const std::map<std::string, CircleEnds>& ends, const std::string& circle,
                                   int end) {
  return ends.at(circle).piece[end];
}

struct RankedMove {
  int group = 0;  // 0: slide with distinct far sides, 1: cap, 2: slide with one far side
  Move move;
};

}  // namespace detail

/// All applicable moves in deterministic order: slides whose far-side pieces
/// differ, then caps, then slides that would add genus; ties broken by ids.
inline std::vector<Move> find_moves(const TorusPosition& t) {
  std::vector<detail::RankedMove> ranked;
  const auto ends = circle_ends(t);
  for (const auto& [pid, p] : t.pieces) {
    std::map<HalfEdge, std::vector<std::string>> by_he;
    for (const auto& s : p.boundary) by_he[s.half_edge].push_back(s.circle);
    for (auto& [h, cs] : by_he) {
      std::sort(cs.begin(), cs.end());
      for (std::size_t i = 0; i < cs.size(); ++i)
        for (std::size_t j = i + 1; j < cs.size(); ++j) {
          const auto& c1 = t.circles.at(cs[i]);
          const auto& c2 = t.circles.at(cs[j]);
          std::string shared;
          for (const auto& r : c1.regions)
            if (r == c2.regions[0] || r == c2.regions[1]) shared = r;
          if (shared.empty()) continue;
          const auto& f1 = detail::piece_at(ends, cs[i], 1 - h.end);
          const auto& f2 = detail::piece_at(ends, cs[j], 1 - h.end);
          ranked.push_back({f1 == f2 ? 2 : 0, SlideMove{pid, h, cs[i], cs[j], shared}});
        }
    }
    if (p.genus == 0 && p.boundary.size() == 1 && p.uncrossed_sides.size() == 2) {
      const Side l = p.uncrossed_sides.begin()->second;
      if (std::next(p.uncrossed_sides.begin())->second != l) continue;
      const auto& slot = p.boundary.front();
      const auto& c = t.circles.at(slot.circle);
      const std::string& inner = slot.facing == flip(l) ? c.regions[0] : c.regions[1];
      if (incident_circle_count(t, inner) != 1) continue;
      const auto& nb = t.pieces.at(detail::piece_at(ends, slot.circle, 1 - slot.half_edge.end));
      if (nb.boundary.size() < 2) continue;  // capping would close the neighbour
      ranked.push_back({1, CapMove{pid, slot.circle}});
    }
  }
  std::stable_sort(ranked.begin(), ranked.end(),
                   [](const auto& a, const auto& b) { return a.group < b.group; });
  std::vector<Move> out;
  for (auto& r : ranked) out.push_back(std::move(r.move));
  return out;
}

namespace detail {

inline TorusPosition apply_slide(const TorusPosition& t, const SlideMove& m) {
  const auto ends = circle_ends(t);
  const HalfEdge h = m.half_edge;
  const HalfEdge hp = h.other();
  const auto& c1 = t.circles.at(m.first);
  const auto& c2 = t.circles.at(m.second);
  const std::string& R = m.region;
  const std::string r1 = c1.other_region(R);
  const std::string r2 = c2.other_region(R);
  const std::string far1 = piece_at(ends, m.first, hp.end);
  const std::string far2 = piece_at(ends, m.second, hp.end);
  const Piece& F = t.pieces.at(m.piece);
  const Piece& P1 = t.pieces.at(far1);
  const Piece& P2 = t.pieces.at(far2);

  const Side sigma = side_toward(t, F, h, R);
  const Side l1 = side_toward(t, P1, hp, R);
  const Side l2 = side_toward(t, P2, hp, R);
  if (far1 == far2 && l1 != l2) throw Error("side transport mismatch on slide of " + m.first + "/" + m.second);

  const std::string new_circle = std::min(m.first, m.second);
  const std::string merged_region = std::min(r1, r2);
  auto old_region = [&](const std::string& r) { return r == merged_region ? r1 : r; };

  // Old region sides of both far pieces on every half-edge of their pants.
  const auto pants_hs = t.graph.half_edges_at(P1.pants);
  std::map<HalfEdge, std::map<std::string, Side>> s1, s2;
  for (HalfEdge x : pants_hs) {
    s1[x] = region_sides(t, P1, x);
    s2[x] = region_sides(t, P2, x);
  }
  // The band joins the two near sides (those toward R), so the sum's near
  // side is the intersection of theirs.
  auto merge = [&](Side a, Side b) { return (a == l1 && b == l2) ? l1 : flip(l1); };
  auto merged_side = [&](HalfEdge x, const std::string& region) {
    return merge(s1.at(x).at(region), s2.at(x).at(region));
  };

  TorusPosition out = t;
  out.circles.erase(m.first);
  out.circles.erase(m.second);
  out.side_transport.erase(m.first);
  out.side_transport.erase(m.second);
  out.regions.erase(r1);
  out.regions.erase(r2);
  out.regions[merged_region] = h.edge;
  for (auto& [cid, c] : out.circles)
    for (auto& r : c.regions)
      if (r == r1 || r == r2) r = merged_region;
  out.circles[new_circle] = Circle{new_circle, h.edge, {R, merged_region}};

  auto drop = [&](const BoundarySlot& s) { return s.circle == m.first || s.circle == m.second; };
  const bool f_merges = m.piece == far1 || m.piece == far2;
  if (!f_merges) {
    Piece nf = F;
    std::erase_if(nf.boundary, drop);
    nf.boundary.push_back({new_circle, h, sigma});
    out.pieces[m.piece] = nf;
  }

  Piece merged;
  merged.id = std::min(far1, far2);
  merged.pants = P1.pants;
  merged.genus = far1 == far2 ? P1.genus + 1 : P1.genus + P2.genus;
  std::vector<BoundarySlot> slots = P1.boundary;
  if (far2 != far1) slots.insert(slots.end(), P2.boundary.begin(), P2.boundary.end());
  std::erase_if(slots, drop);
  slots.push_back({new_circle, hp, Side::A});
  if (f_merges) slots.push_back({new_circle, h, Side::A});
  for (auto& s : slots) {
    const auto& c = out.circles.at(s.circle);
    s.facing = merged_side(s.half_edge, old_region(c.regions[0]));
  }
  merged.boundary = std::move(slots);
  for (HalfEdge x : pants_hs) {
    if (merged.crosses(x)) continue;
    const Side a = s1.at(x).empty() ? Side::A : s1.at(x).begin()->second;
    const Side b = s2.at(x).empty() ? Side::A : s2.at(x).begin()->second;
    merged.uncrossed_sides[x] = merge(a, b);
  }
  out.pieces.erase(far1);
  out.pieces.erase(far2);
  out.pieces[merged.id] = merged;

  out.side_transport = derived_transport(out);
  return out;
}

inline TorusPosition apply_cap(const TorusPosition& t, const CapMove& m) {
  const auto ends = circle_ends(t);
  const Piece& D = t.pieces.at(m.disk);
  const auto& slot = D.boundary.front();
  const Side l = D.uncrossed_sides.begin()->second;
  const auto& c = t.circles.at(m.circle);
  const std::string inner = slot.facing == flip(l) ? c.regions[0] : c.regions[1];
  const HalfEdge hn = slot.half_edge.other();
  const std::string nid = piece_at(ends, m.circle, hn.end);
  const Side tau = side_toward(t, t.pieces.at(nid), hn, inner);

  TorusPosition out = t;
  out.pieces.erase(m.disk);
  out.circles.erase(m.circle);
  out.side_transport.erase(m.circle);
  out.regions.erase(inner);
  Piece& n = out.pieces.at(nid);
  std::erase_if(n.boundary, [&](const BoundarySlot& s) { return s.circle == m.circle; });
  if (!n.crosses(hn)) n.uncrossed_sides[hn] = flip(tau);
  return out;
}

}  // namespace detail

inline TorusPosition apply_move(const TorusPosition& t, const Move& m) {
  const auto moves = find_moves(t);
  if (std::find(moves.begin(), moves.end(), m) == moves.end())
    throw Error("inapplicable move: " + describe(t.graph, m));
  if (const auto* s = std::get_if<SlideMove>(&m)) return detail::apply_slide(t, *s);
  return detail::apply_cap(t, std::get<CapMove>(m));
}

struct TraceStep {
  Move move;
  std::vector<int> before;
  std::vector<int> after;
};

struct NormalizeResult {
  TorusPosition position;
  NormalTorus torus;
  std::vector<TraceStep> trace;
};

struct NormalizeOptions {
  bool validate_steps = false;  // re-run validate_position after every move
};

inline std::string trace_line(const SphereGraph& g, const TraceStep& s) {
  return describe(g, s.move) + " " + format_counts(g, s.before) + " -> " + format_counts(g, s.after);
}

/// Applies the first available move until none remains. Every step removes
/// one circle and no per-sphere count grows; a fixpoint that is not normal is
/// reported as stuck.
inline NormalizeResult normalize(const TorusPosition& input, const NormalizeOptions& opt = {}) {
  if (const auto diag = validate_position(input); !diag.empty())
    throw Error("invalid position: " + join(diag, "; "));
  const int initial = total_intersections(input);
  if (initial == 0) throw Error("disjoint from the sphere system: torus is inessential");
  NormalizeResult res;
  res.position = input;
  while (true) {
    const auto moves = find_moves(res.position);
    if (moves.empty()) break;
    if (static_cast<int>(res.trace.size()) >= initial) throw Error("normalization failed to terminate");
    TraceStep step{moves.front(), intersection_vector(res.position), {}};
    res.position = std::visit(
        [&](const auto& mv) {
          if constexpr (std::is_same_v<std::decay_t<decltype(mv)>, SlideMove>)
            return detail::apply_slide(res.position, mv);
          else
            return detail::apply_cap(res.position, mv);
        },
        moves.front());
    step.after = intersection_vector(res.position);
    int before_total = 0, after_total = 0;
    for (std::size_t e = 0; e < step.before.size(); ++e) {
      before_total += step.before[e];
      after_total += step.after[e];
      if (step.after[e] > step.before[e]) throw Error("normalization increased a sphere count");
    }
    if (after_total != before_total - 1) throw Error("normalization step did not remove exactly one circle");
    if (opt.validate_steps)
      if (const auto diag = validate_position(res.position); !diag.empty())
        throw Error("move " + describe(input.graph, step.move) + " broke the position: " + join(diag, "; "));
    res.trace.push_back(std::move(step));
  }
  const auto rep = is_normal(res.position);
  if (!rep.normal) throw Error("stuck non-normal: " + join(rep.violations, "; "));
  res.torus = to_normal_torus(res.position);
  return res;
}

}  // namespace normtori

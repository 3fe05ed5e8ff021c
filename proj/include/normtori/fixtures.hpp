#pragma once

// Hand-built positions on the theta graph (build_standard(2): p0, p1 joined
// by s0, s1, s2, every edge with end 0 at p0). All circles list their outer
// region first.

#include <string>

#include "normtori/position.hpp"
#include "normtori/sphere_graph.hpp"

namespace normtori::fixtures {

namespace detail {

inline constexpr HalfEdge at_p0(int sphere) { return {sphere, 0}; }
inline constexpr HalfEdge at_p1(int sphere) { return {sphere, 1}; }

inline void add_circle(TorusPosition& t, const std::string& id, int sphere, const std::string& r0,
                       const std::string& r1) {
  t.circles[id] = Circle{id, sphere, {r0, r1}};
}

inline TorusPosition theta_frame() {
  TorusPosition t;
  t.graph = build_standard(2);
  return t;
}

inline void finish(TorusPosition& t) { t.side_transport = derived_transport(t); }

}  // namespace detail

/// Boundary of a neighbourhood of a loop crossing s0 then s1: two cylinders.
inline TorusPosition t0() {
  using namespace detail;
  auto t = theta_frame();
  t.regions = {{"r0", 0}, {"r1", 0}, {"r2", 1}, {"r3", 1}, {"r4", 2}};
  add_circle(t, "c0", 0, "r0", "r1");
  add_circle(t, "c1", 1, "r2", "r3");
  t.pieces["F0"] = Piece{"F0", 0, 0, {{"c0", at_p0(0), Side::A}, {"c1", at_p0(1), Side::A}}, {{at_p0(2), Side::A}}};
  t.pieces["F1"] = Piece{"F1", 1, 0, {{"c0", at_p1(0), Side::A}, {"c1", at_p1(1), Side::A}}, {{at_p1(2), Side::A}}};
  finish(t);
  return t;
}

/// t0 after one inverse slide on c0: F0 meets s0 twice, F1 split into an
/// essential disk F1a and a cylinder F1b.
inline TorusPosition t1() {
  using namespace detail;
  auto t = theta_frame();
  t.regions = {{"q0", 0}, {"q1", 0}, {"q2", 0}, {"r2", 1}, {"r3", 1}, {"r4", 2}};
  add_circle(t, "c0a", 0, "q0", "q1");
  add_circle(t, "c0b", 0, "q0", "q2");
  add_circle(t, "c1", 1, "r2", "r3");
  t.pieces["F0"] = Piece{
      "F0", 0, 0,
      {{"c0a", at_p0(0), Side::B}, {"c0b", at_p0(0), Side::B}, {"c1", at_p0(1), Side::A}},
      {{at_p0(2), Side::A}}};
  t.pieces["F1a"] = Piece{"F1a", 1, 0, {{"c0a", at_p1(0), Side::B}}, {{at_p1(1), Side::B}, {at_p1(2), Side::A}}};
  t.pieces["F1b"] = Piece{"F1b", 1, 0, {{"c0b", at_p1(0), Side::B}, {"c1", at_p1(1), Side::A}}, {{at_p1(2), Side::B}}};
  finish(t);
  return t;
}

/// Pants F0 in p0; cylinder F1 and essential disk F2 in p1.
inline TorusPosition t2() {
  using namespace detail;
  auto t = theta_frame();
  t.regions = {{"r0", 0}, {"r1", 0}, {"r2", 1}, {"r3", 1}, {"r4", 2}, {"r5", 2}};
  add_circle(t, "c0", 0, "r0", "r1");
  add_circle(t, "c1", 1, "r2", "r3");
  add_circle(t, "c2", 2, "r4", "r5");
  t.pieces["F0"] = Piece{
      "F0", 0, 0, {{"c0", at_p0(0), Side::A}, {"c1", at_p0(1), Side::A}, {"c2", at_p0(2), Side::A}}, {}};
  t.pieces["F1"] = Piece{"F1", 1, 0, {{"c0", at_p1(0), Side::A}, {"c1", at_p1(1), Side::A}}, {{at_p1(2), Side::A}}};
  t.pieces["F2"] = Piece{"F2", 1, 0, {{"c2", at_p1(2), Side::A}}, {{at_p1(0), Side::A}, {at_p1(1), Side::B}}};
  finish(t);
  return t;
}

/// t0 plus a boundary-parallel disk F2 in p0 on s2; F1 becomes a pants piece.
inline TorusPosition t0_with_parallel_disk() {
  using namespace detail;
  auto t = t0();
  t.regions["r5"] = 2;
  add_circle(t, "c2", 2, "r5", "r4");  // r5 is the leaf under the disk
  t.pieces["F1"].uncrossed_sides.clear();
  t.pieces["F1"].boundary.push_back({"c2", at_p1(2), Side::B});
  t.pieces["F2"] = Piece{"F2", 0, 0, {{"c2", at_p0(2), Side::B}}, {{at_p0(0), Side::A}, {at_p0(1), Side::A}}};
  finish(t);
  return t;
}

/// Inessential torus: two annuli parallel to s0, glued along c0 and c1 which
/// both bound the middle region m. Its only slide bands one far piece to itself.
inline TorusPosition parallel_annuli() {
  using namespace detail;
  auto t = theta_frame();
  t.regions = {{"m", 0}, {"q1", 0}, {"q2", 0}, {"r2", 1}, {"r4", 2}};
  add_circle(t, "c0", 0, "m", "q1");
  add_circle(t, "c1", 0, "m", "q2");
  t.pieces["G0"] = Piece{"G0", 0, 0, {{"c0", at_p0(0), Side::A}, {"c1", at_p0(0), Side::A}},
                         {{at_p0(1), Side::A}, {at_p0(2), Side::A}}};
  t.pieces["G1"] = Piece{"G1", 1, 0, {{"c0", at_p1(0), Side::A}, {"c1", at_p1(0), Side::A}},
                         {{at_p1(1), Side::A}, {at_p1(2), Side::A}}};
  finish(t);
  return t;
}

/// t0 with the transport bit on c0 flipped: a Klein bottle.
inline TorusPosition klein() {
  auto t = t0();
  t.side_transport["c0"] = false;
  return t;
}

}  // namespace normtori::fixtures

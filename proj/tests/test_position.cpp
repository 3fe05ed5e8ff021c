#include <gtest/gtest.h>

#include <algorithm>

#include "normtori/fixtures.hpp"
#include "normtori/oracle.hpp"
#include "normtori/position.hpp"

using namespace normtori;
namespace fx = normtori::fixtures;

namespace {

bool mentions(const Diagnostics& d, const std::string& text) {
  return std::any_of(d.begin(), d.end(), [&](const auto& l) { return l.find(text) != std::string::npos; });
}

}  // namespace

TEST(ValidatePosition, FixturesAreValid) {
  for (const auto& t : {fx::t0(), fx::t1(), fx::t2(), fx::t0_with_parallel_disk(), fx::parallel_annuli()})
    EXPECT_TRUE(validate_position(t).empty()) << join(validate_position(t), "; ");
}

TEST(ValidatePosition, FlippedTransportIsAKleinBottle) {
  EXPECT_TRUE(mentions(validate_position(fx::klein()), "monodromy nontrivial on cycle (F0,F1)"));
}

TEST(ValidatePosition, MissingPieceLeavesCircleHalfGlued) {
  auto t = fx::t0();
  t.pieces.erase("F1");
  EXPECT_TRUE(mentions(validate_position(t), "circle c0 has one incident piece"));
}

TEST(ValidatePosition, UnknownRegionReported) {
  auto t = fx::t0();
  t.circles["c0"].regions[1] = "nowhere";
  EXPECT_FALSE(validate_position(t).empty());
}

TEST(ValidatePosition, ExtraUncrossedLabelReported) {
  auto t = fx::t0();
  t.pieces["F0"].uncrossed_sides[{0, 0}] = Side::A;
  EXPECT_FALSE(validate_position(t).empty());
}

TEST(EulerCharacteristic, Fixtures) {
  EXPECT_EQ(euler_characteristic(fx::t0()), 0);
  EXPECT_EQ(euler_characteristic(fx::t1()), 0);
  EXPECT_EQ(euler_characteristic(fx::t2()), 0);
  EXPECT_EQ(euler_characteristic(fx::t0_with_parallel_disk()), 0);
}

TEST(EulerCharacteristic, PieceShapes) {
  const auto t = fx::t2();
  EXPECT_EQ(t.pieces.at("F0").euler_characteristic(), -1);
  EXPECT_EQ(t.pieces.at("F1").euler_characteristic(), 0);
  EXPECT_EQ(t.pieces.at("F2").euler_characteristic(), 1);
  Piece disk{"D", 0, 0, {{"c", {0, 0}, Side::A}}, {}};
  EXPECT_EQ(disk.euler_characteristic(), 1);
}

TEST(IntersectionVector, Fixtures) {
  EXPECT_EQ(intersection_vector(fx::t0()), (std::vector<int>{1, 1, 0}));
  EXPECT_EQ(intersection_vector(fx::t1()), (std::vector<int>{2, 1, 0}));
  EXPECT_EQ(intersection_vector(fx::t2()), (std::vector<int>{1, 1, 1}));
  EXPECT_EQ(total_intersections(fx::t1()), 3);
  EXPECT_EQ(format_counts(fx::t0().graph, {1, 1, 0}), "{s0:1, s1:1, s2:0}");
}

TEST(IsNormal, T0) {
  const auto r = is_normal(fx::t0());
  EXPECT_TRUE(r.normal);
  EXPECT_TRUE(r.violations.empty());
}

TEST(IsNormal, T1MeetsHalfEdgeTwice) {
  const auto r = is_normal(fx::t1());
  EXPECT_FALSE(r.normal);
  EXPECT_TRUE(mentions(r.violations, "piece F0 meets half-edge (s0@p0) twice"));
}

TEST(IsNormal, T2) { EXPECT_TRUE(is_normal(fx::t2()).normal); }

TEST(IsNormal, BoundaryParallelDisk) {
  auto t = fx::t2();
  for (auto& [h, s] : t.pieces["F2"].uncrossed_sides) s = Side::A;
  const auto r = is_normal(t);
  EXPECT_FALSE(r.normal);
  EXPECT_TRUE(mentions(r.violations, "disk F2 boundary-parallel"));
  EXPECT_TRUE(mentions(is_normal(fx::t0_with_parallel_disk()).violations, "disk F2 boundary-parallel"));
}

TEST(DerivedTransport, MatchesFixtures) {
  for (const auto& t : {fx::t0(), fx::t1(), fx::t2()}) EXPECT_EQ(derived_transport(t), t.side_transport);
  EXPECT_NE(derived_transport(fx::klein()), fx::klein().side_transport);
}

TEST(CircleEnds, EachCircleGluesTwoPieces) {
  const auto ends = circle_ends(fx::t2());
  ASSERT_EQ(ends.size(), 3u);
  EXPECT_EQ(ends.at("c0").piece[0], "F0");
  EXPECT_EQ(ends.at("c0").piece[1], "F1");
  EXPECT_EQ(ends.at("c2").piece[1], "F2");
}

TEST(RegionSides, CylinderSeesBothRegionsOfItsCircle) {
  const auto t = fx::t0();
  const auto& f0 = t.pieces.at("F0");
  const auto s = region_sides(t, f0, {0, 0});
  EXPECT_NE(s.at("r0"), s.at("r1"));
  EXPECT_EQ(side_toward(t, f0, {0, 0}, "r0"), Side::A);
}

TEST(LiftConflicts, NoneOnFixtures) {
  for (const auto& t : {fx::t0(), fx::t1(), fx::t2(), fx::t0_with_parallel_disk()})
    EXPECT_TRUE(lift_conflicts(t).empty()) << join(lift_conflicts(t), "; ");
}

TEST(LiftConflicts, DisjointCopiesMayOverlapInM) {
  // F1 and F2 of t2 overlap in p1 but their lifts live in different copies.
  const auto t = fx::t2();
  const auto& f1 = t.pieces.at("F1");
  const auto& f2 = t.pieces.at("F2");
  bool seen[2][2] = {};
  for (HalfEdge x : t.graph.half_edges_at(1)) {
    const auto a = region_sides(t, f1, x);
    const auto b = region_sides(t, f2, x);
    for (const auto& [r, s] : a)
      if (b.contains(r)) seen[static_cast<int>(s)][static_cast<int>(b.at(r))] = true;
  }
  EXPECT_TRUE(seen[0][0] && seen[0][1] && seen[1][0] && seen[1][1]);
  EXPECT_TRUE(lift_conflicts(t).empty());
}

TEST(LiftConflicts, DetectedAmongRawInverseMoves) {
  int conflicts = 0;
  for (std::uint64_t s = 0; s < 400 && conflicts == 0; ++s) {
    normtori::detail::Rng rng(s);
    auto cur = fx::t0();
    for (int i = 0; i < 3; ++i) {
      auto next = normtori::detail::inverse_cap(cur, rng);
      if (!validate_position(next).empty()) break;
      if (!lift_conflicts(next).empty()) {
        ++conflicts;
        EXPECT_TRUE(mentions(lift_conflicts(next), "overlap in a pants copy"));
        break;
      }
      cur = std::move(next);
    }
  }
  EXPECT_GT(conflicts, 0);
}

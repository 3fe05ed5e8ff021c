#include <gtest/gtest.h>

#include "normtori/fixtures.hpp"
#include "normtori/normal_graph.hpp"
#include "normtori/normalize.hpp"
#include "normtori/oracle.hpp"

using namespace normtori;
namespace fx = normtori::fixtures;

TEST(FindMoves, NormalInputHasNone) {
  EXPECT_TRUE(find_moves(fx::t0()).empty());
  EXPECT_TRUE(find_moves(fx::t2()).empty());
}

TEST(FindMoves, T1HasOneSlide) {
  const auto t = fx::t1();
  const auto moves = find_moves(t);
  ASSERT_EQ(moves.size(), 1u);
  ASSERT_TRUE(std::holds_alternative<SlideMove>(moves[0]));
  EXPECT_EQ(std::get<SlideMove>(moves[0]), (SlideMove{"F0", {0, 0}, "c0a", "c0b", "q0"}));
  EXPECT_EQ(describe(t.graph, moves[0]), "slide F0 s0@p0 c0a c0b q0");
}

TEST(FindMoves, ParallelDiskHasOneCap) {
  const auto moves = find_moves(fx::t0_with_parallel_disk());
  ASSERT_EQ(moves.size(), 1u);
  EXPECT_EQ(std::get<CapMove>(moves[0]), (CapMove{"F2", "c2"}));
}

TEST(FindMoves, SameFarPieceSlidesComeLast) {
  const auto t = fx::parallel_annuli();
  for (const auto& m : find_moves(t)) {
    const auto& s = std::get<SlideMove>(m);
    const auto ends = circle_ends(t);
    const int far = 1 - s.half_edge.end;
    EXPECT_EQ(ends.at(s.first).piece[far], ends.at(s.second).piece[far]);
  }
}

TEST(ApplySlide, T1ReturnsToT0) {
  const auto t = fx::t1();
  const auto out = apply_move(t, find_moves(t)[0]);
  EXPECT_TRUE(validate_position(out).empty());
  EXPECT_EQ(intersection_vector(out), (std::vector<int>{1, 1, 0}));
  ASSERT_TRUE(is_normal(out).normal);
  EXPECT_TRUE(equivalent(decorate(to_normal_torus(out)), decorate(to_normal_torus(fx::t0()))));
}

TEST(ApplySlide, SameFarPieceAddsGenus) {
  const auto t = fx::parallel_annuli();
  const auto out = apply_move(t, find_moves(t)[0]);
  EXPECT_TRUE(validate_position(out).empty());
  EXPECT_EQ(euler_characteristic(out), 0);
  EXPECT_EQ(out.pieces.at("G1").genus, 1);
  EXPECT_EQ(total_intersections(out), total_intersections(t) - 1);
}

TEST(ApplyCap, NeighbourGainsEulerCharacteristic) {
  const auto t = fx::t0_with_parallel_disk();
  const auto out = apply_move(t, find_moves(t)[0]);
  EXPECT_TRUE(validate_position(out).empty());
  EXPECT_FALSE(out.pieces.contains("F2"));
  EXPECT_EQ(out.pieces.at("F1").euler_characteristic(), t.pieces.at("F1").euler_characteristic() + 1);
  EXPECT_EQ(intersection_vector(out)[2], intersection_vector(t)[2] - 1);
  EXPECT_TRUE(equivalent(decorate(to_normal_torus(out)), decorate(to_normal_torus(fx::t0()))));
}

TEST(ApplyMove, RejectsInapplicableMove) {
  EXPECT_THROW(apply_move(fx::t0(), SlideMove{"F0", {0, 0}, "c0", "c1", "r0"}), Error);
  EXPECT_THROW(apply_move(fx::t0(), CapMove{"F0", "c0"}), Error);
}

TEST(Normalize, T1) {
  const auto r = normalize(fx::t1(), {.validate_steps = true});
  ASSERT_EQ(r.trace.size(), 1u);
  EXPECT_EQ(r.trace[0].before, (std::vector<int>{2, 1, 0}));
  EXPECT_EQ(r.trace[0].after, (std::vector<int>{1, 1, 0}));
  EXPECT_EQ(trace_line(r.position.graph, r.trace[0]),
            "slide F0 s0@p0 c0a c0b q0 {s0:2, s1:1, s2:0} -> {s0:1, s1:1, s2:0}");
  EXPECT_TRUE(equivalent(decorate(r.torus), decorate(to_normal_torus(fx::t0()))));
}

TEST(Normalize, IdempotentOnNormalInput) {
  for (const auto& t : {fx::t0(), fx::t2()}) {
    const auto r = normalize(t);
    EXPECT_TRUE(r.trace.empty());
    EXPECT_EQ(r.position, t);
  }
}

TEST(Normalize, RejectsInvalidInput) { EXPECT_THROW(normalize(fx::klein()), Error); }

TEST(Normalize, ReportsStuckNonNormal) {
  try {
    normalize(fx::parallel_annuli());
    FAIL() << "expected a stuck report";
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("stuck non-normal"), std::string::npos);
  }
}

TEST(Normalize, PerturbedT0ComesBack) {
  const auto base = decorate(to_normal_torus(fx::t0()));
  for (std::uint64_t s = 0; s < 40; ++s)
    for (int k = 0; k <= 8; ++k) {
      const auto p = perturb(fx::t0(), s, k);
      const auto r = normalize(p, {.validate_steps = true});
      EXPECT_EQ(r.trace.size(), static_cast<std::size_t>(k));
      EXPECT_TRUE(equivalent(decorate(r.torus), base)) << s << " " << k;
    }
}

TEST(Normalize, EachStepRemovesOneCircle) {
  for (std::uint64_t s = 0; s < 40; ++s) {
    const auto r = normalize(perturb(fx::t2(), s, 6));
    for (const auto& step : r.trace) {
      int before = 0, after = 0;
      for (std::size_t i = 0; i < step.before.size(); ++i) {
        EXPECT_LE(step.after[i], step.before[i]);
        before += step.before[i];
        after += step.after[i];
      }
      EXPECT_EQ(after, before - 1);
    }
  }
}

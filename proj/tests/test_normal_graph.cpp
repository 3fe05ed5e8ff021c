#include <gtest/gtest.h>

#include <algorithm>

#include "normtori/fixtures.hpp"
#include "normtori/normal_graph.hpp"
#include "normtori/normalize.hpp"
#include "normtori/oracle.hpp"

using namespace normtori;
namespace fx = normtori::fixtures;

namespace {

int count_kind(const NormalTorus& nt, PieceKind k) {
  return static_cast<int>(std::count_if(nt.nodes.begin(), nt.nodes.end(), [&](const YNode& n) { return n.kind == k; }));
}

/// The same decorated graph with nodes listed in reverse order and renamed.
DecoratedGraph relabeled(const DecoratedGraph& d) {
  DecoratedGraph out = d;
  const int n = static_cast<int>(d.torus.nodes.size());
  auto map = [n](int i) { return n - 1 - i; };
  for (int i = 0; i < n; ++i) {
    out.torus.nodes[static_cast<std::size_t>(map(i))] = d.torus.nodes[static_cast<std::size_t>(i)];
    out.torus.nodes[static_cast<std::size_t>(map(i))].piece = "N" + std::to_string(i);
  }
  for (auto& e : out.torus.edges) e.nodes = {map(e.nodes[0]), map(e.nodes[1])};
  for (auto& l : out.torus.leaves) l.node = map(l.node);
  std::reverse(out.torus.edges.begin(), out.torus.edges.end());
  return out;
}

std::vector<Sign> signs_of_node(const DecoratedGraph& d, const std::string& piece) {
  std::vector<Sign> out;
  const int node = d.torus.find_node(piece);
  for (std::size_t i = 0; i < d.torus.leaves.size(); ++i)
    if (d.torus.leaves[i].node == node) out.push_back(d.signs[i]);
  return out;
}

}  // namespace

TEST(ToNormalTorus, T0) {
  const auto nt = to_normal_torus(fx::t0());
  EXPECT_EQ(nt.nodes.size(), 2u);
  EXPECT_EQ(count_kind(nt, PieceKind::Cylinder), 2);
  EXPECT_EQ(nt.edges.size(), 2u);
  EXPECT_EQ(nt.leaves.size(), 2u);
  EXPECT_TRUE(validate_normal_torus(nt).empty());
}

TEST(ToNormalTorus, T2) {
  const auto nt = to_normal_torus(fx::t2());
  EXPECT_EQ(count_kind(nt, PieceKind::Pants), 1);
  EXPECT_EQ(count_kind(nt, PieceKind::Cylinder), 1);
  EXPECT_EQ(count_kind(nt, PieceKind::Disk), 1);
  EXPECT_EQ(nt.edges.size(), 3u);
  EXPECT_EQ(nt.leaves.size(), 3u);
  EXPECT_EQ(nt.edges.size() - nt.nodes.size() + 1, 1u);
  EXPECT_TRUE(validate_normal_torus(nt).empty());
}

TEST(ToNormalTorus, RejectsNonNormal) { EXPECT_THROW(to_normal_torus(fx::t1()), Error); }

TEST(Decorate, SolidTorusLabelsAgree) {
  const auto nt = to_normal_torus(fx::t0());
  EXPECT_EQ(decorate(nt, "F0", Side::A).signs, (std::vector<Sign>{Sign::Plus, Sign::Plus}));
  EXPECT_EQ(decorate(nt, "F0", Side::B).signs, (std::vector<Sign>{Sign::Minus, Sign::Minus}));
}

TEST(Decorate, DiskLeavesDisagree) {
  const auto d = decorate(to_normal_torus(fx::t2()), "F2", Side::A);
  auto s = signs_of_node(d, "F2");
  ASSERT_EQ(s.size(), 2u);
  EXPECT_NE(s[0], s[1]);
}

TEST(Canonicalize, InvariantUnderRelabeling) {
  for (const auto& t : {fx::t0(), fx::t2()}) {
    const auto d = decorate(to_normal_torus(t));
    EXPECT_EQ(canonicalize(d), canonicalize(relabeled(d)));
    EXPECT_EQ(canonicalize(d), canonicalize(flip_signs(d)));
  }
}

TEST(Canonicalize, DistinguishesDifferentGraphs) {
  EXPECT_NE(canonicalize(decorate(to_normal_torus(fx::t0()))), canonicalize(decorate(to_normal_torus(fx::t2()))));
}

TEST(Equivalent, GlobalFlip) {
  const auto d = decorate(to_normal_torus(fx::t2()));
  EXPECT_TRUE(equivalent(d, flip_signs(d)));
}

TEST(Equivalent, UnequalSignPatterns) {
  auto a = decorate(to_normal_torus(fx::t0()));
  auto b = a;
  a.signs = {Sign::Plus, Sign::Minus};
  b.signs = {Sign::Plus, Sign::Plus};
  EXPECT_FALSE(equivalent(a, b));
}

TEST(Equivalent, AgreesWithBruteForce) {
  std::vector<DecoratedGraph> pool;
  const auto g = build_standard(2);
  for (std::uint64_t s = 0; s < 40; ++s) {
    pool.push_back(decorate(to_normal_torus(random_normal_torus(g, s, 4))));
  }
  for (std::size_t i = 0; i < pool.size(); ++i) {
    EXPECT_TRUE(brute_force_equivalent(pool[i], relabeled(pool[i])));
    for (std::size_t j = i; j < pool.size(); ++j)
      EXPECT_EQ(equivalent(pool[i], pool[j]), brute_force_equivalent(pool[i], pool[j])) << i << " " << j;
  }
}

TEST(Sides, SolidTorusHasOneEmptyList) {
  const auto s = sides(decorate(to_normal_torus(fx::t0()), "F0", Side::A));
  EXPECT_EQ(s.plus.size(), 2u);
  EXPECT_TRUE(s.minus.empty());
}

TEST(Sides, T2SplitsTwoAndOne) {
  const auto d = decorate(to_normal_torus(fx::t2()));
  const auto s = sides(d);
  const auto f = sides(flip_signs(d));
  EXPECT_EQ(std::min(s.plus.size(), s.minus.size()), 1u);
  EXPECT_EQ(std::max(s.plus.size(), s.minus.size()), 2u);
  EXPECT_EQ(f.plus, s.minus);
  EXPECT_EQ(f.minus, s.plus);
}

TEST(BoundsSolidTorus, Fixtures) {
  EXPECT_TRUE(bounds_solid_torus(decorate(to_normal_torus(fx::t0()))));
  EXPECT_FALSE(bounds_solid_torus(decorate(to_normal_torus(fx::t2()))));
}

TEST(BoundsSolidTorus, DiskNodeRulesItOut) {
  for (std::uint64_t s = 0; s < 100; ++s) {
    const auto nt = to_normal_torus(random_normal_torus(random_cubic(2 + static_cast<int>(s % 3), s), s, 8));
    const auto d = decorate(nt);
    const bool has_disk = std::any_of(nt.nodes.begin(), nt.nodes.end(), [](const YNode& n) { return n.kind == PieceKind::Disk; });
    if (has_disk) {
      EXPECT_FALSE(bounds_solid_torus(d));
    }
  }
}

TEST(FundamentalDomain, T0) {
  const auto fd = fundamental_domain(to_normal_torus(fx::t0()));
  auto axis = fd.axis;
  std::sort(axis.begin(), axis.end());
  EXPECT_EQ(axis, (std::vector<std::string>{"F0", "F1"}));
  EXPECT_TRUE(fd.branches.empty());
}

TEST(FundamentalDomain, T2) {
  const auto fd = fundamental_domain(to_normal_torus(fx::t2()));
  auto axis = fd.axis;
  std::sort(axis.begin(), axis.end());
  EXPECT_EQ(axis, (std::vector<std::string>{"F0", "F1"}));
  auto circles = fd.axis_circles;
  std::sort(circles.begin(), circles.end());
  EXPECT_EQ(circles, (std::vector<std::string>{"c0", "c1"}));
  ASSERT_EQ(fd.branches.size(), 1u);
  EXPECT_EQ(fd.branches[0].axis_piece, "F0");
  EXPECT_EQ(fd.branches[0].circle, "c2");
  EXPECT_EQ(fd.branches[0].pieces, std::vector<std::string>{"F2"});
}

TEST(AxisWord, Fixtures) {
  const auto lab = label_generators(build_standard(2));
  EXPECT_EQ(axis_word(to_normal_torus(fx::t0()), lab).str(), "x1");
  EXPECT_EQ(axis_word(to_normal_torus(fx::t2()), lab).str(), "x1");
}

TEST(AxisWord, NonemptyAndCyclicallyReduced) {
  for (std::uint64_t s = 0; s < 100; ++s) {
    const auto g = random_cubic(2 + static_cast<int>(s % 3), s);
    const auto w = axis_word(to_normal_torus(random_normal_torus(g, s, 8)), label_generators(g)).letters;
    ASSERT_FALSE(w.empty());
    EXPECT_NE(w.front(), -w.back());
    for (std::size_t i = 0; i + 1 < w.size(); ++i) EXPECT_NE(w[i], -w[i + 1]);
  }
}

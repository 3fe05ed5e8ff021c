#include <gtest/gtest.h>

#include "normtori/fixtures.hpp"
#include "normtori/oracle.hpp"
#include "normtori/serialize.hpp"

using namespace normtori;
namespace fx = normtori::fixtures;

namespace {

std::string parse_error(const std::function<void()>& f) {
  try {
    f();
  } catch (const ParseError& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST(RoundTrip, Graphs) {
  for (int n = 2; n <= 5; ++n) {
    const auto g = random_cubic(n, static_cast<std::uint64_t>(n));
    EXPECT_EQ(graph_from_json(to_json(g)), g);
  }
}

TEST(RoundTrip, Positions) {
  for (const auto& t : {fx::t0(), fx::t1(), fx::t2(), fx::t0_with_parallel_disk(), fx::parallel_annuli()})
    EXPECT_EQ(position_from_json(to_json(t)), t);
  for (std::uint64_t s = 0; s < 20; ++s) {
    const auto t = perturb(random_normal_torus(random_cubic(3, s), s, 6), s, 3);
    EXPECT_EQ(position_from_json(Json::parse(to_json(t).dump())), t);
  }
}

TEST(RoundTrip, NormalAndDecorated) {
  for (const auto& t : {fx::t0(), fx::t2()}) {
    const auto nt = to_normal_torus(t);
    EXPECT_EQ(normal_torus_from_json(to_json(nt)), nt);
    const auto d = decorate(nt);
    EXPECT_EQ(decorated_from_json(to_json(d)), d);
  }
}

TEST(RoundTrip, NormalizedDocumentCarriesItsPosition) {
  const auto r = normalize(fx::t1());
  const auto j = to_json(r);
  EXPECT_EQ(j["kind"], "normalized_torus");
  EXPECT_EQ(j["total_intersections"], 2);
  EXPECT_EQ(j["trace"].size(), 1u);
  EXPECT_EQ(position_from_document(j), r.position);
  EXPECT_EQ(normal_torus_from_json(j["normal_torus"]), r.torus);
}

TEST(Schema, HeaderFields) {
  const auto j = to_json(fx::t0());
  EXPECT_EQ(j["format"], 1);
  EXPECT_EQ(j["kind"], "torus_position");
}

TEST(Schema, WrongKindRejected) {
  EXPECT_FALSE(parse_error([] { position_from_json(to_json(build_standard(2))); }).empty());
}

TEST(Schema, FutureFormatRejected) {
  auto j = to_json(fx::t0());
  j["format"] = 2;
  EXPECT_FALSE(parse_error([&] { position_from_json(j); }).empty());
}

TEST(Schema, ErrorsCarryLocation) {
  auto j = to_json(fx::t0());
  j["pieces"][0]["pants"] = "p9";
  const auto msg = parse_error([&] { position_from_json(j); });
  EXPECT_NE(msg.find("$.pieces[0].pants"), std::string::npos) << msg;
}

TEST(Schema, MissingFieldNamed) {
  auto j = to_json(fx::t0());
  j.erase("circles");
  const auto msg = parse_error([&] { position_from_json(j); });
  EXPECT_NE(msg.find("circles"), std::string::npos) << msg;
}

TEST(Schema, InvalidNormalTorusRejected) {
  auto j = to_json(to_normal_torus(fx::t2()));
  j["leaves"].erase(0);
  EXPECT_THROW(normal_torus_from_json(j), Error);
}

TEST(Files, ShippedFixturesMatchCode) {
  const std::string dir = NORMTORI_DATA_DIR;
  EXPECT_EQ(position_from_json(read_json_file(dir + "/t0.json")), fx::t0());
  EXPECT_EQ(position_from_json(read_json_file(dir + "/t1.json")), fx::t1());
  EXPECT_EQ(position_from_json(read_json_file(dir + "/t2.json")), fx::t2());
  EXPECT_EQ(position_from_json(read_json_file(dir + "/klein.json")), fx::klein());
  EXPECT_EQ(graph_from_json(read_json_file(dir + "/theta.json")), build_standard(2));
}

TEST(Files, MissingFileIsAnError) { EXPECT_THROW(read_json_file("/nonexistent/x.json"), Error); }

TEST(Dot, MentionsEveryPiece) {
  const auto dot = position_to_dot(fx::t2());
  for (const char* id : {"F0", "F1", "F2"}) EXPECT_NE(dot.find(id), std::string::npos);
  const auto ddot = decorated_to_dot(decorate(to_normal_torus(fx::t2())));
  EXPECT_NE(ddot.find("triangle"), std::string::npos);
  EXPECT_NE(ddot.find("ellipse"), std::string::npos);
  EXPECT_NE(ddot.find("box"), std::string::npos);
}

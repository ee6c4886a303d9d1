#include "wittrw/io.hpp"
#include "wittrw/sampling.hpp"

#include <gtest/gtest.h>

using namespace wittrw;
using io::json;

namespace {

std::string location_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const io::SchemaError& e) {
    return e.where();
  }
  return "<no error>";
}

}  // namespace

TEST(PolyJson, EncodingIsGradedLexWithDecimalStrings) {
  IntPoly x = IntPoly::var(2, 0), y = IntPoly::var(2, 1);
  IntPoly f = x * y + BigInt(-3) * x + IntPoly::constant(2, 7);
  json j = io::to_json(f);
  EXPECT_EQ(j.dump(), R"({"terms":[["7",[0,0]],["-3",[1,0]],["1",[1,1]]],"vars":2})");
  EXPECT_EQ(io::poly_from_json(j, ""), f);
  IntPoly big = IntPoly::constant(1, pow(BigInt(10), 40));
  EXPECT_EQ(io::to_json(big)["terms"][0][0], "10000000000000000000000000000000000000000");
  EXPECT_EQ(io::poly_from_json(io::to_json(big), ""), big);
}

TEST(PolyJson, ShorthandConstants) {
  EXPECT_EQ(io::poly_from_json(json(5), "", 2), IntPoly::constant(2, 5));
  EXPECT_EQ(io::poly_from_json(json("-12345678901234567890"), ""), IntPoly::constant(0, parse_bigint("-12345678901234567890")));
}

TEST(PolyJson, SchemaErrorsCarryLocations) {
  EXPECT_EQ(location_of([] { io::poly_from_json(json::parse(R"({"terms":[]})"), "/p"); }), "/p/vars");
  EXPECT_EQ(location_of([] { io::poly_from_json(json::parse(R"({"vars":1,"terms":[["1",[1,2]]]})"), "/p"); }),
            "/p/terms/0/1");
  EXPECT_EQ(location_of([] { io::poly_from_json(json::parse(R"({"vars":1,"terms":[["x",[1]]]})"), "/p"); }),
            "/p/terms/0/0");
  EXPECT_EQ(location_of([] { io::poly_from_json(json::parse(R"({"vars":1,"terms":[["1",[-1]]]})"), "/p"); }),
            "/p/terms/0/1/0");
  EXPECT_EQ(location_of([] { io::poly_from_json(json::parse(R"({"vars":2,"terms":[]})"), "/p", 1); }), "/p/vars");
}

TEST(FormJson, RoundTripAndOneBasedIndices) {
  auto w = IntPoly::var(2, 0) * wedge(DiffForm::dx(2, 0), DiffForm::dx(2, 1));
  json j = io::to_json(w);
  EXPECT_EQ(j["comps"][0][0], json::array({1, 2}));
  EXPECT_EQ(io::form_from_json(j, ""), w);
  // unsorted indices are normalized with sign
  json swapped = json::parse(R"({"q":2,"vars":2,"comps":[[[2,1],{"vars":2,"terms":[["1",[1,0]]]}]]})");
  EXPECT_EQ(io::form_from_json(swapped, ""), -w);
  EXPECT_EQ(location_of([] { io::form_from_json(json::parse(R"({"q":1,"vars":1,"comps":[[[2],1]]})"), "/w"); }),
            "/w/comps/0/0/0");
  EXPECT_EQ(location_of([] { io::form_from_json(json::parse(R"({"q":1,"vars":1,"comps":[[[1,1],1]]})"), "/w"); }),
            "/w/comps/0/0");
}

TEST(WittJson, GhostAndWittPayloads) {
  auto a = io::witt_from_json(json::parse(R"({"S":[1,2],"ghost":[3,19]})"));
  EXPECT_EQ(a.witt(), (std::vector<IntPoly>{IntPoly::constant(0, 3), IntPoly::constant(0, 5)}));
  auto b = io::witt_from_json(io::to_json(a));
  EXPECT_EQ(b, a);
  EXPECT_THROW(io::witt_from_json(json::parse(R"({"S":[1,2],"ghost":[1,2]})")), NotIntegral);
  EXPECT_EQ(location_of([] { io::witt_from_json(json::parse(R"({"S":[1,2],"ghost":[1]})")); }), "/ghost");
  EXPECT_EQ(location_of([] { io::witt_from_json(json::parse(R"({"S":[1,4],"ghost":[1,1]})")); }), "/S");
  EXPECT_EQ(location_of([] { io::witt_from_json(json::parse(R"({"ghost":[1,1]})")); }), "/S");
  auto c = io::witt_from_json(json::parse(R"({"ghost":[2,2]})"), TruncationSet{1, 2});
  EXPECT_EQ(c, constant_witt(2, {1, 2}));
}

TEST(DrwJson, RoundTripIsIdentity) {
  sampling::Rng rng(121);
  for (int i = 0; i < 50; ++i) {
    const std::size_t q = static_cast<std::size_t>(i % 3);
    auto w = sampling::random_certified(rng, q, {1, 2, 3, 6}, {2, 3, 9, 2});
    json j = io::to_json(w);
    EXPECT_TRUE(j["certified"].get<bool>());
    auto back = io::drw_from_json(j);
    EXPECT_EQ(back, w);
    EXPECT_FALSE(back.certified());
    EXPECT_EQ(io::to_json(back).dump(), io::to_json(w.as_raw()).dump());
  }
}

TEST(GenExprJson, RoundTripThroughEvaluation) {
  sampling::Rng rng(122);
  for (int i = 0; i < 30; ++i) {
    const std::size_t q = static_cast<std::size_t>(i % 3);
    auto e = sampling::random_genexpr(rng, q, {1, 2, 4}, {2, 3, 9, 2});
    json j = io::to_json(e);
    auto back = io::genexpr_from_json(j);
    EXPECT_EQ(io::to_json(back).dump(), j.dump());
    EXPECT_EQ(evaluate(back), evaluate(e));
    auto lifted = drw_lift(evaluate(e).as_raw(), 2);
    auto lj = io::to_json(lifted);
    EXPECT_EQ(evaluate(io::genexpr_from_json(lj)), evaluate(e));
  }
}

TEST(GenExprJson, RejectsWrongNumberOfDifferentials) {
  json j = json::parse(R"({"q":1,"S":[1,2],"vars":1,"terms":[{"factors":[{"n":2,"r":{"vars":1,"terms":[["1",[1]]]}}]}]})");
  EXPECT_EQ(location_of([&] { io::genexpr_from_json(j); }), "/terms/0/factors");
}

TEST(TruncationSetFlag, Parsing) {
  EXPECT_EQ(io::parse_truncation_set("1,2,3,6"), (TruncationSet{1, 2, 3, 6}));
  EXPECT_THROW(io::parse_truncation_set("1,x"), io::SchemaError);
  EXPECT_THROW(io::parse_truncation_set("1,4"), io::SchemaError);
  EXPECT_THROW(io::parse_truncation_set(""), io::SchemaError);
}

#include <doctest.h>

#include "kshift/graded_group.hpp"
#include "support.hpp"

using namespace kshift;

TEST_CASE("group spec parsing") {
  auto g = parse_group_text(R"({"basis": ["u", "v", "w"], "degrees": {"w": 1}, "unit": "u"})");
  CHECK(g.rank() == 3);
  CHECK(g.symbol(g.unit()) == "u");
  CHECK(g.degree(g.id("v")) == 0);
  CHECK(g.degree(g.id("w")) == 1);
  CHECK(g.check_basis().size() == 2);
  CHECK_FALSE(g.has_cone());

  auto round = parse_group(to_json(g));
  CHECK(round.symbols() == g.symbols());
  CHECK(round.unit() == g.unit());
}

TEST_CASE("group spec errors") {
  auto code_of = [](const char* text) {
    try {
      parse_group_text(text);
    } catch (const Error& e) {
      return e.code();
    }
    FAIL("expected an error");
    return ErrorCode::kParse;
  };
  CHECK(code_of(R"({"basis": ["u"]})") == ErrorCode::kMissingUnit);
  CHECK(code_of(R"({"basis": ["u"], "unit": "x"})") == ErrorCode::kMissingUnit);
  CHECK(code_of(R"({"basis": ["u", "u"], "unit": "u"})") == ErrorCode::kDuplicateSymbol);
  CHECK(code_of(R"({"basis": ["u", "v"], "degrees": {"v": 2}, "unit": "u"})") == ErrorCode::kBadDegree);
  CHECK(code_of(R"({"basis": ["u", "v"], "degrees": {"u": 1}, "unit": "u"})") == ErrorCode::kBadDegree);
  CHECK(code_of(R"({"basis": ["u"], "degrees": {"z": 0}, "unit": "u"})") == ErrorCode::kUnknownSymbol);
  CHECK(code_of(R"({"basis": ["u"], "unit": "u", "cone": [{"z": 1}]})") == ErrorCode::kUnknownSymbol);
  CHECK(code_of("not json") == ErrorCode::kParse);
}

TEST_CASE("unit split and degree") {
  auto g = testing::three_symbol();
  auto x = g.element({{"u", 3}, {"v", -2}});
  auto split = split_unit(g, x);
  CHECK(split.k == 3);
  CHECK(split.check == g.element({{"v", -2}}));
  CHECK(degree_of(g, x) == 0);
  CHECK(degree_of(g, g.element({{"w", 1}})) == 1);
  CHECK_FALSE(degree_of(g, g.element({{"v", 1}, {"w", 1}})));
  CHECK(degree_of(g, GroupElement{}) == 0);
}

TEST_CASE("group element arithmetic keeps canonical form") {
  auto g = testing::lamp();
  auto x = g.element({{"u", 1}, {"v", 2}});
  auto y = g.element({{"v", 2}});
  CHECK((x - y) == g.element({{"u", 1}}));
  CHECK((x - x).is_zero());
  CHECK((Integer(0) * x).is_zero());
}

TEST_CASE("big integers survive json") {
  Integer big = Integer("123456789012345678901234567890");
  CHECK(integer_from_json(integer_to_json(big)) == big);
  CHECK(integer_to_json(Integer(-5)) == Json(-5));
  CHECK(integer_from_json(Json("-17")) == -17);
  CHECK_THROWS_AS(integer_from_json(Json("1.5")), Error);
}

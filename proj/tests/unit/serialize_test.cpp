#include "doctest.h"
#include "shadowdyn/certificate.hpp"
#include "shadowdyn/product.hpp"
#include "shadowdyn/serialize.hpp"

using namespace shadowdyn;

TEST_SUITE("serialize") {
  TEST_CASE("doubles round trip through text") {
    Rng rng(10);
    for (int i = 0; i < 1000; ++i) {
      const double x = rng.uniform(-1e3, 1e3);
      CHECK(parse_double(format_double(x)) == x);
    }
    CHECK(format_double(0.5) == "0.5");
    CHECK_THROWS_AS(parse_double("0.5x"), std::invalid_argument);
    CHECK_THROWS_AS(parse_double(""), std::invalid_argument);
    CHECK(parse_int("-12") == -12);
    CHECK_THROWS_AS(parse_int("1.5"), std::invalid_argument);
  }

  TEST_CASE("split and csv lines") {
    CHECK(split("a,b,,c", ',') == std::vector<std::string>{"a", "b", "", "c"});
    CHECK(csv_line({"x", "1"}) == "x,1\n");
  }

  TEST_CASE("torus points keep exact coordinates in json") {
    auto p = TorusPoint::from_doubles(0.3, 0.9);
    p.u += Dyadic::from_double(0x1p-80);
    const auto j = point_to_json(p);
    CHECK(PointCodec<TorusPoint>::from_json(j) == p);
    CHECK(PointCodec<TorusPoint>::from_json(Json{{"u", 0.25}, {"v", 0.5}}) == TorusPoint::from_doubles(0.25, 0.5));
  }

  TEST_CASE("sequence codecs") {
    const auto s = SymbolSeq(-2, {0, 2, 1}, {1, 2}, {0}, 3);
    CHECK(PointCodec<SymbolSeq>::from_json(point_to_json(s)) == s);
    const auto f = PointCodec<SymbolSeq>::csv_fields(s);
    std::size_t pos = 0;
    CHECK(PointCodec<SymbolSeq>::from_csv(f, pos, 3) == s);
    CHECK(pos == 4);
    pos = 0;
    CHECK_THROWS_AS(PointCodec<SymbolSeq>::from_csv(f, pos, 2), std::invalid_argument);

    const auto c = CubeSeq(1, {0.25, 1.0}, {0.5}, {0.0});
    CHECK(PointCodec<CubeSeq>::from_json(point_to_json(c)) == c);
    pos = 0;
    CHECK(PointCodec<CubeSeq>::from_csv(PointCodec<CubeSeq>::csv_fields(c), pos) == c);
  }

  TEST_CASE("product codec prefixes clashing columns") {
    using P = ProductPoint<CirclePoint, CirclePoint>;
    CHECK(PointCodec<P>::csv_header() == std::vector<std::string>{"t", "right_t"});
    const P p{{0.25}, {0.75}};
    CHECK(PointCodec<P>::from_json(point_to_json(p)) == p);
    using Q = ProductPoint<TorusPoint, CirclePoint>;
    CHECK(PointCodec<Q>::csv_header() == std::vector<std::string>{"u", "v", "t"});
  }

  TEST_CASE("certificates name their bound") {
    Certificate c;
    c.kind = "pseudo_orbit";
    c.bound_name = "delta";
    c.bound = 0.1;
    c.pass = true;
    c.extra = {{"lo", -3}};
    const auto j = c.to_json();
    CHECK(j.at("delta") == 0.1);
    CHECK_FALSE(j.contains("eps"));
    CHECK(j.at("lo") == -3);
    CHECK(j.at("pass") == true);
    const DynamicsError e("bad", c);
    CHECK(e.certificate().kind == "pseudo_orbit");
  }
}

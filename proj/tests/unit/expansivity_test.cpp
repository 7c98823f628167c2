#include "doctest.h"
#include "shadowdyn/expansivity.hpp"

using namespace shadowdyn;

namespace {

using CatNs = Product<ToralAutomorphism, NorthSouth>;

}  // namespace

TEST_SUITE("expansivity") {
  TEST_CASE("ball rings sit at the requested radius") {
    const auto cat = ToralAutomorphism::cat();
    const auto x = TorusPoint::from_doubles(0.4, 0.6);
    const auto ring = ball_ring(cat, x, 1e-3);
    CHECK(ring.size() == 32);
    for (const auto& p : ring) CHECK(torus_dist(p, x) == doctest::Approx(1e-3).epsilon(1e-9));
    for (const auto& p : ball_ring(NorthSouth(), CirclePoint{0.3}, 0.01)) CHECK(circle_dist(p.t, 0.3) == doctest::Approx(0.01));
    const auto zero = SymbolSeq::constant(0);
    for (const auto& p : ball_ring(FullShift(), zero, 0.01)) CHECK(seq_dist(p, zero) < 0.01);
  }

  TEST_CASE("cat sensitivity") {
    const auto e = sensitivity_lower_bound(ToralAutomorphism::cat(), 32, {1e-3}, 30, 1);
    CHECK(e.eps_lower >= 0.4);
    CHECK(e.eps_lower <= ToralAutomorphism::cat().diameter_bound());
    CHECK(e.per_sample.size() == 32);
    CHECK(e.to_json().at("eps_lower") == e.eps_lower);
  }

  TEST_CASE("north-south sensitivity is small in the basin") {
    const NorthSouth ns;
    std::vector<CirclePoint> bases{{0.0}, {0.1}, {0.3}, {0.49}, {0.5}, {0.51}, {0.9}};
    const auto e = sensitivity_lower_bound(ns, bases, {1e-3}, 50);
    // Basin samples never beat the initial ring diameter 2r.
    CHECK(e.eps_lower == doctest::Approx(2e-3).epsilon(1e-9));
    CHECK(e.per_sample[0] == doctest::Approx(2e-3).epsilon(1e-9));
    CHECK(e.per_sample[4] > 0.1);
    CHECK(e.per_sample[3] > e.per_sample[1]);
  }

  TEST_CASE("horizon zero measures the initial ball") {
    const std::vector<double> radii{1e-3, 1e-2};
    CHECK(sensitivity_lower_bound(NorthSouth(), 16, radii, 0, 3).eps_lower == doctest::Approx(0.02).epsilon(1e-12));
    CHECK(sensitivity_lower_bound(ToralAutomorphism::cat(), 16, radii, 0, 3).eps_lower == doctest::Approx(0.02).epsilon(1e-9));
  }

  TEST_CASE("product sensitivity dominates the factor sample by sample") {
    const auto cat = ToralAutomorphism::cat();
    const CatNs prod;
    Rng rng(6);
    std::vector<TorusPoint> left;
    std::vector<PointOf<CatNs>> both;
    for (int i = 0; i < 16; ++i) {
      left.push_back(cat.sample(rng));
      both.push_back({left.back(), NorthSouth().sample(rng)});
    }
    const auto a = sensitivity_lower_bound(cat, left, {1e-3}, 20);
    const auto b = sensitivity_lower_bound(prod, both, {1e-3}, 20);
    for (std::size_t i = 0; i < left.size(); ++i) CHECK(b.per_sample[i] >= a.per_sample[i]);
    CHECK(b.eps_lower >= a.eps_lower);
  }

  TEST_CASE("equicontinuity probe") {
    const NorthSouth ns;
    std::vector<CirclePoint> basin;
    for (int i = 0; i < 16; ++i) basin.push_back({wrap01(-0.3 + 0.6 * i / 15.0)});
    const auto pass = equicontinuity_probe(ns, 0.1, 100, basin, 1);
    CHECK(pass.pass);
    CHECK(pass.extra.at("delta").get<double>() > 0);

    const auto fail = equicontinuity_probe(ToralAutomorphism::cat(), 0.1, 100, 16, 1);
    CHECK_FALSE(fail.pass);
    CHECK(fail.extra.at("delta").is_null());
    CHECK(fail.extra.at("ladder").size() == 17);

    const auto zero = equicontinuity_probe(ToralAutomorphism::cat(), 0.1, 0, 16, 1);
    CHECK(zero.pass);
    CHECK(zero.extra.at("delta").get<double>() == 0.1);
  }

  TEST_CASE("cube box witness meets the closed form exactly") {
    const CubeShift cube;
    const auto x = CubeSeq::constant(0.5);
    const auto w = cube_box_witness(x, 0.1, 50);
    CHECK(w.members.size() >= 2);
    CHECK(cube_dist(w.members.front(), w.members.back()) > 0);
    const auto c = cw_witness_check(cube, w);
    CHECK(c.pass);
    CHECK(c.extra.at("closed_form").at("agrees_exactly").get<bool>());
    CHECK(c.extra.at("closed_form").at("max").get<double>() <= 0.1);
    CHECK(c.worst_value <= 0.1);
  }

  TEST_CASE("cube witness near the boundary clamps into the cube") {
    const auto x = CubeSeq(-1, {0.02, 0.98, 1.0}, {0.0}, {0.95});
    const auto c = cw_witness_check(CubeShift(), cube_box_witness(x, 0.05, 20, 4, 0.01));
    CHECK(c.pass);
  }

  TEST_CASE("product arc witness stays small") {
    const CatNs prod;
    const auto w = product_arc_witness(TorusPoint::from_doubles(0.3, 0.7), 0.25, 1e-3, 0.1, 50);
    const auto c = cw_witness_check(prod, w);
    CHECK(c.pass);
    CHECK(c.worst_value == doctest::Approx(5e-4).epsilon(1e-2));
  }

  TEST_CASE("cat segments grow past eps") {
    const auto cat = ToralAutomorphism::cat();
    const auto w = torus_segment_witness(TorusPoint::from_doubles(0.2, 0.2), {1.0, 0.0}, 1e-3, 0.1, 50);
    const auto c = cw_witness_check(cat, w);
    CHECK_FALSE(c.pass);
    REQUIRE(c.extra.at("first_violation").is_number());
    CHECK(c.extra.at("first_violation").get<std::int64_t>() <= 12);
  }

  TEST_CASE("refuter on the cat map") {
    const auto cat = ToralAutomorphism::cat();
    const auto x = TorusPoint::from_doubles(0.0, 0.0);
    const auto c = countable_expansivity_refuter(cat, x, 0.2, 4, 50, 1);
    REQUIRE(c.points.size() == 16);
    CHECK(c.direction == Direction::STABLE);
    CHECK(c.membership.pass);
    for (const auto& p : c.points) {
      TorusPoint a = p, b = x;
      for (int n = 0; n <= 50; ++n) {
        CHECK(torus_dist(a, b) <= 0.2);
        a = cat.apply(a);
        b = cat.apply(b);
      }
    }
  }

  TEST_CASE("refuter on the full shift gives exact stable sequences") {
    const FullShift sigma;
    const auto x = SymbolSeq::constant(0);
    const auto c = countable_expansivity_refuter(sigma, x, 0.5, 3, 40, 1);
    REQUIRE(c.points.size() == 8);
    for (const auto& p : c.points) {
      for (std::int64_t i = 0; i <= 80; ++i) CHECK(p[i] == 0);
      for (std::int64_t n = 0; n <= 80; ++n) CHECK(seq_dist(iterate(sigma, p, n), iterate(sigma, x, n)) <= 0.5);
    }
  }

  TEST_CASE("refuter precondition fails for north-south") {
    try {
      countable_expansivity_refuter(NorthSouth(), CirclePoint{0.0}, 0.1, 2, 50, 1);
      FAIL("expected a precondition failure");
    } catch (const DynamicsError& e) {
      CHECK(e.certificate().kind == "refuter_precondition");
      CHECK(e.certificate().worst_value <= 0.1);
    }
  }
}

#include "doctest.h"
#include "shadowdyn/circle.hpp"
#include "shadowdyn/product.hpp"
#include "shadowdyn/pseudo_orbit.hpp"
#include "shadowdyn/sequence.hpp"
#include "shadowdyn/torus.hpp"

using namespace shadowdyn;

TEST_SUITE("pseudo_orbit") {
  TEST_CASE("true orbits have zero defect") {
    const auto cat = ToralAutomorphism::cat();
    const auto po = true_orbit(cat, TorusPoint::from_doubles(0.3, 0.7), -20, 20);
    CHECK(po.lo() == -20);
    CHECK(po.hi() == 20);
    CHECK(defect(po) <= 1e-15);
    CHECK(po.at(25) == iterate(cat, po[20], 5));
    CHECK(po.at(-23) == iterate(cat, po[-20], -3));

    const NorthSouth ns;
    CHECK(defect(true_orbit(ns, CirclePoint{0.3}, -10, 10)) <= 1e-13);
  }

  TEST_CASE("single perturbation gives two bounded jumps") {
    const auto cat = ToralAutomorphism::cat();
    auto pts = true_orbit(cat, TorusPoint::from_doubles(0.3, 0.7), 0, 10).points();
    const double eta = 1e-6;
    pts[5].u += Dyadic::from_double(eta);
    const PseudoOrbit<ToralAutomorphism> po(cat, 0, pts);
    const auto j = po.jumps();
    CHECK(j[4] == doctest::Approx(eta).epsilon(1e-9));
    // The next jump is |A (eta, 0)|_inf = 2 eta.
    CHECK(j[5] == doctest::Approx(2 * eta).epsilon(1e-9));
    for (std::size_t k = 0; k < j.size(); ++k)
      if (k != 4 && k != 5) CHECK(j[k] == 0.0);
    CHECK(defect(po) >= eta);
    CHECK(defect(po) <= 3 * eta);
  }

  TEST_CASE("splice has a single junction jump") {
    const auto cat = ToralAutomorphism::cat();
    const auto x = TorusPoint::from_doubles(0.3, 0.7);
    const auto x1 = TorusPoint::from_doubles(0.3 + 2e-4, 0.7 - 1e-4);
    const auto po = splice(cat, x, x1, 30, 40);
    CHECK(po.lo() == -30);
    CHECK(po.hi() == 40);
    CHECK(po[0] == x1);
    CHECK(po[-1] == cat.inverse(x));
    const auto j = po.jumps();
    for (std::size_t k = 0; k < j.size(); ++k) {
      if (po.lo() + static_cast<std::int64_t>(k) == -1)
        CHECK(j[k] == torus_dist(x, x1));
      else
        CHECK(j[k] == 0.0);
    }
    CHECK(defect(po) == torus_dist(x, x1));
    CHECK(defect(splice(cat, x, x, 10, 10)) == 0.0);
    CHECK_THROWS_AS(splice(cat, x, x1, 0, 5), std::invalid_argument);
  }

  TEST_CASE("shift splice junction equals the sequence distance") {
    const FullShift sigma;
    const auto x = SymbolSeq(-2, {1, 0, 1, 1, 0}, {1}, {0});
    const auto x1 = x.with(4, 1).with(-6, 0);
    const auto po = splice(sigma, x, x1, 8, 8);
    // Oracle: first differing |i| by enumerating a wide window.
    std::int64_t first = -1;
    for (std::int64_t m = 0; m < 40 && first < 0; ++m)
      if (x[m] != x1[m] || x[-m] != x1[-m]) first = m;
    REQUIRE(first == 4);
    CHECK(defect(po) == std::ldexp(1.0, -static_cast<int>(first)));
    CHECK(defect(po) == seq_dist(x, x1));
  }

  TEST_CASE("validate is strict and locates the junction") {
    const auto cat = ToralAutomorphism::cat();
    const auto x = TorusPoint::from_doubles(0.1, 0.2);
    const auto x1 = TorusPoint::from_doubles(0.1 + 1e-3, 0.2);
    const auto po = splice(cat, x, x1, 5, 5);
    const double d0 = torus_dist(x, x1);
    CHECK(validate(true_orbit(cat, x, -5, 5), 1e-9).pass);
    CHECK_FALSE(validate(po, d0).pass);
    const auto half = validate(po, d0 / 2);
    CHECK_FALSE(half.pass);
    CHECK(half.worst_index == -1);
    CHECK(half.worst_value == d0);
    CHECK(validate(po, std::nextafter(d0, 1.0)).pass);
    CHECK(half.to_json().at("delta") == d0 / 2);
    CHECK_THROWS_AS(validate(po, 0.0), std::invalid_argument);
  }

  TEST_CASE("perturbed orbits pass validation iff the measured defect is below delta") {
    const auto cat = ToralAutomorphism::cat();
    Rng rng(21);
    for (int i = 0; i < 50; ++i) {
      const auto po = perturbed_orbit(cat, cat.sample(rng), 0, 60, 1e-4, rng);
      double measured = 0.0;
      for (std::int64_t k = 0; k < po.hi(); ++k) measured = std::max(measured, torus_dist(cat.apply(po[k]), po[k + 1]));
      CHECK(measured < 1e-4);
      const double delta = rng.uniform(0.5e-4, 1.5e-4);
      CHECK(validate(po, delta).pass == (measured < delta));
    }
  }

  TEST_CASE("splice_limit on a true orbit keeps the orbit") {
    const NorthSouth ns;
    const auto orbit = true_orbit(ns, CirclePoint{0.3}, 0, 30).points();
    const LimitPseudoOrbit<NorthSouth> lpo(ns, orbit);
    CHECK(first_valid_offset(lpo, 0.1) == 0);
    const auto s = splice_limit(lpo, 0.1);
    CHECK(s.offset == 0);
    CHECK(s.orbit.points() == orbit);
  }

  TEST_CASE("splice_limit picks the first index after which jumps stay below delta") {
    const CircleRotation identity(0.0);
    LimitPseudoOrbit<CircleRotation> lpo(identity, std::vector<CirclePoint>(40, CirclePoint{0.2}));
    lpo.decay[0] = 1.0;
    for (std::size_t k = 1; k < lpo.decay.size(); ++k) lpo.decay[k] = 1.0 / static_cast<double>(k);
    CHECK(first_valid_offset(lpo, 0.1) == 11);
    const auto s = splice_limit(lpo, 0.1);
    CHECK(s.offset == 11);
    CHECK(s.orbit.lo() == 0);
    CHECK(s.orbit.size() == 40 - 11);
    CHECK_THROWS_AS(splice_limit(lpo, 10, 0.1), DynamicsError);
    CHECK_THROWS_AS(first_valid_offset(lpo, 1e-3), DynamicsError);
  }

  TEST_CASE("csv round trip") {
    const auto cat = ToralAutomorphism::cat();
    Rng rng(4);
    const auto po = perturbed_orbit(cat, cat.sample(rng), -3, 12, 1e-6, rng);
    const auto back = pseudo_orbit_from_csv(cat, pseudo_orbit_to_csv(po));
    CHECK(back.lo() == -3);
    REQUIRE(back.size() == po.size());
    // CSV stores doubles, so torus points come back to within one rounding.
    for (std::int64_t k = back.lo(); k <= back.hi(); ++k) CHECK(torus_dist(back[k], po[k]) <= 0x1p-53);

    const FullShift sigma(3);
    const auto spo = perturbed_orbit(sigma, sigma.sample(rng), 0, 10, 0.01, rng);
    CHECK(pseudo_orbit_from_csv(sigma, pseudo_orbit_to_csv(spo)).points() == spo.points());

    const Product<ToralAutomorphism, NorthSouth> prod;
    const auto ppo = true_orbit(prod, prod.sample(rng), 0, 5);
    CHECK(pseudo_orbit_from_csv(prod, pseudo_orbit_to_csv(ppo)).size() == 6);

    CHECK_THROWS_AS(pseudo_orbit_from_csv(cat, "index,x,y\n0,0.1,0.2\n"), std::invalid_argument);
    CHECK_THROWS_AS(pseudo_orbit_from_csv(cat, "index,u,v\n0,0.1,0.2\n2,0.1,0.2\n"), std::invalid_argument);
    CHECK_THROWS_AS(pseudo_orbit_from_csv(cat, "index,u,v\n1,0.1,0.2\n"), std::invalid_argument);
  }
}

#include <set>

#include "doctest.h"
#include "graph_oracle.hpp"
#include "shadowdyn/chain_recurrence.hpp"

using namespace shadowdyn;

namespace {

using CatNs = Product<ToralAutomorphism, NorthSouth>;

struct CsrAdapter {
  const CsrGraph& g;
  std::int64_t node_count() const { return g.node_count(); }
  std::int64_t successor_count(std::int64_t v) const { return g.degree(v); }
  std::int64_t successor(std::int64_t v, std::int64_t i) const { return g.target(v, i); }
};

template <class S>
std::int64_t box_of(const BoxGrid& g, const PointOf<S>& p) {
  return g.box_of(grid_coords<S>(p));
}

}  // namespace

TEST_SUITE("chain_recurrence") {
  TEST_CASE("box grid indexing") {
    const BoxGrid g({4, 8});
    CHECK(g.box_count() == 32);
    CHECK(g.mesh() == 0.25);
    CHECK(g.index({1, 3}) == 11);
    CHECK(g.cell(11) == std::vector<int>{1, 3});
    CHECK(g.box_of({0.3, 0.99}) == 15);
    CHECK(g.box_of({1.0, 0.0}) == 0);
    CHECK(g.axes(1, 1).resolution() == std::vector<int>{8});
    CHECK_THROWS_AS(BoxGrid({0}), std::invalid_argument);
  }

  TEST_CASE("identity map gives self-loops everywhere") {
    const CircleRotation identity(0.0);
    const BoxGrid grid({64});
    const auto g = build_graph(identity, grid);
    for (std::int64_t b = 0; b < grid.box_count(); ++b) {
      CHECK(g.has_self_loop(b));
      CHECK(g.has_witnessed_loop(b));
    }
    CHECK(chain_recurrent_boxes(g).size() == 64);
    CHECK(chain_classes(g).class_count() == 1);
  }

  TEST_CASE("every node has an outgoing edge") {
    const auto g = build_graph(NorthSouth(), BoxGrid({128}));
    for (std::int64_t b = 0; b < g.node_count(); ++b) CHECK(g.successor_count(b) >= 1);
  }

  TEST_CASE("tarjan matches the transitive-closure oracle on random graphs") {
    Rng rng(17);
    for (int trial = 0; trial < 20; ++trial) {
      oracle::Adjacency a;
      const auto n = static_cast<std::size_t>(50 + rng.below(400));
      const double density = rng.uniform(0.5, 3.0) / static_cast<double>(n);
      a.out.resize(n);
      for (std::size_t v = 0; v < n; ++v)
        for (std::size_t w = 0; w < n; ++w)
          if (rng.uniform() < density) a.out[v].push_back(static_cast<std::int64_t>(w));
      const auto scc = strongly_connected_components(a);
      CHECK(oracle::same_partition_as_closure(a, scc.component));
      std::int64_t total = 0;
      for (auto s : scc.size) total += s;
      CHECK(total == static_cast<std::int64_t>(n));
    }
  }

  TEST_CASE("tarjan matches the oracle on system graphs") {
    const auto ns = build_graph(NorthSouth(), BoxGrid({512}));
    const auto cat = build_graph(ToralAutomorphism::cat(), BoxGrid({32, 32}));
    const auto prod = build_graph(CatNs(), BoxGrid({8, 8, 24}));
    for (const auto* g : {&ns, &cat, &prod}) {
      REQUIRE(g->node_count() <= 2000);
      const auto a = oracle::copy_graph(*g);
      CHECK(oracle::same_partition_as_closure(a, strongly_connected_components(*g).component));
      // Recurrent boxes: on a long cycle or carrying a witnessed self-loop,
      // and for products, recurrent in every factor.
      const auto cyc = oracle::on_long_cycle(a);
      std::vector<std::vector<char>> factor_ok;
      if (g->factors().size() > 1)
        for (const auto& f : g->factors()) {
          const auto fc = oracle::on_long_cycle(oracle::copy_graph(CsrAdapter{f}));
          std::vector<char> ok(fc.size());
          for (std::int64_t v = 0; v < f.node_count(); ++v)
            ok[static_cast<std::size_t>(v)] = fc[static_cast<std::size_t>(v)] || (f.fixed_witness[static_cast<std::size_t>(v)] && f.has_edge(v, v));
          factor_ok.push_back(ok);
        }
      std::vector<std::int64_t> expect;
      for (std::int64_t b = 0; b < g->node_count(); ++b) {
        if (!cyc[static_cast<std::size_t>(b)] && !g->has_witnessed_loop(b)) continue;
        std::int64_t parts[8];
        g->split(b, parts);
        bool ok = true;
        for (std::size_t f = 0; f < factor_ok.size(); ++f) ok = ok && factor_ok[f][static_cast<std::size_t>(parts[f])];
        if (ok) expect.push_back(b);
      }
      CHECK(chain_recurrent_boxes(*g) == expect);
    }
  }

  TEST_CASE("north-south graph at 512 boxes") {
    const NorthSouth ns;
    const BoxGrid grid({512});
    const auto g = build_graph(ns, grid);
    CHECK(g.delta() == 2 * grid.mesh());
    // Box centers map into a successor box.
    for (std::int64_t b = 0; b < 512; ++b) {
      const CirclePoint c{(static_cast<double>(b) + 0.5) / 512};
      CHECK(g.has_edge(b, box_of<NorthSouth>(grid, ns.apply(c))));
    }
    const auto cls = chain_classes(g);
    CHECK(cls.class_count() == 2);
    for (auto b : cls.recurrent_boxes()) {
      const double t = (static_cast<double>(b) + 0.5) / 512;
      CHECK(std::min(circle_dist(t, 0.0), circle_dist(t, 0.5)) < 0.02);
    }
    CHECK(cls.class_of[0] >= 0);
    CHECK(cls.class_of[256] >= 0);
    CHECK(cls.class_of[0] != cls.class_of[256]);
    CHECK(cls.class_of[128] == -1);
  }

  TEST_CASE("cat graph is strongly connected") {
    const auto g = build_graph(ToralAutomorphism::cat(), BoxGrid({64, 64}));
    const auto cls = chain_classes(g);
    CHECK(cls.class_count() == 1);
    CHECK(cls.recurrent_count == 64 * 64);
    CHECK(strongly_connected_components(g).count() == 1);
  }

  TEST_CASE("product graph has two classes") {
    const auto g = build_graph(CatNs(), BoxGrid({32, 32, 32}));
    CHECK(g.edge_count() == g.factors()[0].edge_count() * g.factors()[1].edge_count());
    const auto cls = chain_classes(g);
    REQUIRE(cls.class_count() == 2);
    const BoxGrid& grid = g.grid();
    // Class 0 holds torus x {0}; class 1 holds torus x {1/2}.
    CHECK(cls.class_of[static_cast<std::size_t>(grid.index({5, 9, 0}))] == 0);
    CHECK(cls.class_of[static_cast<std::size_t>(grid.index({5, 9, 16}))] == 1);
    CHECK(cls.class_of[static_cast<std::size_t>(grid.index({5, 9, 8}))] == -1);
  }

  TEST_CASE("true orbits follow graph edges") {
    Rng rng(31);
    const BoxGrid g1({256}), g2({32, 32}), g3({8, 8, 32});
    const auto ns = build_graph(NorthSouth(), g1);
    const auto cat = build_graph(ToralAutomorphism::cat(), g2);
    const CatNs prod;
    const auto pg = build_graph(prod, g3);
    for (int i = 0; i < 100; ++i) {
      CirclePoint p = NorthSouth().sample(rng);
      TorusPoint q = ToralAutomorphism::cat().sample(rng);
      PointOf<CatNs> r = prod.sample(rng);
      for (int n = 0; n < 30; ++n) {
        const auto p1 = NorthSouth().apply(p);
        const auto q1 = ToralAutomorphism::cat().apply(q);
        const auto r1 = prod.apply(r);
        CHECK(ns.has_edge(box_of<NorthSouth>(g1, p), box_of<NorthSouth>(g1, p1)));
        CHECK(cat.has_edge(box_of<ToralAutomorphism>(g2, q), box_of<ToralAutomorphism>(g2, q1)));
        CHECK(pg.has_edge(box_of<CatNs>(g3, r), box_of<CatNs>(g3, r1)));
        p = p1;
        q = q1;
        r = r1;
      }
    }
  }

  TEST_CASE("larger delta never removes edges") {
    const NorthSouth ns;
    const BoxGrid grid({256});
    GraphOptions lo, hi;
    lo.delta = 2 * grid.mesh();
    hi.delta = 4 * grid.mesh();
    const auto a = build_graph(ns, grid, lo);
    const auto b = build_graph(ns, grid, hi);
    for (std::int64_t v = 0; v < a.node_count(); ++v)
      for (std::int64_t i = 0; i < a.successor_count(v); ++i) CHECK(b.has_edge(v, a.successor(v, i)));
    const auto ra = chain_recurrent_boxes(a), rb = chain_recurrent_boxes(b);
    const std::set<std::int64_t> sb(rb.begin(), rb.end());
    for (auto v : ra) CHECK(sb.count(v) == 1);
  }

  TEST_CASE("graph construction is deterministic and validated") {
    const BoxGrid grid({128});
    GraphOptions opt;
    opt.seed = 9;
    opt.threads = 4;
    const auto a = graph_edge_list(build_graph(NorthSouth(), grid, opt), "ns");
    opt.threads = 1;
    CHECK(a == graph_edge_list(build_graph(NorthSouth(), grid, opt), "ns"));
    CHECK(a.rfind("# shadowdyn transition graph\n", 0) == 0);
    CHECK(a.find("# resolution=128\n") != std::string::npos);

    GraphOptions fine;
    fine.delta = grid.mesh() / 2;
    CHECK_THROWS_AS(build_graph(NorthSouth(), grid, fine), std::invalid_argument);
    GraphOptions tight;
    tight.edge_budget = 100;
    CHECK_THROWS_AS(build_graph(NorthSouth(), grid, tight), std::invalid_argument);
  }

  TEST_CASE("classes csv") {
    const auto cls = chain_classes(build_graph(NorthSouth(), BoxGrid({256})));
    const auto csv = classes_csv(cls);
    CHECK(csv.rfind("box_index,class_id\n", 0) == 0);
    std::size_t rows = 0;
    for (char ch : csv) rows += ch == '\n';
    CHECK(rows == static_cast<std::size_t>(cls.recurrent_count) + 1);
  }

  TEST_CASE("north-south basins") {
    const NorthSouth ns;
    const BoxGrid grid({512});
    const auto cls = chain_classes(build_graph(ns, grid));
    const ClassProjector proj(grid, cls);
    const auto zero_class = cls.class_of[0];

    const auto r = basin_assign(ns, proj, CirclePoint{0.25}, 200);
    CHECK(r.class_id == zero_class);
    CHECK(r.entry_index <= 200);
    CHECK(r.certificate.pass);
    // Oracle: first n after which the orbit stays in class boxes.
    CirclePoint p{0.25};
    std::int64_t last_out = -1;
    for (std::int64_t n = 0; n <= 200; ++n) {
      if (cls.class_of[static_cast<std::size_t>(box_of<NorthSouth>(grid, p))] != zero_class) last_out = n;
      p = ns.apply(p);
    }
    CHECK(r.entry_index == last_out + 1);
    for (std::int64_t k = r.entry_index; k < r.projected.hi(); ++k) CHECK(r.projected.decay[static_cast<std::size_t>(k)] <= 1e-15);

    const auto inside = basin_assign(ns, proj, CirclePoint{0.0}, 40);
    CHECK(inside.class_id == zero_class);
    CHECK(inside.entry_index == 0);
    CHECK(basin_assign(ns, proj, CirclePoint{0.5}, 40).class_id == cls.class_of[256]);
    CHECK_THROWS_AS(basin_assign(ns, proj, CirclePoint{0.25}, 3), std::invalid_argument);
  }

  TEST_CASE("north-south basin fails when the horizon is too short") {
    const NorthSouth ns;
    const BoxGrid grid({512});
    const ClassProjector proj(grid, chain_classes(build_graph(ns, grid)));
    CHECK_THROWS_AS(basin_assign(ns, proj, CirclePoint{0.45}, 8), DynamicsError);
  }

  TEST_CASE("product basins land in the torus x {0} class") {
    const CatNs prod;
    const BoxGrid grid({32, 32, 32});
    const auto cls = chain_classes(build_graph(prod, grid));
    const ClassProjector proj(grid, cls);
    Rng rng(2);
    for (int i = 0; i < 10; ++i) {
      const PointOf<CatNs> p{ToralAutomorphism::cat().sample(rng), {0.25}};
      const auto r = basin_assign(prod, proj, p, 200);
      CHECK(r.class_id == cls.class_of[0]);
      CHECK(r.projected.points.size() == 201);
      CHECK(r.projected.points[0].left == p.left);
    }
  }
}

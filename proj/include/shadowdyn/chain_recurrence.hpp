#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "shadowdyn/certificate.hpp"
#include "shadowdyn/circle.hpp"
#include "shadowdyn/parallel.hpp"
#include "shadowdyn/product.hpp"
#include "shadowdyn/pseudo_orbit.hpp"
#include "shadowdyn/torus.hpp"

namespace shadowdyn {

/// Uniform box partition of [0,1)^d with periodic axes. Box indices are
/// row-major with axis 0 slowest.
class BoxGrid {
 public:
  BoxGrid() = default;
  explicit BoxGrid(std::vector<int> resolution);

  int dimension() const { return static_cast<int>(res_.size()); }
  const std::vector<int>& resolution() const { return res_; }
  std::int64_t box_count() const { return count_; }
  /// Largest box side; the max-metric diameter of every box.
  double mesh() const;

  std::int64_t index(const std::vector<int>& cell) const;
  std::vector<int> cell(std::int64_t index) const;
  std::int64_t box_of(const std::vector<double>& coords) const;
  /// Sub-grid over axes [first, first + count).
  BoxGrid axes(int first, int count) const;

  Json to_json() const { return {{"resolution", res_}, {"boxes", count_}, {"mesh", mesh()}}; }

 private:
  std::vector<int> res_;
  std::int64_t count_ = 0;
};

/// Adjacency lists in compressed form.
struct CsrGraph {
  std::vector<std::int64_t> offsets{0};
  std::vector<std::int64_t> targets;
  /// Per node: some sample s of the box has d(f(s), s) <= delta.
  std::vector<char> fixed_witness;

  std::int64_t node_count() const { return static_cast<std::int64_t>(offsets.size()) - 1; }
  std::int64_t edge_count() const { return static_cast<std::int64_t>(targets.size()); }
  std::int64_t degree(std::int64_t v) const { return offsets[static_cast<std::size_t>(v + 1)] - offsets[static_cast<std::size_t>(v)]; }
  std::int64_t target(std::int64_t v, std::int64_t i) const { return targets[static_cast<std::size_t>(offsets[static_cast<std::size_t>(v)] + i)]; }
  bool has_edge(std::int64_t v, std::int64_t w) const;
};

/// Box transition graph. For product systems the graph is the tensor
/// product of the factor graphs: (a, b) -> (a', b') iff a -> a' and b -> b'.
/// Product node indices are row-major over the factors.
class TransitionGraph {
 public:
  TransitionGraph() = default;
  TransitionGraph(BoxGrid grid, std::vector<CsrGraph> factors, double delta, Json scheme);

  const BoxGrid& grid() const { return grid_; }
  const std::vector<CsrGraph>& factors() const { return factors_; }
  double delta() const { return delta_; }
  const Json& scheme() const { return scheme_; }

  std::int64_t node_count() const { return grid_.box_count(); }
  std::int64_t successor_count(std::int64_t v) const;
  std::int64_t successor(std::int64_t v, std::int64_t i) const;
  bool has_self_loop(std::int64_t v) const;
  /// Self-loop backed by a sampled point that returns to itself within delta.
  bool has_witnessed_loop(std::int64_t v) const;
  bool has_edge(std::int64_t v, std::int64_t w) const;
  std::int64_t edge_count() const;
  /// Factor node indices of product node v (at most 8 factors).
  void split(std::int64_t v, std::int64_t* parts) const;

 private:
  BoxGrid grid_;
  std::vector<CsrGraph> factors_;
  std::vector<std::int64_t> factor_nodes_;
  double delta_ = 0.0;
  Json scheme_ = Json::object();
};

/// Strongly connected components of any graph exposing node_count,
/// successor_count and successor. Iterative Tarjan, linear time.
struct SccResult {
  std::vector<std::int64_t> component;  // per node, in order of completion
  std::vector<std::int64_t> size;       // per component
  std::int64_t count() const { return static_cast<std::int64_t>(size.size()); }
};

template <class G>
SccResult strongly_connected_components(const G& g) {
  const std::int64_t n = g.node_count();
  constexpr std::int64_t kUnvisited = -1;
  SccResult r;
  r.component.assign(static_cast<std::size_t>(n), kUnvisited);
  std::vector<std::int64_t> index(static_cast<std::size_t>(n), kUnvisited), low(static_cast<std::size_t>(n), 0);
  std::vector<char> on_stack(static_cast<std::size_t>(n), 0);
  std::vector<std::int64_t> stack;
  struct Frame {
    std::int64_t v;
    std::int64_t next;
    std::int64_t deg;
  };
  std::vector<Frame> calls;
  std::int64_t counter = 0;
  for (std::int64_t root = 0; root < n; ++root) {
    if (index[static_cast<std::size_t>(root)] != kUnvisited) continue;
    auto enter = [&](std::int64_t v) {
      index[static_cast<std::size_t>(v)] = low[static_cast<std::size_t>(v)] = counter++;
      stack.push_back(v);
      on_stack[static_cast<std::size_t>(v)] = 1;
      calls.push_back({v, 0, g.successor_count(v)});
    };
    enter(root);
    while (!calls.empty()) {
      Frame& f = calls.back();
      const auto v = static_cast<std::size_t>(f.v);
      if (f.next < f.deg) {
        const std::int64_t w = g.successor(f.v, f.next++);
        const auto wi = static_cast<std::size_t>(w);
        if (index[wi] == kUnvisited) {
          enter(w);
        } else if (on_stack[wi]) {
          low[v] = std::min(low[v], index[wi]);
        }
        continue;
      }
      if (low[v] == index[v]) {
        const std::int64_t id = r.count();
        std::int64_t sz = 0;
        std::int64_t w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[static_cast<std::size_t>(w)] = 0;
          r.component[static_cast<std::size_t>(w)] = id;
          ++sz;
        } while (w != f.v);
        r.size.push_back(sz);
      }
      const std::int64_t done = f.v;
      calls.pop_back();
      if (!calls.empty()) {
        const auto u = static_cast<std::size_t>(calls.back().v);
        low[u] = std::min(low[u], low[static_cast<std::size_t>(done)]);
      }
    }
  }
  return r;
}

/// Chain-recurrence classes at grid resolution: SCCs that contain a cycle.
/// Class ids are ordered by the smallest box index in each class.
struct ClassDecomposition {
  std::vector<std::int64_t> class_of;  // per box, -1 when not recurrent
  std::vector<std::int64_t> class_size;
  std::int64_t recurrent_count = 0;

  std::int64_t class_count() const { return static_cast<std::int64_t>(class_size.size()); }
  std::vector<std::int64_t> recurrent_boxes() const;
  Json summary() const;
};

/// For products, a box is recurrent only when every factor box is recurrent
/// in its own factor graph.
ClassDecomposition chain_classes(const TransitionGraph& g);
/// Boxes on a cycle: members of SCCs of size > 1 and boxes with a witnessed
/// self-loop.
std::vector<std::int64_t> chain_recurrent_boxes(const TransitionGraph& g);

/// Edge list text: '#' metadata header, then "b b'" per line. Products
/// write one section per factor since the tensor product is implicit.
std::string graph_edge_list(const TransitionGraph& g, std::string_view system);
/// "box_index,class_id" rows for recurrent boxes.
std::string classes_csv(const ClassDecomposition& c);

/// Coordinates of points of grid-able systems in [0,1)^d.
template <class S>
struct GridTraits;

template <>
struct GridTraits<ToralAutomorphism> {
  static constexpr int dimension = 2;
  static void coords(const TorusPoint& p, double* out) {
    const auto d = p.as_doubles();
    out[0] = d[0];
    out[1] = d[1];
  }
  static TorusPoint from_coords(const double* c) { return TorusPoint::from_doubles(c[0], c[1]); }
  static TorusPoint set(TorusPoint p, int axis, double v) {
    (axis == 0 ? p.u : p.v) = Dyadic::from_double(v);
    return p;
  }
};

template <class Circle>
struct CircleGridTraits {
  static constexpr int dimension = 1;
  static void coords(const CirclePoint& p, double* out) { out[0] = p.t; }
  static CirclePoint from_coords(const double* c) { return {wrap01(c[0])}; }
  static CirclePoint set(CirclePoint, int, double v) { return {wrap01(v)}; }
};
template <>
struct GridTraits<NorthSouth> : CircleGridTraits<NorthSouth> {};
template <>
struct GridTraits<CircleRotation> : CircleGridTraits<CircleRotation> {};

template <class X, class Y>
struct GridTraits<Product<X, Y>> {
  using P = PointOf<Product<X, Y>>;
  static constexpr int dimension = GridTraits<X>::dimension + GridTraits<Y>::dimension;
  static void coords(const P& p, double* out) {
    GridTraits<X>::coords(p.left, out);
    GridTraits<Y>::coords(p.right, out + GridTraits<X>::dimension);
  }
  static P from_coords(const double* c) { return {GridTraits<X>::from_coords(c), GridTraits<Y>::from_coords(c + GridTraits<X>::dimension)}; }
  static P set(P p, int axis, double v) {
    if (axis < GridTraits<X>::dimension) p.left = GridTraits<X>::set(p.left, axis, v);
    else p.right = GridTraits<Y>::set(p.right, axis - GridTraits<X>::dimension, v);
    return p;
  }
};

template <class S>
concept Gridded = DynamicalSystem<S> && requires { GridTraits<S>::dimension; };

template <Gridded S>
std::vector<double> grid_coords(const PointOf<S>& p) {
  std::vector<double> c(GridTraits<S>::dimension);
  GridTraits<S>::coords(p, c.data());
  return c;
}

struct GraphOptions {
  double delta = 0.0;        // <= 0 selects 2 * mesh
  int samples_per_box = 9;   // corners and center first, then seeded points
  std::uint64_t seed = 0;
  std::int64_t edge_budget = 200'000'000;
  int threads = 0;
};

namespace detail {

/// Boxes whose closure meets [c - r, c + r] on one periodic axis.
inline void axis_range(double c, double r, int res, std::vector<int>& out) {
  out.clear();
  if (2.0 * r >= 1.0) {
    for (int j = 0; j < res; ++j) out.push_back(j);
    return;
  }
  const auto lo = static_cast<long long>(std::floor((c - r) * res));
  const auto hi = static_cast<long long>(std::floor((c + r) * res));
  for (long long j = lo; j <= hi && j - lo < res; ++j) out.push_back(static_cast<int>(((j % res) + res) % res));
}

CsrGraph assemble(std::vector<std::vector<std::int64_t>>& rows, std::vector<char> witness);

[[noreturn]] void budget_exceeded(std::int64_t boxes, std::int64_t edges, std::int64_t budget);

/// Sample points of a box: its 2^d corners, the center, then seeded points.
std::vector<std::vector<double>> box_samples(const BoxGrid& grid, std::int64_t box, int count, std::uint64_t seed);

template <Gridded S>
CsrGraph factor_graph(const S& sys, const BoxGrid& grid, double delta, const GraphOptions& opt) {
  constexpr int d = GridTraits<S>::dimension;
  if (grid.dimension() != d) throw std::invalid_argument("build_graph: grid dimension does not match the system");
  const std::int64_t n = grid.box_count();
  if (n > opt.edge_budget) budget_exceeded(n, n, opt.edge_budget);
  std::vector<std::vector<std::int64_t>> rows(static_cast<std::size_t>(n));
  std::vector<char> witness(static_cast<std::size_t>(n), 0);
  parallel_for(static_cast<std::size_t>(n), opt.threads, [&](std::size_t b) {
    const auto samples = box_samples(grid, static_cast<std::int64_t>(b), opt.samples_per_box, opt.seed);
    std::array<std::vector<int>, d> ranges;
    std::vector<std::int64_t>& row = rows[b];
    std::array<int, d> idx{};
    std::vector<int> cell(d);
    for (const auto& s : samples) {
      const auto pt = GridTraits<S>::from_coords(s.data());
      const auto img = sys.apply(pt);
      if (sys.dist(img, pt) <= delta) witness[b] = 1;
      std::array<double, d> c{};
      GridTraits<S>::coords(img, c.data());
      for (int a = 0; a < d; ++a) axis_range(c[static_cast<std::size_t>(a)], delta, grid.resolution()[static_cast<std::size_t>(a)], ranges[static_cast<std::size_t>(a)]);
      idx.fill(0);
      while (true) {
        for (int a = 0; a < d; ++a) cell[static_cast<std::size_t>(a)] = ranges[static_cast<std::size_t>(a)][static_cast<std::size_t>(idx[static_cast<std::size_t>(a)])];
        row.push_back(grid.index(cell));
        int a = d - 1;
        while (a >= 0 && ++idx[static_cast<std::size_t>(a)] == static_cast<int>(ranges[static_cast<std::size_t>(a)].size())) idx[static_cast<std::size_t>(a--)] = 0;
        if (a < 0) break;
      }
    }
    std::sort(row.begin(), row.end());
    row.erase(std::unique(row.begin(), row.end()), row.end());
  });
  std::int64_t edges = 0;
  for (const auto& r : rows) edges += static_cast<std::int64_t>(r.size());
  if (edges > opt.edge_budget) budget_exceeded(n, edges, opt.edge_budget);
  return assemble(rows, std::move(witness));
}

template <Gridded S>
void factor_graphs(const S& sys, const BoxGrid& grid, double delta, const GraphOptions& opt, std::vector<CsrGraph>& out, int first_axis) {
  if constexpr (is_product_v<S>) {
    factor_graphs(sys.left(), grid, delta, opt, out, first_axis);
    factor_graphs(sys.right(), grid, delta, opt, out, first_axis + GridTraits<typename S::Left>::dimension);
  } else {
    GraphOptions sub = opt;
    sub.seed = derive_seed(opt.seed, streams::kGraph, static_cast<std::uint64_t>(first_axis));
    out.push_back(factor_graph(sys, grid.axes(first_axis, GridTraits<S>::dimension), delta, sub));
  }
}

}  // namespace detail

/// Edge b -> b' iff the delta-inflated (max metric) image of a sample of
/// box b meets box b'. delta defaults to 2 * mesh.
template <Gridded S>
TransitionGraph build_graph(const S& sys, const BoxGrid& grid, const GraphOptions& opt = {}) {
  if (grid.dimension() != GridTraits<S>::dimension) throw std::invalid_argument("build_graph: grid dimension does not match the system");
  const double delta = opt.delta > 0 ? opt.delta : 2.0 * grid.mesh();
  if (delta < grid.mesh()) throw std::invalid_argument("build_graph: delta must be at least the box mesh");
  if (opt.samples_per_box < 1) throw std::invalid_argument("build_graph: samples_per_box must be positive");
  std::vector<CsrGraph> factors;
  detail::factor_graphs(sys, grid, delta, opt, factors, 0);
  Json scheme = {{"samples_per_box", opt.samples_per_box},
                 {"sampling", "corners, center, seeded uniform"},
                 {"inflation", "max-metric delta box"},
                 {"seed", opt.seed},
                 {"factors", factors.size()}};
  TransitionGraph g(grid, std::move(factors), delta, std::move(scheme));
  if (g.edge_count() > opt.edge_budget) detail::budget_exceeded(g.node_count(), g.edge_count(), opt.edge_budget);
  return g;
}

/// Result of following an orbit into a chain-recurrence class.
template <DynamicalSystem S>
struct BasinResult {
  std::int64_t class_id = -1;
  std::int64_t entry_index = 0;  // first n after which the orbit stays in the class boxes
  LimitPseudoOrbit<S> projected;  // orbit projected onto the class boxes
  Certificate certificate;
};

/// Per class, the nearest class box of every box (Chebyshev distance in box
/// units, periodic) for projecting orbits onto classes.
class ClassProjector {
 public:
  ClassProjector(const BoxGrid& grid, const ClassDecomposition& classes);
  /// Nearest box of class `id` to box b.
  std::int64_t nearest(std::int64_t id, std::int64_t b) const;
  const BoxGrid& grid() const { return grid_; }
  const ClassDecomposition& classes() const { return classes_; }

 private:
  BoxGrid grid_;
  ClassDecomposition classes_;
  std::vector<std::vector<std::int64_t>> fields_;
};

/// Closest point to c of box `box` (closed, periodic axes).
std::vector<double> clamp_to_box(const BoxGrid& grid, std::int64_t box, const std::vector<double>& c);

/// Follows p for `horizon` steps and returns the class whose boxes hold the
/// orbit throughout the final quarter, together with the orbit projected
/// onto that class's boxes.
template <Gridded S>
BasinResult<S> basin_assign(const S& sys, const ClassProjector& proj, const PointOf<S>& p, std::int64_t horizon) {
  if (horizon < 4) throw std::invalid_argument("basin_assign: horizon must be at least 4");
  const auto& grid = proj.grid();
  const auto& cls = proj.classes();
  std::vector<PointOf<S>> orbit;
  orbit.reserve(static_cast<std::size_t>(horizon + 1));
  std::vector<std::int64_t> box(static_cast<std::size_t>(horizon + 1)), label(static_cast<std::size_t>(horizon + 1));
  PointOf<S> x = p;
  for (std::int64_t n = 0; n <= horizon; ++n) {
    orbit.push_back(x);
    box[static_cast<std::size_t>(n)] = grid.box_of(grid_coords<S>(x));
    label[static_cast<std::size_t>(n)] = cls.class_of[static_cast<std::size_t>(box[static_cast<std::size_t>(n)])];
    if (n < horizon) x = sys.apply(x);
  }
  const std::int64_t tail_start = horizon - horizon / 4;
  const std::int64_t id = label[static_cast<std::size_t>(horizon)];
  bool stable = id >= 0;
  for (std::int64_t n = tail_start; stable && n <= horizon; ++n) stable = label[static_cast<std::size_t>(n)] == id;
  Certificate c;
  c.kind = "basin";
  c.bound_name = "tail_fraction";
  c.bound = 0.25;
  c.horizon = horizon;
  if (!stable) {
    c.pass = false;
    std::int64_t changes = 0;
    for (std::int64_t n = tail_start + 1; n <= horizon; ++n) changes += label[static_cast<std::size_t>(n)] != label[static_cast<std::size_t>(n - 1)];
    c.worst_index = horizon;
    c.worst_value = static_cast<double>(changes);
    c.extra = {{"final_label", id}, {"label_changes_in_tail", changes}};
    throw DynamicsError("basin_assign: no class stabilizes within the horizon", c);
  }
  std::int64_t entry = horizon;
  while (entry > 0 && label[static_cast<std::size_t>(entry - 1)] == id) --entry;

  std::vector<PointOf<S>> projected;
  projected.reserve(orbit.size());
  double worst_shift = 0.0;
  for (std::size_t n = 0; n < orbit.size(); ++n) {
    if (label[n] == id) {
      projected.push_back(orbit[n]);
      continue;
    }
    const auto coords = grid_coords<S>(orbit[n]);
    const auto target = clamp_to_box(grid, proj.nearest(id, box[n]), coords);
    PointOf<S> q = orbit[n];
    for (int a = 0; a < grid.dimension(); ++a)
      if (target[static_cast<std::size_t>(a)] != coords[static_cast<std::size_t>(a)]) q = GridTraits<S>::set(q, a, target[static_cast<std::size_t>(a)]);
    worst_shift = std::max(worst_shift, sys.dist(q, orbit[n]));
    projected.push_back(std::move(q));
  }
  c.pass = true;
  c.worst_index = entry;
  c.worst_value = worst_shift;
  c.extra = {{"class_id", id}, {"entry_index", entry}, {"max_projection_shift", worst_shift}};
  return {id, entry, LimitPseudoOrbit<S>(sys, std::move(projected)), std::move(c)};
}

}  // namespace shadowdyn

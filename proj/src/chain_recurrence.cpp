#include "shadowdyn/chain_recurrence.hpp"

#include <cstdlib>
#include <deque>
#include <functional>
#include <limits>

#include "shadowdyn/serialize.hpp"

namespace shadowdyn {

BoxGrid::BoxGrid(std::vector<int> resolution) : res_(std::move(resolution)) {
  if (res_.empty()) throw std::invalid_argument("BoxGrid: no axes");
  count_ = 1;
  for (int r : res_) {
    if (r < 1) throw std::invalid_argument("BoxGrid: resolution must be positive");
    if (count_ > std::numeric_limits<std::int64_t>::max() / r) throw std::invalid_argument("BoxGrid: box count overflows");
    count_ *= r;
  }
}

double BoxGrid::mesh() const { return 1.0 / *std::min_element(res_.begin(), res_.end()); }

std::int64_t BoxGrid::index(const std::vector<int>& cell) const {
  std::int64_t i = 0;
  for (std::size_t a = 0; a < res_.size(); ++a) i = i * res_[a] + cell[a];
  return i;
}

std::vector<int> BoxGrid::cell(std::int64_t index) const {
  std::vector<int> c(res_.size());
  for (std::size_t a = res_.size(); a-- > 0;) {
    c[a] = static_cast<int>(index % res_[a]);
    index /= res_[a];
  }
  return c;
}

std::int64_t BoxGrid::box_of(const std::vector<double>& coords) const {
  std::int64_t i = 0;
  for (std::size_t a = 0; a < res_.size(); ++a) {
    const int j = std::min(res_[a] - 1, static_cast<int>(std::floor(wrap01(coords[a]) * res_[a])));
    i = i * res_[a] + j;
  }
  return i;
}

BoxGrid BoxGrid::axes(int first, int count) const {
  return BoxGrid(std::vector<int>(res_.begin() + first, res_.begin() + first + count));
}

bool CsrGraph::has_edge(std::int64_t v, std::int64_t w) const {
  const auto b = targets.begin() + offsets[static_cast<std::size_t>(v)];
  const auto e = targets.begin() + offsets[static_cast<std::size_t>(v + 1)];
  return std::binary_search(b, e, w);
}

TransitionGraph::TransitionGraph(BoxGrid grid, std::vector<CsrGraph> factors, double delta, Json scheme)
    : grid_(std::move(grid)), factors_(std::move(factors)), delta_(delta), scheme_(std::move(scheme)) {
  std::int64_t total = 1;
  for (const auto& f : factors_) {
    factor_nodes_.push_back(f.node_count());
    total *= f.node_count();
  }
  if (factors_.empty() || factors_.size() > 8 || total != grid_.box_count()) throw std::invalid_argument("TransitionGraph: factor sizes do not match the grid");
}

void TransitionGraph::split(std::int64_t v, std::int64_t* parts) const {
  for (std::size_t f = factors_.size(); f-- > 0;) {
    parts[f] = v % factor_nodes_[f];
    v /= factor_nodes_[f];
  }
}

std::int64_t TransitionGraph::successor_count(std::int64_t v) const {
  if (factors_.size() == 1) return factors_[0].degree(v);
  std::int64_t parts[8];
  split(v, parts);
  std::int64_t n = 1;
  for (std::size_t f = 0; f < factors_.size(); ++f) n *= factors_[f].degree(parts[f]);
  return n;
}

std::int64_t TransitionGraph::successor(std::int64_t v, std::int64_t i) const {
  if (factors_.size() == 1) return factors_[0].target(v, i);
  std::int64_t parts[8];
  split(v, parts);
  std::int64_t choice[8];
  for (std::size_t f = factors_.size(); f-- > 0;) {
    const std::int64_t d = factors_[f].degree(parts[f]);
    choice[f] = i % d;
    i /= d;
  }
  std::int64_t w = 0;
  for (std::size_t f = 0; f < factors_.size(); ++f) w = w * factor_nodes_[f] + factors_[f].target(parts[f], choice[f]);
  return w;
}

bool TransitionGraph::has_edge(std::int64_t v, std::int64_t w) const {
  std::int64_t pv[8], pw[8];
  split(v, pv);
  split(w, pw);
  for (std::size_t f = 0; f < factors_.size(); ++f)
    if (!factors_[f].has_edge(pv[f], pw[f])) return false;
  return true;
}

bool TransitionGraph::has_self_loop(std::int64_t v) const { return has_edge(v, v); }

bool TransitionGraph::has_witnessed_loop(std::int64_t v) const {
  std::int64_t parts[8];
  split(v, parts);
  for (std::size_t f = 0; f < factors_.size(); ++f)
    if (!factors_[f].fixed_witness[static_cast<std::size_t>(parts[f])]) return false;
  return has_self_loop(v);
}

std::int64_t TransitionGraph::edge_count() const {
  std::int64_t n = 1;
  for (const auto& f : factors_) n *= f.edge_count();
  return n;
}

std::vector<std::int64_t> ClassDecomposition::recurrent_boxes() const {
  std::vector<std::int64_t> out;
  out.reserve(static_cast<std::size_t>(recurrent_count));
  for (std::size_t b = 0; b < class_of.size(); ++b)
    if (class_of[b] >= 0) out.push_back(static_cast<std::int64_t>(b));
  return out;
}

Json ClassDecomposition::summary() const {
  return {{"class_count", class_count()}, {"class_sizes", class_size}, {"recurrent_boxes", recurrent_count}, {"boxes", class_of.size()}};
}

namespace {

struct CsrView {
  const CsrGraph& g;
  std::int64_t node_count() const { return g.node_count(); }
  std::int64_t successor_count(std::int64_t v) const { return g.degree(v); }
  std::int64_t successor(std::int64_t v, std::int64_t i) const { return g.target(v, i); }
};

std::vector<char> cyclic_components(const SccResult& scc, std::int64_t nodes, const std::function<bool(std::int64_t)>& witnessed) {
  std::vector<char> cyclic(static_cast<std::size_t>(scc.count()), 0);
  for (std::int64_t c = 0; c < scc.count(); ++c) cyclic[static_cast<std::size_t>(c)] = scc.size[static_cast<std::size_t>(c)] > 1;
  for (std::int64_t v = 0; v < nodes; ++v) {
    const auto c = static_cast<std::size_t>(scc.component[static_cast<std::size_t>(v)]);
    if (!cyclic[c] && witnessed(v)) cyclic[c] = 1;
  }
  return cyclic;
}

std::vector<char> factor_recurrence(const CsrGraph& f) {
  const SccResult scc = strongly_connected_components(CsrView{f});
  const auto cyclic = cyclic_components(scc, f.node_count(), [&](std::int64_t v) { return f.fixed_witness[static_cast<std::size_t>(v)] && f.has_edge(v, v); });
  std::vector<char> r(static_cast<std::size_t>(f.node_count()));
  for (std::size_t v = 0; v < r.size(); ++v) r[v] = cyclic[static_cast<std::size_t>(scc.component[v])];
  return r;
}

}  // namespace

ClassDecomposition chain_classes(const TransitionGraph& g) {
  const SccResult scc = strongly_connected_components(g);
  const auto cyclic = cyclic_components(scc, g.node_count(), [&](std::int64_t v) { return g.has_witnessed_loop(v); });
  std::vector<std::vector<char>> factor_ok;
  if (g.factors().size() > 1)
    for (const auto& f : g.factors()) factor_ok.push_back(factor_recurrence(f));
  auto factors_recurrent = [&](std::int64_t v) {
    if (factor_ok.empty()) return true;
    std::int64_t parts[8];
    g.split(v, parts);
    for (std::size_t f = 0; f < factor_ok.size(); ++f)
      if (!factor_ok[f][static_cast<std::size_t>(parts[f])]) return false;
    return true;
  };
  ClassDecomposition d;
  d.class_of.assign(static_cast<std::size_t>(g.node_count()), -1);
  std::vector<std::int64_t> relabel(static_cast<std::size_t>(scc.count()), -1);
  for (std::int64_t v = 0; v < g.node_count(); ++v) {
    const auto c = static_cast<std::size_t>(scc.component[static_cast<std::size_t>(v)]);
    if (!cyclic[c] || !factors_recurrent(v)) continue;
    if (relabel[c] < 0) {
      relabel[c] = d.class_count();
      d.class_size.push_back(0);
    }
    d.class_of[static_cast<std::size_t>(v)] = relabel[c];
    ++d.class_size[static_cast<std::size_t>(relabel[c])];
    ++d.recurrent_count;
  }
  return d;
}

std::vector<std::int64_t> chain_recurrent_boxes(const TransitionGraph& g) { return chain_classes(g).recurrent_boxes(); }

namespace {

std::string resolution_text(const std::vector<int>& res) {
  std::string s;
  for (std::size_t a = 0; a < res.size(); ++a) s += (a ? "x" : "") + std::to_string(res[a]);
  return s;
}

}  // namespace

std::string graph_edge_list(const TransitionGraph& g, std::string_view system) {
  std::string out;
  out += "# shadowdyn transition graph\n";
  out += "# system=" + std::string(system) + "\n";
  out += "# resolution=" + resolution_text(g.grid().resolution()) + "\n";
  out += "# mesh=" + format_double(g.grid().mesh()) + "\n";
  out += "# delta=" + format_double(g.delta()) + "\n";
  out += "# nodes=" + std::to_string(g.node_count()) + "\n";
  out += "# edges=" + std::to_string(g.edge_count()) + "\n";
  out += "# scheme=" + g.scheme().dump() + "\n";
  if (g.factors().size() > 1) out += "# tensor_product=1 factors=" + std::to_string(g.factors().size()) + "\n";
  for (std::size_t f = 0; f < g.factors().size(); ++f) {
    const auto& fg = g.factors()[f];
    if (g.factors().size() > 1)
      out += "# factor=" + std::to_string(f) + " nodes=" + std::to_string(fg.node_count()) + " edges=" + std::to_string(fg.edge_count()) + "\n";
    for (std::int64_t v = 0; v < fg.node_count(); ++v)
      for (std::int64_t i = 0; i < fg.degree(v); ++i) out += std::to_string(v) + " " + std::to_string(fg.target(v, i)) + "\n";
  }
  return out;
}

std::string classes_csv(const ClassDecomposition& c) {
  std::string out = "box_index,class_id\n";
  for (std::size_t b = 0; b < c.class_of.size(); ++b)
    if (c.class_of[b] >= 0) out += std::to_string(b) + "," + std::to_string(c.class_of[b]) + "\n";
  return out;
}

namespace detail {

CsrGraph assemble(std::vector<std::vector<std::int64_t>>& rows, std::vector<char> witness) {
  CsrGraph g;
  g.fixed_witness = std::move(witness);
  g.offsets.reserve(rows.size() + 1);
  std::size_t total = 0;
  for (const auto& r : rows) total += r.size();
  g.targets.reserve(total);
  for (auto& r : rows) {
    g.targets.insert(g.targets.end(), r.begin(), r.end());
    g.offsets.push_back(static_cast<std::int64_t>(g.targets.size()));
    std::vector<std::int64_t>().swap(r);
  }
  return g;
}

void budget_exceeded(std::int64_t boxes, std::int64_t edges, std::int64_t budget) {
  throw std::invalid_argument("build_graph: resolution too fine for the edge budget (" + std::to_string(boxes) + " boxes, " +
                              std::to_string(edges) + " edges, budget " + std::to_string(budget) + ")");
}

std::vector<std::vector<double>> box_samples(const BoxGrid& grid, std::int64_t box, int count, std::uint64_t seed) {
  const auto cell = grid.cell(box);
  const auto& res = grid.resolution();
  const int d = grid.dimension();
  std::vector<std::vector<double>> out;
  std::vector<double> p(static_cast<std::size_t>(d));
  for (int a = 0; a < d; ++a) p[static_cast<std::size_t>(a)] = (cell[static_cast<std::size_t>(a)] + 0.5) / res[static_cast<std::size_t>(a)];
  out.push_back(p);
  for (unsigned mask = 0; mask < (1u << d) && static_cast<int>(out.size()) < count; ++mask) {
    for (int a = 0; a < d; ++a)
      p[static_cast<std::size_t>(a)] = wrap01(static_cast<double>(cell[static_cast<std::size_t>(a)] + ((mask >> a) & 1u)) / res[static_cast<std::size_t>(a)]);
    out.push_back(p);
  }
  Rng rng(seed, streams::kGraph, static_cast<std::uint64_t>(box));
  while (static_cast<int>(out.size()) < count) {
    for (int a = 0; a < d; ++a) p[static_cast<std::size_t>(a)] = (cell[static_cast<std::size_t>(a)] + rng.uniform()) / res[static_cast<std::size_t>(a)];
    out.push_back(p);
  }
  return out;
}

}  // namespace detail

ClassProjector::ClassProjector(const BoxGrid& grid, const ClassDecomposition& classes) : grid_(grid), classes_(classes) {
  if (static_cast<std::int64_t>(classes_.class_of.size()) != grid_.box_count()) throw std::invalid_argument("ClassProjector: grid and classes differ");
  const int d = grid_.dimension();
  int neighbours = 1;
  for (int a = 0; a < d; ++a) neighbours *= 3;
  fields_.resize(static_cast<std::size_t>(classes_.class_count()));
  for (std::int64_t id = 0; id < classes_.class_count(); ++id) {
    auto& near = fields_[static_cast<std::size_t>(id)];
    near.assign(static_cast<std::size_t>(grid_.box_count()), -1);
    std::vector<std::int64_t> layer(static_cast<std::size_t>(grid_.box_count()), -1);
    std::deque<std::int64_t> queue;
    for (std::int64_t b = 0; b < grid_.box_count(); ++b)
      if (classes_.class_of[static_cast<std::size_t>(b)] == id) {
        near[static_cast<std::size_t>(b)] = b;
        layer[static_cast<std::size_t>(b)] = 0;
        queue.push_back(b);
      }
    auto l1 = [&](const std::vector<int>& p, std::int64_t src) {
      const auto q = grid_.cell(src);
      std::int64_t sum = 0;
      for (int a = 0; a < d; ++a) {
        const int r = grid_.resolution()[static_cast<std::size_t>(a)];
        const int diff = std::abs(p[static_cast<std::size_t>(a)] - q[static_cast<std::size_t>(a)]);
        sum += std::min(diff, r - diff);
      }
      return sum;
    };
    while (!queue.empty()) {
      const std::int64_t b = queue.front();
      queue.pop_front();
      const auto c = grid_.cell(b);
      auto n = c;
      for (int k = 0; k < neighbours; ++k) {
        int code = k;
        for (int a = 0; a < d; ++a) {
          const int step = code % 3 - 1;
          code /= 3;
          const int r = grid_.resolution()[static_cast<std::size_t>(a)];
          n[static_cast<std::size_t>(a)] = (c[static_cast<std::size_t>(a)] + step + r) % r;
        }
        const auto w = static_cast<std::size_t>(grid_.index(n));
        const auto src = near[static_cast<std::size_t>(b)];
        if (near[w] < 0) {
          near[w] = src;
          layer[w] = layer[static_cast<std::size_t>(b)] + 1;
          queue.push_back(static_cast<std::int64_t>(w));
        } else if (layer[w] == layer[static_cast<std::size_t>(b)] + 1 && near[w] != src) {
          const auto mine = l1(n, src), theirs = l1(n, near[w]);
          if (mine < theirs || (mine == theirs && src < near[w])) near[w] = src;
        }
      }
    }
  }
}

std::int64_t ClassProjector::nearest(std::int64_t id, std::int64_t b) const {
  if (id < 0 || id >= classes_.class_count()) throw std::out_of_range("ClassProjector: unknown class");
  return fields_[static_cast<std::size_t>(id)][static_cast<std::size_t>(b)];
}

std::vector<double> clamp_to_box(const BoxGrid& grid, std::int64_t box, const std::vector<double>& c) {
  const auto cell = grid.cell(box);
  std::vector<double> out(c.size());
  for (std::size_t a = 0; a < c.size(); ++a) {
    const double r = grid.resolution()[a];
    const double lo = cell[a] / r;
    const double hi = (cell[a] + 1) / r;
    const double x = wrap01(c[a]);
    if (x >= lo && x <= hi) out[a] = x;
    else out[a] = wrap01(circle_dist(x, lo) <= circle_dist(x, hi) ? lo : hi);
  }
  return out;
}

}  // namespace shadowdyn

#pragma once

#include <cstdint>
#include <vector>

namespace oracle {

/// Explicit adjacency lists copied from any graph with the successor interface.
struct Adjacency {
  std::vector<std::vector<std::int64_t>> out;

  std::int64_t node_count() const { return static_cast<std::int64_t>(out.size()); }
  std::int64_t successor_count(std::int64_t v) const { return static_cast<std::int64_t>(out[static_cast<std::size_t>(v)].size()); }
  std::int64_t successor(std::int64_t v, std::int64_t i) const { return out[static_cast<std::size_t>(v)][static_cast<std::size_t>(i)]; }
};

template <class G>
Adjacency copy_graph(const G& g) {
  Adjacency a;
  a.out.resize(static_cast<std::size_t>(g.node_count()));
  for (std::int64_t v = 0; v < g.node_count(); ++v)
    for (std::int64_t i = 0; i < g.successor_count(v); ++i) a.out[static_cast<std::size_t>(v)].push_back(g.successor(v, i));
  return a;
}

/// reach[v][w]: w reachable from v by a path of length >= 1.
inline std::vector<std::vector<char>> transitive_closure(const Adjacency& a) {
  const auto n = static_cast<std::size_t>(a.node_count());
  std::vector<std::vector<char>> reach(n, std::vector<char>(n, 0));
  std::vector<std::int64_t> stack;
  for (std::size_t s = 0; s < n; ++s) {
    auto& seen = reach[s];
    stack.assign(a.out[s].begin(), a.out[s].end());
    for (auto w : a.out[s]) seen[static_cast<std::size_t>(w)] = 1;
    while (!stack.empty()) {
      const auto v = static_cast<std::size_t>(stack.back());
      stack.pop_back();
      for (auto w : a.out[v])
        if (!seen[static_cast<std::size_t>(w)]) {
          seen[static_cast<std::size_t>(w)] = 1;
          stack.push_back(w);
        }
    }
  }
  return reach;
}

/// True when the partition `component` equals mutual reachability.
inline bool same_partition_as_closure(const Adjacency& a, const std::vector<std::int64_t>& component) {
  const auto reach = transitive_closure(a);
  const auto n = reach.size();
  for (std::size_t v = 0; v < n; ++v)
    for (std::size_t w = 0; w < n; ++w) {
      const bool mutual = v == w || (reach[v][w] && reach[w][v]);
      if (mutual != (component[v] == component[w])) return false;
    }
  return true;
}

/// Nodes on a cycle of length >= 2.
inline std::vector<char> on_long_cycle(const Adjacency& a) {
  const auto reach = transitive_closure(a);
  std::vector<char> r(reach.size(), 0);
  for (std::size_t v = 0; v < reach.size(); ++v)
    for (auto w : a.out[v])
      if (static_cast<std::size_t>(w) != v && reach[static_cast<std::size_t>(w)][v]) r[v] = 1;
  return r;
}

}  // namespace oracle

#pragma once

// Graph fixtures and brute-force oracles shared by the unit and acceptance
// suites. Nothing here calls into the library's algorithms; the oracles only
// use SemanticGraph as a container.

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "semnet/netgraph.hpp"

namespace fixtures {

using semnet::SemanticGraph;
using semnet::Vertex;
using semnet::WeightedEdge;

inline std::vector<std::string> numbered_labels(std::size_t n) {
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < n; ++i) {
    std::string s = std::to_string(i);
    labels.push_back(std::string(3 - std::min<std::size_t>(3, s.size()), '0') + s);
  }
  return labels;
}

inline SemanticGraph make_graph(std::size_t n, const std::vector<std::pair<Vertex, Vertex>>& edges) {
  std::vector<WeightedEdge> we;
  for (auto [u, v] : edges) we.push_back({u, v, 1});
  return SemanticGraph(numbered_labels(n), std::move(we));
}

inline SemanticGraph path(std::size_t n) {
  std::vector<std::pair<Vertex, Vertex>> e;
  for (Vertex i = 0; i + 1 < n; ++i) e.emplace_back(i, i + 1);
  return make_graph(n, e);
}

inline SemanticGraph cycle(std::size_t n) {
  std::vector<std::pair<Vertex, Vertex>> e;
  for (Vertex i = 0; i < n; ++i) e.emplace_back(i, static_cast<Vertex>((i + 1) % n));
  return make_graph(n, e);
}

inline SemanticGraph star(std::size_t leaves) {
  std::vector<std::pair<Vertex, Vertex>> e;
  for (Vertex i = 1; i <= leaves; ++i) e.emplace_back(0, i);
  return make_graph(leaves + 1, e);
}

inline SemanticGraph complete(std::size_t n) {
  std::vector<std::pair<Vertex, Vertex>> e;
  for (Vertex i = 0; i < n; ++i)
    for (Vertex j = i + 1; j < n; ++j) e.emplace_back(i, j);
  return make_graph(n, e);
}

inline SemanticGraph two_triangles() { return make_graph(6, {{0, 1}, {1, 2}, {0, 2}, {3, 4}, {4, 5}, {3, 5}}); }

inline SemanticGraph karate() {
  static const std::vector<std::pair<Vertex, Vertex>> kEdges = {
      {0, 1},   {0, 2},   {0, 3},   {0, 4},   {0, 5},   {0, 6},   {0, 7},   {0, 8},   {0, 10},  {0, 11},
      {0, 12},  {0, 13},  {0, 17},  {0, 19},  {0, 21},  {0, 31},  {1, 2},   {1, 3},   {1, 7},   {1, 13},
      {1, 17},  {1, 19},  {1, 21},  {1, 30},  {2, 3},   {2, 7},   {2, 8},   {2, 9},   {2, 13},  {2, 27},
      {2, 28},  {2, 32},  {3, 7},   {3, 12},  {3, 13},  {4, 6},   {4, 10},  {5, 6},   {5, 10},  {5, 16},
      {6, 16},  {8, 30},  {8, 32},  {8, 33},  {9, 33},  {13, 33}, {14, 32}, {14, 33}, {15, 32}, {15, 33},
      {18, 32}, {18, 33}, {19, 33}, {20, 32}, {20, 33}, {22, 32}, {22, 33}, {23, 25}, {23, 27}, {23, 29},
      {23, 32}, {23, 33}, {24, 25}, {24, 27}, {24, 31}, {25, 31}, {26, 29}, {26, 33}, {27, 33}, {28, 31},
      {28, 33}, {29, 32}, {29, 33}, {30, 32}, {30, 33}, {31, 32}, {31, 33}, {32, 33}};
  return make_graph(34, kEdges);
}

/// G(n, p) with unit weights.
inline SemanticGraph random_graph(std::size_t n, double p, std::mt19937_64& rng) {
  std::bernoulli_distribution coin(p);
  std::vector<std::pair<Vertex, Vertex>> e;
  for (Vertex i = 0; i < n; ++i)
    for (Vertex j = i + 1; j < n; ++j)
      if (coin(rng)) e.emplace_back(i, j);
  return make_graph(n, e);
}

/// Random integer weights in [1, max_w].
inline SemanticGraph random_weighted_graph(std::size_t n, double p, std::uint64_t max_w, std::mt19937_64& rng) {
  std::bernoulli_distribution coin(p);
  std::uniform_int_distribution<std::uint64_t> weight(1, max_w);
  std::vector<WeightedEdge> e;
  for (Vertex i = 0; i < n; ++i)
    for (Vertex j = i + 1; j < n; ++j)
      if (coin(rng)) e.push_back({i, j, weight(rng)});
  return SemanticGraph(numbered_labels(n), std::move(e));
}

/// Two blocks; returns the graph and the planted block of each vertex.
inline std::pair<SemanticGraph, std::vector<std::uint32_t>> planted_partition(std::size_t block, double p_in,
                                                                              double p_out, std::mt19937_64& rng) {
  std::bernoulli_distribution in(p_in), out(p_out);
  const std::size_t n = 2 * block;
  std::vector<std::uint32_t> truth(n);
  for (std::size_t v = 0; v < n; ++v) truth[v] = v < block ? 0 : 1;
  std::vector<std::pair<Vertex, Vertex>> e;
  for (Vertex i = 0; i < n; ++i)
    for (Vertex j = i + 1; j < n; ++j)
      if (truth[i] == truth[j] ? in(rng) : out(rng)) e.emplace_back(i, j);
  return {make_graph(n, e), truth};
}

// ---- brute-force oracles ---------------------------------------------------

inline std::vector<std::vector<bool>> adjacency_matrix(const SemanticGraph& g) {
  const std::size_t n = g.vertex_count();
  std::vector<std::vector<bool>> a(n, std::vector<bool>(n, false));
  for (const auto& e : g.edges()) a[e.u][e.v] = a[e.v][e.u] = true;
  return a;
}

/// All-pairs distances by Floyd-Warshall; -1 for unreachable.
inline std::vector<std::vector<int>> distances(const SemanticGraph& g) {
  const std::size_t n = g.vertex_count();
  constexpr int kInf = 1 << 20;
  std::vector<std::vector<int>> d(n, std::vector<int>(n, kInf));
  for (std::size_t i = 0; i < n; ++i) d[i][i] = 0;
  for (const auto& e : g.edges()) d[e.u][e.v] = d[e.v][e.u] = 1;
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) d[i][j] = std::min(d[i][j], d[i][k] + d[k][j]);
  for (auto& row : d)
    for (int& x : row)
      if (x >= kInf) x = -1;
  return d;
}

/// Betweenness by enumerating every shortest path explicitly (DFS over simple
/// paths of exactly the geodesic length). Exact rational counts as doubles.
inline std::vector<double> betweenness_by_paths(const SemanticGraph& g) {
  const std::size_t n = g.vertex_count();
  const auto a = adjacency_matrix(g);
  const auto d = distances(g);
  std::vector<double> bc(n, 0.0);
  for (std::size_t s = 0; s < n; ++s)
    for (std::size_t t = s + 1; t < n; ++t) {
      if (d[s][t] < 2) continue;
      std::vector<std::vector<std::size_t>> paths;
      std::vector<std::size_t> cur{s};
      auto dfs = [&](auto&& self, std::size_t v) -> void {
        if (v == t) {
          paths.push_back(cur);
          return;
        }
        if (static_cast<int>(cur.size()) - 1 >= d[s][t]) return;
        for (std::size_t w = 0; w < n; ++w)
          if (a[v][w] && std::find(cur.begin(), cur.end(), w) == cur.end()) {
            cur.push_back(w);
            self(self, w);
            cur.pop_back();
          }
      };
      dfs(dfs, s);
      std::vector<double> through(n, 0.0);
      std::size_t shortest = 0;
      for (const auto& p : paths) {
        if (static_cast<int>(p.size()) - 1 != d[s][t]) continue;
        ++shortest;
        for (std::size_t i = 1; i + 1 < p.size(); ++i) through[p[i]] += 1.0;
      }
      for (std::size_t v = 0; v < n; ++v) bc[v] += through[v] / static_cast<double>(shortest);
    }
  return bc;
}

struct TriangleCounts {
  std::size_t triangles = 0;
  std::size_t triples = 0;  // paths of length two, centered anywhere
};

inline TriangleCounts count_triangles(const SemanticGraph& g) {
  const std::size_t n = g.vertex_count();
  const auto a = adjacency_matrix(g);
  TriangleCounts c;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      for (std::size_t k = j + 1; k < n; ++k)
        if (a[i][j] && a[j][k] && a[i][k]) ++c.triangles;
  for (std::size_t center = 0; center < n; ++center)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        if (i != center && j != center && a[center][i] && a[center][j]) ++c.triples;
  return c;
}

/// Pearson correlation over the 2|E| ordered endpoint-degree pairs.
inline std::optional<double> assortativity_by_pearson(const SemanticGraph& g) {
  std::vector<double> x, y;
  for (const auto& e : g.edges()) {
    const double du = static_cast<double>(g.degree(e.u)), dv = static_cast<double>(g.degree(e.v));
    x.push_back(du);
    y.push_back(dv);
    x.push_back(dv);
    y.push_back(du);
  }
  if (x.empty()) return std::nullopt;
  const double n = static_cast<double>(x.size());
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
  double sxy = 0, sxx = 0, syy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
    syy += (y[i] - my) * (y[i] - my);
  }
  if (sxx == 0.0 || syy == 0.0) return std::nullopt;
  return sxy / std::sqrt(sxx * syy);
}

/// Largest clique by checking every vertex subset.
inline std::size_t clique_by_subsets(const SemanticGraph& g) {
  const std::size_t n = g.vertex_count();
  const auto a = adjacency_matrix(g);
  std::size_t best = 0;
  for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
    const auto size = static_cast<std::size_t>(std::popcount(mask));
    if (size <= best) continue;
    bool ok = true;
    for (std::size_t i = 0; i < n && ok; ++i)
      for (std::size_t j = i + 1; j < n && ok; ++j)
        if ((mask >> i & 1u) && (mask >> j & 1u) && !a[i][j]) ok = false;
    if (ok) best = size;
  }
  return best;
}

/// Core numbers straight from the definition: the largest k for which the
/// vertex survives repeated deletion of vertices with degree below k.
inline std::vector<std::size_t> cores_by_definition(const SemanticGraph& g) {
  const std::size_t n = g.vertex_count();
  const auto a = adjacency_matrix(g);
  std::vector<std::size_t> core(n, 0);
  for (std::size_t k = 1; k <= n; ++k) {
    std::vector<bool> alive(n, true);
    for (bool changed = true; changed;) {
      changed = false;
      for (std::size_t v = 0; v < n; ++v) {
        if (!alive[v]) continue;
        std::size_t deg = 0;
        for (std::size_t w = 0; w < n; ++w) deg += alive[w] && a[v][w];
        if (deg < k) {
          alive[v] = false;
          changed = true;
        }
      }
    }
    for (std::size_t v = 0; v < n; ++v)
      if (alive[v]) core[v] = k;
  }
  return core;
}

/// Newman modularity straight from the double sum over vertex pairs.
inline double modularity_by_pairs(const SemanticGraph& g, const std::vector<std::uint32_t>& c, bool weighted) {
  const std::size_t n = g.vertex_count();
  std::vector<std::vector<double>> a(n, std::vector<double>(n, 0.0));
  for (const auto& e : g.edges()) a[e.u][e.v] = a[e.v][e.u] = weighted ? static_cast<double>(e.weight) : 1.0;
  std::vector<double> k(n, 0.0);
  double two_m = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      k[i] += a[i][j];
      two_m += a[i][j];
    }
  double q = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (c[i] == c[j]) q += a[i][j] - k[i] * k[j] / two_m;
  return q / two_m;
}

}  // namespace fixtures

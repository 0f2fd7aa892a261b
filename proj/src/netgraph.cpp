#include "semnet/netgraph.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <set>

#include "semnet/error.hpp"

namespace semnet {

SemanticGraph::SemanticGraph(std::vector<std::string> labels, std::vector<WeightedEdge> edges)
    : labels_(std::move(labels)), edges_(std::move(edges)) {
  const std::size_t n = labels_.size();
  if (n > std::numeric_limits<Vertex>::max()) throw_data("graph too large");
  for (Vertex v = 0; v < n; ++v)
    if (!index_.emplace(labels_[v], v).second) throw_data("duplicate vertex label \"" + labels_[v] + "\"");

  for (auto& e : edges_) {
    if (e.u >= n || e.v >= n) throw_data("edge endpoint out of range");
    if (e.u == e.v) throw_data("self-loop on \"" + labels_[e.u] + "\"");
    if (e.weight == 0) throw_data("edge weight must be at least 1");
    if (e.v < e.u) std::swap(e.u, e.v);
  }
  std::sort(edges_.begin(), edges_.end(),
            [](const WeightedEdge& a, const WeightedEdge& b) { return a.u != b.u ? a.u < b.u : a.v < b.v; });
  for (std::size_t i = 1; i < edges_.size(); ++i)
    if (edges_[i].u == edges_[i - 1].u && edges_[i].v == edges_[i - 1].v)
      throw_data("duplicate edge " + labels_[edges_[i].u] + " -- " + labels_[edges_[i].v]);

  offsets_.assign(n + 1, 0);
  for (const auto& e : edges_) {
    ++offsets_[e.u + 1];
    ++offsets_[e.v + 1];
    total_weight_ += e.weight;
  }
  for (std::size_t i = 0; i < n; ++i) offsets_[i + 1] += offsets_[i];
  adjacency_.resize(offsets_[n]);
  std::vector<std::size_t> cursor(offsets_.begin(), offsets_.end() - 1);
  for (const auto& e : edges_) {
    adjacency_[cursor[e.u]++] = Neighbor{e.v, e.weight};
    adjacency_[cursor[e.v]++] = Neighbor{e.u, e.weight};
  }
  for (std::size_t v = 0; v < n; ++v)
    std::sort(adjacency_.begin() + static_cast<std::ptrdiff_t>(offsets_[v]),
              adjacency_.begin() + static_cast<std::ptrdiff_t>(offsets_[v + 1]),
              [](const Neighbor& a, const Neighbor& b) { return a.vertex < b.vertex; });
}

std::optional<Vertex> SemanticGraph::find(std::string_view label) const {
  auto it = index_.find(std::string(label));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::span<const Neighbor> SemanticGraph::neighbors(Vertex v) const {
  if (v >= labels_.size()) throw_usage("vertex id out of range");
  return std::span<const Neighbor>(adjacency_).subspan(offsets_[v], offsets_[v + 1] - offsets_[v]);
}

std::uint64_t SemanticGraph::strength(Vertex v) const {
  std::uint64_t s = 0;
  for (const auto& nb : neighbors(v)) s += nb.weight;
  return s;
}

bool SemanticGraph::adjacent(Vertex a, Vertex b) const {
  auto nbs = neighbors(a);
  return std::binary_search(nbs.begin(), nbs.end(), Neighbor{b, 0},
                            [](const Neighbor& x, const Neighbor& y) { return x.vertex < y.vertex; });
}

SemanticGraph SemanticGraph::induced(std::span<const Vertex> keep) const {
  std::vector<Vertex> remap(labels_.size(), std::numeric_limits<Vertex>::max());
  std::vector<std::string> labels;
  labels.reserve(keep.size());
  for (Vertex v : keep) {
    if (v >= labels_.size()) throw_usage("vertex id out of range");
    if (remap[v] != std::numeric_limits<Vertex>::max()) throw_usage("vertex listed twice in induced subgraph");
    remap[v] = static_cast<Vertex>(labels.size());
    labels.push_back(labels_[v]);
  }
  std::vector<WeightedEdge> edges;
  for (const auto& e : edges_) {
    const Vertex a = remap[e.u], b = remap[e.v];
    if (a != std::numeric_limits<Vertex>::max() && b != std::numeric_limits<Vertex>::max())
      edges.push_back({a, b, e.weight});
  }
  return SemanticGraph(std::move(labels), std::move(edges));
}

SemanticGraph build_graph(const PairCounts& pc) {
  std::set<std::string> words;
  for (const auto& kv : pc.counts()) {
    words.insert(kv.first.first);
    words.insert(kv.first.second);
  }
  std::vector<std::string> labels(words.begin(), words.end());
  std::unordered_map<std::string, Vertex> id;
  for (Vertex v = 0; v < labels.size(); ++v) id.emplace(labels[v], v);
  std::vector<WeightedEdge> edges;
  edges.reserve(pc.size());
  for (const auto& [key, n] : pc.counts()) {
    if (key.first == key.second) continue;  // self pairs have no place in a simple graph
    edges.push_back({id.at(key.first), id.at(key.second), n});
  }
  return SemanticGraph(std::move(labels), std::move(edges));
}

std::vector<std::vector<Vertex>> connected_components(const SemanticGraph& g) {
  const std::size_t n = g.vertex_count();
  std::vector<bool> seen(n, false);
  std::vector<std::vector<Vertex>> comps;
  for (Vertex s = 0; s < n; ++s) {
    if (seen[s]) continue;
    std::vector<Vertex> comp{s};
    seen[s] = true;
    for (std::size_t head = 0; head < comp.size(); ++head)
      for (const auto& nb : g.neighbors(comp[head]))
        if (!seen[nb.vertex]) {
          seen[nb.vertex] = true;
          comp.push_back(nb.vertex);
        }
    std::sort(comp.begin(), comp.end());
    comps.push_back(std::move(comp));
  }
  return comps;
}

SemanticGraph giant_component(const SemanticGraph& g) {
  if (g.empty()) return {};
  const auto comps = connected_components(g);
  std::size_t best = 0;
  for (std::size_t i = 1; i < comps.size(); ++i)
    if (comps[i].size() > comps[best].size()) best = i;
  if (comps[best].size() == g.vertex_count()) return g;
  return g.induced(comps[best]);
}

double density(const SemanticGraph& g) {
  const double n = static_cast<double>(g.vertex_count());
  if (n < 2) return 0.0;
  return 2.0 * static_cast<double>(g.edge_count()) / (n * (n - 1.0));
}

double mean_distance(const SemanticGraph& g) {
  const std::size_t n = g.vertex_count();
  std::vector<std::uint32_t> dist(n);
  std::vector<Vertex> queue(n);
  double total = 0.0;
  double pairs = 0.0;
  constexpr auto kUnseen = std::numeric_limits<std::uint32_t>::max();
  for (Vertex s = 0; s < n; ++s) {
    std::fill(dist.begin(), dist.end(), kUnseen);
    dist[s] = 0;
    std::size_t head = 0, tail = 0;
    queue[tail++] = s;
    while (head < tail) {
      const Vertex u = queue[head++];
      for (const auto& nb : g.neighbors(u))
        if (dist[nb.vertex] == kUnseen) {
          dist[nb.vertex] = dist[u] + 1;
          queue[tail++] = nb.vertex;
          if (nb.vertex > s) {
            total += dist[nb.vertex];
            pairs += 1.0;
          }
        }
    }
  }
  return pairs == 0.0 ? 0.0 : total / pairs;
}

double transitivity(const SemanticGraph& g) {
  std::uint64_t triangles = 0;
  std::uint64_t triples = 0;
  for (Vertex v = 0; v < g.vertex_count(); ++v) {
    const std::uint64_t d = g.degree(v);
    triples += d * (d - (d > 0 ? 1 : 0)) / 2;
  }
  for (const auto& e : g.edges()) {
    auto a = g.neighbors(e.u), b = g.neighbors(e.v);
    auto ia = a.begin(), ib = b.begin();
    while (ia != a.end() && ib != b.end()) {
      if (ia->vertex < ib->vertex) {
        ++ia;
      } else if (ib->vertex < ia->vertex) {
        ++ib;
      } else {
        if (ia->vertex > e.v) ++triangles;
        ++ia;
        ++ib;
      }
    }
  }
  if (triples == 0) return 0.0;
  return 3.0 * static_cast<double>(triangles) / static_cast<double>(triples);
}

std::optional<double> degree_assortativity(const SemanticGraph& g) {
  if (g.edge_count() == 0) return std::nullopt;
  const auto& edges = g.edges();
  const std::size_t d0 = g.degree(edges.front().u);
  const bool constant = std::all_of(edges.begin(), edges.end(),
                                    [&](const WeightedEdge& e) { return g.degree(e.u) == d0 && g.degree(e.v) == d0; });
  if (constant) return std::nullopt;

  double s1 = 0.0, s2 = 0.0, s3 = 0.0;
  for (const auto& e : edges) {
    const double j = static_cast<double>(g.degree(e.u));
    const double k = static_cast<double>(g.degree(e.v));
    s1 += j + k;
    s2 += j * j + k * k;
    s3 += j * k;
  }
  const double m = static_cast<double>(edges.size());
  return (4.0 * m * s3 - s1 * s1) / (2.0 * m * s2 - s1 * s1);
}

namespace {

// Tomita-style pivoting Bron-Kerbosch; records only the largest clique size.
class MaxCliqueSearch {
 public:
  explicit MaxCliqueSearch(const SemanticGraph& g) : g_(g) {}

  std::size_t run() {
    const std::size_t n = g_.vertex_count();
    if (n == 0) return 0;
    best_ = 1;
    // Degeneracy order: each vertex only looks at later neighbors.
    const auto order = degeneracy_order();
    std::vector<std::size_t> pos(n);
    for (std::size_t i = 0; i < n; ++i) pos[order[i]] = i;
    for (std::size_t i = 0; i < n; ++i) {
      const Vertex v = order[i];
      std::vector<Vertex> p, x;
      for (const auto& nb : g_.neighbors(v)) (pos[nb.vertex] > i ? p : x).push_back(nb.vertex);
      std::sort(p.begin(), p.end());
      std::sort(x.begin(), x.end());
      expand(1, p, x);
    }
    return best_;
  }

 private:
  std::vector<Vertex> degeneracy_order() const {
    const auto cores = k_core_decomposition(g_);
    std::vector<Vertex> order(g_.vertex_count());
    for (Vertex v = 0; v < order.size(); ++v) order[v] = v;
    std::stable_sort(order.begin(), order.end(), [&](Vertex a, Vertex b) { return cores[a] < cores[b]; });
    return order;
  }

  std::vector<Vertex> intersect(const std::vector<Vertex>& set, Vertex v) const {
    std::vector<Vertex> out;
    auto nbs = g_.neighbors(v);
    auto it = nbs.begin();
    for (Vertex s : set) {
      while (it != nbs.end() && it->vertex < s) ++it;
      if (it == nbs.end()) break;
      if (it->vertex == s) out.push_back(s);
    }
    return out;
  }

  void expand(std::size_t r_size, const std::vector<Vertex>& p, const std::vector<Vertex>& x) {
    if (p.empty()) {
      best_ = std::max(best_, r_size);
      return;
    }
    if (r_size + p.size() <= best_) return;

    // Pivot: vertex of P u X with most neighbors in P.
    Vertex pivot = p.front();
    std::size_t pivot_hits = 0;
    for (const auto* set : {&p, &x})
      for (Vertex u : *set) {
        const std::size_t hits = intersect(p, u).size();
        if (hits > pivot_hits || (hits == pivot_hits && set == &p && u == p.front())) {
          pivot_hits = hits;
          pivot = u;
        }
      }

    std::vector<Vertex> p_work = p, x_work = x;
    for (Vertex v : p) {
      if (g_.adjacent(pivot, v)) continue;
      expand(r_size + 1, intersect(p_work, v), intersect(x_work, v));
      p_work.erase(std::lower_bound(p_work.begin(), p_work.end(), v));
      x_work.insert(std::lower_bound(x_work.begin(), x_work.end(), v), v);
      if (r_size + p_work.size() <= best_) return;
    }
  }

  const SemanticGraph& g_;
  std::size_t best_ = 0;
};

}  // namespace

std::size_t clique_number(const SemanticGraph& g) { return MaxCliqueSearch(g).run(); }

NetworkSummary network_summary(const SemanticGraph& g) {
  NetworkSummary s;
  s.vertices = g.vertex_count();
  s.edges = g.edge_count();
  if (s.vertices == 0) return s;
  const double n = static_cast<double>(s.vertices);
  double sum = 0.0;
  for (Vertex v = 0; v < s.vertices; ++v) sum += static_cast<double>(g.degree(v));
  s.mean_degree = sum / n;
  if (s.vertices > 1) {
    double ss = 0.0;
    for (Vertex v = 0; v < s.vertices; ++v) {
      const double d = static_cast<double>(g.degree(v)) - s.mean_degree;
      ss += d * d;
    }
    s.degree_sd = std::sqrt(ss / (n - 1.0));
  }
  s.mean_distance = mean_distance(g);
  s.clique_number = clique_number(g);
  s.density = density(g);
  s.transitivity = transitivity(g);
  s.assortativity = degree_assortativity(g);
  return s;
}

std::vector<double> eigenvector_centrality(const SemanticGraph& g, const EigenOptions& options) {
  if (!(options.tolerance > 0.0)) throw_usage("eigenvector tolerance must be positive");
  const std::size_t n = g.vertex_count();
  std::vector<double> x(n, 1.0), y(n);
  if (n == 0) return x;
  for (std::size_t iter = 0; iter < options.max_iter; ++iter) {
    double top = 0.0;
    for (Vertex v = 0; v < n; ++v) {
      double acc = x[v];
      for (const auto& nb : g.neighbors(v)) acc += (options.use_weights ? static_cast<double>(nb.weight) : 1.0) * x[nb.vertex];
      y[v] = std::fabs(acc);
      top = std::max(top, y[v]);
    }
    double change = 0.0;
    for (Vertex v = 0; v < n; ++v) {
      y[v] /= top;
      change = std::max(change, std::fabs(y[v] - x[v]));
    }
    x.swap(y);
    if (change < options.tolerance) return x;
  }
  throw_numeric("eigenvector centrality did not converge within " + std::to_string(options.max_iter) + " iterations");
}

std::vector<double> betweenness_centrality(const SemanticGraph& g) {
  const std::size_t n = g.vertex_count();
  std::vector<double> bc(n, 0.0), sigma(n), delta(n);
  std::vector<std::int64_t> dist(n);
  std::vector<Vertex> stack;
  stack.reserve(n);
  std::vector<Vertex> queue(n);
  for (Vertex s = 0; s < n; ++s) {
    std::fill(sigma.begin(), sigma.end(), 0.0);
    std::fill(delta.begin(), delta.end(), 0.0);
    std::fill(dist.begin(), dist.end(), -1);
    stack.clear();
    sigma[s] = 1.0;
    dist[s] = 0;
    std::size_t head = 0, tail = 0;
    queue[tail++] = s;
    while (head < tail) {
      const Vertex v = queue[head++];
      stack.push_back(v);
      for (const auto& nb : g.neighbors(v)) {
        const Vertex w = nb.vertex;
        if (dist[w] < 0) {
          dist[w] = dist[v] + 1;
          queue[tail++] = w;
        }
        if (dist[w] == dist[v] + 1) sigma[w] += sigma[v];
      }
    }
    // Predecessors of w are its neighbors one level closer to s.
    for (auto it = stack.rbegin(); it != stack.rend(); ++it) {
      const Vertex w = *it;
      for (const auto& nb : g.neighbors(w)) {
        const Vertex v = nb.vertex;
        if (dist[v] == dist[w] - 1) delta[v] += sigma[v] / sigma[w] * (1.0 + delta[w]);
      }
      if (w != s) bc[w] += delta[w];
    }
  }
  for (double& b : bc) b /= 2.0;
  return bc;
}

std::vector<std::size_t> k_core_decomposition(const SemanticGraph& g) {
  // Batagelj-Zaversnik bucket peeling.
  const std::size_t n = g.vertex_count();
  std::vector<std::size_t> deg(n), pos(n), vert(n);
  std::size_t max_deg = 0;
  for (Vertex v = 0; v < n; ++v) {
    deg[v] = g.degree(v);
    max_deg = std::max(max_deg, deg[v]);
  }
  std::vector<std::size_t> bin(max_deg + 1, 0);
  for (std::size_t v = 0; v < n; ++v) ++bin[deg[v]];
  std::size_t start = 0;
  for (auto& b : bin) {
    const std::size_t c = b;
    b = start;
    start += c;
  }
  for (std::size_t v = 0; v < n; ++v) {
    pos[v] = bin[deg[v]]++;
    vert[pos[v]] = v;
  }
  for (std::size_t d = max_deg; d > 0; --d) bin[d] = bin[d - 1];
  if (!bin.empty()) bin[0] = 0;

  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t v = vert[i];
    for (const auto& nb : g.neighbors(static_cast<Vertex>(v))) {
      const std::size_t u = nb.vertex;
      if (deg[u] > deg[v]) {
        const std::size_t du = deg[u];
        const std::size_t pu = pos[u];
        const std::size_t pw = bin[du];
        const std::size_t w = vert[pw];
        if (u != w) {
          pos[u] = pw;
          vert[pu] = w;
          pos[w] = pu;
          vert[pw] = u;
        }
        ++bin[du];
        --deg[u];
      }
    }
  }
  return deg;
}

CoreView k_core_filter_below_median(const SemanticGraph& g) {
  CoreView view;
  if (g.empty()) {
    view.empty_warning = true;
    return view;
  }
  const auto cores = k_core_decomposition(g);
  std::vector<std::size_t> sorted = cores;
  std::sort(sorted.begin(), sorted.end());
  view.median_core = sorted[(sorted.size() - 1) / 2];
  for (Vertex v = 0; v < g.vertex_count(); ++v)
    if (cores[v] < view.median_core) view.kept.push_back(v);
  view.graph = g.induced(view.kept);
  view.empty_warning = view.kept.empty();
  return view;
}

}  // namespace semnet

#include "semnet/community.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <queue>
#include <random>
#include <unordered_map>

#include "semnet/error.hpp"

namespace semnet {

namespace {

std::int64_t edge_weight(const Neighbor& nb, bool use_weights) {
  return use_weights ? static_cast<std::int64_t>(nb.weight) : 1;
}

std::int64_t edge_weight(const WeightedEdge& e, bool use_weights) {
  return use_weights ? static_cast<std::int64_t>(e.weight) : 1;
}

// Rejection sampling on raw mt19937_64 output; the engine's sequence is fixed
// by the standard, std::uniform_int_distribution is not.
std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t bound) {
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % bound;
  std::uint64_t draw;
  do {
    draw = rng();
  } while (draw >= limit);
  return draw % bound;
}

template <typename T>
void shuffle(std::vector<T>& v, std::mt19937_64& rng) {
  for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[uniform_below(rng, i)]);
}

struct UnionFind {
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(std::size_t keep, std::size_t drop) { parent[find(drop)] = find(keep); }
  std::vector<std::size_t> parent;
};

Partition partition_from_merges(std::size_t n, std::span<const std::pair<std::uint32_t, std::uint32_t>> merges) {
  UnionFind uf(n);
  for (const auto& [keep, drop] : merges) uf.unite(keep, drop);
  std::vector<std::size_t> roots(n);
  for (std::size_t v = 0; v < n; ++v) roots[v] = uf.find(v);
  return Partition::from_labels(roots);
}

void require_edges(const SemanticGraph& g) {
  if (g.edge_count() == 0) throw_data("community detection needs a graph with at least one edge");
}

// Community-level weighted adjacency shared by the two agglomerative methods.
// Tracks 4m * sum(e_c) - sum(d_c^2), which is modularity scaled by 4m^2 and
// stays an exact integer.
class Agglomeration {
 public:
  Agglomeration(const SemanticGraph& g, bool use_weights) : n_(g.vertex_count()) {
    adj_.resize(n_);
    degree_.assign(n_, 0);
    alive_.assign(n_, true);
    version_.assign(n_, 0);
    for (const auto& e : g.edges()) {
      const std::int64_t w = edge_weight(e, use_weights);
      adj_[e.u][e.v] += w;
      adj_[e.v][e.u] += w;
      degree_[e.u] += w;
      degree_[e.v] += w;
      two_m_ += 2 * w;
    }
    for (std::size_t v = 0; v < n_; ++v) q_scaled_ -= degree_[v] * degree_[v];
    best_q_ = q_scaled_;
  }

  std::int64_t two_m() const { return two_m_; }
  std::int64_t degree(std::uint32_t c) const { return degree_[c]; }
  const std::unordered_map<std::uint32_t, std::int64_t>& neighbors(std::uint32_t c) const { return adj_[c]; }
  bool alive(std::uint32_t c) const { return alive_[c]; }
  std::uint32_t version(std::uint32_t c) const { return version_[c]; }

  /// Merges b into a (a survives) and returns the survivor.
  std::uint32_t merge(std::uint32_t a, std::uint32_t b) {
    const std::int64_t w_ab = adj_[a].count(b) ? adj_[a][b] : 0;
    q_scaled_ += 2 * (two_m_ * w_ab - degree_[a] * degree_[b]);
    for (const auto& [k, w] : adj_[b]) {
      if (k == a) continue;
      adj_[a][k] += w;
      adj_[k].erase(b);
      adj_[k][a] += w;
    }
    adj_[a].erase(b);
    adj_[b].clear();
    degree_[a] += degree_[b];
    alive_[b] = false;
    ++version_[a];
    merges_.emplace_back(a, b);
    if (q_scaled_ > best_q_) {
      best_q_ = q_scaled_;
      best_step_ = merges_.size();
    }
    return a;
  }

  Partition best_partition() const {
    return partition_from_merges(n_, std::span(merges_).first(best_step_));
  }

 private:
  std::size_t n_;
  std::vector<std::unordered_map<std::uint32_t, std::int64_t>> adj_;
  std::vector<std::int64_t> degree_;
  std::vector<bool> alive_;
  std::vector<std::uint32_t> version_;
  std::int64_t two_m_ = 0;
  std::int64_t q_scaled_ = 0;
  std::int64_t best_q_ = 0;
  std::size_t best_step_ = 0;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> merges_;
};

// Lazy-deletion heap entry; stale once either side has merged again.
template <typename Key>
struct PairEntry {
  Key key;
  std::uint32_t a, b;
  std::uint32_t va, vb;
};

}  // namespace

std::string_view community_method_name(CommunityMethod m) {
  switch (m) {
    case CommunityMethod::FastGreedy: return "fast_greedy";
    case CommunityMethod::Louvain: return "louvain";
    case CommunityMethod::LabelPropagation: return "label_propagation";
    case CommunityMethod::Walktrap: return "walktrap";
    case CommunityMethod::Optimal: return "optimal";
  }
  return "";
}

std::optional<CommunityMethod> parse_community_method(std::string_view text) {
  std::string key;
  for (char c : text)
    if (c != '_' && c != '-' && c != ' ') key.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  if (key == "fastgreedy" || key == "cnm") return CommunityMethod::FastGreedy;
  if (key == "louvain" || key == "multilevel") return CommunityMethod::Louvain;
  if (key == "labelpropagation" || key == "lpa") return CommunityMethod::LabelPropagation;
  if (key == "walktrap") return CommunityMethod::Walktrap;
  if (key == "optimal") return CommunityMethod::Optimal;
  return std::nullopt;
}

Partition Partition::from_labels(std::span<const std::size_t> labels) {
  Partition p;
  p.assignment.resize(labels.size());
  std::unordered_map<std::size_t, std::uint32_t> dense;
  for (std::size_t v = 0; v < labels.size(); ++v) {
    auto [it, fresh] = dense.emplace(labels[v], static_cast<std::uint32_t>(dense.size()));
    p.assignment[v] = it->second;
  }
  p.community_count = dense.size();
  return p;
}

Partition Partition::single(std::size_t n) {
  Partition p;
  p.assignment.assign(n, 0);
  p.community_count = n == 0 ? 0 : 1;
  return p;
}

std::vector<std::vector<Vertex>> Partition::members() const {
  std::vector<std::vector<Vertex>> out(community_count);
  for (Vertex v = 0; v < assignment.size(); ++v) out.at(assignment[v]).push_back(v);
  return out;
}

double modularity(const SemanticGraph& g, const Partition& p, bool use_weights) {
  if (p.assignment.size() != g.vertex_count()) throw_usage("partition does not cover the graph");
  require_edges(g);
  std::vector<std::int64_t> inside(p.community_count, 0), degree(p.community_count, 0);
  std::int64_t m = 0;
  for (const auto& e : g.edges()) {
    const std::int64_t w = edge_weight(e, use_weights);
    const auto cu = p.assignment[e.u], cv = p.assignment[e.v];
    if (cu >= p.community_count || cv >= p.community_count) throw_usage("community id out of range");
    m += w;
    degree[cu] += w;
    degree[cv] += w;
    if (cu == cv) inside[cu] += w;
  }
  // Scaled by 4m^2 the sum is an integer, so the result does not depend on
  // community order.
  if (m < 1'000'000'000) {
    std::int64_t scaled = 0;
    for (std::size_t c = 0; c < p.community_count; ++c) scaled += 4 * m * inside[c] - degree[c] * degree[c];
    return static_cast<double>(scaled) / (4.0 * static_cast<double>(m) * static_cast<double>(m));
  }
  const double md = static_cast<double>(m);
  double q = 0.0;
  for (std::size_t c = 0; c < p.community_count; ++c) {
    const double share = static_cast<double>(degree[c]) / (2.0 * md);
    q += static_cast<double>(inside[c]) / md - share * share;
  }
  return q;
}

Partition fast_greedy(const SemanticGraph& g, bool use_weights) {
  require_edges(g);
  Agglomeration agg(g, use_weights);
  using Entry = PairEntry<std::int64_t>;
  // Largest gain first; ties go to the lexicographically smallest pair.
  auto worse = [](const Entry& x, const Entry& y) {
    if (x.key != y.key) return x.key < y.key;
    if (x.a != y.a) return x.a > y.a;
    return x.b > y.b;
  };
  std::priority_queue<Entry, std::vector<Entry>, decltype(worse)> heap(worse);
  auto push = [&](std::uint32_t a, std::uint32_t b, std::int64_t w) {
    if (b < a) std::swap(a, b);
    heap.push({agg.two_m() * w - agg.degree(a) * agg.degree(b), a, b, agg.version(a), agg.version(b)});
  };
  for (const auto& e : g.edges()) push(e.u, e.v, edge_weight(e, use_weights));

  while (!heap.empty()) {
    const Entry top = heap.top();
    heap.pop();
    if (!agg.alive(top.a) || !agg.alive(top.b) || agg.version(top.a) != top.va || agg.version(top.b) != top.vb)
      continue;
    const std::uint32_t s = agg.merge(top.a, top.b);
    for (const auto& [k, w] : agg.neighbors(s)) push(s, k, w);
  }
  return agg.best_partition();
}

namespace {

struct LevelGraph {
  std::vector<std::vector<std::pair<std::uint32_t, std::int64_t>>> adj;  // no self entries
  std::vector<std::int64_t> loop;                                        // self-loop weight, counted once
  std::vector<std::int64_t> strength;                                    // loops count twice
};

}  // namespace

Partition louvain(const SemanticGraph& g, std::uint64_t seed, bool use_weights) {
  require_edges(g);
  std::mt19937_64 rng(seed);
  const std::size_t n0 = g.vertex_count();

  LevelGraph level;
  level.adj.resize(n0);
  level.loop.assign(n0, 0);
  level.strength.assign(n0, 0);
  std::int64_t two_m = 0;
  for (Vertex v = 0; v < n0; ++v)
    for (const auto& nb : g.neighbors(v)) {
      const std::int64_t w = edge_weight(nb, use_weights);
      level.adj[v].emplace_back(nb.vertex, w);
      level.strength[v] += w;
      two_m += w;
    }

  std::vector<std::size_t> membership(n0);
  std::iota(membership.begin(), membership.end(), 0);

  while (true) {
    const std::size_t n = level.adj.size();
    std::vector<std::uint32_t> comm(n);
    std::iota(comm.begin(), comm.end(), 0);
    std::vector<std::int64_t> total(level.strength);
    std::vector<std::uint32_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    shuffle(order, rng);

    std::vector<std::int64_t> link(n, 0);
    std::vector<char> listed(n, 0);
    std::vector<std::uint32_t> touched;
    bool any_move = false;
    for (bool moved = true; moved;) {
      moved = false;
      for (std::uint32_t i : order) {
        const std::uint32_t own = comm[i];
        const std::int64_t k = level.strength[i];
        total[own] -= k;
        touched.clear();
        touched.push_back(own);
        listed[own] = 1;
        for (const auto& [j, w] : level.adj[i]) {
          const std::uint32_t c = comm[j];
          if (!listed[c]) {
            listed[c] = 1;
            touched.push_back(c);
          }
          link[c] += w;
        }
        // Gain of joining c, scaled by 2m: 2m * k_i,c - tot_c * k_i.
        std::uint32_t best = own;
        std::int64_t best_gain = two_m * link[own] - total[own] * k;
        for (std::uint32_t c : touched) {
          const std::int64_t gain = two_m * link[c] - total[c] * k;
          if (gain > best_gain) {
            best_gain = gain;
            best = c;
          }
        }
        for (std::uint32_t c : touched) {
          link[c] = 0;
          listed[c] = 0;
        }
        total[best] += k;
        if (best != own) {
          comm[i] = best;
          moved = true;
          any_move = true;
        }
      }
    }
    if (!any_move) break;

    std::vector<std::size_t> raw(comm.begin(), comm.end());
    const Partition dense = Partition::from_labels(raw);
    for (auto& m : membership) m = dense.assignment[m];

    const std::size_t k = dense.community_count;
    LevelGraph next;
    next.adj.resize(k);
    next.loop.assign(k, 0);
    next.strength.assign(k, 0);
    std::vector<std::map<std::uint32_t, std::int64_t>> merged(k);
    for (std::size_t i = 0; i < n; ++i) {
      const std::uint32_t ci = dense.assignment[i];
      next.loop[ci] += level.loop[i];
      next.strength[ci] += level.strength[i];
      for (const auto& [j, w] : level.adj[i]) {
        const std::uint32_t cj = dense.assignment[j];
        if (ci == cj) {
          if (i < j) next.loop[ci] += w;
        } else {
          merged[ci][cj] += w;
        }
      }
    }
    for (std::size_t c = 0; c < k; ++c) next.adj[c].assign(merged[c].begin(), merged[c].end());
    level = std::move(next);
    if (k == n) break;
  }
  return Partition::from_labels(membership);
}

Partition label_propagation(const SemanticGraph& g, std::uint64_t seed, bool use_weights) {
  require_edges(g);
  constexpr std::size_t kMaxSweeps = 1000;
  std::mt19937_64 rng(seed);
  const std::size_t n = g.vertex_count();
  std::vector<std::size_t> label(n);
  std::iota(label.begin(), label.end(), 0);
  std::vector<Vertex> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::vector<std::int64_t> score(n, 0);
  std::vector<std::size_t> seen, best;

  // Labels carried by the heaviest share of v's neighborhood, sorted.
  auto dominant = [&](Vertex v) {
    seen.clear();
    for (const auto& nb : g.neighbors(v)) {
      const std::size_t l = label[nb.vertex];
      if (score[l] == 0) seen.push_back(l);
      score[l] += edge_weight(nb, use_weights);
    }
    std::int64_t top = 0;
    for (std::size_t l : seen) top = std::max(top, score[l]);
    best.clear();
    for (std::size_t l : seen)
      if (score[l] == top) best.push_back(l);
    for (std::size_t l : seen) score[l] = 0;
    std::sort(best.begin(), best.end());
  };

  // Ties are redrawn on every visit, the current label included; the run ends
  // once every vertex holds one of its dominant labels.
  for (std::size_t sweep = 0; sweep < kMaxSweeps; ++sweep) {
    shuffle(order, rng);
    for (Vertex v : order) {
      if (g.degree(v) == 0) continue;
      dominant(v);
      label[v] = best[best.size() == 1 ? 0 : uniform_below(rng, best.size())];
    }
    bool stable = true;
    for (Vertex v = 0; v < n && stable; ++v) {
      if (g.degree(v) == 0) continue;
      dominant(v);
      stable = std::binary_search(best.begin(), best.end(), label[v]);
    }
    if (stable) break;
  }
  return Partition::from_labels(label);
}

Partition walktrap(const SemanticGraph& g, std::size_t steps, bool use_weights) {
  require_edges(g);
  const std::size_t n = g.vertex_count();
  if (n > kWalktrapMaxVertices)
    throw_usage("walktrap is limited to " + std::to_string(kWalktrapMaxVertices) + " vertices");
  if (steps == 0) throw_usage("walktrap needs at least one step");

  // Every vertex gets a loop weighted like its average edge, which keeps the
  // walk aperiodic.
  std::vector<double> loop(n, 1.0), strength(n, 0.0);
  for (Vertex v = 0; v < n; ++v) {
    double s = 0.0;
    for (const auto& nb : g.neighbors(v)) s += static_cast<double>(edge_weight(nb, use_weights));
    if (g.degree(v) > 0) loop[v] = s / static_cast<double>(g.degree(v));
    strength[v] = s + loop[v];
  }

  std::vector<std::vector<double>> prob(n, std::vector<double>(n, 0.0));
  std::vector<double> cur(n), nxt(n);
  for (Vertex s = 0; s < n; ++s) {
    std::fill(cur.begin(), cur.end(), 0.0);
    cur[s] = 1.0;
    for (std::size_t t = 0; t < steps; ++t) {
      std::fill(nxt.begin(), nxt.end(), 0.0);
      for (Vertex u = 0; u < n; ++u) {
        if (cur[u] == 0.0) continue;
        const double out = cur[u] / strength[u];
        nxt[u] += out * loop[u];
        for (const auto& nb : g.neighbors(u)) nxt[nb.vertex] += out * static_cast<double>(edge_weight(nb, use_weights));
      }
      cur.swap(nxt);
    }
    prob[s] = cur;
  }

  std::vector<double> size(n, 1.0);
  auto distance = [&](std::uint32_t a, std::uint32_t b) {
    double acc = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      const double d = prob[a][k] - prob[b][k];
      acc += d * d / strength[k];
    }
    return size[a] * size[b] / (size[a] + size[b]) * acc / static_cast<double>(n);
  };

  Agglomeration agg(g, use_weights);
  using Entry = PairEntry<double>;
  auto worse = [](const Entry& x, const Entry& y) {
    if (x.key != y.key) return x.key > y.key;
    if (x.a != y.a) return x.a > y.a;
    return x.b > y.b;
  };
  std::priority_queue<Entry, std::vector<Entry>, decltype(worse)> heap(worse);
  auto push = [&](std::uint32_t a, std::uint32_t b) {
    if (b < a) std::swap(a, b);
    heap.push({distance(a, b), a, b, agg.version(a), agg.version(b)});
  };
  for (const auto& e : g.edges()) push(e.u, e.v);

  while (!heap.empty()) {
    const Entry top = heap.top();
    heap.pop();
    if (!agg.alive(top.a) || !agg.alive(top.b) || agg.version(top.a) != top.va || agg.version(top.b) != top.vb)
      continue;
    const double total = size[top.a] + size[top.b];
    for (std::size_t k = 0; k < n; ++k)
      prob[top.a][k] = (size[top.a] * prob[top.a][k] + size[top.b] * prob[top.b][k]) / total;
    size[top.a] = total;
    std::vector<double>().swap(prob[top.b]);
    const std::uint32_t s = agg.merge(top.a, top.b);
    for (const auto& kv : agg.neighbors(s)) push(s, kv.first);
  }
  return agg.best_partition();
}

Partition optimal_partition(const SemanticGraph& g, bool use_weights) {
  require_edges(g);
  const std::size_t n = g.vertex_count();
  if (n > kOptimalMaxVertices)
    throw_usage("exhaustive modularity search is limited to " + std::to_string(kOptimalMaxVertices) + " vertices");

  std::array<std::array<std::int64_t, kOptimalMaxVertices>, kOptimalMaxVertices> w{};
  std::vector<std::int64_t> degree(n, 0);
  std::int64_t two_m = 0;
  for (const auto& e : g.edges()) {
    const std::int64_t x = edge_weight(e, use_weights);
    w[e.u][e.v] = w[e.v][e.u] = x;
    degree[e.u] += x;
    degree[e.v] += x;
    two_m += 2 * x;
  }

  // Restricted growth strings enumerate each set partition once; the score is
  // modularity scaled by 4m^2 so comparisons are exact.
  std::vector<std::size_t> current(n, 0), best(n, 0);
  std::vector<std::int64_t> inside(n, 0), dsum(n, 0);
  std::int64_t best_score = std::numeric_limits<std::int64_t>::min();
  auto recurse = [&](auto&& self, std::size_t v, std::size_t k) -> void {
    if (v == n) {
      std::int64_t score = 0;
      for (std::size_t c = 0; c < k; ++c) score += 2 * two_m * inside[c] - dsum[c] * dsum[c];
      if (score > best_score) {
        best_score = score;
        best = current;
      }
      return;
    }
    for (std::size_t c = 0; c <= k && c < n; ++c) {
      std::int64_t gained = 0;
      for (std::size_t u = 0; u < v; ++u)
        if (current[u] == c) gained += w[u][v];
      current[v] = c;
      inside[c] += gained;
      dsum[c] += degree[v];
      self(self, v + 1, c == k ? k + 1 : k);
      inside[c] -= gained;
      dsum[c] -= degree[v];
    }
  };
  recurse(recurse, 0, 0);
  return Partition::from_labels(best);
}

Detection detect_communities(const SemanticGraph& g, const DetectOptions& options) {
  require_edges(g);
  if (options.methods.empty()) throw_usage("no community detection method selected");
  std::vector<CommunityMethod> methods = options.methods;
  std::sort(methods.begin(), methods.end());
  methods.erase(std::unique(methods.begin(), methods.end()), methods.end());

  Detection out;
  for (CommunityMethod m : methods) {
    CommunityResult r;
    r.method = m;
    switch (m) {
      case CommunityMethod::FastGreedy: r.partition = fast_greedy(g, options.use_weights); break;
      case CommunityMethod::Louvain: r.partition = louvain(g, options.seed, options.use_weights); break;
      case CommunityMethod::LabelPropagation:
        r.partition = label_propagation(g, options.seed ^ 0x9e3779b97f4a7c15ULL, options.use_weights);
        break;
      case CommunityMethod::Walktrap: r.partition = walktrap(g, 4, options.use_weights); break;
      case CommunityMethod::Optimal: r.partition = optimal_partition(g, options.use_weights); break;
    }
    r.modularity = modularity(g, r.partition, options.use_weights);
    out.results.push_back(std::move(r));
  }
  std::size_t best = 0;
  for (std::size_t i = 1; i < out.results.size(); ++i)
    if (out.results[i].modularity > out.results[best].modularity) best = i;
  out.best = out.results[best];
  return out;
}

std::vector<std::vector<Vertex>> community_top_terms(const SemanticGraph& g, const Partition& p,
                                                     std::span<const double> centrality, std::size_t n) {
  if (centrality.size() != g.vertex_count() || p.assignment.size() != g.vertex_count())
    throw_usage("centrality and partition must cover the graph");
  auto groups = p.members();
  for (auto& members : groups) {
    std::sort(members.begin(), members.end(), [&](Vertex a, Vertex b) {
      if (centrality[a] != centrality[b]) return centrality[a] > centrality[b];
      return g.label(a) < g.label(b);
    });
    if (members.size() > n) members.resize(n);
  }
  return groups;
}

double adjusted_rand_index(std::span<const std::uint32_t> a, std::span<const std::uint32_t> b) {
  if (a.size() != b.size()) throw_usage("partitions differ in length");
  const std::size_t n = a.size();
  if (n < 2) return 1.0;
  std::map<std::pair<std::uint32_t, std::uint32_t>, std::size_t> joint;
  std::map<std::uint32_t, std::size_t> rows, cols;
  for (std::size_t i = 0; i < n; ++i) {
    ++joint[{a[i], b[i]}];
    ++rows[a[i]];
    ++cols[b[i]];
  }
  auto pairs = [](std::size_t x) { return static_cast<double>(x) * static_cast<double>(x - (x > 0 ? 1 : 0)) / 2.0; };
  double index = 0.0, sum_a = 0.0, sum_b = 0.0;
  for (const auto& kv : joint) index += pairs(kv.second);
  for (const auto& kv : rows) sum_a += pairs(kv.second);
  for (const auto& kv : cols) sum_b += pairs(kv.second);
  const double expected = sum_a * sum_b / pairs(n);
  const double maximum = (sum_a + sum_b) / 2.0;
  if (maximum == expected) return index == expected ? 1.0 : 0.0;
  return (index - expected) / (maximum - expected);
}

}  // namespace semnet

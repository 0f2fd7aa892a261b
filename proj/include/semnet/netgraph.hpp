#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "semnet/ngram.hpp"

namespace semnet {

using Vertex = std::uint32_t;

struct WeightedEdge {
  Vertex u = 0;
  Vertex v = 0;
  std::uint64_t weight = 1;

  bool operator==(const WeightedEdge&) const = default;
};

struct Neighbor {
  Vertex vertex = 0;
  std::uint64_t weight = 1;
};

// Undirected, simple, positively weighted word graph. Immutable once built.
class SemanticGraph {
 public:
  SemanticGraph() = default;

  /// Rejects self-loops, duplicate edges, zero weights and out-of-range endpoints.
  SemanticGraph(std::vector<std::string> labels, std::vector<WeightedEdge> edges);

  std::size_t vertex_count() const noexcept { return labels_.size(); }
  std::size_t edge_count() const noexcept { return edges_.size(); }
  bool empty() const noexcept { return labels_.empty(); }

  const std::string& label(Vertex v) const { return labels_.at(v); }
  const std::vector<std::string>& labels() const noexcept { return labels_; }
  std::optional<Vertex> find(std::string_view label) const;

  /// Edges with u < v, sorted by (u, v).
  const std::vector<WeightedEdge>& edges() const noexcept { return edges_; }
  /// Neighbors sorted by vertex id.
  std::span<const Neighbor> neighbors(Vertex v) const;
  std::size_t degree(Vertex v) const { return neighbors(v).size(); }
  std::uint64_t strength(Vertex v) const;
  std::uint64_t total_weight() const noexcept { return total_weight_; }
  bool adjacent(Vertex a, Vertex b) const;

  /// Subgraph on `keep`, relabelled 0.. in the order given.
  SemanticGraph induced(std::span<const Vertex> keep) const;

 private:
  std::vector<std::string> labels_;
  std::vector<WeightedEdge> edges_;
  std::vector<std::size_t> offsets_;
  std::vector<Neighbor> adjacency_;
  std::unordered_map<std::string, Vertex> index_;
  std::uint64_t total_weight_ = 0;
};

/// One vertex per distinct lemma (lexicographic ids), one edge per pair.
SemanticGraph build_graph(const PairCounts& pc);

std::vector<std::vector<Vertex>> connected_components(const SemanticGraph& g);

/// Largest component; among equal sizes, the one holding the lowest vertex id.
SemanticGraph giant_component(const SemanticGraph& g);

struct NetworkSummary {
  std::size_t vertices = 0;
  std::size_t edges = 0;
  double mean_distance = 0.0;
  double mean_degree = 0.0;
  double degree_sd = 0.0;
  std::size_t clique_number = 0;
  double density = 0.0;
  double transitivity = 0.0;
  std::optional<double> assortativity;
};

/// Unweighted shortest-path length averaged over connected unordered pairs.
double mean_distance(const SemanticGraph& g);
double density(const SemanticGraph& g);
/// 3 * triangles / connected triples; 0 when there are no triples.
double transitivity(const SemanticGraph& g);
/// Degree correlation over edge endpoints; absent when undefined.
std::optional<double> degree_assortativity(const SemanticGraph& g);
std::size_t clique_number(const SemanticGraph& g);
/// All measures unweighted. Degree sd uses the n - 1 denominator.
NetworkSummary network_summary(const SemanticGraph& g);

struct EigenOptions {
  bool use_weights = false;
  double tolerance = 1e-10;
  std::size_t max_iter = 1000000;
};

/// Dominant adjacency eigenvector, absolute values, scaled to max 1.
/// Iterates on A + I, which shares A's eigenvectors and does not oscillate on
/// bipartite graphs. Throws a numeric error when it fails to converge.
std::vector<double> eigenvector_centrality(const SemanticGraph& g, const EigenOptions& options = {});

/// Unweighted shortest-path betweenness, each unordered pair counted once.
std::vector<double> betweenness_centrality(const SemanticGraph& g);

std::vector<std::size_t> k_core_decomposition(const SemanticGraph& g);

struct CoreView {
  SemanticGraph graph;
  std::vector<Vertex> kept;  // ids in the input graph
  std::size_t median_core = 0;
  bool empty_warning = false;
};

/// Keeps vertices whose core number is below the lower median core number.
CoreView k_core_filter_below_median(const SemanticGraph& g);

}  // namespace semnet

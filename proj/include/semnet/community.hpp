#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "semnet/netgraph.hpp"

namespace semnet {

// Listed in tie-break order: on equal modularity the earlier method wins.
enum class CommunityMethod { FastGreedy, Louvain, LabelPropagation, Walktrap, Optimal };

std::string_view community_method_name(CommunityMethod m);
std::optional<CommunityMethod> parse_community_method(std::string_view text);

struct Partition {
  std::vector<std::uint32_t> assignment;  // vertex -> community, ids dense from 0
  std::size_t community_count = 0;

  /// Relabels arbitrary ids densely in order of first appearance.
  static Partition from_labels(std::span<const std::size_t> labels);
  static Partition single(std::size_t n);
  std::vector<std::vector<Vertex>> members() const;

  bool operator==(const Partition&) const = default;
};

/// Newman modularity with the i = j terms. Throws a data error when the graph
/// has no edges.
double modularity(const SemanticGraph& g, const Partition& p, bool use_weights = true);

/// Clauset-Newman-Moore agglomeration run to a single community per
/// component; the cut with the highest modularity along the way is returned.
Partition fast_greedy(const SemanticGraph& g, bool use_weights = true);
Partition louvain(const SemanticGraph& g, std::uint64_t seed, bool use_weights = true);
Partition label_propagation(const SemanticGraph& g, std::uint64_t seed, bool use_weights = true);

inline constexpr std::size_t kWalktrapMaxVertices = 2000;
/// Pons-Latapy random-walk distance agglomeration with walks of `steps`.
Partition walktrap(const SemanticGraph& g, std::size_t steps = 4, bool use_weights = true);

inline constexpr std::size_t kOptimalMaxVertices = 12;
/// Exhaustive search over every set partition. Small graphs only.
Partition optimal_partition(const SemanticGraph& g, bool use_weights = true);

struct CommunityResult {
  CommunityMethod method = CommunityMethod::FastGreedy;
  Partition partition;
  double modularity = 0.0;
};

struct DetectOptions {
  std::vector<CommunityMethod> methods = {CommunityMethod::FastGreedy, CommunityMethod::Louvain,
                                          CommunityMethod::LabelPropagation};
  bool use_weights = true;
  std::uint64_t seed = 1;
};

struct Detection {
  CommunityResult best;
  std::vector<CommunityResult> results;  // in method order
};

Detection detect_communities(const SemanticGraph& g, const DetectOptions& options = {});

/// Per community, up to n vertices by centrality descending, ties by label.
std::vector<std::vector<Vertex>> community_top_terms(const SemanticGraph& g, const Partition& p,
                                                     std::span<const double> centrality, std::size_t n);

/// Hubert-Arabie adjusted Rand index. Two identical trivial partitions score 1.
double adjusted_rand_index(std::span<const std::uint32_t> a, std::span<const std::uint32_t> b);

}  // namespace semnet

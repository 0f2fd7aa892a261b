#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace semnet {

enum class PairMode { Bigram, Skipgram };
// StopwordsFirst drops stopwords and then pairs; PairsFirst pairs the full
// sequence and then discards any pair touching a stopword.
enum class PairOrder { StopwordsFirst, PairsFirst };

std::string_view pair_mode_name(PairMode m);
std::string_view pair_order_name(PairOrder o);

// Unordered word-pair multiset; keys are stored with first <= second.
class PairCounts {
 public:
  using Key = std::pair<std::string, std::string>;

  PairCounts() = default;
  PairCounts(PairMode mode, std::size_t max_skip, bool allow_self_pairs = false);

  PairMode mode() const noexcept { return mode_; }
  std::size_t max_skip() const noexcept { return max_skip_; }
  bool allow_self_pairs() const noexcept { return allow_self_pairs_; }

  /// Canonicalizes (a, b); self pairs are ignored unless allowed.
  void add(std::string_view a, std::string_view b, std::uint64_t n = 1);
  void merge(const PairCounts& other);

  std::uint64_t count(std::string_view a, std::string_view b) const;
  const std::map<Key, std::uint64_t>& counts() const noexcept { return counts_; }
  std::size_t size() const noexcept { return counts_.size(); }
  bool empty() const noexcept { return counts_.empty(); }
  std::uint64_t total() const;
  std::uint64_t max_count() const;

  bool operator==(const PairCounts&) const = default;

 private:
  PairMode mode_ = PairMode::Bigram;
  std::size_t max_skip_ = 0;
  bool allow_self_pairs_ = false;
  std::map<Key, std::uint64_t> counts_;
};

/// Pairs (w_i, w_j) with 1 <= j - i <= max_skip + 1 inside one sequence.
/// Bigram mode requires max_skip == 0.
PairCounts extract_pairs(std::span<const std::string> lemmas, PairMode mode, std::size_t max_skip,
                         bool allow_self_pairs = false);

/// Adds one document's pairs to an accumulator; pairs never cross calls.
void accumulate_pairs(PairCounts& into, std::span<const std::string> lemmas);

/// Pair-then-drop variant: `is_stopword[i]` flags positions to exclude after pairing.
void accumulate_pairs_then_drop(PairCounts& into, std::span<const std::string> lemmas,
                                std::span<const bool> is_stopword);

struct ThresholdPoint {
  std::uint64_t v = 0;
  double skew = 0.0;
  std::size_t surviving_pairs = 0;
};

struct ThresholdScan {
  std::vector<ThresholdPoint> points;
  std::uint64_t chosen_v = 1;
  bool degenerate = false;  // fewer than 3 distinct counts at v = 1
  bool stabilized = true;   // false when the argmin fallback picked chosen_v
  double epsilon = 0.05;
  std::size_t window = 3;
};

/// Skewness of the surviving counts for v = 1, 2, ... while at least three
/// distinct counts survive. chosen_v is the first v whose next `window`
/// successive skew changes all stay within epsilon * |skew(1)|; failing that,
/// the v with the smallest worst change in its window.
ThresholdScan threshold_scan(const PairCounts& pc, double epsilon = 0.05, std::size_t window = 3);

PairCounts apply_threshold(const PairCounts& pc, std::uint64_t v);

/// `word1,word2,count`, count descending then lexicographic.
void write_pairs_csv(const PairCounts& pc, std::ostream& out);

}  // namespace semnet

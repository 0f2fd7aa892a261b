#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "semnet/textprep.hpp"

namespace semnet {

// AFINN-style table: lemma -> integer score in [-5, 5], never 0.
class ValenceLexicon {
 public:
  /// TSV `lemma<TAB>integer`.
  static ValenceLexicon load(const std::filesystem::path& path, NormalizeOptions options = {});

  void add(std::string_view lemma, int score);
  std::optional<int> lookup(std::string_view lemma) const;
  std::size_t size() const noexcept { return entries_.size(); }

 private:
  std::unordered_map<std::string, int> entries_;
};

// Binary polarity word lists used for lemmas the valence table misses.
class PolarityLexicon {
 public:
  static PolarityLexicon load(const std::filesystem::path& positive, const std::filesystem::path& negative,
                              NormalizeOptions options = {});

  void add_positive(std::string_view lemma);
  void add_negative(std::string_view lemma);
  /// +1, -1, or 0 when the lemma is in neither list.
  int polarity(std::string_view lemma) const;
  std::size_t size() const noexcept { return positive_.size() + negative_.size(); }

 private:
  std::unordered_set<std::string> positive_;
  std::unordered_set<std::string> negative_;
};

struct ScoredLemma {
  std::string lemma;
  int score = 0;

  bool operator==(const ScoredLemma&) const = default;
};

/// Valence first, then the fallback lists at +/- fallback_weight; anything else is dropped.
std::vector<ScoredLemma> score_tokens(const LemmaSequence& seq, const ValenceLexicon& valence,
                                      const PolarityLexicon* fallback, int fallback_weight = 1);

struct SentimentSummary {
  std::string doc_id;
  std::optional<double> mean_pos;  // absent when n_pos == 0
  std::optional<double> mean_neg;  // magnitude; absent when n_neg == 0
  double prop_pos = 0.0;
  double prop_neg = 0.0;
  std::size_t n_pos = 0;
  std::size_t n_neg = 0;
  // Integer score totals, so means are exactly sum / n.
  std::int64_t sum_pos = 0;
  std::int64_t sum_neg = 0;

  bool scored() const noexcept { return n_pos + n_neg > 0; }
};

SentimentSummary summarize_document(std::span<const int> scores, std::string doc_id);
SentimentSummary summarize_document(std::span<const ScoredLemma> scores, std::string doc_id);

// Corpus-level aggregates. Document-weighted figures average the per-document
// means over documents where they are defined; pooled figures treat all hits
// of the corpus as one bag.
struct CorpusSentiment {
  std::size_t documents = 0;
  std::size_t scored_documents = 0;
  std::optional<double> mean_of_mean_pos;
  std::optional<double> mean_of_mean_neg;
  std::optional<double> median_of_mean_pos;
  std::optional<double> median_of_mean_neg;
  std::optional<double> mean_prop_pos;
  std::optional<double> mean_prop_neg;
  std::optional<double> pooled_mean_pos;
  std::optional<double> pooled_mean_neg;
  std::optional<double> pooled_prop_pos;
};

CorpusSentiment aggregate_sentiment(std::span<const SentimentSummary> summaries);

struct FrequencyEntry {
  std::string lemma;
  std::size_t count = 0;

  bool operator==(const FrequencyEntry&) const = default;
};

/// Descending count, ties by lemma. An empty filter keeps every UPOS.
std::vector<FrequencyEntry> frequency_table(std::span<const LemmaSequence> sequences,
                                            const std::optional<std::set<Upos>>& upos_filter, std::size_t top_n);

}  // namespace semnet

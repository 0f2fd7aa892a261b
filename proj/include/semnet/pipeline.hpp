#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "semnet/cascade.hpp"
#include "semnet/community.hpp"
#include "semnet/corpus.hpp"
#include "semnet/netgraph.hpp"
#include "semnet/ngram.hpp"
#include "semnet/sentiment.hpp"
#include "semnet/textprep.hpp"

namespace semnet {

struct AnalysisConfig {
  std::string corpus;
  // Unset lexicon paths are looked up in data_dir under their default names;
  // with neither set the lexicon is empty.
  std::string data_dir;
  std::string lemmas;
  std::string valence;
  std::string positive;
  std::string negative;
  std::string stopwords;

  std::vector<PairMode> modes = {PairMode::Bigram, PairMode::Skipgram};
  std::size_t max_skip = 2;
  PairOrder order = PairOrder::StopwordsFirst;
  bool self_pairs = false;
  std::optional<std::uint64_t> threshold;  // unset: skewness scan
  double epsilon = 0.05;
  std::size_t window = 3;
  std::size_t min_vertices = 30;

  double alpha = 0.05;
  int fallback_weight = 1;
  bool fold_diacritics = false;
  std::size_t min_docs = 3;

  std::vector<CommunityMethod> methods = {CommunityMethod::FastGreedy, CommunityMethod::Louvain,
                                          CommunityMethod::LabelPropagation};
  bool modularity_weights = true;
  bool eigen_weights = false;
  std::uint64_t seed = 1;
  std::size_t top_terms = 10;
  std::size_t top_frequencies = 25;

  bool sentiment = true;
  bool network = true;
  std::vector<std::string> scopes;  // empty: every scope
  std::string out = "semnet-out";
  std::size_t threads = 0;  // 0: hardware concurrency

  /// Applies one `key = value` setting; unknown keys and bad values are usage errors.
  void set(std::string_view key, std::string_view value);
  /// INI-style file: `key = value` lines, `#`/`;` comments, `[section]` headers
  /// ignored. Relative paths resolve against the file's directory.
  static AnalysisConfig from_file(const std::filesystem::path& path);
  void validate() const;
};

struct Scope {
  std::optional<Subcase> subcase;  // nullopt: General
  std::optional<Role> role;        // nullopt: All

  std::string name() const;  // "General/All", "Costa Caribe/Victims"
  std::string slug() const;  // "general_all", "costa_caribe_victims"
  bool operator==(const Scope&) const = default;
};

/// General then the six regions, each as All, Appearers, Victims.
std::vector<Scope> all_scopes();
std::optional<Scope> parse_scope(std::string_view text);

struct Resources {
  LemmaLexicon lemmas;
  Stoplist stopwords;
  ValenceLexicon valence;
  PolarityLexicon polarity;
  std::map<std::string, std::string> sources;  // lexicon name -> path as configured
};

Resources load_resources(const AnalysisConfig& config);

// One document after preprocessing. `filtered` has stopwords removed before
// lemmatization; `full` and `stop_mask` keep every token for the pairs-first order.
struct PreparedDocument {
  const Document* document = nullptr;
  LemmaSequence filtered;
  std::vector<ScoredLemma> scores;
  std::vector<std::string> full;
  std::vector<bool> stop_mask;
  LemmatizeStats stats;
};

std::vector<PreparedDocument> prepare_documents(const Corpus& corpus, const Resources& resources,
                                                const AnalysisConfig& config);

struct CommunitySection {
  Detection detection;
  std::vector<std::string> skipped_methods;
  std::vector<std::vector<Vertex>> top_terms;
  std::uint64_t seed = 0;
};

struct NetworkSection {
  PairMode mode = PairMode::Bigram;
  std::size_t max_skip = 0;
  std::size_t distinct_pairs = 0;
  std::uint64_t pair_total = 0;
  std::optional<ThresholdScan> scan;
  std::uint64_t threshold = 1;
  std::optional<std::uint64_t> relaxed_from;
  std::size_t thresholded_vertices = 0;
  std::size_t thresholded_edges = 0;
  std::size_t components = 0;
  std::optional<SemanticGraph> graph;  // giant component
  NetworkSummary summary;
  std::vector<double> eigen;
  std::vector<double> betweenness;
  std::vector<std::size_t> cores;
  std::size_t median_core = 0;
  std::vector<Vertex> core_view;
  std::optional<CommunitySection> communities;
  std::vector<std::string> notes;
  std::optional<PairCounts> pairs;  // full counts, kept only on request
};

struct SentimentSection {
  std::vector<SentimentSummary> documents;  // scored and unscored
  CorpusSentiment aggregate;
  std::optional<stats::CascadeDecision> magnitude;
  std::optional<stats::CascadeDecision> proportion;
  std::vector<std::string> notes;
};

struct ScopeReport {
  Scope scope;
  bool skipped = false;
  std::string skip_reason;
  std::uint64_t seed = 0;
  std::vector<std::string> document_ids;
  std::size_t empty_documents = 0;
  LemmatizeStats lemmatization;
  std::optional<SentimentSection> sentiment;
  std::map<std::string, std::vector<FrequencyEntry>> frequencies;  // "all", "noun", "verb", "adj"
  std::vector<NetworkSection> networks;
};

struct ReportBundle {
  AnalysisConfig config;
  std::map<std::string, std::string> lexicons;
  std::size_t corpus_documents = 0;
  std::vector<EligibilityCell> eligibility;
  std::vector<ScopeReport> scopes;
};

/// Deterministic per-scope seed derived from the run seed and the scope name.
std::uint64_t scope_seed(std::uint64_t seed, std::string_view scope_name);

/// Runs one scope end to end. `prepared` must come from the same corpus and
/// config; pass keep_pairs to retain the untrimmed pair counts.
ScopeReport run_scope(const AnalysisConfig& config, const Corpus& corpus, std::span<const PreparedDocument> prepared,
                      const Scope& scope, bool keep_pairs = false);

/// Loads everything named by the config and runs every selected scope.
ReportBundle run_all(const AnalysisConfig& config, bool keep_pairs = false);
ReportBundle run_all(const AnalysisConfig& config, const Corpus& corpus, const Resources& resources,
                     bool keep_pairs = false);

}  // namespace semnet

#include "semnet/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <charconv>
#include <exception>
#include <fstream>
#include <memory>
#include <set>
#include <thread>
#include <unordered_set>

#include "semnet/error.hpp"

namespace semnet {

namespace fs = std::filesystem;

namespace {

std::string lower(std::string_view s) {
  std::string out(s);
  for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

template <typename T>
T parse_number(std::string_view key, std::string_view value) {
  T out{};
  const auto* end = value.data() + value.size();
  auto [ptr, ec] = std::from_chars(value.data(), end, out);
  if (ec != std::errc() || ptr != end) throw_usage(std::string(key) + ": not a valid number: \"" + std::string(value) + "\"");
  return out;
}

double parse_real(std::string_view key, std::string_view value) {
  std::string s(value);
  char* end = nullptr;
  const double out = std::strtod(s.c_str(), &end);
  if (s.empty() || end != s.c_str() + s.size()) throw_usage(std::string(key) + ": not a valid number: \"" + s + "\"");
  return out;
}

bool parse_bool(std::string_view key, std::string_view value) {
  const std::string v = lower(value);
  if (v == "true" || v == "yes" || v == "on" || v == "1") return true;
  if (v == "false" || v == "no" || v == "off" || v == "0") return false;
  throw_usage(std::string(key) + ": expected true or false, got \"" + std::string(value) + "\"");
}

std::vector<std::string_view> split_list(std::string_view value) {
  std::vector<std::string_view> out;
  while (!value.empty()) {
    const auto comma = value.find(',');
    const auto item = trim(value.substr(0, comma));
    if (!item.empty()) out.push_back(item);
    if (comma == std::string_view::npos) break;
    value.remove_prefix(comma + 1);
  }
  return out;
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

bool in_scope(const Document& d, const Scope& scope) {
  if (scope.subcase && d.subcase != *scope.subcase) return false;
  if (scope.role && d.role != *scope.role) return false;
  return true;
}

// Largest threshold whose surviving pairs still span at least `min_vertices`
// words; 1 when even the full pair set falls short.
std::uint64_t relaxed_threshold(const PairCounts& pc, std::size_t min_vertices) {
  std::vector<const std::pair<const PairCounts::Key, std::uint64_t>*> rows;
  for (const auto& kv : pc.counts()) rows.push_back(&kv);
  std::stable_sort(rows.begin(), rows.end(), [](auto* a, auto* b) { return a->second > b->second; });
  std::unordered_set<std::string_view> words;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    words.insert(rows[i]->first.first);
    words.insert(rows[i]->first.second);
    const bool last_of_value = i + 1 == rows.size() || rows[i + 1]->second != rows[i]->second;
    if (last_of_value && words.size() >= min_vertices) return rows[i]->second;
  }
  return 1;
}

std::size_t vertices_at(const PairCounts& pc, std::uint64_t v) {
  std::unordered_set<std::string_view> words;
  for (const auto& [key, n] : pc.counts())
    if (n >= v) {
      words.insert(key.first);
      words.insert(key.second);
    }
  return words.size();
}

NetworkSection run_network(const AnalysisConfig& config, std::span<const PreparedDocument* const> docs, PairMode mode,
                           std::uint64_t seed, bool keep_pairs) {
  NetworkSection net;
  net.mode = mode;
  net.max_skip = mode == PairMode::Bigram ? 0 : config.max_skip;

  PairCounts pc(mode, net.max_skip, config.self_pairs);
  for (const auto* d : docs) {
    if (config.order == PairOrder::StopwordsFirst) {
      std::vector<std::string> lemmas;
      lemmas.reserve(d->filtered.items.size());
      for (const auto& item : d->filtered.items) lemmas.push_back(item.lemma);
      accumulate_pairs(pc, lemmas);
    } else {
      // vector<bool> has no contiguous storage to view as a span.
      std::unique_ptr<bool[]> mask(new bool[d->stop_mask.size()]);
      std::copy(d->stop_mask.begin(), d->stop_mask.end(), mask.get());
      accumulate_pairs_then_drop(pc, d->full, std::span<const bool>(mask.get(), d->stop_mask.size()));
    }
  }
  net.distinct_pairs = pc.size();
  net.pair_total = pc.total();
  if (keep_pairs) net.pairs = pc;
  if (pc.empty()) {
    net.notes.push_back("no word pairs in scope");
    return net;
  }

  if (config.threshold) {
    net.threshold = *config.threshold;
  } else {
    net.scan = threshold_scan(pc, config.epsilon, config.window);
    net.threshold = net.scan->chosen_v;
    if (vertices_at(pc, net.threshold) < config.min_vertices) {
      const std::uint64_t relaxed = relaxed_threshold(pc, config.min_vertices);
      if (relaxed < net.threshold) {
        net.relaxed_from = net.threshold;
        net.threshold = relaxed;
      }
    }
  }

  const SemanticGraph full = build_graph(apply_threshold(pc, net.threshold));
  net.thresholded_vertices = full.vertex_count();
  net.thresholded_edges = full.edge_count();
  net.components = connected_components(full).size();
  SemanticGraph g = giant_component(full);
  if (g.edge_count() == 0) {
    net.notes.push_back("no edges survive the threshold");
    return net;
  }

  net.summary = network_summary(g);
  try {
    EigenOptions eo;
    eo.use_weights = config.eigen_weights;
    net.eigen = eigenvector_centrality(g, eo);
  } catch (const Error& e) {
    net.notes.push_back(e.what());
    net.eigen.assign(g.vertex_count(), 0.0);
  }
  net.betweenness = betweenness_centrality(g);
  net.cores = k_core_decomposition(g);
  const CoreView view = k_core_filter_below_median(g);
  net.median_core = view.median_core;
  net.core_view = view.kept;
  if (view.empty_warning) net.notes.push_back("k-core view is empty: no vertex lies below the median core number");

  CommunitySection cs;
  cs.seed = seed;
  DetectOptions opt;
  opt.use_weights = config.modularity_weights;
  opt.seed = seed;
  for (CommunityMethod m : config.methods) {
    const bool too_big = (m == CommunityMethod::Walktrap && g.vertex_count() > kWalktrapMaxVertices) ||
                         (m == CommunityMethod::Optimal && g.vertex_count() > kOptimalMaxVertices);
    if (too_big)
      cs.skipped_methods.emplace_back(community_method_name(m));
    else
      opt.methods.push_back(m);
  }
  if (opt.methods.empty()) {
    net.notes.push_back("every selected community method is unavailable for a graph of this size");
  } else {
    cs.detection = detect_communities(g, opt);
    cs.top_terms = community_top_terms(g, cs.detection.best.partition, net.eigen, config.top_terms);
    net.communities = std::move(cs);
  }
  net.graph = std::move(g);
  return net;
}

}  // namespace

void AnalysisConfig::set(std::string_view raw_key, std::string_view raw_value) {
  const std::string key = lower(trim(raw_key));
  std::string_view value = trim(raw_value);
  if (value.size() >= 2 && (value.front() == '"' || value.front() == '\'') && value.back() == value.front())
    value = value.substr(1, value.size() - 2);
  std::string normalized_key = key;
  std::replace(normalized_key.begin(), normalized_key.end(), '-', '_');

  if (normalized_key == "corpus") corpus = value;
  else if (normalized_key == "data_dir") data_dir = value;
  else if (normalized_key == "lemmas") lemmas = value;
  else if (normalized_key == "valence") valence = value;
  else if (normalized_key == "positive") positive = value;
  else if (normalized_key == "negative") negative = value;
  else if (normalized_key == "stopwords") stopwords = value;
  else if (normalized_key == "out") out = value;
  else if (normalized_key == "mode") {
    const std::string v = lower(value);
    if (v == "bigram") modes = {PairMode::Bigram};
    else if (v == "skipgram") modes = {PairMode::Skipgram};
    else if (v == "both") modes = {PairMode::Bigram, PairMode::Skipgram};
    else throw_usage("mode: expected bigram, skipgram or both, got \"" + std::string(value) + "\"");
  } else if (normalized_key == "max_skip") {
    max_skip = parse_number<std::size_t>(key, value);
  } else if (normalized_key == "order") {
    const std::string v = lower(value);
    if (v == "stopwords-first" || v == "stopwords_first") order = PairOrder::StopwordsFirst;
    else if (v == "pairs-first" || v == "pairs_first") order = PairOrder::PairsFirst;
    else throw_usage("order: expected stopwords-first or pairs-first, got \"" + std::string(value) + "\"");
  } else if (normalized_key == "self_pairs") {
    self_pairs = parse_bool(key, value);
  } else if (normalized_key == "threshold") {
    if (lower(value) == "auto") threshold.reset();
    else threshold = parse_number<std::uint64_t>(key, value);
  } else if (normalized_key == "epsilon") {
    epsilon = parse_real(key, value);
  } else if (normalized_key == "window") {
    window = parse_number<std::size_t>(key, value);
  } else if (normalized_key == "min_vertices") {
    min_vertices = parse_number<std::size_t>(key, value);
  } else if (normalized_key == "alpha") {
    alpha = parse_real(key, value);
  } else if (normalized_key == "fallback_weight") {
    fallback_weight = parse_number<int>(key, value);
  } else if (normalized_key == "fold_diacritics") {
    fold_diacritics = parse_bool(key, value);
  } else if (normalized_key == "min_docs") {
    min_docs = parse_number<std::size_t>(key, value);
  } else if (normalized_key == "methods") {
    std::vector<CommunityMethod> parsed;
    for (auto item : split_list(value)) {
      auto m = parse_community_method(item);
      if (!m) throw_usage("methods: unknown community method \"" + std::string(item) + "\"");
      parsed.push_back(*m);
    }
    methods = std::move(parsed);
  } else if (normalized_key == "modularity_weights") {
    modularity_weights = parse_bool(key, value);
  } else if (normalized_key == "eigen_weights") {
    eigen_weights = parse_bool(key, value);
  } else if (normalized_key == "seed") {
    seed = parse_number<std::uint64_t>(key, value);
  } else if (normalized_key == "top_terms") {
    top_terms = parse_number<std::size_t>(key, value);
  } else if (normalized_key == "top_frequencies") {
    top_frequencies = parse_number<std::size_t>(key, value);
  } else if (normalized_key == "sentiment") {
    sentiment = parse_bool(key, value);
  } else if (normalized_key == "network") {
    network = parse_bool(key, value);
  } else if (normalized_key == "scopes") {
    scopes.clear();
    for (auto item : split_list(value)) {
      if (!parse_scope(item)) throw_usage("scopes: unknown scope \"" + std::string(item) + "\"");
      scopes.emplace_back(item);
    }
  } else if (normalized_key == "threads") {
    threads = parse_number<std::size_t>(key, value);
  } else {
    throw_usage("unknown setting \"" + std::string(raw_key) + "\"");
  }
}

AnalysisConfig AnalysisConfig::from_file(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw_io("cannot read config " + path.string());
  AnalysisConfig config;
  const fs::path base = path.parent_path();
  static const std::set<std::string> kPathKeys = {"corpus", "data_dir", "lemmas", "valence", "positive",
                                                  "negative", "stopwords", "out"};
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string_view s = trim(line);
    if (s.empty() || s.front() == '#' || s.front() == ';' || s.front() == '[') continue;
    const auto eq = s.find('=');
    if (eq == std::string_view::npos)
      throw_usage(path.string() + ":" + std::to_string(lineno) + ": expected key = value");
    std::string key = lower(trim(s.substr(0, eq)));
    std::replace(key.begin(), key.end(), '-', '_');
    std::string_view value = trim(s.substr(eq + 1));
    // Trailing comments only when separated by whitespace, so '#' inside paths survives.
    for (const char* marker : {" #", " ;", "\t#", "\t;"})
      if (auto c = value.find(marker); c != std::string_view::npos) value = trim(value.substr(0, c));
    try {
      config.set(key, value);
    } catch (const Error& e) {
      throw_usage(path.string() + ":" + std::to_string(lineno) + ": " + e.what());
    }
    if (kPathKeys.count(key)) {
      std::string& field = key == "corpus"     ? config.corpus
                           : key == "data_dir" ? config.data_dir
                           : key == "lemmas"   ? config.lemmas
                           : key == "valence"  ? config.valence
                           : key == "positive" ? config.positive
                           : key == "negative" ? config.negative
                           : key == "stopwords" ? config.stopwords
                                                : config.out;
      if (!field.empty() && fs::path(field).is_relative() && !base.empty())
        field = (base / field).lexically_normal().generic_string();
    }
  }
  return config;
}

void AnalysisConfig::validate() const {
  if (!(alpha > 0.0 && alpha < 1.0)) throw_usage("alpha must lie in (0, 1)");
  if (fallback_weight < 1) throw_usage("fallback_weight must be at least 1");
  if (threshold && *threshold == 0) throw_usage("threshold must be auto or at least 1");
  if (!(epsilon > 0.0)) throw_usage("epsilon must be positive");
  if (window == 0) throw_usage("window must be at least 1");
  if (min_docs == 0) throw_usage("min_docs must be at least 1");
  if (modes.empty()) throw_usage("no pair mode selected");
  if (methods.empty()) throw_usage("no community method selected");
  if (top_terms == 0 || top_frequencies == 0) throw_usage("top_terms and top_frequencies must be at least 1");
  for (const auto& s : scopes)
    if (!parse_scope(s)) throw_usage("unknown scope \"" + s + "\"");
}

std::string Scope::name() const {
  std::string out = subcase ? std::string(subcase_name(*subcase)) : "General";
  out += '/';
  out += !role ? "All" : *role == Role::Appearer ? "Appearers" : "Victims";
  return out;
}

std::string Scope::slug() const {
  std::string out;
  for (char c : name()) {
    if (c == ' ' || c == '/') out.push_back('_');
    else out.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  }
  return out;
}

std::vector<Scope> all_scopes() {
  std::vector<Scope> out;
  std::vector<std::optional<Subcase>> rows{std::nullopt};
  for (Subcase s : kRegions) rows.emplace_back(s);
  for (const auto& s : rows)
    for (const auto& r : {std::optional<Role>{}, std::optional<Role>{Role::Appearer}, std::optional<Role>{Role::Victim}})
      out.push_back(Scope{s, r});
  return out;
}

std::optional<Scope> parse_scope(std::string_view text) {
  std::string key;
  for (char c : text)
    if (c != ' ' && c != '_' && c != '-' && c != '/') key.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  for (const auto& s : all_scopes()) {
    std::string candidate;
    for (char c : s.name())
      if (c != ' ' && c != '/') candidate.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
    if (candidate == key) return s;
  }
  return std::nullopt;
}

Resources load_resources(const AnalysisConfig& config) {
  Resources r;
  const NormalizeOptions opts{config.fold_diacritics};
  auto resolve = [&](const char* name, const std::string& explicit_path, const char* default_file) -> std::string {
    std::string chosen;
    if (!explicit_path.empty()) {
      if (!fs::exists(explicit_path)) throw_io(std::string(name) + " file not found: " + explicit_path);
      chosen = explicit_path;
    } else if (!config.data_dir.empty()) {
      const fs::path candidate = fs::path(config.data_dir) / default_file;
      if (fs::exists(candidate)) chosen = candidate.generic_string();
    }
    r.sources[name] = chosen;
    return chosen;
  };
  if (auto p = resolve("lemmas", config.lemmas, "lemmas.tsv"); !p.empty()) r.lemmas = LemmaLexicon::load(p, opts);
  if (auto p = resolve("stopwords", config.stopwords, "stopwords.txt"); !p.empty()) r.stopwords = load_stoplist(p, opts);
  if (auto p = resolve("valence", config.valence, "valence.tsv"); !p.empty()) r.valence = ValenceLexicon::load(p, opts);
  const auto pos = resolve("positive", config.positive, "positive.txt");
  const auto neg = resolve("negative", config.negative, "negative.txt");
  if (!pos.empty() || !neg.empty()) {
    if (pos.empty() || neg.empty()) throw_usage("the polarity lexicon needs both a positive and a negative list");
    r.polarity = PolarityLexicon::load(pos, neg, opts);
  }
  return r;
}

std::vector<PreparedDocument> prepare_documents(const Corpus& corpus, const Resources& resources,
                                                const AnalysisConfig& config) {
  const NormalizeOptions opts{config.fold_diacritics};
  std::vector<PreparedDocument> out(corpus.size());
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    const Document& doc = corpus.documents()[i];
    PreparedDocument& p = out[i];
    p.document = &doc;
    p.filtered.doc_id = doc.id;
    if (doc.skipped) continue;
    std::vector<Token> tokens = tokenize(normalize(doc.text, opts));
    if (config.order == PairOrder::PairsFirst) {
      const LemmaSequence all = lemmatize(tokens, resources.lemmas, doc.id);
      p.full.reserve(all.items.size());
      p.stop_mask.reserve(tokens.size());
      for (std::size_t t = 0; t < tokens.size(); ++t) {
        p.full.push_back(all.items[t].lemma);
        p.stop_mask.push_back(resources.stopwords.count(tokens[t].surface) > 0);
      }
    }
    p.filtered = lemmatize(remove_stopwords(std::move(tokens), resources.stopwords), resources.lemmas, doc.id, &p.stats);
    p.scores = score_tokens(p.filtered, resources.valence, &resources.polarity, config.fallback_weight);
  }
  return out;
}

std::uint64_t scope_seed(std::uint64_t seed, std::string_view scope_name) {
  return splitmix64(seed ^ fnv1a(scope_name));
}

ScopeReport run_scope(const AnalysisConfig& config, const Corpus& corpus, std::span<const PreparedDocument> prepared,
                      const Scope& scope, bool keep_pairs) {
  if (prepared.size() != corpus.size()) throw_usage("prepared documents do not match the corpus");
  ScopeReport rep;
  rep.scope = scope;
  rep.seed = scope_seed(config.seed, scope.name());

  std::vector<const PreparedDocument*> docs;
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    const Document& d = corpus.documents()[i];
    if (!in_scope(d, scope)) continue;
    rep.document_ids.push_back(d.id);
    if (d.skipped) {
      ++rep.empty_documents;
      continue;
    }
    docs.push_back(&prepared[i]);
    rep.lemmatization.tokens += prepared[i].stats.tokens;
    rep.lemmatization.unknown += prepared[i].stats.unknown;
  }

  if (rep.document_ids.empty()) {
    rep.skipped = true;
    rep.skip_reason = "no documents";
    return rep;
  }
  if (rep.document_ids.size() < config.min_docs) {
    rep.skipped = true;
    rep.skip_reason = "only " + std::to_string(rep.document_ids.size()) + " documents, fewer than min_docs = " +
                      std::to_string(config.min_docs);
    return rep;
  }

  try {
    std::vector<LemmaSequence> sequences;
    sequences.reserve(docs.size());
    for (const auto* d : docs) sequences.push_back(d->filtered);
    rep.frequencies["all"] = frequency_table(sequences, std::nullopt, config.top_frequencies);
    rep.frequencies["noun"] = frequency_table(sequences, std::set<Upos>{Upos::Noun}, config.top_frequencies);
    rep.frequencies["verb"] = frequency_table(sequences, std::set<Upos>{Upos::Verb}, config.top_frequencies);
    rep.frequencies["adj"] = frequency_table(sequences, std::set<Upos>{Upos::Adj}, config.top_frequencies);

    if (config.sentiment) {
      SentimentSection s;
      for (const auto* d : docs) s.documents.push_back(summarize_document(d->scores, d->document->id));
      s.aggregate = aggregate_sentiment(s.documents);
      for (auto metric : {stats::SentimentMetric::MeanMagnitude, stats::SentimentMetric::Proportion}) {
        try {
          auto decision = stats::sentiment_cascade(s.documents, metric, config.alpha);
          (metric == stats::SentimentMetric::MeanMagnitude ? s.magnitude : s.proportion) = std::move(decision);
        } catch (const Error& e) {
          s.notes.push_back(std::string(stats::metric_name(metric)) + ": " + e.what());
        }
      }
      rep.sentiment = std::move(s);
    }

    if (config.network)
      for (PairMode mode : config.modes)
        rep.networks.push_back(
            run_network(config, docs, mode, splitmix64(rep.seed ^ fnv1a(pair_mode_name(mode))), keep_pairs));
  } catch (const Error& e) {
    rep.skipped = true;
    rep.skip_reason = std::string("error: ") + e.what();
    rep.sentiment.reset();
    rep.frequencies.clear();
    rep.networks.clear();
  }
  return rep;
}

ReportBundle run_all(const AnalysisConfig& config, const Corpus& corpus, const Resources& resources, bool keep_pairs) {
  config.validate();
  ReportBundle bundle;
  bundle.config = config;
  bundle.lexicons = resources.sources;
  bundle.corpus_documents = corpus.size();
  bundle.eligibility = role_analysis_eligibility(corpus, config.min_docs);

  std::vector<Scope> scopes;
  if (config.scopes.empty()) {
    scopes = all_scopes();
  } else {
    // Selected scopes still come out in the fixed enumeration order.
    std::vector<Scope> wanted;
    for (const auto& name : config.scopes) wanted.push_back(*parse_scope(name));
    for (const auto& s : all_scopes())
      if (std::find(wanted.begin(), wanted.end(), s) != wanted.end()) scopes.push_back(s);
  }

  const auto prepared = prepare_documents(corpus, resources, config);
  bundle.scopes.resize(scopes.size());
  std::vector<std::exception_ptr> failures(scopes.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < scopes.size(); i = next++) {
      try {
        bundle.scopes[i] = run_scope(config, corpus, prepared, scopes[i], keep_pairs);
      } catch (...) {
        failures[i] = std::current_exception();
      }
    }
  };
  std::size_t threads = config.threads ? config.threads : std::max(1u, std::thread::hardware_concurrency());
  threads = std::min(threads, scopes.size());
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  for (auto& f : failures)
    if (f) std::rethrow_exception(f);
  return bundle;
}

ReportBundle run_all(const AnalysisConfig& config, bool keep_pairs) {
  config.validate();
  if (config.corpus.empty()) throw_usage("no corpus given");
  const Corpus corpus = load_corpus(config.corpus);
  const Resources resources = load_resources(config);
  return run_all(config, corpus, resources, keep_pairs);
}

}  // namespace semnet

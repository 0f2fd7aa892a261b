#include "semnet/sentiment.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <functional>

#include "semnet/error.hpp"

namespace semnet {

namespace {

std::optional<double> median_of(std::vector<double> v) {
  if (v.empty()) return std::nullopt;
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

std::optional<double> mean_of(const std::vector<double>& v) {
  if (v.empty()) return std::nullopt;
  double s = 0.0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

void load_word_list(const std::filesystem::path& path, NormalizeOptions options,
                    const std::function<void(std::string_view)>& sink) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw_io("cannot read word list " + path.string());
  std::string line;
  while (std::getline(in, line)) {
    std::string_view body = line;
    if (auto hash = body.find('#'); hash != std::string_view::npos) body = body.substr(0, hash);
    const auto word = normalize(body, options);
    if (!word.empty()) sink(word);
  }
}

}  // namespace

void ValenceLexicon::add(std::string_view lemma, int score) {
  if (score == 0 || score < -5 || score > 5)
    throw_data("valence for \"" + std::string(lemma) + "\" must be a nonzero integer in [-5, 5]");
  entries_.insert_or_assign(std::string(lemma), score);
}

std::optional<int> ValenceLexicon::lookup(std::string_view lemma) const {
  auto it = entries_.find(std::string(lemma));
  if (it == entries_.end()) return std::nullopt;
  return it->second;
}

ValenceLexicon ValenceLexicon::load(const std::filesystem::path& path, NormalizeOptions options) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw_io("cannot read valence lexicon " + path.string());
  ValenceLexicon lex;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    const auto tab = line.rfind('\t');
    if (tab == std::string::npos) throw_data(path.string() + ":" + std::to_string(lineno) + ": expected lemma<TAB>score");
    const auto lemma = normalize(std::string_view(line).substr(0, tab), options);
    std::string_view num = std::string_view(line).substr(tab + 1);
    if (!num.empty() && num.front() == '+') num.remove_prefix(1);
    int score = 0;
    auto [ptr, ec] = std::from_chars(num.data(), num.data() + num.size(), score);
    if (ec != std::errc{} || ptr != num.data() + num.size() || lemma.empty())
      throw_data(path.string() + ":" + std::to_string(lineno) + ": malformed valence entry");
    try {
      lex.add(lemma, score);
    } catch (const Error& e) {
      throw_data(path.string() + ":" + std::to_string(lineno) + ": " + e.what());
    }
  }
  return lex;
}

void PolarityLexicon::add_positive(std::string_view lemma) {
  if (negative_.contains(std::string(lemma)))
    throw_data("\"" + std::string(lemma) + "\" listed as both positive and negative");
  positive_.insert(std::string(lemma));
}

void PolarityLexicon::add_negative(std::string_view lemma) {
  if (positive_.contains(std::string(lemma)))
    throw_data("\"" + std::string(lemma) + "\" listed as both positive and negative");
  negative_.insert(std::string(lemma));
}

int PolarityLexicon::polarity(std::string_view lemma) const {
  const std::string key(lemma);
  if (positive_.contains(key)) return 1;
  if (negative_.contains(key)) return -1;
  return 0;
}

PolarityLexicon PolarityLexicon::load(const std::filesystem::path& positive, const std::filesystem::path& negative,
                                      NormalizeOptions options) {
  PolarityLexicon lex;
  load_word_list(positive, options, [&](std::string_view w) { lex.add_positive(w); });
  load_word_list(negative, options, [&](std::string_view w) { lex.add_negative(w); });
  return lex;
}

std::vector<ScoredLemma> score_tokens(const LemmaSequence& seq, const ValenceLexicon& valence,
                                      const PolarityLexicon* fallback, int fallback_weight) {
  if (fallback_weight < 1) throw_usage("fallback_weight must be a positive integer");
  std::vector<ScoredLemma> out;
  for (const auto& item : seq.items) {
    if (auto v = valence.lookup(item.lemma)) {
      out.push_back({item.lemma, *v});
    } else if (fallback) {
      if (int p = fallback->polarity(item.lemma); p != 0) out.push_back({item.lemma, p * fallback_weight});
    }
  }
  return out;
}

SentimentSummary summarize_document(std::span<const int> scores, std::string doc_id) {
  SentimentSummary s;
  s.doc_id = std::move(doc_id);
  for (int v : scores) {
    if (v > 0) {
      ++s.n_pos;
      s.sum_pos += v;
    } else if (v < 0) {
      ++s.n_neg;
      s.sum_neg += -static_cast<std::int64_t>(v);
    }
  }
  if (s.n_pos > 0) s.mean_pos = static_cast<double>(s.sum_pos) / static_cast<double>(s.n_pos);
  if (s.n_neg > 0) s.mean_neg = static_cast<double>(s.sum_neg) / static_cast<double>(s.n_neg);
  if (s.scored()) {
    const auto total = static_cast<double>(s.n_pos + s.n_neg);
    s.prop_pos = static_cast<double>(s.n_pos) / total;
    s.prop_neg = static_cast<double>(s.n_neg) / total;
  }
  return s;
}

SentimentSummary summarize_document(std::span<const ScoredLemma> scores, std::string doc_id) {
  std::vector<int> values;
  values.reserve(scores.size());
  for (const auto& s : scores) values.push_back(s.score);
  return summarize_document(std::span<const int>(values), std::move(doc_id));
}

CorpusSentiment aggregate_sentiment(std::span<const SentimentSummary> summaries) {
  CorpusSentiment c;
  c.documents = summaries.size();
  std::vector<double> pos, neg, prop_pos, prop_neg;
  std::int64_t sum_pos = 0, sum_neg = 0;
  std::size_t n_pos = 0, n_neg = 0;
  for (const auto& s : summaries) {
    if (!s.scored()) continue;
    ++c.scored_documents;
    if (s.mean_pos) pos.push_back(*s.mean_pos);
    if (s.mean_neg) neg.push_back(*s.mean_neg);
    prop_pos.push_back(s.prop_pos);
    prop_neg.push_back(s.prop_neg);
    sum_pos += s.sum_pos;
    sum_neg += s.sum_neg;
    n_pos += s.n_pos;
    n_neg += s.n_neg;
  }
  c.mean_of_mean_pos = mean_of(pos);
  c.mean_of_mean_neg = mean_of(neg);
  c.median_of_mean_pos = median_of(pos);
  c.median_of_mean_neg = median_of(neg);
  c.mean_prop_pos = mean_of(prop_pos);
  c.mean_prop_neg = mean_of(prop_neg);
  if (n_pos > 0) c.pooled_mean_pos = static_cast<double>(sum_pos) / static_cast<double>(n_pos);
  if (n_neg > 0) c.pooled_mean_neg = static_cast<double>(sum_neg) / static_cast<double>(n_neg);
  if (n_pos + n_neg > 0) c.pooled_prop_pos = static_cast<double>(n_pos) / static_cast<double>(n_pos + n_neg);
  return c;
}

std::vector<FrequencyEntry> frequency_table(std::span<const LemmaSequence> sequences,
                                            const std::optional<std::set<Upos>>& upos_filter, std::size_t top_n) {
  if (top_n == 0) throw_usage("top_n must be at least 1");
  std::map<std::string, std::size_t> counts;
  for (const auto& seq : sequences)
    for (const auto& item : seq.items)
      if (!upos_filter || upos_filter->contains(item.upos)) ++counts[item.lemma];

  std::vector<FrequencyEntry> table;
  table.reserve(counts.size());
  for (auto& [lemma, n] : counts) table.push_back({lemma, n});
  std::stable_sort(table.begin(), table.end(),
                   [](const FrequencyEntry& a, const FrequencyEntry& b) { return a.count > b.count; });
  if (table.size() > top_n) table.resize(top_n);
  return table;
}

}  // namespace semnet

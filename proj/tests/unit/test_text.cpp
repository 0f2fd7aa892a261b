#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "semnet/cascade.hpp"
#include "semnet/corpus.hpp"
#include "semnet/error.hpp"
#include "semnet/ngram.hpp"
#include "semnet/sentiment.hpp"
#include "semnet/stats.hpp"
#include "semnet/textprep.hpp"
#include "tempdir.hpp"

using namespace semnet;

TEST_CASE("corpus loading") {
  fixtures::TempDir tmp;
  const auto file = tmp.write("a.jsonl",
                              "{\"id\":\"d1\",\"title\":\"t\",\"subcase\":\"Costa Caribe\",\"role\":\"victima\",\"text\":\"uno\"}\n"
                              "\n"
                              "{\"id\":\"d2\",\"subcase\":\"Huila\",\"role\":\"compareciente\",\"text\":\"dos\"}\n"
                              "{\"id\":\"d3\",\"subcase\":null,\"role\":null,\"text\":\"\"}\n");
  const Corpus c = load_corpus(file);
  REQUIRE(c.size() == 3);
  CHECK(c.documents()[0].subcase == Subcase::CostaCaribe);
  CHECK(c.documents()[0].role == Role::Victim);
  CHECK(c.documents()[1].role == Role::Appearer);
  CHECK(c.documents()[1].title.empty());
  CHECK(c.documents()[2].subcase == Subcase::Unassigned);
  CHECK(c.documents()[2].role == Role::Unknown);
  CHECK(c.documents()[2].skipped);
  CHECK_FALSE(c.documents()[0].skipped);
  CHECK(c.count(std::nullopt, std::nullopt) == 3);
  CHECK(c.count(Subcase::Huila, std::nullopt) == 1);
  CHECK(c.count(std::nullopt, Role::Victim) == 1);
  CHECK(c.find("d2") != nullptr);
  CHECK(c.find("zz") == nullptr);

  SUBCASE("round trip") {
    save_corpus(c, tmp.path() / "out.jsonl");
    CHECK(load_corpus(tmp.path() / "out.jsonl") == c);
  }
  SUBCASE("directory in filename order") {
    tmp.write("dir/b.jsonl", "{\"id\":\"x2\",\"text\":\"b\"}\n");
    tmp.write("dir/a.jsonl", "{\"id\":\"x1\",\"text\":\"a\"}\n");
    tmp.write("dir/notes.txt", "ignored");
    const Corpus d = load_corpus(tmp.path() / "dir");
    REQUIRE(d.size() == 2);
    CHECK(d.documents()[0].id == "x1");
  }
  SUBCASE("malformed input") {
    auto bad = [&](const std::string& body) { return load_corpus(tmp.write("bad.jsonl", body)); };
    CHECK_THROWS_AS(bad("{\"id\":\"a\"\n"), Error);
    CHECK_THROWS_AS(bad("[1,2]\n"), Error);
    CHECK_THROWS_AS(bad("{\"text\":\"no id\"}\n"), Error);
    CHECK_THROWS_AS(bad("{\"id\":\"a\",\"subcase\":\"Narnia\"}\n"), Error);
    CHECK_THROWS_AS(bad("{\"id\":\"a\",\"role\":\"juez\"}\n"), Error);
    CHECK_THROWS_AS(bad("{\"id\":\"a\"}\n{\"id\":\"a\"}\n"), Error);
    CHECK_THROWS_AS(bad("{\"id\":\"a\",\"text\":5}\n"), Error);
    try {
      bad("{\"id\":\"a\"}\n{oops}\n");
      FAIL("expected a data error");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::Data);
      CHECK(std::string(e.what()).find(":2:") != std::string::npos);
    }
    try {
      load_corpus(tmp.path() / "missing.jsonl");
      FAIL("expected an io error");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::Io);
    }
  }
}

TEST_CASE("subcase and role names") {
  for (Subcase s : kRegions) CHECK(parse_subcase(subcase_name(s)) == s);
  CHECK(parse_subcase("costacaribe") == Subcase::CostaCaribe);
  CHECK(parse_subcase("NORTE DE SANTANDER") == Subcase::NorteDeSantander);
  CHECK_FALSE(parse_subcase("Bogotá").has_value());
  CHECK(parse_role("víctima") == Role::Victim);
  CHECK(parse_role(role_wire_name(Role::Appearer)) == Role::Appearer);
}

TEST_CASE("eligibility counts per region and role") {
  std::vector<Document> docs;
  auto add = [&](Subcase s, Role r, int n) {
    for (int i = 0; i < n; ++i)
      docs.push_back(Document{"d" + std::to_string(docs.size()), "", s, r, "x", false});
  };
  add(Subcase::Antioquia, Role::Appearer, 2);
  add(Subcase::Antioquia, Role::Victim, 3);
  add(Subcase::Meta, Role::Victim, 4);
  add(Subcase::Huila, Role::Unknown, 5);
  const Corpus c(docs, "mem");
  const auto cells = role_analysis_eligibility(c, 3);
  CHECK(cells.size() == 14);
  std::map<std::pair<int, int>, const EligibilityCell*> by;
  for (const auto& cell : cells) by[{cell.subcase ? static_cast<int>(*cell.subcase) : -1, static_cast<int>(cell.role)}] = &cell;
  CHECK(by[{-1, static_cast<int>(Role::Appearer)}]->count == 2);
  CHECK_FALSE(by[{-1, static_cast<int>(Role::Appearer)}]->eligible);
  CHECK(by[{-1, static_cast<int>(Role::Victim)}]->count == 7);
  CHECK(by[{static_cast<int>(Subcase::Antioquia), static_cast<int>(Role::Victim)}]->eligible);
  CHECK_FALSE(by[{static_cast<int>(Subcase::Huila), static_cast<int>(Role::Victim)}]->eligible);
  const Corpus f = filter_corpus(c, Subcase::Antioquia, std::nullopt);
  CHECK(f.size() == 5);
}

TEST_CASE("normalize and tokenize") {
  CHECK(normalize("  ¡Él DIJO: «ya»... 1990, sí!  ") == "él dijo ya sí");
  CHECK(normalize("Niño ÁRBOL", {.fold_diacritics = true}) == "niño arbol");
  CHECK(normalize("Camión—carretera") == "camión carretera");
  CHECK(normalize("") == "");
  const auto toks = tokenize("a bb  ccc");
  REQUIRE(toks.size() == 3);
  CHECK(toks[2].surface == "ccc");
  CHECK(toks[2].position == 2);

  // Normalization is idempotent on arbitrary byte soup.
  std::mt19937 rng(9);
  const std::vector<std::string> pieces = {"á", "Ñ", "x", " ", ",", "Z", "ü", "9", "\xff", "—", "ÿ", "Ÿ"};
  for (int i = 0; i < 300; ++i) {
    std::string s;
    for (int k = 0; k < 12; ++k) s += pieces[rng() % pieces.size()];
    const auto once = normalize(s);
    CHECK(normalize(once) == once);
    CHECK(once.find("  ") == std::string::npos);
  }
}

TEST_CASE("stopwords and lemmatization") {
  fixtures::TempDir tmp;
  const auto stop = load_stoplist(tmp.write("stop.txt", "# comment\nEl\nde\n\nla # trailing\n"));
  CHECK(stop.contains("el"));
  CHECK(stop.contains("la"));
  CHECK_FALSE(stop.contains("comment"));

  const auto kept = remove_stopwords(tokenize(normalize("el soldado de la tropa")), stop);
  REQUIRE(kept.size() == 2);
  CHECK(kept[1].surface == "tropa");
  CHECK(kept[1].position == 1);

  const auto lex = LemmaLexicon::load(
      tmp.write("lem.tsv", "# surface\tlemma\tupos\nSoldados\tsoldado\tNOUN\ndijeron\tdecir\tVERB\nfalsos\tfalso\tADJ\n"));
  CHECK(lex.size() == 3);
  LemmatizeStats st;
  const auto seq = lemmatize(tokenize("soldados dijeron cosas falsos"), lex, "d", &st);
  REQUIRE(seq.items.size() == 4);
  CHECK(seq.items[0] == LemmaItem{"soldado", Upos::Noun});
  CHECK(seq.items[1] == LemmaItem{"decir", Upos::Verb});
  CHECK(seq.items[2] == LemmaItem{"cosas", Upos::Other});
  CHECK(seq.items[3].upos == Upos::Adj);
  CHECK(st.tokens == 4);
  CHECK(st.unknown == 1);
  CHECK(st.unknown_rate() == doctest::Approx(0.25));

  CHECK_THROWS_AS(LemmaLexicon::load(tmp.write("bad.tsv", "a\tb\n")), Error);
  CHECK_THROWS_AS(LemmaLexicon::load(tmp.write("bad2.tsv", "a\tb\tNOPE\n")), Error);

  const auto folded = LemmaLexicon::load(tmp.path() / "lem.tsv", {.fold_diacritics = true});
  CHECK(folded.lookup("soldados") != nullptr);
}

TEST_CASE("scoring uses valence first and the lists as fallback") {
  ValenceLexicon val;
  val.add("paz", 3);
  val.add("matar", -3);
  PolarityLexicon pol;
  pol.add_positive("vida");
  pol.add_negative("fosa");
  pol.add_negative("paz");  // valence wins
  LemmaSequence seq{"d", {{"paz", Upos::Noun}, {"fosa", Upos::Noun}, {"camino", Upos::Noun}, {"matar", Upos::Verb},
                          {"vida", Upos::Noun}}};
  const auto s = score_tokens(seq, val, &pol, 2);
  const std::vector<ScoredLemma> want = {{"paz", 3}, {"fosa", -2}, {"matar", -3}, {"vida", 2}};
  CHECK(s == want);
  CHECK(score_tokens(seq, val, nullptr).size() == 2);
  CHECK(pol.polarity("camino") == 0);
  CHECK(*val.lookup("paz") == 3);
  CHECK_FALSE(val.lookup("camino").has_value());
}

TEST_CASE("document summaries and aggregates") {
  const std::vector<int> a = {3, -2, -4, 1, -3};
  const auto s = summarize_document(std::span<const int>(a), "a");
  CHECK(s.n_pos == 2);
  CHECK(s.n_neg == 3);
  CHECK(*s.mean_pos == doctest::Approx(2.0));
  CHECK(*s.mean_neg == doctest::Approx(3.0));
  CHECK(s.prop_neg == doctest::Approx(0.6));
  CHECK(s.prop_pos + s.prop_neg == doctest::Approx(1.0));

  const std::vector<int> only_neg = {-1, -1};
  const auto t = summarize_document(std::span<const int>(only_neg), "b");
  CHECK_FALSE(t.mean_pos.has_value());
  CHECK(t.prop_neg == 1.0);
  const auto e = summarize_document(std::span<const int>(), "c");
  CHECK_FALSE(e.scored());
  CHECK(e.prop_pos == 0.0);

  const std::vector<SentimentSummary> all = {s, t, e};
  const auto agg = aggregate_sentiment(all);
  CHECK(agg.documents == 3);
  CHECK(agg.scored_documents == 2);
  CHECK(*agg.mean_of_mean_pos == doctest::Approx(2.0));
  CHECK(*agg.mean_of_mean_neg == doctest::Approx(2.0));
  CHECK(*agg.median_of_mean_neg == doctest::Approx(2.0));
  CHECK(*agg.mean_prop_neg == doctest::Approx(0.8));
  CHECK(*agg.pooled_mean_neg == doctest::Approx(11.0 / 5));
  CHECK(*agg.pooled_prop_pos == doctest::Approx(2.0 / 7));
}

TEST_CASE("frequency table") {
  std::vector<LemmaSequence> seqs = {
      {"a", {{"paz", Upos::Noun}, {"decir", Upos::Verb}, {"paz", Upos::Noun}}},
      {"b", {{"verdad", Upos::Noun}, {"decir", Upos::Verb}, {"falso", Upos::Adj}, {"ana", Upos::Noun}}},
  };
  const auto all = frequency_table(seqs, std::nullopt, 10);
  REQUIRE(all.size() == 5);
  CHECK(all[0] == FrequencyEntry{"decir", 2});
  CHECK(all[1] == FrequencyEntry{"paz", 2});
  CHECK(all[2] == FrequencyEntry{"ana", 1});
  const auto nouns = frequency_table(seqs, std::set<Upos>{Upos::Noun}, 2);
  REQUIRE(nouns.size() == 2);
  CHECK(nouns[1].lemma == "ana");
}

TEST_CASE("cascade follows the normality gate") {
  std::mt19937_64 rng(21);
  std::uniform_int_distribution<int> hits(0, 6), score(1, 5);
  int t_runs = 0, w_runs = 0;
  for (int trial = 0; trial < 120; ++trial) {
    std::vector<SentimentSummary> docs;
    const int n = 3 + trial % 20;
    for (int d = 0; d < n; ++d) {
      std::vector<int> sc;
      for (int k = hits(rng); k > 0; --k) sc.push_back(score(rng));
      for (int k = hits(rng) + (trial % 3); k > 0; --k) sc.push_back(-score(rng));
      docs.push_back(summarize_document(std::span<const int>(sc), "d" + std::to_string(d)));
    }
    for (auto metric : {stats::SentimentMetric::MeanMagnitude, stats::SentimentMetric::Proportion}) {
      stats::CascadeDecision dec;
      try {
        dec = stats::sentiment_cascade(docs, metric, 0.05);
      } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::Data);
        continue;
      }
      if (dec.degenerate) {
        CHECK_FALSE(dec.chosen.has_value());
        CHECK_FALSE(dec.reject_null);
        continue;
      }
      REQUIRE(dec.chosen.has_value());
      const bool normal = dec.normality && dec.normality->p_value > 0.05;
      if (normal && dec.paired_t) {
        CHECK(*dec.chosen == stats::TestMethod::PairedT);
        ++t_runs;
      } else {
        CHECK(*dec.chosen == stats::TestMethod::WilcoxonSignedRank);
        ++w_runs;
      }
      CHECK(dec.reject_null == (dec.main()->p_value < 0.05));
      CHECK(dec.main()->alternative == stats::Alternative::Greater);
    }
  }
  CHECK(t_runs > 0);
  CHECK(w_runs > 0);
}

TEST_CASE("cascade pairs only documents with both sides for magnitudes") {
  std::vector<SentimentSummary> docs;
  const std::vector<std::vector<int>> raw = {{-3, 1}, {-2, 2}, {-4, 1}, {-5}, {2}, {-1, 1, 1}};
  for (std::size_t i = 0; i < raw.size(); ++i)
    docs.push_back(summarize_document(std::span<const int>(raw[i]), std::to_string(i)));
  const auto mag = stats::sentiment_cascade(docs, stats::SentimentMetric::MeanMagnitude);
  CHECK(mag.n_pairs == 4);
  const auto prop = stats::sentiment_cascade(docs, stats::SentimentMetric::Proportion);
  CHECK(prop.n_pairs == 6);

  std::vector<SentimentSummary> tied(4, summarize_document(std::span<const int>(raw[1]), "x"));
  const auto deg = stats::sentiment_cascade(tied, stats::SentimentMetric::MeanMagnitude);
  CHECK(deg.degenerate);
  CHECK_THROWS_AS(stats::sentiment_cascade(std::span(docs).first(2), stats::SentimentMetric::Proportion), Error);
}

namespace {

std::map<std::pair<std::string, std::string>, std::uint64_t> pairs_by_loops(const std::vector<std::string>& w,
                                                                           std::size_t span, bool self) {
  std::map<std::pair<std::string, std::string>, std::uint64_t> out;
  for (std::size_t i = 0; i < w.size(); ++i)
    for (std::size_t j = i + 1; j < w.size() && j - i <= span; ++j) {
      if (!self && w[i] == w[j]) continue;
      ++out[std::minmax(w[i], w[j])];
    }
  return out;
}

// Skewness straight from the multiset of surviving counts.
double skew_of(const std::vector<double>& x) {
  const double n = static_cast<double>(x.size());
  double mean = 0;
  for (double v : x) mean += v;
  mean /= n;
  double m2 = 0, m3 = 0;
  for (double v : x) {
    m2 += (v - mean) * (v - mean);
    m3 += std::pow(v - mean, 3);
  }
  m2 /= n;
  m3 /= n;
  return m3 / std::pow(m2, 1.5) * std::sqrt(n * (n - 1)) / (n - 2);
}

}  // namespace

TEST_CASE("pair extraction matches nested loops") {
  std::mt19937 rng(17);
  const std::vector<std::string> vocab = {"a", "b", "c", "d", "e"};
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<std::string> w(rng() % 25);
    for (auto& s : w) s = vocab[rng() % vocab.size()];
    const bool self = trial % 4 == 0;
    for (std::size_t skip = 0; skip <= 3; ++skip) {
      const auto mode = skip == 0 ? PairMode::Bigram : PairMode::Skipgram;
      const auto pc = extract_pairs(w, mode, skip, self);
      CHECK(pc.counts() == pairs_by_loops(w, skip + 1, self));
    }
  }
  CHECK_THROWS_AS(extract_pairs(vocab, PairMode::Bigram, 2), Error);
}

TEST_CASE("pairs never cross documents") {
  PairCounts pc(PairMode::Bigram, 0);
  accumulate_pairs(pc, std::vector<std::string>{"a", "b"});
  accumulate_pairs(pc, std::vector<std::string>{"c", "a", "b"});
  CHECK(pc.count("a", "b") == 2);
  CHECK(pc.count("b", "a") == 2);
  CHECK(pc.count("b", "c") == 0);
  CHECK(pc.total() == 3);
  CHECK(pc.max_count() == 2);

  PairCounts merged(PairMode::Bigram, 0);
  merged.merge(pc);
  merged.merge(pc);
  CHECK(merged.count("a", "b") == 4);
}

TEST_CASE("pair-then-drop differs from drop-then-pair") {
  const std::vector<std::string> w = {"a", "el", "b", "c"};
  const bool stop[] = {false, true, false, false};
  PairCounts late(PairMode::Bigram, 0);
  accumulate_pairs_then_drop(late, w, stop);
  CHECK(late.size() == 1);
  CHECK(late.count("b", "c") == 1);

  PairCounts early(PairMode::Bigram, 0);
  accumulate_pairs(early, std::vector<std::string>{"a", "b", "c"});
  CHECK(early.count("a", "b") == 1);
  CHECK(early.count("b", "c") == 1);
}

TEST_CASE("threshold scan follows the stability rule") {
  std::mt19937_64 rng(23);
  std::geometric_distribution<int> geo(0.35);
  int stabilized = 0;
  for (int trial = 0; trial < 80; ++trial) {
    PairCounts pc(PairMode::Bigram, 0);
    const int n = 20 + trial * 5;
    for (int i = 0; i < n; ++i) pc.add("w" + std::to_string(i), "x", static_cast<std::uint64_t>(1 + geo(rng)));
    const auto scan = threshold_scan(pc, 0.05, 3);

    std::set<std::uint64_t> distinct;
    for (const auto& kv : pc.counts()) distinct.insert(kv.second);
    if (distinct.size() < 3) {
      CHECK(scan.degenerate);
      CHECK(scan.chosen_v == 1);
      continue;
    }
    std::vector<double> skews;
    for (std::uint64_t v = 1;; ++v) {
      std::vector<double> surv;
      std::set<std::uint64_t> d;
      for (const auto& kv : pc.counts())
        if (kv.second >= v) {
          surv.push_back(static_cast<double>(kv.second));
          d.insert(kv.second);
        }
      if (d.size() < 3) break;
      REQUIRE(skews.size() < scan.points.size());
      CHECK(scan.points[skews.size()].v == v);
      CHECK(scan.points[skews.size()].surviving_pairs == surv.size());
      CHECK(scan.points[skews.size()].skew == doctest::Approx(skew_of(surv)).epsilon(1e-9));
      skews.push_back(skew_of(surv));
    }
    REQUIRE(skews.size() == scan.points.size());

    const double tol = 0.05 * std::fabs(skews[0]);
    std::optional<std::uint64_t> want;
    for (std::size_t s = 0; s + 3 < skews.size() && !want; ++s) {
      bool ok = true;
      for (std::size_t u = s; u < s + 3; ++u) ok = ok && std::fabs(skews[u + 1] - skews[u]) <= tol;
      if (ok) want = s + 1;
    }
    if (want) {
      CHECK(scan.stabilized);
      CHECK(scan.chosen_v == *want);
      ++stabilized;
    } else {
      CHECK_FALSE(scan.stabilized);
      CHECK(scan.chosen_v >= 1);
      CHECK(scan.chosen_v <= skews.size());
    }
  }
  CHECK(stabilized > 0);
}

TEST_CASE("threshold application and csv") {
  PairCounts pc(PairMode::Skipgram, 2);
  pc.add("b", "a", 3);
  pc.add("c", "a", 1);
  pc.add("d", "c", 3);
  const auto cut = apply_threshold(pc, 2);
  CHECK(cut.size() == 2);
  CHECK(cut.mode() == PairMode::Skipgram);
  CHECK(cut.max_skip() == 2);
  CHECK_THROWS_AS(apply_threshold(pc, 0), Error);
  std::ostringstream out;
  write_pairs_csv(pc, out);
  CHECK(out.str() == "word1,word2,count\na,b,3\nc,d,3\na,c,1\n");
  CHECK_THROWS_AS(threshold_scan(PairCounts{}), Error);
}

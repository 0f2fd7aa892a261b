#include <algorithm>
#include <cmath>
#include <filesystem>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "doctest.h"
#include "semnet/error.hpp"
#include "semnet/pipeline.hpp"
#include "semnet/report.hpp"
#include "tempdir.hpp"

using namespace semnet;
namespace fs = std::filesystem;

namespace {

const fs::path kSource = SEMNET_SOURCE_DIR;

AnalysisConfig mini_config() {
  AnalysisConfig c;
  c.corpus = (kSource / "data/minicorpus/transcripts.jsonl").string();
  c.data_dir = (kSource / "data/es").string();
  return c;
}

struct Loaded {
  AnalysisConfig config = mini_config();
  Corpus corpus = load_corpus(config.corpus);
  Resources resources = load_resources(config);
};

const Loaded& loaded() {
  static const Loaded l;
  return l;
}

const ReportBundle& default_run() {
  static const ReportBundle b = run_all(loaded().config, loaded().corpus, loaded().resources, true);
  return b;
}

}  // namespace

TEST_CASE("config keys and validation") {
  AnalysisConfig c;
  c.set("mode", "skipgram");
  CHECK(c.modes == std::vector<PairMode>{PairMode::Skipgram});
  c.set("max-skip", "4");
  CHECK(c.max_skip == 4);
  c.set("threshold", "3");
  CHECK(c.threshold == 3u);
  c.set("threshold", "auto");
  CHECK_FALSE(c.threshold.has_value());
  c.set("methods", "louvain, cnm");
  CHECK(c.methods.size() == 2);
  c.set("fold_diacritics", "yes");
  CHECK(c.fold_diacritics);
  c.set("alpha", "0.01");
  CHECK(c.alpha == doctest::Approx(0.01));
  c.set("seed", "18446744073709551615");
  CHECK(c.seed == 18446744073709551615ull);

  CHECK_THROWS_AS(c.set("mode", "trigram"), Error);
  CHECK_THROWS_AS(c.set("max_skip", "-1"), Error);
  CHECK_THROWS_AS(c.set("max_skip", "2x"), Error);
  CHECK_THROWS_AS(c.set("alpha", "abc"), Error);
  CHECK_THROWS_AS(c.set("methods", "spectral"), Error);
  CHECK_THROWS_AS(c.set("no_such_key", "1"), Error);
  CHECK_THROWS_AS(c.set("self_pairs", "maybe"), Error);

  AnalysisConfig bad;
  bad.alpha = 1.5;
  CHECK_THROWS_AS(bad.validate(), Error);
  AnalysisConfig bad_scope;
  bad_scope.scopes = {"Atlantis/All"};
  CHECK_THROWS_AS(bad_scope.validate(), Error);
}

TEST_CASE("config files resolve paths next to the file") {
  fixtures::TempDir tmp;
  const auto path = tmp.write("cfg/run.ini",
                              "# run settings\n"
                              "[input]\n"
                              "corpus = ../corpus/t.jsonl\n"
                              "data_dir = /abs/lex  # trailing comment\n"
                              "; another comment\n"
                              "[pairs]\n"
                              "mode = bigram\n"
                              "seed = 42\n"
                              "scopes = General/All, Huila/Victims\n");
  const auto c = AnalysisConfig::from_file(path);
  CHECK(c.corpus == (tmp.path() / "corpus/t.jsonl").lexically_normal().generic_string());
  CHECK(c.data_dir == "/abs/lex");
  CHECK(c.modes == std::vector<PairMode>{PairMode::Bigram});
  CHECK(c.seed == 42);
  CHECK(c.scopes.size() == 2);

  CHECK_THROWS_AS(AnalysisConfig::from_file(tmp.write("bad.ini", "mode bigram\n")), Error);
  CHECK_THROWS_AS(AnalysisConfig::from_file(tmp.path() / "absent.ini"), Error);
}

TEST_CASE("scopes") {
  const auto scopes = all_scopes();
  CHECK(scopes.size() == 21);
  CHECK(scopes.front().name() == "General/All");
  std::set<std::string> names, slugs;
  std::set<std::uint64_t> seeds;
  for (const auto& s : scopes) {
    names.insert(s.name());
    slugs.insert(s.slug());
    seeds.insert(scope_seed(1, s.name()));
    CHECK(parse_scope(s.name()) == s);
    CHECK(parse_scope(s.slug()) == s);
  }
  CHECK(names.size() == 21);
  CHECK(slugs.size() == 21);
  CHECK(seeds.size() == 21);
  CHECK(parse_scope("Costa Caribe/Victims")->slug() == "costa_caribe_victims");
  CHECK_FALSE(parse_scope("Huila").has_value());
  CHECK(scope_seed(1, "General/All") != scope_seed(2, "General/All"));
}

TEST_CASE("explicit lexicon paths must exist") {
  AnalysisConfig c = mini_config();
  c.valence = "/nonexistent/valence.tsv";
  try {
    load_resources(c);
    FAIL("expected an io error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Io);
  }
}

TEST_CASE("scope membership and eligibility") {
  const auto& b = default_run();
  const auto& corpus = loaded().corpus;
  REQUIRE(b.scopes.size() == 21);
  for (const auto& rep : b.scopes) {
    std::vector<std::string> want;
    for (const auto& d : corpus.documents()) {
      const bool sub = !rep.scope.subcase || d.subcase == *rep.scope.subcase;
      const bool role = !rep.scope.role || d.role == *rep.scope.role;
      if (sub && role) want.push_back(d.id);
    }
    CHECK(rep.document_ids == want);
    CHECK(rep.skipped == (want.size() < 3));
    CHECK(rep.seed == scope_seed(1, rep.scope.name()));
    if (rep.skipped) {
      CHECK(rep.networks.empty());
      CHECK_FALSE(rep.sentiment.has_value());
    }
  }
  const auto meta = std::find_if(b.scopes.begin(), b.scopes.end(),
                                 [](const ScopeReport& r) { return r.scope.name() == "Meta/Appearers"; });
  REQUIRE(meta != b.scopes.end());
  CHECK(meta->skip_reason == "no documents");
}

TEST_CASE("network sections are internally consistent") {
  const auto& b = default_run();
  for (const auto& rep : b.scopes) {
    if (rep.skipped) continue;
    CHECK(rep.networks.size() == 2);
    for (const auto& net : rep.networks) {
      CAPTURE(rep.scope.name());
      REQUIRE(net.pairs.has_value());
      CHECK(net.distinct_pairs == net.pairs->size());
      CHECK(net.pair_total == net.pairs->total());
      REQUIRE(net.graph.has_value());
      const auto& g = *net.graph;
      CHECK(connected_components(g).size() == 1);
      CHECK(g.vertex_count() <= net.thresholded_vertices);
      for (const auto& e : g.edges()) {
        CHECK(e.weight >= net.threshold);
        CHECK(net.pairs->count(g.label(e.u), g.label(e.v)) == e.weight);
      }
      // An automatic threshold is only lowered when the chosen one leaves
      // too few words behind.
      if (net.relaxed_from) {
        CHECK(net.threshold < *net.relaxed_from);
        CHECK((net.thresholded_vertices >= loaded().config.min_vertices || net.threshold == 1));
      }
      CHECK(net.eigen.size() == g.vertex_count());
      CHECK(*std::max_element(net.eigen.begin(), net.eigen.end()) == doctest::Approx(1.0));
      REQUIRE(net.communities.has_value());
      const auto& det = net.communities->detection;
      for (const auto& r : det.results) CHECK(r.modularity <= det.best.modularity);
      CHECK(modularity(g, det.best.partition) == doctest::Approx(det.best.modularity));
    }
  }
}

TEST_CASE("sentiment decisions follow the gate") {
  for (const auto& rep : default_run().scopes) {
    if (rep.skipped || !rep.sentiment) continue;
    for (const auto* d : {&rep.sentiment->magnitude, &rep.sentiment->proportion}) {
      if (!*d || (*d)->degenerate) continue;
      const auto& dec = **d;
      const bool normal = dec.normality && dec.normality->p_value > dec.alpha;
      CHECK((*dec.chosen == stats::TestMethod::PairedT) == (normal && dec.paired_t.has_value()));
      CHECK(dec.reject_null == (dec.main()->p_value < dec.alpha));
    }
  }
}

TEST_CASE("modularity table cells equal standalone scope runs") {
  const Json report = bundle_to_json(default_run());
  const auto& l = loaded();
  const auto prepared = prepare_documents(l.corpus, l.resources, l.config);
  const auto& table = report.at("modularity");
  for (const std::string mode : {"bigram", "skipgram"}) {
    for (const auto& row : table.at(mode).at("rows")) {
      const auto columns = table.at(mode).at("columns");
      for (std::size_t k = 0; k < columns.size(); ++k) {
        const std::string name = row.at("scope").get<std::string>() + "/" + columns[k].get<std::string>();
        const auto scope = parse_scope(name);
        REQUIRE(scope.has_value());
        const auto rep = run_scope(l.config, l.corpus, prepared, *scope);
        const auto& cell = row.at("values")[k];
        if (rep.skipped) {
          CHECK(cell.is_null());
          continue;
        }
        const auto net = std::find_if(rep.networks.begin(), rep.networks.end(),
                                      [&](const NetworkSection& n) { return pair_mode_name(n.mode) == mode; });
        REQUIRE(net != rep.networks.end());
        CHECK(cell.get<double>() == round_sig6(net->communities->detection.best.modularity));
      }
    }
  }
}

TEST_CASE("runs are reproducible and independent of thread count") {
  const auto& l = loaded();
  AnalysisConfig one = l.config, many = l.config;
  one.threads = 1;
  many.threads = 6;
  const auto a = dump_report(bundle_to_json(run_all(one, l.corpus, l.resources)));
  const auto b = dump_report(bundle_to_json(run_all(many, l.corpus, l.resources)));
  CHECK(a == b);

  AnalysisConfig other = l.config;
  other.seed = 99;
  const auto c = dump_report(bundle_to_json(run_all(other, l.corpus, l.resources)));
  CHECK(c != a);
}

TEST_CASE("a fixed threshold is used as given") {
  const auto& l = loaded();
  AnalysisConfig c = l.config;
  c.threshold = 2;
  c.scopes = {"General/All", "Huila/Victims"};
  c.sentiment = false;
  const auto b = run_all(c, l.corpus, l.resources);
  REQUIRE(b.scopes.size() == 2);
  for (const auto& rep : b.scopes) {
    CHECK_FALSE(rep.sentiment.has_value());
    for (const auto& net : rep.networks) {
      CHECK(net.threshold == 2);
      CHECK_FALSE(net.relaxed_from.has_value());
      CHECK_FALSE(net.scan.has_value());
    }
  }
}

TEST_CASE("report json round trip and export") {
  fixtures::TempDir tmp;
  const Json report = bundle_to_json(default_run());
  CHECK(report.at("format") == "semnet-report");
  CHECK(report.at("version") == kReportVersion);
  const auto text = dump_report(report);
  CHECK(text.back() == '\n');

  const auto files = export_bundle(report, tmp.path() / "a");
  CHECK(files.front().filename() == "report.json");
  const Json reloaded = load_report(tmp.path() / "a/report.json");
  CHECK(dump_report(reloaded) == text);

  const auto again = export_bundle(reloaded, tmp.path() / "b");
  REQUIRE(again.size() == files.size());
  for (std::size_t i = 0; i < files.size(); ++i) {
    CHECK(files[i].filename() == again[i].filename());
    CHECK(fixtures::slurp(files[i]) == fixtures::slurp(again[i]));
  }

  const auto pairs = export_pairs(default_run(), tmp.path() / "a");
  CHECK(pairs.size() == 2 * 19);
  CHECK(fixtures::slurp(pairs.front()).rfind("word1,word2,count\n", 0) == 0);

  CHECK_THROWS_AS(load_report(tmp.write("x.json", "{\"format\":\"other\",\"version\":1}")), Error);
  CHECK_THROWS_AS(load_report(tmp.write("y.json", "{\"format\":\"semnet-report\",\"version\":7}")), Error);
  CHECK_THROWS_AS(load_report(tmp.write("z.json", "{nope")), Error);
}

TEST_CASE("round_sig6 is a fixed point of its own text") {
  for (double x : {0.0, 1.0, -2.5, 0.1234567891, 123456789.0, 1e-300, 0.38067061143984215}) {
    const double r = round_sig6(x);
    CHECK(round_sig6(r) == r);
    if (x != 0.0) CHECK(std::fabs(r - x) <= 5e-6 * std::fabs(x));
  }
}

#include "semnet/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <numeric>
#include <sstream>

#include "semnet/error.hpp"

namespace semnet {

namespace fs = std::filesystem;

namespace {

Json num(double x) {
  if (!std::isfinite(x)) return nullptr;
  return round_sig6(x);
}

Json num(const std::optional<double>& x) { return x ? num(*x) : Json(nullptr); }

Json test_json(const std::optional<stats::TestResult>& t) {
  if (!t) return nullptr;
  return Json{{"method", stats::method_name(t->method)},
              {"alternative", stats::alternative_name(t->alternative)},
              {"statistic", num(t->statistic)},
              {"p_value", num(t->p_value)},
              {"n", t->n},
              {"exact", t->exact}};
}

Json cascade_json(const std::optional<stats::CascadeDecision>& d) {
  if (!d) return nullptr;
  return Json{{"metric", stats::metric_name(d->metric)},
              {"alpha", num(d->alpha)},
              {"n_pairs", d->n_pairs},
              {"normality", test_json(d->normality)},
              {"paired_t", test_json(d->paired_t)},
              {"wilcoxon", test_json(d->wilcoxon)},
              {"chosen", d->chosen ? Json(stats::method_name(*d->chosen)) : Json(nullptr)},
              {"reject_null", d->reject_null},
              {"degenerate", d->degenerate},
              {"note", d->note}};
}

Json sentiment_json(const SentimentSection& s) {
  Json docs = Json::array();
  for (const auto& d : s.documents)
    docs.push_back({{"id", d.doc_id},
                    {"mean_pos", num(d.mean_pos)},
                    {"mean_neg", num(d.mean_neg)},
                    {"prop_pos", d.scored() ? num(d.prop_pos) : Json(nullptr)},
                    {"prop_neg", d.scored() ? num(d.prop_neg) : Json(nullptr)},
                    {"n_pos", d.n_pos},
                    {"n_neg", d.n_neg}});
  const auto& a = s.aggregate;
  return Json{{"documents", docs},
              {"aggregate",
               {{"documents", a.documents},
                {"scored_documents", a.scored_documents},
                {"mean_of_mean_pos", num(a.mean_of_mean_pos)},
                {"mean_of_mean_neg", num(a.mean_of_mean_neg)},
                {"median_of_mean_pos", num(a.median_of_mean_pos)},
                {"median_of_mean_neg", num(a.median_of_mean_neg)},
                {"mean_prop_pos", num(a.mean_prop_pos)},
                {"mean_prop_neg", num(a.mean_prop_neg)},
                {"pooled_mean_pos", num(a.pooled_mean_pos)},
                {"pooled_mean_neg", num(a.pooled_mean_neg)},
                {"pooled_prop_pos", num(a.pooled_prop_pos)}}},
              {"tests", {{"mean_magnitude", cascade_json(s.magnitude)}, {"proportion", cascade_json(s.proportion)}}},
              {"notes", s.notes}};
}

Json network_json(const NetworkSection& n, std::size_t top_n) {
  Json out{{"mode", pair_mode_name(n.mode)},
           {"max_skip", n.max_skip},
           {"distinct_pairs", n.distinct_pairs},
           {"pair_total", n.pair_total},
           {"notes", n.notes}};

  Json thr{{"used", n.threshold},
           {"auto", n.scan.has_value()},
           {"relaxed_from", n.relaxed_from ? Json(*n.relaxed_from) : Json(nullptr)}};
  if (n.scan) {
    Json points = Json::array();
    for (const auto& p : n.scan->points) points.push_back({p.v, num(p.skew), p.surviving_pairs});
    thr["scan"] = {{"points", points},
                   {"chosen_v", n.scan->chosen_v},
                   {"degenerate", n.scan->degenerate},
                   {"stabilized", n.scan->stabilized},
                   {"epsilon", num(n.scan->epsilon)},
                   {"window", n.scan->window}};
  } else {
    thr["scan"] = nullptr;
  }
  out["threshold"] = thr;
  out["thresholded"] = {{"vertices", n.thresholded_vertices},
                        {"edges", n.thresholded_edges},
                        {"components", n.components}};

  if (!n.graph) {
    out["graph"] = nullptr;
    return out;
  }
  const SemanticGraph& g = *n.graph;
  const auto& s = n.summary;
  Json graph{{"summary",
              {{"vertices", s.vertices},
               {"edges", s.edges},
               {"mean_distance", num(s.mean_distance)},
               {"mean_degree", num(s.mean_degree)},
               {"degree_sd", num(s.degree_sd)},
               {"clique_number", s.clique_number},
               {"density", num(s.density)},
               {"transitivity", num(s.transitivity)},
               {"assortativity", num(s.assortativity)}}}};

  const Partition* best = n.communities ? &n.communities->detection.best.partition : nullptr;
  Json nodes = Json::array();
  for (Vertex v = 0; v < g.vertex_count(); ++v)
    nodes.push_back({{"label", g.label(v)},
                     {"degree", g.degree(v)},
                     {"strength", g.strength(v)},
                     {"core", n.cores[v]},
                     {"eigen", num(n.eigen[v])},
                     {"betweenness", num(n.betweenness[v])},
                     {"community", best ? Json(best->assignment[v]) : Json(nullptr)}});
  graph["nodes"] = nodes;
  Json edges = Json::array();
  for (const auto& e : g.edges()) edges.push_back({g.label(e.u), g.label(e.v), e.weight});
  graph["edges"] = edges;

  std::vector<Vertex> order(g.vertex_count());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](Vertex a, Vertex b) { return n.eigen[a] > n.eigen[b]; });
  Json top = Json::array();
  for (std::size_t i = 0; i < std::min(top_n, order.size()); ++i)
    top.push_back({g.label(order[i]), num(n.eigen[order[i]]), num(n.betweenness[order[i]])});
  graph["top_eigen"] = top;

  Json view = Json::array();
  for (Vertex v : n.core_view) view.push_back(g.label(v));
  graph["core_view"] = {{"median_core", n.median_core}, {"vertices", view}};

  if (n.communities) {
    const auto& c = *n.communities;
    Json results = Json::array();
    for (const auto& r : c.detection.results)
      results.push_back({{"method", community_method_name(r.method)},
                         {"modularity", num(r.modularity)},
                         {"communities", r.partition.community_count}});
    Json terms = Json::array();
    for (const auto& group : c.top_terms) {
      Json labels = Json::array();
      for (Vertex v : group) labels.push_back(g.label(v));
      terms.push_back(labels);
    }
    graph["communities"] = {{"best", community_method_name(c.detection.best.method)},
                            {"modularity", num(c.detection.best.modularity)},
                            {"count", c.detection.best.partition.community_count},
                            {"seed", c.seed},
                            {"results", results},
                            {"skipped_methods", c.skipped_methods},
                            {"top_terms", terms}};
  } else {
    graph["communities"] = nullptr;
  }
  out["graph"] = graph;
  return out;
}

Json scope_json(const ScopeReport& r, const AnalysisConfig& config) {
  Json out{{"name", r.scope.name()},
           {"slug", r.scope.slug()},
           {"subcase", r.scope.subcase ? Json(std::string(subcase_name(*r.scope.subcase))) : Json(nullptr)},
           {"role", r.scope.role ? Json(*r.scope.role == Role::Appearer ? "appearers" : "victims") : Json(nullptr)},
           {"skipped", r.skipped},
           {"skip_reason", r.skip_reason},
           {"seed", r.seed},
           {"documents", r.document_ids},
           {"empty_documents", r.empty_documents}};
  if (r.skipped) return out;
  out["lemmatization"] = {{"tokens", r.lemmatization.tokens},
                          {"unknown", r.lemmatization.unknown},
                          {"unknown_rate", num(r.lemmatization.unknown_rate())}};
  Json freq = Json::object();
  for (const auto& [key, table] : r.frequencies) {
    Json rows = Json::array();
    for (const auto& e : table) rows.push_back({e.lemma, e.count});
    freq[key] = rows;
  }
  out["frequencies"] = freq;
  out["sentiment"] = r.sentiment ? sentiment_json(*r.sentiment) : Json(nullptr);
  Json nets = Json::object();
  for (const auto& n : r.networks) nets[std::string(pair_mode_name(n.mode))] = network_json(n, config.top_terms);
  out["networks"] = nets;
  return out;
}

Json modularity_tables(const ReportBundle& b) {
  Json out = Json::object();
  for (PairMode mode : b.config.modes) {
    Json rows = Json::array();
    std::vector<std::optional<Subcase>> subcases{std::nullopt};
    for (Subcase s : kRegions) subcases.emplace_back(s);
    for (const auto& sub : subcases) {
      Json values = Json::array();
      for (const auto& role : {std::optional<Role>{}, std::optional<Role>{Role::Appearer}, std::optional<Role>{Role::Victim}}) {
        Json cell = nullptr;
        for (const auto& r : b.scopes) {
          if (r.skipped || r.scope.subcase != sub || r.scope.role != role) continue;
          for (const auto& n : r.networks)
            if (n.mode == mode && n.communities) cell = num(n.communities->detection.best.modularity);
        }
        values.push_back(cell);
      }
      rows.push_back({{"scope", sub ? std::string(subcase_name(*sub)) : "General"}, {"values", values}});
    }
    out[std::string(pair_mode_name(mode))] = {{"columns", {"All", "Appearers", "Victims"}}, {"rows", rows}};
  }
  return out;
}

std::string fmt(const Json& v) {
  if (v.is_null()) return "";
  if (v.is_number_float()) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v.get<double>());
    return buf;
  }
  if (v.is_string()) return v.get<std::string>();
  return v.dump();
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + '"';
}

std::string xml_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string dot_id(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + '"';
}

void write_text(const fs::path& path, const std::string& content, std::vector<fs::path>& written) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw_io("cannot write " + path.string());
  out << content;
  if (!out) throw_io("write failed: " + path.string());
  written.push_back(path);
}

const char* kNodeColumns[] = {"degree", "core", "eigen", "betweenness", "community"};

void export_graph(const Json& graph, const std::string& stem, const fs::path& dir, const ExportOptions& opt,
                  std::vector<fs::path>& written) {
  if (opt.csv) {
    std::ostringstream edges;
    edges << "source,target,weight\n";
    for (const auto& e : graph.at("edges"))
      edges << csv_field(e[0].get<std::string>()) << ',' << csv_field(e[1].get<std::string>()) << ',' << fmt(e[2]) << '\n';
    write_text(dir / (stem + "_edges.csv"), edges.str(), written);

    std::ostringstream nodes;
    nodes << "label,degree,core,eigen,betweenness,community\n";
    for (const auto& n : graph.at("nodes")) {
      nodes << csv_field(n.at("label").get<std::string>());
      for (const char* col : kNodeColumns) nodes << ',' << fmt(n.at(col));
      nodes << '\n';
    }
    write_text(dir / (stem + "_nodes.csv"), nodes.str(), written);
  }
  if (opt.dot) {
    std::ostringstream dot;
    dot << "graph " << dot_id(stem) << " {\n";
    for (const auto& n : graph.at("nodes")) {
      dot << "  " << dot_id(n.at("label").get<std::string>()) << " [";
      bool first = true;
      for (const char* col : kNodeColumns) {
        if (n.at(col).is_null()) continue;
        dot << (first ? "" : ", ") << col << '=' << fmt(n.at(col));
        first = false;
      }
      dot << "];\n";
    }
    for (const auto& e : graph.at("edges"))
      dot << "  " << dot_id(e[0].get<std::string>()) << " -- " << dot_id(e[1].get<std::string>()) << " [weight="
          << fmt(e[2]) << "];\n";
    dot << "}\n";
    write_text(dir / (stem + ".dot"), dot.str(), written);
  }
  if (opt.graphml) {
    std::ostringstream xml;
    xml << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        << "<graphml xmlns=\"http://graphml.graphdrawing.org/xmlns\">\n"
        << "  <key id=\"degree\" for=\"node\" attr.name=\"degree\" attr.type=\"int\"/>\n"
        << "  <key id=\"core\" for=\"node\" attr.name=\"core\" attr.type=\"int\"/>\n"
        << "  <key id=\"eigen\" for=\"node\" attr.name=\"eigen\" attr.type=\"double\"/>\n"
        << "  <key id=\"betweenness\" for=\"node\" attr.name=\"betweenness\" attr.type=\"double\"/>\n"
        << "  <key id=\"community\" for=\"node\" attr.name=\"community\" attr.type=\"int\"/>\n"
        << "  <key id=\"weight\" for=\"edge\" attr.name=\"weight\" attr.type=\"int\"/>\n"
        << "  <graph id=\"" << xml_escape(stem) << "\" edgedefault=\"undirected\">\n";
    for (const auto& n : graph.at("nodes")) {
      xml << "    <node id=\"" << xml_escape(n.at("label").get<std::string>()) << "\">\n";
      for (const char* col : kNodeColumns)
        if (!n.at(col).is_null()) xml << "      <data key=\"" << col << "\">" << fmt(n.at(col)) << "</data>\n";
      xml << "    </node>\n";
    }
    for (const auto& e : graph.at("edges"))
      xml << "    <edge source=\"" << xml_escape(e[0].get<std::string>()) << "\" target=\""
          << xml_escape(e[1].get<std::string>()) << "\"><data key=\"weight\">" << fmt(e[2]) << "</data></edge>\n";
    xml << "  </graph>\n</graphml>\n";
    write_text(dir / (stem + ".graphml"), xml.str(), written);
  }
}

std::string pad(std::string s, std::size_t width) {
  // Display width counts code points, not bytes.
  std::size_t cps = 0;
  for (unsigned char c : s) cps += (c & 0xC0) != 0x80;
  if (cps < width) s.append(width - cps, ' ');
  return s;
}

}  // namespace

double round_sig6(double x) {
  if (!std::isfinite(x) || x == 0.0) return x == 0.0 ? 0.0 : x;
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return std::strtod(buf, nullptr);
}

Json config_to_json(const AnalysisConfig& c) {
  Json modes = Json::array();
  for (PairMode m : c.modes) modes.push_back(pair_mode_name(m));
  Json methods = Json::array();
  for (CommunityMethod m : c.methods) methods.push_back(community_method_name(m));
  return Json{{"corpus", c.corpus},
              {"data_dir", c.data_dir},
              {"lemmas", c.lemmas},
              {"valence", c.valence},
              {"positive", c.positive},
              {"negative", c.negative},
              {"stopwords", c.stopwords},
              {"modes", modes},
              {"max_skip", c.max_skip},
              {"order", pair_order_name(c.order)},
              {"self_pairs", c.self_pairs},
              {"threshold", c.threshold ? Json(*c.threshold) : Json("auto")},
              {"epsilon", num(c.epsilon)},
              {"window", c.window},
              {"min_vertices", c.min_vertices},
              {"alpha", num(c.alpha)},
              {"fallback_weight", c.fallback_weight},
              {"fold_diacritics", c.fold_diacritics},
              {"min_docs", c.min_docs},
              {"methods", methods},
              {"modularity_weights", c.modularity_weights},
              {"eigen_weights", c.eigen_weights},
              {"seed", c.seed},
              {"top_terms", c.top_terms},
              {"top_frequencies", c.top_frequencies},
              {"sentiment", c.sentiment},
              {"network", c.network},
              {"scopes", c.scopes}};
}

Json bundle_to_json(const ReportBundle& b) {
  Json elig = Json::array();
  for (const auto& cell : b.eligibility)
    elig.push_back({{"subcase", cell.subcase ? std::string(subcase_name(*cell.subcase)) : "General"},
                    {"role", cell.role == Role::Appearer ? "appearers" : "victims"},
                    {"count", cell.count},
                    {"eligible", cell.eligible}});
  Json scopes = Json::array();
  for (const auto& s : b.scopes) scopes.push_back(scope_json(s, b.config));
  return Json{{"format", "semnet-report"},
              {"version", kReportVersion},
              {"config", config_to_json(b.config)},
              {"lexicons", b.lexicons},
              {"corpus", {{"documents", b.corpus_documents}, {"eligibility", elig}}},
              {"scopes", scopes},
              {"modularity", modularity_tables(b)}};
}

std::string dump_report(const Json& report) { return report.dump(2) + "\n"; }

Json load_report(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw_io("cannot read " + path.string());
  Json j;
  try {
    j = Json::parse(in);
  } catch (const Json::exception& e) {
    throw_data(path.string() + ": not valid JSON: " + e.what());
  }
  if (!j.is_object() || j.value("format", "") != "semnet-report")
    throw_data(path.string() + ": not a semnet report");
  if (j.value("version", 0) != kReportVersion)
    throw_data(path.string() + ": unsupported report version " + std::to_string(j.value("version", 0)));
  return j;
}

std::vector<fs::path> export_bundle(const Json& report, const fs::path& dir, const ExportOptions& opt) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw_io("cannot create " + dir.string() + ": " + ec.message());
  std::vector<fs::path> written;
  write_text(dir / "report.json", dump_report(report), written);

  try {
    for (const auto& scope : report.at("scopes")) {
      if (scope.at("skipped").get<bool>()) continue;
      const std::string slug = scope.at("slug").get<std::string>();
      if (opt.csv) {
        std::ostringstream f;
        f << "upos,rank,lemma,count\n";
        for (const auto& [upos, rows] : scope.at("frequencies").items()) {
          std::size_t rank = 0;
          for (const auto& row : rows)
            f << upos << ',' << ++rank << ',' << csv_field(row[0].get<std::string>()) << ',' << fmt(row[1]) << '\n';
        }
        write_text(dir / (slug + "_frequencies.csv"), f.str(), written);
      }
      for (const auto& [mode, net] : scope.at("networks").items())
        if (!net.at("graph").is_null()) export_graph(net.at("graph"), slug + "_" + mode, dir, opt, written);
    }
    if (opt.csv) {
      for (const auto& [mode, table] : report.at("modularity").items()) {
        std::ostringstream f;
        f << "scope,All,Appearers,Victims\n";
        for (const auto& row : table.at("rows")) {
          f << csv_field(row.at("scope").get<std::string>());
          for (const auto& v : row.at("values")) f << ',' << fmt(v);
          f << '\n';
        }
        write_text(dir / ("modularity_" + mode + ".csv"), f.str(), written);
      }
      std::ostringstream t;
      t << "scope,metric,n_pairs,shapiro_w,shapiro_p,t,t_p,v,v_p,chosen,reject_null\n";
      for (const auto& scope : report.at("scopes")) {
        if (scope.at("skipped").get<bool>() || scope.at("sentiment").is_null()) continue;
        for (const auto& [metric, d] : scope.at("sentiment").at("tests").items()) {
          if (d.is_null()) continue;
          auto stat = [&](const char* test, const char* field) {
            return d.at(test).is_null() ? std::string() : fmt(d.at(test).at(field));
          };
          t << csv_field(scope.at("name").get<std::string>()) << ',' << metric << ',' << fmt(d.at("n_pairs")) << ','
            << stat("normality", "statistic") << ',' << stat("normality", "p_value") << ','
            << stat("paired_t", "statistic") << ',' << stat("paired_t", "p_value") << ','
            << stat("wilcoxon", "statistic") << ',' << stat("wilcoxon", "p_value") << ',' << fmt(d.at("chosen")) << ','
            << fmt(d.at("reject_null")) << '\n';
        }
      }
      write_text(dir / "sentiment_tests.csv", t.str(), written);
    }
  } catch (const Json::exception& e) {
    throw_data(std::string("report is missing expected fields: ") + e.what());
  }
  return written;
}

std::vector<fs::path> export_pairs(const ReportBundle& bundle, const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw_io("cannot create " + dir.string() + ": " + ec.message());
  std::vector<fs::path> written;
  for (const auto& scope : bundle.scopes)
    for (const auto& net : scope.networks) {
      if (!net.pairs) continue;
      std::ostringstream out;
      write_pairs_csv(*net.pairs, out);
      write_text(dir / (scope.scope.slug() + "_" + std::string(pair_mode_name(net.mode)) + "_pairs.csv"), out.str(),
                 written);
    }
  return written;
}

std::string summary_text(const Json& report) {
  std::ostringstream out;
  const auto& scopes = report.at("scopes");
  out << "corpus: " << report.at("corpus").at("documents") << " documents\n\n";
  for (const auto& s : scopes) {
    out << pad(s.at("name").get<std::string>(), 30);
    if (s.at("skipped").get<bool>()) {
      out << "skipped (" << s.at("skip_reason").get<std::string>() << ")\n";
      continue;
    }
    out << s.at("documents").size() << " docs";
    const auto& sent = s.at("sentiment");
    if (!sent.is_null()) {
      for (const auto& [metric, d] : sent.at("tests").items()) {
        out << "  " << metric << ": ";
        if (d.is_null()) {
          out << "n/a";
        } else if (d.at("degenerate").get<bool>()) {
          out << "degenerate";
        } else {
          const std::string chosen = d.at("chosen").get<std::string>();
          out << chosen << " p=" << fmt(d.at(chosen == "paired-t" ? "paired_t" : "wilcoxon").at("p_value"))
              << (d.at("reject_null").get<bool>() ? " reject" : " keep");
        }
      }
    }
    for (const auto& [mode, net] : s.at("networks").items()) {
      out << "  " << mode << ": v=" << net.at("threshold").at("used");
      if (!net.at("graph").is_null()) {
        const auto& g = net.at("graph");
        out << " |V|=" << g.at("summary").at("vertices");
        if (!g.at("communities").is_null())
          out << " Q=" << fmt(g.at("communities").at("modularity")) << " ("
              << g.at("communities").at("best").get<std::string>() << ")";
      }
    }
    out << '\n';
  }
  for (const auto& [mode, table] : report.at("modularity").items()) {
    out << "\nmodularity, " << mode << " networks\n" << pad("", 22);
    for (const auto& c : table.at("columns")) out << pad(c.get<std::string>(), 12);
    out << '\n';
    for (const auto& row : table.at("rows")) {
      out << pad(row.at("scope").get<std::string>(), 22);
      for (const auto& v : row.at("values")) out << pad(v.is_null() ? "-" : fmt(v), 12);
      out << '\n';
    }
  }
  return out.str();
}

std::string inspect_text(const Corpus& corpus, std::size_t min_docs) {
  std::ostringstream out;
  out << "source: " << corpus.source_path() << "\n";
  std::size_t empty = 0;
  for (const auto& d : corpus.documents()) empty += d.skipped;
  out << "documents: " << corpus.size() << " (" << empty << " with empty text)\n\n";
  out << pad("subcase", 22) << pad("all", 8) << pad("appearers", 11) << pad("victims", 9) << "unknown\n";
  std::vector<std::optional<Subcase>> rows{std::nullopt};
  for (Subcase s : kRegions) rows.emplace_back(s);
  rows.emplace_back(Subcase::Unassigned);
  for (const auto& s : rows) {
    out << pad(s ? std::string(subcase_name(*s)) : "General", 22) << pad(std::to_string(corpus.count(s, std::nullopt)), 8)
        << pad(std::to_string(corpus.count(s, Role::Appearer)), 11) << pad(std::to_string(corpus.count(s, Role::Victim)), 9)
        << corpus.count(s, Role::Unknown) << '\n';
  }
  out << "\nrole-split eligibility (min_docs = " << min_docs << ")\n";
  for (const auto& cell : role_analysis_eligibility(corpus, min_docs)) {
    out << pad(cell.subcase ? std::string(subcase_name(*cell.subcase)) : "General", 22)
        << pad(cell.role == Role::Appearer ? "appearers" : "victims", 11) << pad(std::to_string(cell.count), 6)
        << (cell.eligible ? "eligible" : "excluded") << '\n';
  }
  return out.str();
}

}  // namespace semnet

// Command-line front end. Talks to the library only through the C API.

#include <cstdio>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "semnet/semnet.h"

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitData = 2;
constexpr int kExitInternal = 3;

struct Failure {
  semnet_status status;
};

void check(semnet_status s) {
  if (s != SEMNET_OK) throw Failure{s};
}

int exit_code(semnet_status s) {
  switch (s) {
    case SEMNET_OK: return 0;
    case SEMNET_ERR_USAGE: return kExitUsage;
    case SEMNET_ERR_DATA:
    case SEMNET_ERR_IO: return kExitData;
    default: return kExitInternal;
  }
}

// Owns a library-allocated string.
struct Text {
  char* p = nullptr;
  ~Text() { semnet_string_free(p); }
  std::string str() const { return p ? p : ""; }
};

struct RunOptions {
  std::string config;
  // Settings in the order they are applied after the config file.
  std::vector<std::pair<std::string, std::string*>> flags;
  std::vector<std::string> scopes;
  std::vector<std::string> extra;  // --set key=value
  bool quiet = false;
};

void add_run_options(CLI::App* cmd, RunOptions& o, std::vector<std::string>& storage) {
  storage.resize(16);
  cmd->add_option("-c,--config", o.config, "INI-style configuration file");
  auto flag = [&](const char* name, const char* key, const char* help) {
    std::string* slot = &storage[o.flags.size()];
    cmd->add_option(name, *slot, help);
    o.flags.emplace_back(key, slot);
  };
  flag("--corpus", "corpus", "transcript file or directory");
  flag("--data-dir", "data_dir", "directory holding the default lexicons");
  flag("--mode", "mode", "bigram, skipgram or both");
  flag("--max-skip", "max_skip", "intervening words allowed in skipgrams");
  flag("--threshold", "threshold", "auto or a fixed minimum pair count");
  flag("--order", "order", "stopwords-first or pairs-first");
  flag("--seed", "seed", "seed for the randomized community methods");
  flag("--alpha", "alpha", "normality gate and test level");
  flag("--fallback-weight", "fallback_weight", "score given to polarity-list hits");
  flag("--methods", "methods", "comma-separated community methods");
  flag("--min-docs", "min_docs", "documents a scope needs to be analyzed");
  flag("--threads", "threads", "worker threads, 0 for all cores");
  flag("-o,--out", "out", "output directory");
  cmd->add_option("--scope", o.scopes, "restrict to a scope such as \"Huila/Victims\" (repeatable)");
  cmd->add_option("--set", o.extra, "any other setting as key=value (repeatable)");
  cmd->add_flag("--fold-diacritics", "fold accents before matching lexicons");
  cmd->add_flag("-q,--quiet", o.quiet, "do not print the summary");
}

semnet_config* build_config(const CLI::App* cmd, const RunOptions& o) {
  semnet_config* config = nullptr;
  check(o.config.empty() ? semnet_config_new(&config) : semnet_config_load(o.config.c_str(), &config));
  try {
    for (const auto& [key, slot] : o.flags)
      if (!slot->empty()) check(semnet_config_set(config, key.c_str(), slot->c_str()));
    if (cmd->count("--fold-diacritics")) check(semnet_config_set(config, "fold_diacritics", "true"));
    if (!o.scopes.empty()) {
      std::string joined;
      for (const auto& s : o.scopes) joined += (joined.empty() ? "" : ",") + s;
      check(semnet_config_set(config, "scopes", joined.c_str()));
    }
    for (const auto& kv : o.extra) {
      const auto eq = kv.find('=');
      if (eq == std::string::npos) {
        std::fprintf(stderr, "error: --set expects key=value, got \"%s\"\n", kv.c_str());
        throw Failure{SEMNET_ERR_USAGE};
      }
      check(semnet_config_set(config, kv.substr(0, eq).c_str(), kv.substr(eq + 1).c_str()));
    }
  } catch (...) {
    semnet_config_free(config);
    throw;
  }
  return config;
}

void run(const CLI::App* cmd, const RunOptions& o, const char* only, bool keep_pairs) {
  semnet_config* config = build_config(cmd, o);
  semnet_bundle* bundle = nullptr;
  try {
    if (only) check(semnet_config_set(config, only, "false"));
    Text out;
    check(semnet_config_get(config, "out", &out.p));
    check(semnet_run(config, keep_pairs ? 1 : 0, &bundle));
    size_t files = 0, pairs = 0;
    check(semnet_bundle_export(bundle, out.p, &files));
    if (keep_pairs) check(semnet_bundle_write_pairs(bundle, out.p, &pairs));
    if (!o.quiet) {
      Text summary;
      check(semnet_bundle_summary(bundle, &summary.p));
      std::fputs(summary.p, stdout);
      std::fflush(stdout);
    }
    if (!o.quiet) std::fprintf(stderr, "wrote %zu files to %s\n", files + pairs, out.p);
  } catch (...) {
    semnet_bundle_free(bundle);
    semnet_config_free(config);
    throw;
  }
  semnet_bundle_free(bundle);
  semnet_config_free(config);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Semantic co-occurrence networks and sentiment tests for transcript corpora"};
  app.set_version_flag("--version", std::string(semnet_version()));
  app.require_subcommand(1);

  std::vector<std::string> s1, s2, s3;
  RunOptions analyze_opt, sentiment_opt, network_opt;
  auto* analyze = app.add_subcommand("analyze", "full run: sentiment tests and networks for every scope");
  add_run_options(analyze, analyze_opt, s1);
  auto* sentiment = app.add_subcommand("sentiment", "sentiment summaries and the paired test cascade only");
  add_run_options(sentiment, sentiment_opt, s2);
  auto* network = app.add_subcommand("network", "pair extraction and graph analysis only, with raw pair counts");
  add_run_options(network, network_opt, s3);

  std::string report_path, export_dir;
  auto* exp = app.add_subcommand("export", "re-emit CSV and graph files from a saved report.json");
  exp->add_option("report", report_path, "report.json from an earlier run")->required();
  exp->add_option("-o,--out", export_dir, "output directory")->required();

  std::string inspect_corpus, inspect_config;
  std::size_t inspect_min_docs = 3;
  auto* inspect = app.add_subcommand("inspect", "document counts by subcase and role, with eligibility");
  inspect->add_option("--corpus", inspect_corpus, "transcript file or directory");
  inspect->add_option("-c,--config", inspect_config, "take the corpus path from a configuration file");
  inspect->add_option("--min-docs", inspect_min_docs, "documents a role split needs")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (analyze->parsed()) {
      run(analyze, analyze_opt, nullptr, false);
    } else if (sentiment->parsed()) {
      run(sentiment, sentiment_opt, "network", false);
    } else if (network->parsed()) {
      run(network, network_opt, "sentiment", true);
    } else if (exp->parsed()) {
      semnet_bundle* bundle = nullptr;
      check(semnet_bundle_load(report_path.c_str(), &bundle));
      size_t files = 0;
      const semnet_status s = semnet_bundle_export(bundle, export_dir.c_str(), &files);
      semnet_bundle_free(bundle);
      check(s);
      std::fprintf(stderr, "wrote %zu files to %s\n", files, export_dir.c_str());
    } else if (inspect->parsed()) {
      std::string path = inspect_corpus;
      if (path.empty() && !inspect_config.empty()) {
        semnet_config* config = nullptr;
        check(semnet_config_load(inspect_config.c_str(), &config));
        Text corpus_path;
        const semnet_status s = semnet_config_get(config, "corpus", &corpus_path.p);
        semnet_config_free(config);
        check(s);
        path = corpus_path.str();
      }
      if (path.empty()) {
        std::fprintf(stderr, "error: inspect needs --corpus or a config that names one\n");
        return kExitUsage;
      }
      semnet_corpus* corpus = nullptr;
      check(semnet_corpus_load(path.c_str(), &corpus));
      Text text;
      const semnet_status s = semnet_corpus_inspect(corpus, inspect_min_docs, &text.p);
      semnet_corpus_free(corpus);
      check(s);
      std::fputs(text.p, stdout);
    }
  } catch (const Failure& f) {
    const char* msg = semnet_last_error();
    if (msg && *msg) std::fprintf(stderr, "error: %s\n", msg);
    return exit_code(f.status);
  }
  return 0;
}

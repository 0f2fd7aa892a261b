#include "semnet/semnet.h"

#include <algorithm>
#include <cstring>
#include <memory>
#include <new>
#include <optional>
#include <string>

#include "semnet/error.hpp"
#include "semnet/pipeline.hpp"
#include "semnet/report.hpp"
#include "semnet/stats.hpp"

struct semnet_config {
  semnet::AnalysisConfig value;
};

struct semnet_corpus {
  semnet::Corpus value;
};

struct semnet_bundle {
  semnet::Json report;
  std::optional<semnet::ReportBundle> run;  // absent for bundles loaded from disk
};

namespace {

thread_local std::string last_error;

semnet_status fail(semnet_status status, const char* what) {
  last_error = what;
  return status;
}

template <typename F>
semnet_status guarded(F&& body) {
  try {
    body();
    last_error.clear();
    return SEMNET_OK;
  } catch (const semnet::Error& e) {
    switch (e.kind()) {
      case semnet::ErrorKind::Usage: return fail(SEMNET_ERR_USAGE, e.what());
      case semnet::ErrorKind::Io: return fail(SEMNET_ERR_IO, e.what());
      case semnet::ErrorKind::Data:
      case semnet::ErrorKind::Numeric: return fail(SEMNET_ERR_DATA, e.what());
    }
    return fail(SEMNET_ERR_INTERNAL, e.what());
  } catch (const std::bad_alloc&) {
    return fail(SEMNET_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(SEMNET_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(SEMNET_ERR_INTERNAL, "unknown error");
  }
}

void require(const void* p, const char* name) {
  if (!p) semnet::throw_usage(std::string(name) + " must not be null");
}

char* copy_string(const std::string& s) {
  char* out = new char[s.size() + 1];
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

semnet::stats::Alternative to_alternative(int a) {
  switch (a) {
    case SEMNET_TWO_SIDED: return semnet::stats::Alternative::TwoSided;
    case SEMNET_GREATER: return semnet::stats::Alternative::Greater;
    case SEMNET_LESS: return semnet::stats::Alternative::Less;
  }
  semnet::throw_usage("unknown alternative " + std::to_string(a));
}

}  // namespace

extern "C" {

const char* semnet_version(void) { return SEMNET_VERSION; }

const char* semnet_last_error(void) { return last_error.c_str(); }

void semnet_string_free(char* s) { delete[] s; }

semnet_status semnet_config_new(semnet_config** out) {
  return guarded([&] {
    require(out, "out");
    *out = new semnet_config{};
  });
}

semnet_status semnet_config_load(const char* path, semnet_config** out) {
  return guarded([&] {
    require(path, "path");
    require(out, "out");
    *out = new semnet_config{semnet::AnalysisConfig::from_file(path)};
  });
}

semnet_status semnet_config_set(semnet_config* config, const char* key, const char* value) {
  return guarded([&] {
    require(config, "config");
    require(key, "key");
    require(value, "value");
    config->value.set(key, value);
  });
}

semnet_status semnet_config_get(const semnet_config* config, const char* key, char** out) {
  return guarded([&] {
    require(config, "config");
    require(key, "key");
    require(out, "out");
    const semnet::Json j = semnet::config_to_json(config->value);
    std::string k = key;
    std::replace(k.begin(), k.end(), '-', '_');
    if (k == "out") {
      *out = copy_string(config->value.out);
      return;
    }
    auto it = j.find(k);
    if (it == j.end()) semnet::throw_usage("unknown setting \"" + std::string(key) + "\"");
    *out = copy_string(it->is_string() ? it->get<std::string>() : it->dump());
  });
}

semnet_status semnet_config_to_json(const semnet_config* config, char** out) {
  return guarded([&] {
    require(config, "config");
    require(out, "out");
    *out = copy_string(semnet::config_to_json(config->value).dump(2));
  });
}

void semnet_config_free(semnet_config* config) { delete config; }

semnet_status semnet_corpus_load(const char* path, semnet_corpus** out) {
  return guarded([&] {
    require(path, "path");
    require(out, "out");
    *out = new semnet_corpus{semnet::load_corpus(path)};
  });
}

semnet_status semnet_corpus_size(const semnet_corpus* corpus, size_t* out) {
  return guarded([&] {
    require(corpus, "corpus");
    require(out, "out");
    *out = corpus->value.size();
  });
}

semnet_status semnet_corpus_count(const semnet_corpus* corpus, int subcase, int role, size_t* out) {
  return guarded([&] {
    require(corpus, "corpus");
    require(out, "out");
    std::optional<semnet::Subcase> s;
    std::optional<semnet::Role> r;
    if (subcase != SEMNET_ANY) {
      if (subcase < SEMNET_ANTIOQUIA || subcase > SEMNET_UNASSIGNED) semnet::throw_usage("unknown subcase code");
      s = static_cast<semnet::Subcase>(subcase);
    }
    if (role != SEMNET_ANY) {
      if (role < SEMNET_VICTIM || role > SEMNET_UNKNOWN_ROLE) semnet::throw_usage("unknown role code");
      r = static_cast<semnet::Role>(role);
    }
    *out = corpus->value.count(s, r);
  });
}

semnet_status semnet_corpus_inspect(const semnet_corpus* corpus, size_t min_docs, char** out) {
  return guarded([&] {
    require(corpus, "corpus");
    require(out, "out");
    *out = copy_string(semnet::inspect_text(corpus->value, min_docs));
  });
}

void semnet_corpus_free(semnet_corpus* corpus) { delete corpus; }

semnet_status semnet_run(const semnet_config* config, int keep_pairs, semnet_bundle** out) {
  return guarded([&] {
    require(config, "config");
    require(out, "out");
    auto b = std::make_unique<semnet_bundle>();
    b->run = semnet::run_all(config->value, keep_pairs != 0);
    b->report = semnet::bundle_to_json(*b->run);
    *out = b.release();
  });
}

semnet_status semnet_bundle_load(const char* report_path, semnet_bundle** out) {
  return guarded([&] {
    require(report_path, "report_path");
    require(out, "out");
    *out = new semnet_bundle{semnet::load_report(report_path), std::nullopt};
  });
}

semnet_status semnet_bundle_to_json(const semnet_bundle* bundle, char** out) {
  return guarded([&] {
    require(bundle, "bundle");
    require(out, "out");
    *out = copy_string(semnet::dump_report(bundle->report));
  });
}

semnet_status semnet_bundle_summary(const semnet_bundle* bundle, char** out) {
  return guarded([&] {
    require(bundle, "bundle");
    require(out, "out");
    *out = copy_string(semnet::summary_text(bundle->report));
  });
}

semnet_status semnet_bundle_export(const semnet_bundle* bundle, const char* dir, size_t* written) {
  return guarded([&] {
    require(bundle, "bundle");
    require(dir, "dir");
    const auto files = semnet::export_bundle(bundle->report, dir);
    if (written) *written = files.size();
  });
}

semnet_status semnet_bundle_write_pairs(const semnet_bundle* bundle, const char* dir, size_t* written) {
  return guarded([&] {
    require(bundle, "bundle");
    require(dir, "dir");
    std::size_t n = 0;
    if (bundle->run) n = semnet::export_pairs(*bundle->run, dir).size();
    if (written) *written = n;
  });
}

void semnet_bundle_free(semnet_bundle* bundle) { delete bundle; }

semnet_status semnet_skewness(const double* x, size_t n, double* out) {
  return guarded([&] {
    require(x, "x");
    require(out, "out");
    *out = semnet::stats::skewness({x, n});
  });
}

semnet_status semnet_shapiro_wilk(const double* x, size_t n, double* w, double* p) {
  return guarded([&] {
    require(x, "x");
    const auto r = semnet::stats::shapiro_wilk({x, n});
    if (w) *w = r.statistic;
    if (p) *p = r.p_value;
  });
}

semnet_status semnet_paired_t(const double* x, const double* y, size_t n, int alternative, double* t, double* p) {
  return guarded([&] {
    require(x, "x");
    require(y, "y");
    const auto r = semnet::stats::paired_t_test({x, n}, {y, n}, to_alternative(alternative));
    if (t) *t = r.statistic;
    if (p) *p = r.p_value;
  });
}

semnet_status semnet_wilcoxon(const double* x, const double* y, size_t n, int alternative, double* v, double* p,
                              int* exact) {
  return guarded([&] {
    require(x, "x");
    require(y, "y");
    const auto r = semnet::stats::wilcoxon_signed_rank({x, n}, {y, n}, to_alternative(alternative));
    if (v) *v = r.statistic;
    if (p) *p = r.p_value;
    if (exact) *exact = r.exact ? 1 : 0;
  });
}

}  // extern "C"

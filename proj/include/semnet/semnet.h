#ifndef SEMNET_SEMNET_H
#define SEMNET_SEMNET_H

#include <stddef.h>

#if defined(_WIN32)
#if defined(SEMNET_BUILDING)
#define SEMNET_API __declspec(dllexport)
#else
#define SEMNET_API __declspec(dllimport)
#endif
#else
#define SEMNET_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum semnet_status {
  SEMNET_OK = 0,
  SEMNET_ERR_USAGE = 1,
  SEMNET_ERR_DATA = 2,
  SEMNET_ERR_IO = 3,
  SEMNET_ERR_INTERNAL = 4
} semnet_status;

/* Mirrors the corpus metadata; SEMNET_ANY matches every value in counts. */
enum {
  SEMNET_ANY = -1,
  SEMNET_ANTIOQUIA = 0,
  SEMNET_CASANARE = 1,
  SEMNET_COSTA_CARIBE = 2,
  SEMNET_HUILA = 3,
  SEMNET_META = 4,
  SEMNET_NORTE_DE_SANTANDER = 5,
  SEMNET_UNASSIGNED = 6
};
enum { SEMNET_VICTIM = 0, SEMNET_APPEARER = 1, SEMNET_UNKNOWN_ROLE = 2 };
enum { SEMNET_TWO_SIDED = 0, SEMNET_GREATER = 1, SEMNET_LESS = 2 };

typedef struct semnet_config semnet_config;
typedef struct semnet_corpus semnet_corpus;
typedef struct semnet_bundle semnet_bundle;

SEMNET_API const char* semnet_version(void);

/* Message for the last failed call on this thread; "" after a success. */
SEMNET_API const char* semnet_last_error(void);

/* Strings handed out by the library are released with this. */
SEMNET_API void semnet_string_free(char* s);

SEMNET_API semnet_status semnet_config_new(semnet_config** out);
SEMNET_API semnet_status semnet_config_load(const char* path, semnet_config** out);
SEMNET_API semnet_status semnet_config_set(semnet_config* config, const char* key, const char* value);
/* Current value of one setting as text, e.g. "corpus" or "out". */
SEMNET_API semnet_status semnet_config_get(const semnet_config* config, const char* key, char** out);
SEMNET_API semnet_status semnet_config_to_json(const semnet_config* config, char** out);
SEMNET_API void semnet_config_free(semnet_config* config);

SEMNET_API semnet_status semnet_corpus_load(const char* path, semnet_corpus** out);
SEMNET_API semnet_status semnet_corpus_size(const semnet_corpus* corpus, size_t* out);
SEMNET_API semnet_status semnet_corpus_count(const semnet_corpus* corpus, int subcase, int role, size_t* out);
SEMNET_API semnet_status semnet_corpus_inspect(const semnet_corpus* corpus, size_t min_docs, char** out);
SEMNET_API void semnet_corpus_free(semnet_corpus* corpus);

/* Runs every selected scope. keep_pairs retains the raw pair counts so that
   semnet_bundle_write_pairs has something to write. */
SEMNET_API semnet_status semnet_run(const semnet_config* config, int keep_pairs, semnet_bundle** out);
SEMNET_API semnet_status semnet_bundle_load(const char* report_path, semnet_bundle** out);
SEMNET_API semnet_status semnet_bundle_to_json(const semnet_bundle* bundle, char** out);
SEMNET_API semnet_status semnet_bundle_summary(const semnet_bundle* bundle, char** out);
/* report.json plus CSV, DOT and GraphML files; *written gets the file count. */
SEMNET_API semnet_status semnet_bundle_export(const semnet_bundle* bundle, const char* dir, size_t* written);
SEMNET_API semnet_status semnet_bundle_write_pairs(const semnet_bundle* bundle, const char* dir, size_t* written);
SEMNET_API void semnet_bundle_free(semnet_bundle* bundle);

SEMNET_API semnet_status semnet_skewness(const double* x, size_t n, double* out);
SEMNET_API semnet_status semnet_shapiro_wilk(const double* x, size_t n, double* w, double* p);
SEMNET_API semnet_status semnet_paired_t(const double* x, const double* y, size_t n, int alternative, double* t,
                                         double* p);
/* exact is set to 1 when p comes from the full sign-flip distribution. */
SEMNET_API semnet_status semnet_wilcoxon(const double* x, const double* y, size_t n, int alternative, double* v,
                                         double* p, int* exact);

#ifdef __cplusplus
}
#endif

#endif

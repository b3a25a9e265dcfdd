#ifndef CLICKBAIT_H
#define CLICKBAIT_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum CbStatus {
  CB_STATUS_OK = 0,
  CB_STATUS_NULL_ARGUMENT = 1,
  CB_STATUS_INVALID_UTF8 = 2,
  CB_STATUS_INVALID_ARGUMENT = 3,
  CB_STATUS_DATA_ERROR = 4,
  CB_STATUS_TRAINING_ERROR = 5,
  CB_STATUS_IO_ERROR = 6,
  CB_STATUS_PANIC = 7,
} CbStatus;

typedef enum CbLabel {
  CB_LABEL_NEWS = 0,
  CB_LABEL_CLICKBAIT = 1,
} CbLabel;

typedef enum CbMethod {
  CB_METHOD_PATTERN = 0,
  CB_METHOD_TOPIC = 1,
  CB_METHOD_HYBRID = 2,
} CbMethod;

typedef enum CbAction {
  CB_ACTION_CLICKED = 0,
  CB_ACTION_BLOCKED = 1,
} CbAction;

// Opaque trained model.
typedef struct CbEngine CbEngine;

// Opaque per-user blocking profile.
typedef struct CbProfile CbProfile;

typedef struct CbClassification {
  enum CbLabel label;
  double score;
} CbClassification;

typedef struct CbBlockDecision {
  // 1 to block, 0 to allow.
  int32_t block;
  double block_score;
  double click_score;
} CbBlockDecision;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Copy the calling thread's last error message into `buf` (NUL-terminated,
// truncated to `len`). Returns the full message length excluding the NUL;
// 0 when there is no error recorded.
//
// # Safety
// `buf` is null or points to at least `len` writable bytes.
size_t cb_last_error(char *buf, size_t len);

// Library version as a static NUL-terminated string.
const char *cb_version(void);

// Load a model bundle written by `clickbait train` or `cb_engine_save`.
//
// # Safety
// `path` is a valid NUL-terminated string; `out` is a valid pointer.
enum CbStatus cb_engine_load(const char *path, struct CbEngine **out);

// Train a bundle from a corpus file (JSON-Lines or TSV), or from the bundled
// sample corpus when `corpus_path` is null. Slow: trains the annotators too.
//
// # Safety
// `corpus_path` is null or a valid NUL-terminated string; `out` is a valid pointer.
enum CbStatus cb_engine_train(const char *corpus_path, uint64_t seed, struct CbEngine **out);

// # Safety
// `engine` and `path` are valid.
enum CbStatus cb_engine_save(const struct CbEngine *engine, const char *path);

// Release an engine. Null is ignored.
//
// # Safety
// `engine` came from `cb_engine_load` / `cb_engine_train` and is not used afterwards.
void cb_engine_free(struct CbEngine *engine);

// Model version stamped in the bundle; 0 for a null engine.
//
// # Safety
// `engine` is null or valid.
uint64_t cb_engine_version(const struct CbEngine *engine);

// # Safety
// `engine`, `text` and `out` are valid.
enum CbStatus cb_classify(const struct CbEngine *engine,
                          const char *text,
                          struct CbClassification *out);

// New empty profile; `method` is a `CbMethod` value. `graph_path` selects a concept graph file; null uses
// the bundled graph.
//
// # Safety
// `engine` and `out` are valid; `graph_path` is null or a valid string.
enum CbStatus cb_profile_new(const struct CbEngine *engine,
                             int32_t method,
                             const char *graph_path,
                             struct CbProfile **out);

// # Safety
// `profile` came from `cb_profile_new` and is not used afterwards.
void cb_profile_free(struct CbProfile *profile);

// Record a click or block (`action` is a `CbAction` value). `inserted` (optional) receives 0 when the
// (link, timestamp) pair was already recorded.
//
// # Safety
// All pointers valid; `inserted` may be null.
enum CbStatus cb_profile_record(struct CbProfile *profile,
                                const struct CbEngine *engine,
                                const char *link,
                                const char *headline,
                                int32_t action,
                                int64_t timestamp,
                                int32_t *inserted);

// Block / allow decision for a headline under the profile's method.
//
// # Safety
// All pointers valid.
enum CbStatus cb_profile_decide(const struct CbProfile *profile,
                                const struct CbEngine *engine,
                                const char *headline,
                                struct CbBlockDecision *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* CLICKBAIT_H */

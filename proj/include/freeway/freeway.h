/*
 * C interface to the Freeway simulator and crossing oracle.
 *
 * Every object is an opaque handle created by a constructor such as
 * fw_config_new, fw_play or fw_trace_load and released with the matching
 * free function. Functions return fw_status; on failure fw_last_error()
 * describes the problem (per thread, valid until the next failing call on
 * that thread).
 *
 * Text outputs use the caller-buffer convention: *len receives the length
 * without the terminating NUL. Pass buf = NULL to query the size; a buffer
 * shorter than *len + 1 yields FW_ERR_BUFFER.
 */
#ifndef FREEWAY_FREEWAY_H
#define FREEWAY_FREEWAY_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(FREEWAY_BUILDING)
#    define FREEWAY_API __declspec(dllexport)
#  else
#    define FREEWAY_API __declspec(dllimport)
#  endif
#else
#  define FREEWAY_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum fw_status {
  FW_OK = 0,
  FW_ERR_USAGE = 1,     /* precondition violated, bad argument */
  FW_ERR_GAME_OVER = 2, /* stepped past the end of the game */
  FW_ERR_NO_PATH = 3,   /* no crossing reachable before the game ends */
  FW_ERR_PARSE = 4,     /* malformed dataset, trace or config */
  FW_ERR_IO = 5,        /* file could not be opened or written */
  FW_ERR_BUFFER = 6,    /* output buffer too small */
  FW_ERR_INTERNAL = 7
} fw_status;

enum { FW_ACTION_STAY = 0, FW_ACTION_UP = 1, FW_ACTION_DOWN = 2 };
enum { FW_RAM_SIZE = 128 };

typedef struct fw_config fw_config;
typedef struct fw_session fw_session;
typedef struct fw_solution fw_solution;
typedef struct fw_trace fw_trace;
typedef struct fw_dataset fw_dataset;

typedef struct fw_step_result {
  int32_t new_y;
  int32_t moved_y;
  int32_t collided;
  int32_t crossed;
  int32_t t_after;
} fw_step_result;

typedef struct fw_dataset_row {
  uint64_t seed;
  int32_t start_t;
  int32_t length;
  int32_t all_up;
  int32_t solvable;
  const char* actions; /* owned by the dataset handle */
} fw_dataset_row;

FREEWAY_API const char* fw_last_error(void);
FREEWAY_API const char* fw_status_string(fw_status status);

/* Configuration: game constants plus search switches. */
FREEWAY_API fw_status fw_config_new(fw_config** out);
FREEWAY_API fw_status fw_config_parse(const char* json, fw_config** out);
FREEWAY_API fw_status fw_config_load(const char* path, fw_config** out);
FREEWAY_API fw_status fw_config_set_deterministic(fw_config* config, int enabled);
FREEWAY_API fw_status fw_config_set_rollout(fw_config* config, int enabled);
FREEWAY_API fw_status fw_config_to_json(const fw_config* config, char* buf, size_t cap, size_t* len);
FREEWAY_API void fw_config_free(fw_config* config);

/* Interactive session over one seed. */
FREEWAY_API fw_status fw_session_new(const fw_config* config, uint64_t seed, fw_session** out);
FREEWAY_API fw_status fw_session_step(fw_session* session, int action, fw_step_result* out);
FREEWAY_API fw_status fw_session_ram(const fw_session* session, uint8_t out[FW_RAM_SIZE]);
FREEWAY_API int32_t fw_session_t(const fw_session* session);
FREEWAY_API int32_t fw_session_y(const fw_session* session);
FREEWAY_API int32_t fw_session_score(const fw_session* session);
FREEWAY_API int32_t fw_session_cooldown(const fw_session* session);
FREEWAY_API int32_t fw_session_game_length(const fw_session* session);
FREEWAY_API void fw_session_free(fw_session* session);

/* Oracle. fw_solve waits start_t steps with action 0 first; fw_solve_prefix
 * replays an action string over {'0','1','2'}. */
FREEWAY_API fw_status fw_solve(const fw_config* config, uint64_t seed, int32_t start_t, fw_solution** out);
FREEWAY_API fw_status fw_solve_prefix(const fw_config* config, uint64_t seed, const char* prefix,
                                      fw_solution** out);
FREEWAY_API int32_t fw_solution_length(const fw_solution* solution);
FREEWAY_API const char* fw_solution_actions(const fw_solution* solution);
FREEWAY_API int32_t fw_solution_start_t(const fw_solution* solution);
FREEWAY_API int32_t fw_solution_start_y(const fw_solution* solution);
FREEWAY_API uint64_t fw_solution_nodes_expanded(const fw_solution* solution);
FREEWAY_API uint64_t fw_solution_nodes_created(const fw_solution* solution);
FREEWAY_API void fw_solution_free(fw_solution* solution);

/* Full games. */
FREEWAY_API fw_status fw_play(const fw_config* config, uint64_t seed, fw_trace** out);
FREEWAY_API fw_status fw_trace_load(const char* path, fw_trace** out);
FREEWAY_API fw_status fw_trace_save(const fw_trace* trace, const char* path);
FREEWAY_API uint64_t fw_trace_seed(const fw_trace* trace);
FREEWAY_API int32_t fw_trace_score(const fw_trace* trace);
FREEWAY_API size_t fw_trace_action_count(const fw_trace* trace);
FREEWAY_API const char* fw_trace_actions(const fw_trace* trace);
FREEWAY_API size_t fw_trace_crossing_count(const fw_trace* trace);
FREEWAY_API fw_status fw_trace_crossing(const fw_trace* trace, size_t index, int32_t* start_t, int32_t* length);
/* Replays the trace under `config` and checks the recorded Y series and score. */
FREEWAY_API fw_status fw_trace_verify(const fw_trace* trace, const fw_config* config);
FREEWAY_API fw_status fw_trace_render(const fw_trace* trace, const fw_config* config, int32_t t, char* buf,
                                      size_t cap, size_t* len);
FREEWAY_API void fw_trace_free(fw_trace* trace);

/* Always-up scores for seeds first_seed .. first_seed + count - 1. */
FREEWAY_API fw_status fw_baseline(const fw_config* config, uint64_t first_seed, size_t count, unsigned workers,
                                  int32_t* scores);

/* Scenario datasets. Rows are sorted by (seed, start_t). */
FREEWAY_API fw_status fw_dataset_generate(const fw_config* config, size_t n, uint64_t sampling_seed,
                                          unsigned workers, fw_dataset** out);
FREEWAY_API fw_status fw_dataset_load(const char* path, fw_dataset** out);
FREEWAY_API fw_status fw_dataset_save(const fw_dataset* dataset, const char* path);
FREEWAY_API size_t fw_dataset_size(const fw_dataset* dataset);
FREEWAY_API fw_status fw_dataset_row_at(const fw_dataset* dataset, size_t index, fw_dataset_row* out);
/* Histogram of solvable lengths. Pass bins = NULL to query *nbins. */
FREEWAY_API fw_status fw_dataset_histogram(const fw_dataset* dataset, int32_t bin_width, int32_t* bin_lo,
                                           uint64_t* counts, size_t cap, size_t* nbins);
FREEWAY_API void fw_dataset_free(fw_dataset* dataset);

#ifdef __cplusplus
}
#endif

#endif /* FREEWAY_FREEWAY_H */

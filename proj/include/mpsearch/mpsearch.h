#ifndef MPSEARCH_MPSEARCH_H
#define MPSEARCH_MPSEARCH_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define MPS_API __declspec(dllexport)
#else
#define MPS_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

/* Every call returns MPS_OK or an error code; the message of the most recent
 * error on the calling thread is available from mps_last_error(). Handles are
 * opaque and owned by the caller, who releases them with the matching
 * *_destroy function. Output strings use caller buffers: on
 * MPS_ERR_BUFFER_TOO_SMALL, *needed holds the required size including the
 * terminating NUL. */
typedef enum mps_status {
  MPS_OK = 0,
  MPS_ERR_CONTRACT = 1,
  MPS_ERR_ILLEGAL_ACTION = 2,
  MPS_ERR_CAPABILITY = 3,
  MPS_ERR_INVALID_CONFIG = 4,
  MPS_ERR_UNSUPPORTED_GAME = 5,
  MPS_ERR_INVALID_BOUNDS = 6,
  MPS_ERR_CAP_EXCEEDED = 7,
  MPS_ERR_PARSE = 8,
  MPS_ERR_IO = 9,
  MPS_ERR_NULL_ARGUMENT = 10,
  MPS_ERR_BUFFER_TOO_SMALL = 11,
  MPS_ERR_INTERNAL = 12
} mps_status;

typedef struct mps_game mps_game;
typedef struct mps_state mps_state;

MPS_API const char* mps_version(void);
MPS_API const char* mps_status_name(mps_status status);
MPS_API const char* mps_last_error(void);

/* Games. config_json may be NULL for the defaults. */
MPS_API mps_status mps_game_create(const char* name, const char* config_json, mps_game** out);
MPS_API void mps_game_destroy(mps_game* game);
MPS_API int mps_game_num_players(const mps_game* game);
MPS_API mps_status mps_game_config(const mps_game* game, char* buffer, size_t capacity, size_t* needed);

/* States. */
MPS_API mps_status mps_state_initial(const mps_game* game, mps_state** out);
MPS_API mps_status mps_state_parse(const mps_game* game, const char* text, mps_state** out);
MPS_API mps_status mps_state_clone(const mps_state* state, mps_state** out);
MPS_API void mps_state_destroy(mps_state* state);
MPS_API mps_status mps_state_to_text(const mps_game* game, const mps_state* state, char* buffer, size_t capacity,
                                     size_t* needed);
MPS_API int mps_state_is_terminal(const mps_state* state);
MPS_API uint64_t mps_state_key(const mps_state* state);
MPS_API mps_status mps_current_player(const mps_game* game, const mps_state* state, int* out);

/* Actions are game-specific integer codes; the pass action is -1. *count
 * receives the number of legal actions even when capacity is too small. */
MPS_API mps_status mps_legal_actions(const mps_game* game, const mps_state* state, int32_t* actions, size_t capacity,
                                     size_t* count);
MPS_API mps_status mps_apply(const mps_game* game, const mps_state* state, int32_t action, mps_state** out);
MPS_API mps_status mps_action_to_string(const mps_game* game, int32_t action, char* buffer, size_t capacity,
                                        size_t* needed);
MPS_API mps_status mps_parse_action(const mps_game* game, const char* text, int32_t* out);

/* Terminal values; `values` must hold mps_game_num_players() doubles. */
MPS_API mps_status mps_terminal_payoff(const mps_game* game, const mps_state* state, double* values);
MPS_API mps_status mps_win_loss_vector(const mps_game* game, const mps_state* state, double* values);

MPS_API mps_status mps_perft(const mps_game* game, const mps_state* state, int depth, uint64_t* out);

/* Search with one of: umaxn, umaxn-safe, maxn, kbest:<k>, paranoid, brs,
 * brs+, mcts:<C>, mctsh:<C>, random. */
typedef struct mps_search_params {
  const char* algorithm;
  const char* evaluator_family; /* NULL means "heuristic" */
  int evaluator_variant;
  int time_budget;              /* 0: budget_nodes expansions, 1: budget_seconds */
  uint64_t budget_nodes;
  double budget_seconds;
  uint64_t seed;
} mps_search_params;

typedef struct mps_search_result {
  int32_t action;
  uint64_t expansions;
  uint64_t iterations;
  int depth;
  int resolved_root;
  double seconds;
} mps_search_result;

MPS_API mps_status mps_search(const mps_game* game, const mps_state* state, const mps_search_params* params,
                              mps_search_result* out);

/* Exhaustive solve. rule 0: max^n on terminal scores; rule 1: completion
 * value first. `value` and `completion` may be NULL, else hold P doubles.
 * *best_action is -2 for a terminal state. */
MPS_API mps_status mps_solve(const mps_game* game, const mps_state* state, int rule, uint64_t cap, int32_t* best_action,
                             double* value, double* completion, uint64_t* states);

/* Tournament from a JSON config; records and tables go to output_dir. The
 * text score table is written to `table`. workers <= 0 keeps the config's.
 * MPS_ERR_BUFFER_TOO_SMALL still leaves a finished run on disk; call again
 * with resume = 1 to fetch the table without replaying. */
MPS_API mps_status mps_run_experiment(const char* config_json, const char* output_dir, int workers, int resume,
                                      char* table, size_t capacity, size_t* needed);

/* Re-aggregates a records file. strata_json is NULL or a JSON array drawn
 * from "game", "seat", "cell"; csv selects CSV output. */
MPS_API mps_status mps_report(const char* records_path, const char* strata_json, int resamples, uint64_t seed, int csv,
                              char* table, size_t capacity, size_t* needed);

#ifdef __cplusplus
}
#endif

#endif

#include "mpsearch/mpsearch.h"

#include <cstring>
#include <string>

#include "games/registry.hpp"
#include "harness/agents.hpp"
#include "harness/experiment.hpp"
#include "oracle/oracle.hpp"

struct mps_game {
  mps::GamePtr game;
};

struct mps_state {
  mps::State state;
};

namespace {

thread_local std::string last_error;

mps_status to_status(mps::ErrorCode code) {
  switch (code) {
    case mps::ErrorCode::contract_violation: return MPS_ERR_CONTRACT;
    case mps::ErrorCode::illegal_action: return MPS_ERR_ILLEGAL_ACTION;
    case mps::ErrorCode::capability_missing: return MPS_ERR_CAPABILITY;
    case mps::ErrorCode::invalid_config: return MPS_ERR_INVALID_CONFIG;
    case mps::ErrorCode::unsupported_game: return MPS_ERR_UNSUPPORTED_GAME;
    case mps::ErrorCode::invalid_bounds: return MPS_ERR_INVALID_BOUNDS;
    case mps::ErrorCode::cap_exceeded: return MPS_ERR_CAP_EXCEEDED;
    case mps::ErrorCode::parse_error: return MPS_ERR_PARSE;
    case mps::ErrorCode::io_error: return MPS_ERR_IO;
  }
  return MPS_ERR_INTERNAL;
}

mps_status set_error(mps_status status, const std::string& message) {
  last_error = message;
  return status;
}

template <class F>
mps_status guarded(F&& body) {
  try {
    last_error.clear();
    return body();
  } catch (const mps::Error& e) {
    return set_error(to_status(e.code()), e.what());
  } catch (const nlohmann::json::exception& e) {
    return set_error(MPS_ERR_PARSE, e.what());
  } catch (const std::exception& e) {
    return set_error(MPS_ERR_INTERNAL, e.what());
  } catch (...) {
    return set_error(MPS_ERR_INTERNAL, "unknown failure");
  }
}

#define MPS_REQUIRE(ptr) \
  if (!(ptr)) return set_error(MPS_ERR_NULL_ARGUMENT, #ptr " is NULL")

mps_status copy_out(const std::string& text, char* buffer, size_t capacity, size_t* needed) {
  if (needed) *needed = text.size() + 1;
  if (!buffer || capacity < text.size() + 1)
    return set_error(MPS_ERR_BUFFER_TOO_SMALL, "buffer needs " + std::to_string(text.size() + 1) + " bytes");
  std::memcpy(buffer, text.c_str(), text.size() + 1);
  return MPS_OK;
}

nlohmann::json parse_json(const char* text) {
  if (!text || !*text) return nlohmann::json::object();
  try {
    return nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    mps::fail(mps::ErrorCode::parse_error, std::string("bad JSON: ") + e.what());
  }
}

void copy_payoff(const mps::PayoffVector& v, double* out) {
  for (int p = 0; p < v.size(); ++p) out[p] = v[p];
}

}  // namespace

extern "C" {

const char* mps_version(void) { return "1.0.0"; }

const char* mps_status_name(mps_status status) {
  switch (status) {
    case MPS_OK: return "ok";
    case MPS_ERR_CONTRACT: return "contract_violation";
    case MPS_ERR_ILLEGAL_ACTION: return "illegal_action";
    case MPS_ERR_CAPABILITY: return "capability_missing";
    case MPS_ERR_INVALID_CONFIG: return "invalid_config";
    case MPS_ERR_UNSUPPORTED_GAME: return "unsupported_game";
    case MPS_ERR_INVALID_BOUNDS: return "invalid_bounds";
    case MPS_ERR_CAP_EXCEEDED: return "cap_exceeded";
    case MPS_ERR_PARSE: return "parse_error";
    case MPS_ERR_IO: return "io_error";
    case MPS_ERR_NULL_ARGUMENT: return "null_argument";
    case MPS_ERR_BUFFER_TOO_SMALL: return "buffer_too_small";
    case MPS_ERR_INTERNAL: return "internal_error";
  }
  return "unknown";
}

const char* mps_last_error(void) { return last_error.c_str(); }

mps_status mps_game_create(const char* name, const char* config_json, mps_game** out) {
  MPS_REQUIRE(name);
  MPS_REQUIRE(out);
  return guarded([&] {
    auto game = mps::games::make_game(name, parse_json(config_json));
    *out = new mps_game{std::move(game)};
    return MPS_OK;
  });
}

void mps_game_destroy(mps_game* game) { delete game; }

int mps_game_num_players(const mps_game* game) { return game ? game->game->num_players() : 0; }

mps_status mps_game_config(const mps_game* game, char* buffer, size_t capacity, size_t* needed) {
  MPS_REQUIRE(game);
  return guarded([&] {
    const nlohmann::json j{{"game", game->game->name()}, {"config", game->game->config()}};
    return copy_out(j.dump(), buffer, capacity, needed);
  });
}

mps_status mps_state_initial(const mps_game* game, mps_state** out) {
  MPS_REQUIRE(game);
  MPS_REQUIRE(out);
  return guarded([&] {
    *out = new mps_state{game->game->initial_state()};
    return MPS_OK;
  });
}

mps_status mps_state_parse(const mps_game* game, const char* text, mps_state** out) {
  MPS_REQUIRE(game);
  MPS_REQUIRE(text);
  MPS_REQUIRE(out);
  return guarded([&] {
    *out = new mps_state{game->game->parse_text(text)};
    return MPS_OK;
  });
}

mps_status mps_state_clone(const mps_state* state, mps_state** out) {
  MPS_REQUIRE(state);
  MPS_REQUIRE(out);
  return guarded([&] {
    *out = new mps_state{state->state};
    return MPS_OK;
  });
}

void mps_state_destroy(mps_state* state) { delete state; }

mps_status mps_state_to_text(const mps_game* game, const mps_state* state, char* buffer, size_t capacity, size_t* needed) {
  MPS_REQUIRE(game);
  MPS_REQUIRE(state);
  return guarded([&] { return copy_out(game->game->to_text(state->state), buffer, capacity, needed); });
}

int mps_state_is_terminal(const mps_state* state) { return state && state->state.terminal ? 1 : 0; }

uint64_t mps_state_key(const mps_state* state) { return state ? state->state.key : 0; }

mps_status mps_current_player(const mps_game* game, const mps_state* state, int* out) {
  MPS_REQUIRE(game);
  MPS_REQUIRE(state);
  MPS_REQUIRE(out);
  return guarded([&] {
    *out = game->game->current_player(state->state);
    return MPS_OK;
  });
}

mps_status mps_legal_actions(const mps_game* game, const mps_state* state, int32_t* actions, size_t capacity, size_t* count) {
  MPS_REQUIRE(game);
  MPS_REQUIRE(state);
  MPS_REQUIRE(count);
  return guarded([&] {
    const auto legal = game->game->legal_actions(state->state);
    *count = legal.size();
    if (!actions || capacity < legal.size())
      return set_error(MPS_ERR_BUFFER_TOO_SMALL, "action buffer needs " + std::to_string(legal.size()) + " slots");
    for (size_t i = 0; i < legal.size(); ++i) actions[i] = legal[i].code;
    return MPS_OK;
  });
}

mps_status mps_apply(const mps_game* game, const mps_state* state, int32_t action, mps_state** out) {
  MPS_REQUIRE(game);
  MPS_REQUIRE(state);
  MPS_REQUIRE(out);
  return guarded([&] {
    *out = new mps_state{game->game->apply(state->state, mps::Action{action})};
    return MPS_OK;
  });
}

mps_status mps_action_to_string(const mps_game* game, int32_t action, char* buffer, size_t capacity, size_t* needed) {
  MPS_REQUIRE(game);
  return guarded([&] { return copy_out(game->game->action_to_string(mps::Action{action}), buffer, capacity, needed); });
}

mps_status mps_parse_action(const mps_game* game, const char* text, int32_t* out) {
  MPS_REQUIRE(game);
  MPS_REQUIRE(text);
  MPS_REQUIRE(out);
  return guarded([&] {
    *out = game->game->parse_action(text).code;
    return MPS_OK;
  });
}

mps_status mps_terminal_payoff(const mps_game* game, const mps_state* state, double* values) {
  MPS_REQUIRE(game);
  MPS_REQUIRE(state);
  MPS_REQUIRE(values);
  return guarded([&] {
    copy_payoff(game->game->terminal_payoff(state->state), values);
    return MPS_OK;
  });
}

mps_status mps_win_loss_vector(const mps_game* game, const mps_state* state, double* values) {
  MPS_REQUIRE(game);
  MPS_REQUIRE(state);
  MPS_REQUIRE(values);
  return guarded([&] {
    copy_payoff(game->game->win_loss_vector(state->state), values);
    return MPS_OK;
  });
}

mps_status mps_perft(const mps_game* game, const mps_state* state, int depth, uint64_t* out) {
  MPS_REQUIRE(game);
  MPS_REQUIRE(state);
  MPS_REQUIRE(out);
  return guarded([&] {
    if (depth < 0) mps::fail(mps::ErrorCode::contract_violation, "perft depth must be >= 0");
    *out = mps::games::perft(*game->game, state->state, depth);
    return MPS_OK;
  });
}

mps_status mps_search(const mps_game* game, const mps_state* state, const mps_search_params* params,
                      mps_search_result* out) {
  MPS_REQUIRE(game);
  MPS_REQUIRE(state);
  MPS_REQUIRE(params);
  MPS_REQUIRE(params->algorithm);
  MPS_REQUIRE(out);
  return guarded([&] {
    mps::harness::AgentSpec spec;
    spec.algorithm = params->algorithm;
    if (params->evaluator_family) spec.evaluator_family = params->evaluator_family;
    spec.evaluator = params->evaluator_variant;
    spec.budget = params->time_budget ? mps::search::Budget::time_budget(params->budget_seconds)
                                      : mps::search::Budget::node_budget(params->budget_nodes);
    auto agent = mps::harness::make_agent(game->game, spec);
    game->game->current_player(state->state);
    const auto action = agent->choose(state->state, params->seed);
    const auto& r = agent->last();
    out->action = action.code;
    out->expansions = r.expansions;
    out->iterations = r.iterations;
    out->depth = r.depth;
    out->resolved_root = r.resolved_root ? 1 : 0;
    out->seconds = r.seconds;
    return MPS_OK;
  });
}

mps_status mps_solve(const mps_game* game, const mps_state* state, int rule, uint64_t cap, int32_t* best_action,
                     double* value, double* completion, uint64_t* states) {
  MPS_REQUIRE(game);
  MPS_REQUIRE(state);
  return guarded([&] {
    if (rule != 0 && rule != 1) mps::fail(mps::ErrorCode::invalid_config, "rule must be 0 or 1");
    const auto table = mps::oracle::solve_maxn(*game->game, state->state,
                                               rule == 0 ? mps::oracle::Rule::value : mps::oracle::Rule::completion_value,
                                               cap ? cap : mps::oracle::kDefaultCap);
    const auto& root = table.at(state->state);
    if (best_action) *best_action = root.has_action ? root.best.code : -2;
    if (value) copy_payoff(root.v, value);
    if (completion) copy_payoff(root.c, completion);
    if (states) *states = table.entries.size();
    return MPS_OK;
  });
}

mps_status mps_run_experiment(const char* config_json, const char* output_dir, int workers, int resume, char* table,
                              size_t capacity, size_t* needed) {
  MPS_REQUIRE(config_json);
  MPS_REQUIRE(output_dir);
  return guarded([&] {
    const auto config = mps::harness::parse_config(parse_json(config_json));
    mps::harness::RunOptions options;
    options.output_dir = output_dir;
    options.workers = workers;
    options.resume = resume != 0;
    const auto summary = mps::harness::run_experiment(config, options);
    return copy_out(mps::harness::format_text(summary.table), table, capacity, needed);
  });
}

mps_status mps_report(const char* records_path, const char* strata_json, int resamples, uint64_t seed, int csv,
                      char* table, size_t capacity, size_t* needed) {
  MPS_REQUIRE(records_path);
  return guarded([&] {
    std::vector<std::string> strata{"game", "seat"};
    if (strata_json && *strata_json) strata = parse_json(strata_json).get<std::vector<std::string>>();
    for (const auto& s : strata)
      if (s != "game" && s != "seat" && s != "cell") mps::fail(mps::ErrorCode::invalid_config, "unknown stratum '" + s + "'");
    if (!std::filesystem::exists(records_path))
      mps::fail(mps::ErrorCode::io_error, std::string("no records at ") + records_path);
    const auto records = mps::harness::load_records(records_path);
    if (records.empty()) mps::fail(mps::ErrorCode::invalid_config, "the records file is empty");
    const auto result = mps::harness::aggregate(records, strata, resamples, seed);
    return copy_out(csv ? mps::harness::format_csv(result) : mps::harness::format_text(result), table, capacity, needed);
  });
}

}  // extern "C"

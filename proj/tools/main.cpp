#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "mpsearch/mpsearch.h"

namespace {

struct Failure {
  mps_status status;
};

void check(mps_status status) {
  if (status != MPS_OK) {
    std::cerr << "error (" << mps_status_name(status) << "): " << mps_last_error() << '\n';
    throw Failure{status};
  }
}

template <class F>
std::string read_string(F&& call) {
  // Start with room for a typical table; the second call only runs when that
  // was too small.
  std::string out(1 << 16, '\0');
  size_t needed = 0;
  mps_status status = call(out.data(), out.size(), &needed);
  if (status == MPS_ERR_BUFFER_TOO_SMALL) {
    out.assign(needed, '\0');
    status = call(out.data(), out.size(), &needed);
  }
  check(status);
  out.resize(needed - 1);
  return out;
}

using GameHandle = std::unique_ptr<mps_game, decltype(&mps_game_destroy)>;
using StateHandle = std::unique_ptr<mps_state, decltype(&mps_state_destroy)>;

GameHandle open_game(const std::string& name, const std::string& config) {
  mps_game* game = nullptr;
  check(mps_game_create(name.c_str(), config.empty() ? nullptr : config.c_str(), &game));
  return {game, &mps_game_destroy};
}

StateHandle open_state(const mps_game* game, const std::string& text) {
  mps_state* state = nullptr;
  if (text.empty() || text == "initial") check(mps_state_initial(game, &state));
  else check(mps_state_parse(game, text.c_str(), &state));
  return {state, &mps_state_destroy};
}

std::string env_or(const char* name, const std::string& fallback) {
  const char* v = std::getenv(name);
  return v && *v ? std::string(v) : fallback;
}

std::string format_vector(const std::vector<double>& v) {
  std::ostringstream out;
  out << '(';
  for (size_t i = 0; i < v.size(); ++i) out << (i ? ", " : "") << v[i];
  out << ')';
  return out.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multiplayer game search: best-first max^n with completion, baselines and tournaments"};
  app.require_subcommand(1);

  std::uint64_t seed = 0;
  bool seed_set = false;
  int workers = 0;
  bool resume = false;

  auto* run = app.add_subcommand("run", "Play a tournament from a JSON config");
  std::string config_path, output_dir;
  run->add_option("config", config_path, "Tournament config file")->required()->check(CLI::ExistingFile);
  run->add_option("--output", output_dir, "Output directory (default $MPS_OUTPUT_DIR or mps-output/<name>)");
  run->add_option("--seed", seed, "Override the config seed")->each([&](const std::string&) { seed_set = true; });
  run->add_option("--workers", workers, "Parallel matches (default $MPS_WORKERS or the config)");
  run->add_flag("--resume", resume, "Continue from records already in the output directory");

  auto* solve = app.add_subcommand("solve", "Exhaustively solve a position");
  std::string game_name, game_config, state_text = "initial", rule = "value";
  std::uint64_t cap = 0;
  solve->add_option("game", game_name, "Game name")->required();
  solve->add_option("state", state_text, "State text or 'initial'");
  solve->add_option("--config", game_config, "Game config as JSON");
  solve->add_option("--rule", rule, "value | completion")->check(CLI::IsMember({"value", "completion"}));
  solve->add_option("--cap", cap, "State-space cap");

  auto* bench = app.add_subcommand("bench", "Profile one agent playing every seat");
  std::string algorithm, family = "heuristic";
  int variant = 0, moves = 10;
  std::uint64_t nodes = 1000;
  double seconds = 0;
  bench->add_option("game", game_name, "Game name")->required();
  bench->add_option("agent", algorithm, "Algorithm id, e.g. umaxn-safe, kbest:5, mcts:sqrt2/4")->required();
  bench->add_option("--config", game_config, "Game config as JSON");
  bench->add_option("--family", family, "Evaluator family");
  bench->add_option("--evaluator", variant, "Evaluator variant index");
  bench->add_option("--nodes", nodes, "Node budget per move");
  bench->add_option("--seconds", seconds, "Time budget per move (overrides --nodes)");
  bench->add_option("--moves", moves, "Number of plies to play");
  bench->add_option("--seed", seed, "Seed");

  auto* report = app.add_subcommand("report", "Re-aggregate a records file");
  std::string records_path, strata;
  int resamples = 10000;
  bool csv = false;
  report->add_option("records", records_path, "records.jsonl")->required();
  report->add_option("--strata", strata, "Comma-separated subset of game,seat,cell");
  report->add_option("--resamples", resamples, "Bootstrap resamples");
  report->add_option("--seed", seed, "Bootstrap seed");
  report->add_flag("--csv", csv, "Emit CSV");

  auto* perft = app.add_subcommand("perft", "Count action paths of a given length");
  int depth = 1;
  perft->add_option("game", game_name, "Game name")->required();
  perft->add_option("depth", depth, "Plies")->required();
  perft->add_option("--config", game_config, "Game config as JSON");
  perft->add_option("--state", state_text, "State text or 'initial'");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run) {
      std::ifstream in(config_path);
      nlohmann::json config;
      try {
        config = nlohmann::json::parse(in);
      } catch (const nlohmann::json::exception& e) {
        std::cerr << "error (parse_error): " << config_path << ": " << e.what() << '\n';
        return 2;
      }
      if (seed_set) config["seed"] = seed;
      if (workers <= 0) workers = std::atoi(env_or("MPS_WORKERS", "0").c_str());
      if (output_dir.empty())
        output_dir = env_or("MPS_OUTPUT_DIR", "mps-output/" + config.value("name", std::string("experiment")));
      const auto text = config.dump();
      int calls = 0;
      std::cout << read_string([&](char* b, size_t c, size_t* n) {
        // A retry only re-reads the finished records.
        const int again = resume || calls++ > 0 ? 1 : 0;
        return mps_run_experiment(text.c_str(), output_dir.c_str(), workers, again, b, c, n);
      });
      std::cout << "records: " << output_dir << "/records.jsonl\n";
    } else if (*solve) {
      auto game = open_game(game_name, game_config);
      auto state = open_state(game.get(), state_text);
      const int players = mps_game_num_players(game.get());
      std::vector<double> value(static_cast<size_t>(players)), completion(static_cast<size_t>(players));
      int32_t best = 0;
      uint64_t states = 0;
      check(mps_solve(game.get(), state.get(), rule == "value" ? 0 : 1, cap, &best, value.data(), completion.data(), &states));
      std::cout << "states: " << states << "\nvalue: " << format_vector(value) << "\ncompletion: " << format_vector(completion)
                << "\nbest: ";
      if (best == -2) std::cout << "(terminal)\n";
      else std::cout << read_string([&](char* b, size_t c, size_t* n) { return mps_action_to_string(game.get(), best, b, c, n); }) << '\n';
    } else if (*bench) {
      auto game = open_game(game_name, game_config);
      auto state = open_state(game.get(), "initial");
      mps_search_params params{};
      params.algorithm = algorithm.c_str();
      params.evaluator_family = family.c_str();
      params.evaluator_variant = variant;
      params.time_budget = seconds > 0 ? 1 : 0;
      params.budget_nodes = nodes;
      params.budget_seconds = seconds;
      double total = 0;
      for (int ply = 0; ply < moves && !mps_state_is_terminal(state.get()); ++ply) {
        params.seed = seed + static_cast<std::uint64_t>(ply);
        int mover = 0;
        check(mps_current_player(game.get(), state.get(), &mover));
        mps_search_result result{};
        check(mps_search(game.get(), state.get(), &params, &result));
        total += result.seconds;
        std::cout << "ply " << ply << " player " << mover << " action "
                  << read_string([&](char* b, size_t c, size_t* n) { return mps_action_to_string(game.get(), result.action, b, c, n); })
                  << " expansions " << result.expansions << " iterations " << result.iterations << " depth " << result.depth
                  << " resolved " << result.resolved_root << " seconds " << result.seconds << '\n';
        mps_state* next = nullptr;
        check(mps_apply(game.get(), state.get(), result.action, &next));
        state.reset(next);
      }
      std::cout << "total seconds " << total << '\n';
    } else if (*report) {
      std::string strata_json;
      if (!strata.empty()) {
        nlohmann::json list = nlohmann::json::array();
        std::stringstream in(strata);
        for (std::string item; std::getline(in, item, ',');) list.push_back(item);
        strata_json = list.dump();
      }
      std::cout << read_string([&](char* b, size_t c, size_t* n) {
        return mps_report(records_path.c_str(), strata_json.empty() ? nullptr : strata_json.c_str(), resamples, seed,
                          csv ? 1 : 0, b, c, n);
      });
    } else if (*perft) {
      auto game = open_game(game_name, game_config);
      auto state = open_state(game.get(), state_text);
      uint64_t count = 0;
      check(mps_perft(game.get(), state.get(), depth, &count));
      std::cout << count << '\n';
    }
  } catch (const Failure& f) {
    return 1;
  }
  return 0;
}

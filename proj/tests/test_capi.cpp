#include <doctest.h>

#include <mpsearch/mpsearch.h>

#include <cstdio>
#include <filesystem>
#include <string>
#include <unistd.h>
#include <vector>

namespace {

struct Game {
  mps_game* g = nullptr;
  explicit Game(const char* name, const char* config = nullptr) { REQUIRE(mps_game_create(name, config, &g) == MPS_OK); }
  ~Game() { mps_game_destroy(g); }
};

struct St {
  mps_state* s = nullptr;
  ~St() { mps_state_destroy(s); }
};

std::string text_of(const mps_game* g, const mps_state* s) {
  size_t needed = 0;
  REQUIRE(mps_state_to_text(g, s, nullptr, 0, &needed) == MPS_ERR_BUFFER_TOO_SMALL);
  std::string out(needed, '\0');
  REQUIRE(mps_state_to_text(g, s, out.data(), out.size(), &needed) == MPS_OK);
  out.resize(needed - 1);
  return out;
}

std::vector<int32_t> actions_of(const mps_game* g, const mps_state* s) {
  size_t count = 0;
  REQUIRE(mps_legal_actions(g, s, nullptr, 0, &count) == MPS_ERR_BUFFER_TOO_SMALL);
  std::vector<int32_t> out(count);
  REQUIRE(mps_legal_actions(g, s, out.data(), out.size(), &count) == MPS_OK);
  return out;
}

}  // namespace

TEST_SUITE("capi") {
  TEST_CASE("status names and version") {
    CHECK(std::string(mps_status_name(MPS_OK)) == "ok");
    CHECK(std::string(mps_status_name(MPS_ERR_ILLEGAL_ACTION)) == "illegal_action");
    CHECK(std::string(mps_status_name(MPS_ERR_BUFFER_TOO_SMALL)) == "buffer_too_small");
    CHECK(std::string(mps_version()).size() > 0);
  }

  TEST_CASE("game lifecycle and errors") {
    mps_game* g = nullptr;
    CHECK(mps_game_create("no-such-game", nullptr, &g) == MPS_ERR_UNSUPPORTED_GAME);
    CHECK(g == nullptr);
    CHECK(std::string(mps_last_error()).find("no-such-game") != std::string::npos);
    CHECK(mps_game_create("trinim", "{\"heaps\": [", &g) == MPS_ERR_PARSE);
    CHECK(mps_game_create("trinim", "{\"heaps\": [99]}", &g) == MPS_ERR_INVALID_CONFIG);
    CHECK(mps_game_create(nullptr, nullptr, &g) == MPS_ERR_NULL_ARGUMENT);
    CHECK(mps_game_create("trinim", nullptr, nullptr) == MPS_ERR_NULL_ARGUMENT);
    mps_game_destroy(nullptr);
    mps_state_destroy(nullptr);

    Game game("threehex", "{\"side\": 3}");
    CHECK(mps_game_num_players(game.g) == 3);
    size_t needed = 0;
    char small[4];
    CHECK(mps_game_config(game.g, small, sizeof small, &needed) == MPS_ERR_BUFFER_TOO_SMALL);
    std::string config(needed, '\0');
    CHECK(mps_game_config(game.g, config.data(), config.size(), &needed) == MPS_OK);
    CHECK(std::string(config.c_str()).find("\"side\":3") != std::string::npos);
  }

  TEST_CASE("states: initial, apply, text round trip, clone") {
    Game game("threehex", "{\"side\": 2}");
    St root;
    REQUIRE(mps_state_initial(game.g, &root.s) == MPS_OK);
    CHECK(mps_state_is_terminal(root.s) == 0);
    int mover = -1;
    CHECK(mps_current_player(game.g, root.s, &mover) == MPS_OK);
    CHECK(mover == 0);
    const auto actions = actions_of(game.g, root.s);
    CHECK(actions.size() == 7);

    St next;
    REQUIRE(mps_apply(game.g, root.s, actions[3], &next.s) == MPS_OK);
    CHECK(mps_state_key(next.s) != mps_state_key(root.s));
    St parsed;
    REQUIRE(mps_state_parse(game.g, text_of(game.g, next.s).c_str(), &parsed.s) == MPS_OK);
    CHECK(mps_state_key(parsed.s) == mps_state_key(next.s));
    St copy;
    REQUIRE(mps_state_clone(next.s, &copy.s) == MPS_OK);
    CHECK(text_of(game.g, copy.s) == text_of(game.g, next.s));

    St bad;
    CHECK(mps_apply(game.g, root.s, 999, &bad.s) == MPS_ERR_ILLEGAL_ACTION);
    CHECK(bad.s == nullptr);
    CHECK(mps_state_parse(game.g, "cells:zz", &bad.s) == MPS_ERR_PARSE);

    size_t needed = 0;
    char name[32];
    CHECK(mps_action_to_string(game.g, actions[3], name, sizeof name, &needed) == MPS_OK);
    int32_t back = 0;
    CHECK(mps_parse_action(game.g, name, &back) == MPS_OK);
    CHECK(back == actions[3]);
  }

  TEST_CASE("terminal values and contract violations") {
    Game game("trinim", "{\"heaps\": [1], \"players\": 3}");
    St root, end;
    REQUIRE(mps_state_initial(game.g, &root.s) == MPS_OK);
    double values[3];
    CHECK(mps_terminal_payoff(game.g, root.s, values) == MPS_ERR_CONTRACT);
    REQUIRE(mps_apply(game.g, root.s, 0, &end.s) == MPS_OK);
    CHECK(mps_state_is_terminal(end.s) == 1);
    REQUIRE(mps_win_loss_vector(game.g, end.s, values) == MPS_OK);
    CHECK(values[0] == 1);
    CHECK(values[1] == -1);
    CHECK(values[2] == -1);
    int mover = 0;
    CHECK(mps_current_player(game.g, end.s, &mover) == MPS_ERR_CONTRACT);
    size_t count = 0;
    CHECK(mps_legal_actions(game.g, end.s, nullptr, 0, &count) == MPS_ERR_CONTRACT);
  }

  TEST_CASE("perft") {
    Game game("threehex", "{\"side\": 2}");
    St root;
    REQUIRE(mps_state_initial(game.g, &root.s) == MPS_OK);
    uint64_t n = 0;
    CHECK(mps_perft(game.g, root.s, 0, &n) == MPS_OK);
    CHECK(n == 1);
    CHECK(mps_perft(game.g, root.s, 1, &n) == MPS_OK);
    CHECK(n == 7);
    // Depth 2 by walking the API directly.
    uint64_t manual = 0;
    for (int32_t a : actions_of(game.g, root.s)) {
      St child;
      REQUIRE(mps_apply(game.g, root.s, a, &child.s) == MPS_OK);
      manual += mps_state_is_terminal(child.s) ? 0 : actions_of(game.g, child.s).size();
    }
    CHECK(mps_perft(game.g, root.s, 2, &n) == MPS_OK);
    CHECK(n == manual);
    CHECK(mps_perft(game.g, root.s, -1, &n) == MPS_ERR_CONTRACT);
  }

  TEST_CASE("search") {
    Game game("trinim", "{\"heaps\": [2, 3], \"players\": 3}");
    St root;
    REQUIRE(mps_state_initial(game.g, &root.s) == MPS_OK);
    const auto legal = actions_of(game.g, root.s);
    for (const char* algorithm : {"umaxn", "umaxn-safe", "maxn", "kbest:2", "paranoid", "brs+", "mcts:sqrt2", "mctsh:sqrt2/2", "random"}) {
      CAPTURE(algorithm);
      mps_search_params params{};
      params.algorithm = algorithm;
      params.budget_nodes = 100;
      params.seed = 3;
      mps_search_result a{}, b{};
      REQUIRE(mps_search(game.g, root.s, &params, &a) == MPS_OK);
      REQUIRE(mps_search(game.g, root.s, &params, &b) == MPS_OK);
      CHECK(a.action == b.action);
      CHECK(a.expansions == b.expansions);
      bool found = false;
      for (int32_t x : legal) found = found || x == a.action;
      CHECK(found);
    }
    mps_search_params params{};
    params.algorithm = "kbest:0";
    params.budget_nodes = 10;
    mps_search_result r{};
    CHECK(mps_search(game.g, root.s, &params, &r) == MPS_ERR_INVALID_CONFIG);
    params.algorithm = "maxn";
    params.budget_nodes = 0;
    CHECK(mps_search(game.g, root.s, &params, &r) == MPS_ERR_INVALID_CONFIG);
    CHECK(mps_search(game.g, root.s, nullptr, &r) == MPS_ERR_NULL_ARGUMENT);

    Game amazons("quadamazons", "{\"N\": 6, \"d\": 1}");
    St start;
    REQUIRE(mps_state_initial(amazons.g, &start.s) == MPS_OK);
    params.algorithm = "brs";
    params.budget_nodes = 10;
    CHECK(mps_search(amazons.g, start.s, &params, &r) == MPS_ERR_CAPABILITY);
  }

  TEST_CASE("solve") {
    Game game("trinim", "{\"heaps\": [4], \"players\": 3}");
    St root;
    REQUIRE(mps_state_initial(game.g, &root.s) == MPS_OK);
    int32_t best = 0;
    double value[3], completion[3];
    uint64_t states = 0;
    REQUIRE(mps_solve(game.g, root.s, 0, 1000, &best, value, completion, &states) == MPS_OK);
    CHECK(states == 9);
    CHECK(best == 0);
    CHECK(value[2] == 1);
    CHECK(mps_solve(game.g, root.s, 1, 3, &best, nullptr, nullptr, &states) == MPS_ERR_CAP_EXCEEDED);
    CHECK(mps_solve(game.g, root.s, 7, 1000, &best, nullptr, nullptr, &states) == MPS_ERR_INVALID_CONFIG);
  }

  TEST_CASE("experiment and report") {
    const auto dir = std::filesystem::temp_directory_path() / ("mps-capi-" + std::to_string(::getpid()));
    std::filesystem::remove_all(dir);
    const char* config = R"({"name":"capi","games":[{"game":"trinim","config":{"heaps":[2,2]}}],
      "evaluated":["maxn"],"benchmark":"random","E":1,"budget":{"mode":"nodes","value":20},"resamples":100})";
    size_t needed = 0;
    char tiny[8];
    CHECK(mps_run_experiment(config, dir.c_str(), 1, 0, tiny, sizeof tiny, &needed) == MPS_ERR_BUFFER_TOO_SMALL);
    std::string table(needed, '\0');
    REQUIRE(mps_run_experiment(config, dir.c_str(), 1, 1, table.data(), table.size(), &needed) == MPS_OK);
    CHECK(table.find("maxn") != std::string::npos);
    CHECK(mps_run_experiment(config, dir.c_str(), 1, 0, table.data(), table.size(), &needed) == MPS_ERR_IO);

    const auto records = (dir / "records.jsonl").string();
    std::string csv(4096, '\0');
    REQUIRE(mps_report(records.c_str(), "[\"game\"]", 100, 1, 1, csv.data(), csv.size(), &needed) == MPS_OK);
    CHECK(csv.rfind("algorithm,game,n,mean,lower,upper", 0) == 0);
    CHECK(mps_report(records.c_str(), "[\"colour\"]", 100, 1, 0, csv.data(), csv.size(), &needed) == MPS_ERR_INVALID_CONFIG);
    CHECK(mps_run_experiment("{\"games\": 3}", dir.c_str(), 1, 0, csv.data(), csv.size(), &needed) == MPS_ERR_INVALID_CONFIG);
    std::filesystem::remove_all(dir);
  }
}

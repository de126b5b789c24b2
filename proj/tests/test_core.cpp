#include <doctest.h>

#include <set>
#include <unordered_set>

#include "core/tiebreak.hpp"
#include "support.hpp"

using namespace mps;

TEST_SUITE("core") {
  TEST_CASE("win/loss vector from scores") {
    CHECK(win_loss_from_scores({3, 1, 2}) == PayoffVector{1, -1, -1});
    CHECK(win_loss_from_scores({5, 5, 1, 0}) == PayoffVector{1, 1, -1, -1});
    CHECK(win_loss_from_scores({2, 2, 2}) == PayoffVector{0, 0, 0});
    CHECK(win_loss_from_scores({-1, -2, -3}) == PayoffVector{1, -1, -1});
  }

  TEST_CASE("payoff vector basics") {
    PayoffVector v(3, 0.5);
    CHECK(v.size() == 3);
    CHECK(v[2] == 0.5);
    v[1] = -1;
    CHECK(to_string(v).find("-1") != std::string::npos);
    CHECK_FALSE(v == PayoffVector(4, 0.5));
  }

  TEST_CASE("lex_argmax breaks ties toward the lowest index") {
    const std::vector<double> keys{1, 3, 3, 2};
    CHECK(lex_argmax(4, [&](int i) { return keys[static_cast<std::size_t>(i)]; }) == 1);
    CHECK(lex_argmax(4, [&](int i) { return keys[static_cast<std::size_t>(i)]; }, [](int i) { return i != 1; }) == 2);
    CHECK(lex_argmax(4, [](int) { return 0; }, [](int) { return false; }) == -1);
    const std::vector<std::pair<double, double>> pairs{{0, 5}, {1, -1}, {1, -1}};
    CHECK(lex_argmax(3, [&](int i) { return pairs[static_cast<std::size_t>(i)]; }) == 1);
  }

  TEST_CASE("error codes have names") {
    CHECK(std::string(error_code_name(ErrorCode::illegal_action)) == "illegal_action");
    CHECK(std::string(error_code_name(ErrorCode::cap_exceeded)) == "cap_exceeded");
    try {
      fail(ErrorCode::invalid_bounds, "m = M");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::invalid_bounds);
      CHECK(std::string(e.what()) == "m = M");
    }
  }

  TEST_CASE("ordinal_of") {
    const std::vector<Action> actions{{-1}, {2}, {7}};
    CHECK(ordinal_of(actions, Action{7}) == 2);
    CHECK(ordinal_of(actions, kPass) == 0);
    CHECK(ordinal_of(actions, Action{3}) == -1);
  }

  TEST_CASE("zobrist keys: copies agree, mover matters") {
    for (const auto& spec : test::desk_games()) {
      CAPTURE(spec.name);
      auto game = games::make_game(spec.name, spec.config);
      const State s = game->initial_state();
      const State copy = s;
      CHECK(game->zobrist_key(copy) == game->zobrist_key(s));
      CHECK(hash_state(s) == s.key);
      State other = s;
      other.mover = (s.mover + 1) % game->num_players();
      CHECK(hash_state(other) != s.key);
    }
  }

  TEST_CASE("zobrist keys differ on every depth-1 successor") {
    for (const auto& spec : test::desk_games()) {
      CAPTURE(spec.name);
      auto game = games::make_game(spec.name, spec.config);
      const State s = game->initial_state();
      for (Action a : game->legal_actions(s)) CHECK(game->apply(s, a).key != s.key);
    }
  }

  TEST_CASE("zobrist collisions over an enumerated state space") {
    auto game = games::make_game("trinim", {{"heaps", {20, 20, 20}}});
    std::unordered_set<std::string> seen;
    std::unordered_set<ZobristKey> keys;
    std::vector<State> frontier{game->initial_state()};
    seen.insert(game->to_text(frontier.front()));
    while (!frontier.empty() && seen.size() < 20000) {
      State s = frontier.back();
      frontier.pop_back();
      keys.insert(s.key);
      if (game->is_terminal(s)) continue;
      for (Action a : game->legal_actions(s)) {
        State t = game->apply(s, a);
        if (seen.insert(game->to_text(t)).second) frontier.push_back(t);
      }
    }
    while (!frontier.empty()) {
      keys.insert(frontier.back().key);
      frontier.pop_back();
    }
    REQUIRE(seen.size() >= 10000);
    CHECK(seen.size() - keys.size() < 2);
  }

  TEST_CASE("text round trip") {
    std::mt19937_64 rng(3);
    for (const auto& spec : test::desk_games()) {
      CAPTURE(spec.name);
      auto game = games::make_game(spec.name, spec.config);
      for (int i = 0; i < 30; ++i) {
        State s = test::random_position(*game, rng, i * 2);
        if (i % 3 == 0) s = test::random_terminal(*game, rng, s);
        const State back = game->parse_text(game->to_text(s));
        CHECK(back == s);
        CHECK(back.key == s.key);
        CHECK(back.terminal == s.terminal);
      }
    }
  }

  TEST_CASE("malformed text is a parse error") {
    auto game = test::desk("threehex");
    for (const char* bad : {"", "cells:...", "cells:zz;mover:0;extra:0,0", "mover:9"}) {
      CAPTURE(bad);
      try {
        game->parse_text(bad);
        FAIL("accepted");
      } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::parse_error);
      }
    }
  }

  TEST_CASE("contract violations on terminal and non-terminal states") {
    auto game = games::make_game("trinim", {{"heaps", {1}}});
    const State s = game->initial_state();
    const State end = game->apply(s, Action{0});
    REQUIRE(game->is_terminal(end));
    const auto code_of = [](auto&& f) {
      try {
        f();
      } catch (const Error& e) {
        return e.code();
      }
      return ErrorCode{};
    };
    CHECK(code_of([&] { game->legal_actions(end); }) == ErrorCode::contract_violation);
    CHECK(code_of([&] { game->current_player(end); }) == ErrorCode::contract_violation);
    CHECK(code_of([&] { game->apply(end, Action{0}); }) == ErrorCode::contract_violation);
    CHECK(code_of([&] { game->terminal_payoff(s); }) == ErrorCode::contract_violation);
    CHECK(code_of([&] { game->win_loss_vector(s); }) == ErrorCode::contract_violation);
    CHECK(code_of([&] { game->apply(s, Action{5}); }) == ErrorCode::illegal_action);
  }

  TEST_CASE("apply leaves its input untouched") {
    std::mt19937_64 rng(8);
    for (const auto& spec : test::desk_games()) {
      CAPTURE(spec.name);
      auto game = games::make_game(spec.name, spec.config);
      const State s = test::random_position(*game, rng, 5);
      const State before = s;
      for (Action a : game->legal_actions(s)) game->apply(s, a);
      CHECK(s == before);
      CHECK(s.key == before.key);
    }
  }
}

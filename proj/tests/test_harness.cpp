#include <doctest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <unistd.h>

#include "harness/experiment.hpp"
#include "support.hpp"

using namespace mps;
using namespace mps::harness;
namespace fs = std::filesystem;

namespace {

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode{};
}

std::string message_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.what();
  }
  return "";
}

fs::path scratch(const std::string& name) {
  const auto dir = fs::temp_directory_path() / ("mps-harness-" + std::to_string(::getpid()) + "-" + name);
  fs::remove_all(dir);
  return dir;
}

TournamentConfig small_config() {
  TournamentConfig c;
  c.name = "small";
  c.games = {{"trinim", {{"heaps", {2, 3}}}}};
  c.evaluated = {"maxn", "random"};
  c.benchmark = "random";
  c.E = 2;
  c.budget = search::Budget::node_budget(50);
  c.seed = 4;
  c.resamples = 500;
  return c;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

nlohmann::json strip_timing(const MatchRecord& r) {
  auto j = to_json(r);
  j.erase("move_seconds");
  return j;
}

}  // namespace

TEST_SUITE("harness") {
  TEST_CASE("schedule covers every (seat, i, j) once") {
    for (int players = 2; players <= 4; ++players)
      for (int E = 1; E <= 5; ++E) {
        const auto plan = schedule(players, E);
        CHECK(plan.size() == static_cast<std::size_t>(players * E * E));
        std::set<std::tuple<int, int, int>> seen;
        for (const auto& a : plan) {
          REQUIRE(a.opponents.size() == static_cast<std::size_t>(players - 1));
          seen.insert({a.seat, a.i, a.opponents.front()});
          for (std::size_t k = 0; k < a.opponents.size(); ++k)
            CHECK(a.opponents[k] == (a.opponents.front() + static_cast<int>(k)) % E);
        }
        CHECK(seen.size() == plan.size());
        CHECK(std::is_sorted(plan.begin(), plan.end(), [](const auto& x, const auto& y) { return x.seat < y.seat; }));
      }
    CHECK(code_of([] { schedule(1, 2); }) == ErrorCode::invalid_config);
    CHECK(code_of([] { schedule(3, 0); }) == ErrorCode::invalid_config);
  }

  TEST_CASE("binary scores") {
    MatchRecord r;
    r.outcome = {1, -1, -1};
    CHECK(binary_score(r, 0) == 1);
    CHECK(binary_score(r, 2) == -1);
    r.outcome = {1, 1, -1, -1};
    CHECK(binary_score(r, 1) == 1);
    r.outcome = {0, 0, 0};
    CHECK(binary_score(r, 1) == 0);
    MatchRecord f;
    f.status = "forfeit";
    f.forfeiter = 2;
    for (PlayerId p = 0; p < 4; ++p) CHECK(binary_score(f, p) == (p == 2 ? -1 : 1));
  }

  TEST_CASE("quantile interpolates linearly") {
    CHECK(quantile({1, 2, 3, 4}, 0.5) == doctest::Approx(2.5));
    CHECK(quantile({0, 10}, 0.25) == doctest::Approx(2.5));
    CHECK(quantile({7}, 0.9) == 7);
    CHECK(code_of([] { quantile({}, 0.5); }) == ErrorCode::contract_violation);
  }

  TEST_CASE("bootstrap: constant scores give a zero-width interval") {
    std::vector<Observation> obs;
    for (int i = 0; i < 40; ++i) obs.push_back({i % 2 ? "a" : "b", 1.0});
    const auto iv = stratified_bootstrap(obs, 300, 1);
    CHECK(iv.mean == 1);
    CHECK(iv.lower == 1);
    CHECK(iv.upper == 1);
    CHECK(iv.n == 40);
    CHECK(iv.strata == 2);
  }

  TEST_CASE("bootstrap: order of observations does not matter") {
    std::mt19937_64 rng(3);
    std::vector<Observation> obs;
    for (int i = 0; i < 60; ++i) obs.push_back({"s" + std::to_string(i % 3), static_cast<double>(static_cast<int>(rng() % 3) - 1)});
    const auto a = stratified_bootstrap(obs, 1000, 9);
    std::shuffle(obs.begin(), obs.end(), rng);
    const auto b = stratified_bootstrap(obs, 1000, 9);
    CHECK(a.mean == b.mean);
    CHECK(a.lower == b.lower);
    CHECK(a.upper == b.upper);
    CHECK(a.lower <= a.mean);
    CHECK(a.mean <= a.upper);
    CHECK(code_of([&] { stratified_bootstrap(obs, 0, 1); }) == ErrorCode::invalid_config);
  }

  TEST_CASE("config parsing and field paths") {
    const auto good = nlohmann::json::parse(R"({"name":"x","games":[{"game":"trinim"},{"game":"bandit"}],
      "evaluated":["umaxn-safe","kbest:3"],"E":3,"budget":{"mode":"nodes","value":20},"seed":5})");
    const auto c = parse_config(good);
    CHECK(c.games.size() == 2);
    CHECK(c.E == 3);
    CHECK(c.budget.nodes == 20);
    CHECK(parse_config(to_json(c)).evaluated == c.evaluated);
    CHECK(to_json(parse_config(to_json(c))) == to_json(c));

    const std::vector<std::pair<std::string, std::string>> bad{
        {R"({"games":[{"game":"trinim"},{"game":"nope"}],"evaluated":["maxn"]})", "games[1]"},
        {R"({"games":[{"game":"trinim"}],"evaluated":["maxn","kbest:0"]})", "evaluated[1]"},
        {R"({"games":[{"game":"trinim"}],"evaluated":["maxn"],"E":0})", "'E'"},
        {R"({"games":[{"game":"trinim"}],"evaluated":["maxn"],"bogus":1})", "bogus"},
        {R"({"games":[{"game":"trinim"}],"evaluated":["maxn"],"budget":{"mode":"nodes","value":0}})", "budget"},
        {R"({"games":[{"game":"trinim"}],"evaluated":["maxn"],"strata":["game","colour"]})", "strata[1]"},
        {R"({"games":[{"game":"trinim"}],"evaluated":[]})", "evaluated"},
        {R"({"evaluated":["maxn"]})", "games"},
    };
    for (const auto& [text, path] : bad) {
      CAPTURE(text);
      const auto j = nlohmann::json::parse(text);
      CHECK(code_of([&] { parse_config(j); }) == ErrorCode::invalid_config);
      CHECK(message_of([&] { parse_config(j); }).find(path) != std::string::npos);
    }
  }

  TEST_CASE("jobs: one per game, algorithm and assignment; algorithms share seeds per cell") {
    auto c = small_config();
    c.games.push_back({"bandit", nlohmann::json::object()});
    const auto list = jobs(c);
    CHECK(list.size() == 2 * 2 * 3 * 4);
    std::set<std::string> keys;
    std::map<std::string, std::set<std::uint64_t>> seeds;
    std::map<std::tuple<std::string, int, int, int>, std::set<std::uint64_t>> by_cell;
    for (const auto& j : list) {
      keys.insert(j.key);
      seeds[j.algorithm].insert(j.seed);
      by_cell[{j.game.name, j.assignment.seat, j.assignment.i, j.assignment.opponents.front()}].insert(j.seed);
    }
    CHECK(keys.size() == list.size());
    for (const auto& [algorithm, s] : seeds) CHECK(s.size() == list.size() / 2);
    for (const auto& [cell, s] : by_cell) CHECK(s.size() == 1);
    const auto again = jobs(c);
    for (std::size_t k = 0; k < list.size(); ++k) CHECK(again[k].seed == list[k].seed);
  }

  TEST_CASE("agent ids") {
    for (const char* ok : {"umaxn", "umaxn-safe", "maxn", "kbest:2", "paranoid", "brs", "brs+", "mcts:sqrt2", "mctsh:0.3", "random"})
      CHECK_NOTHROW(validate_algorithm(ok));
    for (const char* bad : {"", "alphazero", "kbest:0", "kbest:x", "mcts:-1", "mctsh:", "umaxn-best"}) {
      CAPTURE(bad);
      CHECK(code_of([&] { validate_algorithm(bad); }) == ErrorCode::invalid_config);
    }
    AgentSpec spec;
    spec.algorithm = "brs";
    CHECK(code_of([&] { make_agent(test::desk("quadamazons"), spec); }) == ErrorCode::capability_missing);
    spec.algorithm = "maxn";
    spec.evaluator_family = "psychic";
    CHECK(code_of([&] { make_agent(test::desk("trinim"), spec); }) == ErrorCode::invalid_config);
  }

  TEST_CASE("mix_seed is deterministic and spreads") {
    CHECK(mix_seed(1, 2, 3, 4) == mix_seed(1, 2, 3, 4));
    std::set<std::uint64_t> seen;
    for (std::uint64_t a = 0; a < 20; ++a)
      for (std::uint64_t b = 0; b < 20; ++b) seen.insert(mix_seed(7, a, b));
    CHECK(seen.size() == 400);
  }

  TEST_CASE("play_match is reproducible and replays") {
    for (const char* name : {"threehex", "trinim", "quadrothello"}) {
      CAPTURE(name);
      auto game = test::desk(name);
      std::vector<AgentSpec> seats(static_cast<std::size_t>(game->num_players()));
      seats[0].algorithm = "umaxn-safe";
      for (std::size_t k = 1; k < seats.size(); ++k) seats[k].algorithm = k % 2 ? "maxn" : "mcts:sqrt2/4";
      for (auto& s : seats) s.budget = search::Budget::node_budget(30);
      const auto a = play_match(game, seats, 12);
      const auto b = play_match(game, seats, 12);
      CHECK(strip_timing(a) == strip_timing(b));
      CHECK(a.status == "ok");
      CHECK(a.move_seconds.size() == a.moves.size());
      CHECK(replay(*game, a));
      auto tampered = a;
      tampered.outcome[0] = -tampered.outcome[0] + 0.5;
      CHECK_FALSE(replay(*game, tampered));
      CHECK(strip_timing(record_from_json(to_json(a))) == strip_timing(a));
    }
    CHECK(code_of([] { play_match(test::desk("trinim"), {AgentSpec{}}, 1); }) == ErrorCode::invalid_config);
  }

  TEST_CASE("random agents pick bandit arms uniformly") {
    auto game = test::desk("bandit");
    std::vector<AgentSpec> seats(3);
    for (auto& s : seats) s.algorithm = "random";
    std::map<int, int> counts;
    const int matches = 4000;
    for (int m = 0; m < matches; ++m) ++counts[play_match(game, seats, static_cast<std::uint64_t>(m)).moves.at(0)];
    REQUIRE(counts.size() == 4);
    for (const auto& [arm, n] : counts) {
      CAPTURE(arm);
      CHECK(std::abs(n / static_cast<double>(matches) - 0.25) < 0.03);
    }
  }

  TEST_CASE("forfeit records replay only when the action really is illegal") {
    auto game = games::make_game("trinim", {{"heaps", {2}}});
    MatchRecord r;
    r.game = "trinim";
    r.status = "forfeit";
    r.forfeiter = 1;
    r.moves = {0};
    r.forfeit_action = 9;
    CHECK(replay(*game, r));
    r.forfeit_action = 0;  // taking the last token is legal
    CHECK_FALSE(replay(*game, r));
  }

  TEST_CASE("run_experiment writes records and tables that match the records") {
    const auto dir = scratch("run");
    const auto c = small_config();
    RunOptions options;
    options.output_dir = dir;
    std::size_t seen = 0;
    options.on_record = [&](const MatchRecord&) { ++seen; };
    const auto summary = run_experiment(c, options);
    CHECK(summary.total == 2 * 3 * 4);
    CHECK(summary.played == summary.total);
    CHECK(seen == summary.total);
    CHECK(fs::exists(dir / "table.txt"));
    CHECK(fs::exists(dir / "table.csv"));
    const auto records = load_records(summary.records);
    REQUIRE(records.size() == summary.total);

    // Recompute each evaluated algorithm's mean binary score directly.
    std::map<std::string, std::pair<double, int>> sums;
    for (const auto& r : records) {
      CHECK(replay(*games::make_game(r.game, r.config), r));
      auto& [sum, n] = sums[r.algorithm];
      sum += binary_score(r, r.seat);
      ++n;
    }
    REQUIRE(summary.table.rows.size() == 2);
    for (const auto& row : summary.table.rows) {
      CAPTURE(row.algorithm);
      const auto& [sum, n] = sums.at(row.algorithm);
      CHECK(row.overall.n == static_cast<std::size_t>(n));
      CHECK(row.overall.mean == doctest::Approx(sum / n));
      CHECK(row.overall.lower <= row.overall.mean);
      CHECK(row.overall.upper >= row.overall.mean);
    }
    CHECK(slurp(dir / "table.txt") == format_text(summary.table));
    const auto csv = slurp(dir / "table.csv");
    CHECK(csv.rfind("algorithm,game,n,mean,lower,upper\n", 0) == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 1 + 2 * 2);

    // Writing into an existing run without resume is refused.
    CHECK(code_of([&] { run_experiment(c, options); }) == ErrorCode::io_error);
    fs::remove_all(dir);
  }

  TEST_CASE("resume after an interruption gives the same table") {
    const auto c = small_config();
    const auto whole_dir = scratch("whole");
    RunOptions whole;
    whole.output_dir = whole_dir;
    const auto full = run_experiment(c, whole);

    const auto dir = scratch("resume");
    RunOptions first;
    first.output_dir = dir;
    first.max_matches = 10;
    const auto part = run_experiment(c, first);
    CHECK(part.played == 10);
    // A torn last line, as left by a killed process.
    {
      std::ofstream out(dir / "records.jsonl", std::ios::app);
      out << R"({"key":"trinim{)";
    }
    CHECK(load_records(dir / "records.jsonl").size() == 10);
    RunOptions rest;
    rest.output_dir = dir;
    rest.resume = true;
    const auto done = run_experiment(c, rest);
    CHECK(done.reused == 10);
    CHECK(done.played == full.total - 10);
    CHECK(format_text(done.table) == format_text(full.table));
    fs::remove_all(dir);
    fs::remove_all(whole_dir);
  }

  TEST_CASE("a corrupt line in the middle is an error") {
    const auto dir = scratch("corrupt");
    fs::create_directories(dir);
    {
      std::ofstream out(dir / "records.jsonl");
      out << "{not json\n{\"also\": \"bad\"}\n";
    }
    CHECK(code_of([&] { load_records(dir / "records.jsonl"); }) == ErrorCode::parse_error);
    fs::remove_all(dir);
  }

  TEST_CASE("aggregate over hand-built records") {
    // Two games, seat-level strata; algorithm "x" scores +1, -1, 0, +1.
    std::vector<MatchRecord> records;
    const std::vector<std::tuple<std::string, int, PayoffVector>> rows{
        {"trinim", 0, {1, -1, -1}}, {"trinim", 1, {1, -1, -1}}, {"bandit", 0, {0, 0, 0}}, {"bandit", 2, {-1, -1, 1}}};
    for (const auto& [game, seat, outcome] : rows) {
      MatchRecord r;
      r.game = game;
      r.config = nlohmann::json::object();
      r.algorithm = "x";
      r.seat = seat;
      r.i = 0;
      r.j = 0;
      r.outcome = outcome;
      r.scores = outcome;
      records.push_back(r);
    }
    const auto table = aggregate(records, {"game", "seat"}, 200, 1);
    REQUIRE(table.rows.size() == 1);
    CHECK(table.rows[0].overall.mean == doctest::Approx(0.25));
    CHECK(table.rows[0].overall.n == 4);
    CHECK(table.rows[0].per_game.size() == 2);
    CHECK(format_text(table).find("x") != std::string::npos);
  }
}

// Acceptance checks: one PASS/FAIL line per criterion; exit status 1 if any fails.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <mutex>
#include <random>
#include <set>
#include <sstream>

#include <unistd.h>

#include "eval/heuristics.hpp"
#include "eval/normalize.hpp"
#include "games/toy_games.hpp"
#include "harness/experiment.hpp"
#include "oracle/oracle.hpp"
#include "search/depth.hpp"
#include "search/mcts.hpp"
#include "search/unbounded.hpp"
#include "support.hpp"

using namespace mps;
namespace fs = std::filesystem;

namespace {

struct Verdict {
  bool pass = false;
  std::string detail;
};

// Expected ((f_b + 1) / 2) under uniform random play, by exhaustive recursion.
class ExpectationEvaluator final : public eval::Evaluator {
 public:
  explicit ExpectationEvaluator(GamePtr game) : Evaluator(game, game->name() + ":expectation:0") {}

 protected:
  PayoffVector compute(const State& s) const override { return expect(s); }

 private:
  PayoffVector expect(const State& s) const {
    const Game& g = game();
    if (g.is_terminal(s)) {
      PayoffVector out = g.win_loss_vector(s);
      for (double& x : out) x = (x + 1) / 2;
      return out;
    }
    if (auto it = memo_.find(s.key); it != memo_.end()) return it->second;
    const auto actions = g.legal_actions(s);
    PayoffVector sum(g.num_players());
    for (Action a : actions) {
      const auto child = expect(g.apply(s, a));
      for (int p = 0; p < sum.size(); ++p) sum[p] += child[p];
    }
    for (double& x : sum) x /= static_cast<double>(actions.size());
    memo_.emplace(s.key, sum);
    return sum;
  }
  mutable std::unordered_map<ZobristKey, PayoffVector> memo_;
};

struct Instance {
  GamePtr game;
  State root;
  std::string label;
};

// TriNim (1 to 3 heaps), random bandit tables and Threehex side 2 positions.
std::vector<Instance> oracle_instances() {
  std::vector<Instance> out;
  std::mt19937_64 rng(20240611);
  for (int i = 0; i < 30; ++i) {
    const int heaps = 1 + static_cast<int>(rng() % 3);
    std::vector<int> sizes;
    for (int h = 0; h < heaps; ++h) sizes.push_back(1 + static_cast<int>(rng() % 4));
    const int players = 3 + static_cast<int>(rng() % 2);
    auto g = games::make_game("trinim", {{"heaps", sizes}, {"players", players}});
    out.push_back({g, g->initial_state(), "trinim " + g->config().dump()});
  }
  for (int i = 0; i < 15; ++i) {
    const int arms = 2 + static_cast<int>(rng() % 5);
    const int players = 3 + static_cast<int>(rng() % 2);
    std::vector<std::vector<double>> table(static_cast<std::size_t>(arms));
    std::uniform_real_distribution<double> u(-1, 1);
    for (auto& row : table)
      for (int p = 0; p < players; ++p) row.push_back(std::round(u(rng) * 100) / 100);
    auto g = games::make_game("bandit", {{"table", table}});
    out.push_back({g, g->initial_state(), "bandit " + g->config().dump()});
  }
  auto hex = games::make_game("threehex", {{"side", 2}});
  for (int i = 0; i < 15; ++i) {
    const State s = test::random_position(*hex, rng, i % 5);
    out.push_back({hex, s, "threehex side 2 " + hex->to_text(s)});
  }
  return out;
}

Verdict oracle_equivalence() {
  const auto start = std::chrono::steady_clock::now();
  int passed = 0, total = 0;
  std::string first_failure;
  for (const auto& inst : oracle_instances()) {
    ++total;
    const Game& g = *inst.game;
    const auto table = oracle::solve_maxn(g, inst.root, oracle::Rule::completion_value);
    eval::NoiseEvaluator noise(inst.game, total);
    search::UnboundedMaxn um(g, noise);
    const auto result = um.search(inst.root, search::Budget::unlimited(), search::Decision::best);
    bool ok = result.resolved_root;
    for (const auto& e : result.root_entries) {
      const auto& child = table.at(g.apply(inst.root, e.action));
      ok = ok && e.c == child.c && e.v == child.v;
    }
    ok = ok && result.chosen == table.at(inst.root).best;
    if (ok) ++passed;
    else if (first_failure.empty()) first_failure = inst.label;
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::ostringstream d;
  d << passed << "/" << total << " instances exact, " << secs << " s";
  if (!first_failure.empty()) d << "; first mismatch: " << first_failure;
  return {passed == total && total >= 50 && secs < 60, d.str()};
}

Verdict depth_equivalence() {
  int passed = 0, total = 0;
  std::string first_failure;
  for (const auto& inst : oracle_instances()) {
    ++total;
    const Game& g = *inst.game;
    const auto table = oracle::solve_maxn(g, inst.root, oracle::Rule::value);
    eval::NoiseEvaluator noise(inst.game, 7);
    const int height = test::tree_height(g, inst.root);
    const auto out = search::maxn_depth(g, noise, inst.root, height);
    const auto& want = table.at(inst.root);
    if (out.value == want.v && out.has_action && out.best == want.best) ++passed;
    else if (first_failure.empty()) first_failure = inst.label;
  }
  std::ostringstream d;
  d << passed << "/" << total << " instances exact";
  if (!first_failure.empty()) d << "; first mismatch: " << first_failure;
  return {passed == total, d.str()};
}

Verdict pruning_soundness() {
  using search::DepthAlgorithm;
  std::size_t checks = 0, failures = 0;
  std::string first_failure;
  std::mt19937_64 rng(77);
  for (const auto& spec : test::desk_games()) {
    if (spec.name == "bandit") continue;
    auto game = games::make_game(spec.name, spec.config);
    std::vector<DepthAlgorithm> algorithms{DepthAlgorithm::paranoid, DepthAlgorithm::brs_plus};
    if (game->supports_out_of_turn()) algorithms.push_back(DepthAlgorithm::brs);
    for (int i = 0; i < 200; ++i) {
      const State s = test::random_position(*game, rng, static_cast<int>(rng() % 24));
      const int depth = 1 + i % 4;
      const auto evaluator = i % 2 ? eval::builtin_heuristic(game, i % 5) : eval::make_evaluator(game, game->name() + ":noise:" + std::to_string(i % 5));
      for (auto algorithm : algorithms) {
        search::DepthOptions pruned_opts, plain_opts;
        plain_opts.pruning = false;
        search::DepthSearch pruned(*game, *evaluator, algorithm, pruned_opts);
        search::DepthSearch plain(*game, *evaluator, algorithm, plain_opts);
        const auto a = pruned.run(s, depth);
        const auto b = plain.run(s, depth);
        ++checks;
        if (a->scalar != b->scalar || a->best != b->best) {
          ++failures;
          if (first_failure.empty())
            first_failure = spec.name + " depth " + std::to_string(depth) + " " + game->to_text(s);
        }
      }
      const auto kb = search::kbest_maxn(*game, *evaluator, s, depth, 1000);
      const auto mx = search::maxn_depth(*game, *evaluator, s, depth);
      ++checks;
      if (!(kb.value == mx.value) || kb.best != mx.best) {
        ++failures;
        if (first_failure.empty()) first_failure = spec.name + " kbest depth " + std::to_string(depth);
      }
    }
  }
  std::ostringstream d;
  d << checks << " comparisons, " << failures << " mismatches";
  if (!first_failure.empty()) d << "; first: " << first_failure;
  return {failures == 0, d.str()};
}

bool violates(const std::vector<search::Entry>& entries, PlayerId p, int chosen) {
  const auto& e = entries[static_cast<std::size_t>(chosen)];
  if (!(e.r && e.c[p] == -1)) return false;
  for (const auto& other : entries)
    if (!other.r || other.c[p] > -1) return true;
  return false;
}

// Roots spread over each desk game, from the opening to near the end.
std::vector<std::pair<GamePtr, State>> search_roots(std::uint64_t seed, int per_game) {
  std::vector<std::pair<GamePtr, State>> out;
  std::mt19937_64 rng(seed);
  for (const auto& spec : test::desk_games()) {
    if (spec.name == "bandit") continue;
    auto game = games::make_game(spec.name, spec.config);
    for (int i = 0; i < per_game; ++i) out.emplace_back(game, test::random_position(*game, rng, static_cast<int>(rng() % 40)));
  }
  return out;
}

Verdict completion_safety() {
  std::size_t snapshots = 0, node_checks = 0, violations = 0;
  for (const auto& [game, root] : search_roots(5, 5)) {
    const auto evaluator = eval::builtin_heuristic(game, 1);
    search::UnboundedMaxn um(*game, *evaluator);
    um.reset(root);
    for (int snap = 0; snap < 25; ++snap) {
      for (int k = 0; k < 8; ++k) um.step();
      ++snapshots;
      for (const auto& [key, node] : um.table()) {
        ++node_checks;
        if (violates(node.entries, node.mover, search::best_action(node.entries, node.mover))) ++violations;
        if (violates(node.entries, node.mover, search::safe_action(node.entries, node.mover))) ++violations;
      }
    }
  }
  std::ostringstream d;
  d << snapshots << " snapshots, " << node_checks << " stored nodes checked, " << violations << " violations";
  return {snapshots >= 1000 && violations == 0, d.str()};
}

Verdict resolution_permanence() {
  std::uint64_t iterations = 0, violations = 0, resolved = 0;
  std::uint64_t seed = 100;
  while (iterations < 10000) {
    for (const auto& [game, root] : search_roots(seed++, 1)) {
      const auto evaluator = eval::make_evaluator(game, game->name() + ":noise:" + std::to_string(seed % 30));
      search::UnboundedMaxn um(*game, *evaluator);
      um.reset(root);
      std::map<std::pair<ZobristKey, std::size_t>, std::pair<PayoffVector, PayoffVector>> frozen;
      for (int i = 0; i < 150 && um.step(); ++i) {
        ++iterations;
        for (const auto& [key, node] : um.table())
          for (std::size_t a = 0; a < node.entries.size(); ++a) {
            const auto& e = node.entries[a];
            auto it = frozen.find({key, a});
            if (it != frozen.end()) {
              if (!e.r || !(e.c == it->second.first) || !(e.v == it->second.second)) ++violations;
            } else if (e.r) {
              frozen.emplace(std::pair{key, a}, std::pair{e.c, e.v});
              ++resolved;
            }
          }
      }
    }
  }
  std::ostringstream d;
  d << iterations << " iterations, " << resolved << " entries resolved, " << violations << " rewrites";
  return {violations == 0, d.str()};
}

Verdict mcts_sanity() {
  auto game = games::make_game("bandit");
  const auto& bandit = dynamic_cast<const games::Bandit&>(*game);
  // The optimal arm maximizes the mover's own payoff.
  int optimal = 0;
  for (int a = 1; a < bandit.arms(); ++a)
    if (bandit.table()[static_cast<std::size_t>(a)][0] > bandit.table()[static_cast<std::size_t>(optimal)][0]) optimal = a;
  const State root = game->initial_state();
  const double c = std::sqrt(2.0) / 4;
  ExpectationEvaluator exact(game);
  int plain_hits = 0, guided_hits = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    search::Mcts plain(*game, c, seed);
    if (plain.search(root, search::Budget::node_budget(10000)).chosen.code == optimal) ++plain_hits;
    search::Mcts guided(*game, c, seed, &exact);
    if (guided.search(root, search::Budget::node_budget(10000)).chosen.code == optimal) ++guided_hits;
  }
  std::ostringstream d;
  d << "mcts " << plain_hits << "/100, mcts_h " << guided_hits << "/100 on arm " << optimal;
  return {plain_hits >= 95 && guided_hits >= 99, d.str()};
}

Verdict normalization() {
  std::size_t states = 0, outside = 0, bad = 0, witness_failures = 0;
  for (const auto& spec : test::desk_games()) {
    if (spec.name == "trinim" || spec.name == "bandit") continue;
    auto game = games::make_game(spec.name, spec.config);
    const auto raw = eval::builtin_heuristic(game, 3);
    const auto calibration = eval::calibrate_bounds(*raw, eval::uniform_policy, 2, 11);
    const auto normalized = eval::normalize(raw, calibration.bounds);
    const auto& b = calibration.bounds;
    for (int p = 0; p < game->num_players(); ++p) {
      if (normalized->evaluate(calibration.max_witness[static_cast<std::size_t>(p)])[p] != 1.0) ++witness_failures;
      if (normalized->evaluate(calibration.min_witness[static_cast<std::size_t>(p)])[p] != 0.0) ++witness_failures;
    }
    std::mt19937_64 rng(999);
    std::size_t here = 0;
    while (here < 10000) {
      State s = game->initial_state();
      while (!game->is_terminal(s) && here < 10000) {
        const auto f = raw->evaluate(s);
        const auto fn = normalized->evaluate(s);
        bool out_of_range = false;
        for (int p = 0; p < game->num_players(); ++p) {
          if (!(fn[p] >= 0.0 && fn[p] <= 1.0)) ++bad;
          out_of_range = out_of_range || f[p] < b.m[p] || f[p] > b.M[p];
        }
        if (out_of_range) ++outside;
        ++here;
        s = game->apply(s, test::random_action(*game, s, rng));
      }
    }
    states += here;
  }
  std::ostringstream d;
  d << states << " states (" << outside << " outside calibration), " << bad << " outputs outside [0,1], "
    << witness_failures << " witness mismatches";
  return {bad == 0 && witness_failures == 0, d.str()};
}

Verdict protocol_arithmetic() {
  std::vector<std::string> problems;
  for (auto [players, E, want] : {std::tuple{3, 30, 2700}, std::tuple{4, 30, 3600}, std::tuple{3, 2, 12}}) {
    const auto plan = harness::schedule(players, E);
    std::set<std::tuple<int, int, int>> seen;
    for (const auto& a : plan) {
      seen.insert({a.seat, a.i, a.opponents.front()});
      for (std::size_t k = 0; k < a.opponents.size(); ++k)
        if (a.opponents[k] != (a.opponents.front() + static_cast<int>(k)) % E) problems.push_back("opponent wrap");
    }
    if (static_cast<int>(plan.size()) != want || static_cast<int>(seen.size()) != want)
      problems.push_back("schedule P=" + std::to_string(players) + " E=" + std::to_string(E) + " has " +
                         std::to_string(plan.size()) + " assignments");
  }
  // Hand fixtures: outcome vector or forfeiter -> expected binary scores.
  struct Fixture {
    std::string name;
    PayoffVector outcome;
    int forfeiter;
    std::vector<int> want;
  };
  const std::vector<Fixture> fixtures{
      {"single winner", {-1, 1, -1}, -1, {-1, 1, -1}},
      {"tie for first", {1, -1, 1, -1}, -1, {1, -1, 1, -1}},
      {"draw", {0, 0, 0}, -1, {0, 0, 0}},
      {"forfeit", {}, 2, {1, 1, -1, 1}},
  };
  for (const auto& f : fixtures) {
    harness::MatchRecord r;
    if (f.forfeiter >= 0) {
      r.status = "forfeit";
      r.forfeiter = f.forfeiter;
    } else {
      r.outcome = f.outcome;
    }
    for (std::size_t p = 0; p < f.want.size(); ++p)
      if (harness::binary_score(r, static_cast<PlayerId>(p)) != f.want[p]) problems.push_back(f.name);
  }
  // The same cases arising from real rule engines.
  auto trinim = games::make_game("trinim", {{"heaps", {1}}});
  harness::MatchRecord won;
  won.outcome = trinim->win_loss_vector(trinim->apply(trinim->initial_state(), Action{0}));
  if (harness::binary_score(won, 0) != 1 || harness::binary_score(won, 1) != -1) problems.push_back("trinim winner");
  std::string text = "single winner, tie, draw, forfeit fixtures; schedules 2700/3600/12";
  if (!problems.empty()) text += "; problems: " + problems.front() + " (" + std::to_string(problems.size()) + ")";
  return {problems.empty(), text};
}

Verdict bootstrap_coverage() {
  const double truth = 0.3;
  // Stratum sizes sum to 199 so the true mean is not a lattice point of the sample mean.
  const std::vector<int> sizes{47, 53, 61, 38};
  const int resamples = 2000;
  std::mt19937_64 rng(4242);
  std::bernoulli_distribution coin(truth);
  int covered = 0;
  bool deterministic = true;
  for (int trial = 0; trial < 1000; ++trial) {
    std::vector<harness::Observation> obs;
    for (std::size_t s = 0; s < sizes.size(); ++s)
      for (int k = 0; k < sizes[s]; ++k) obs.push_back({"s" + std::to_string(s), coin(rng) ? 1.0 : 0.0});
    const auto ci = harness::stratified_bootstrap(obs, resamples, 1000 + static_cast<std::uint64_t>(trial));
    if (ci.lower <= truth && truth <= ci.upper) ++covered;
    if (trial < 20) {
      const auto again = harness::stratified_bootstrap(obs, resamples, 1000 + static_cast<std::uint64_t>(trial));
      deterministic = deterministic && again.lower == ci.lower && again.upper == ci.upper && again.mean == ci.mean;
    }
  }
  std::ostringstream d;
  d << "coverage " << covered / 10.0 << "% over 1000 trials" << (deterministic ? ", deterministic" : ", NOT deterministic");
  return {covered >= 930 && covered <= 970 && deterministic, d.str()};
}

std::string strip_timing(std::string line) {
  auto j = nlohmann::json::parse(line);
  j.erase("move_seconds");
  return j.dump();
}

Verdict determinism_replay() {
  harness::TournamentConfig config;
  config.name = "determinism";
  config.games = {{"threehex", {{"side", 3}}}, {"trinim", nlohmann::json::object()}};
  config.evaluated = {"umaxn", "umaxn-safe", "kbest:3", "paranoid", "brs+", "mcts:sqrt2/4", "mctsh:sqrt2/4", "random"};
  config.budget = search::Budget::node_budget(150);
  config.resamples = 500;
  config.seed = 9;
  const fs::path root = fs::temp_directory_path() / ("mps-acceptance-" + std::to_string(::getpid()));
  fs::remove_all(root);
  std::vector<std::vector<std::string>> runs;
  std::string tables[2];
  for (int run = 0; run < 2; ++run) {
    harness::RunOptions options;
    options.output_dir = root / ("run" + std::to_string(run));
    const auto summary = harness::run_experiment(config, options);
    tables[run] = harness::format_text(summary.table);
    std::ifstream in(summary.records);
    std::vector<std::string> lines;
    for (std::string line; std::getline(in, line);) lines.push_back(strip_timing(line));
    runs.push_back(lines);
  }
  const auto records = harness::load_records(root / "run0" / "records.jsonl");
  const auto game_of = [&](const harness::MatchRecord& r) { return games::make_game(r.game, r.config); };
  std::size_t replayed = 0;
  for (const auto& r : records)
    if (harness::replay(*game_of(r), r)) ++replayed;
  fs::remove_all(root);
  const bool same = runs[0] == runs[1] && tables[0] == tables[1];
  std::ostringstream d;
  d << runs[0].size() << " records, runs " << (same ? "identical" : "DIFFER") << ", " << replayed << "/" << records.size()
    << " replay to their outcome";
  return {same && replayed == records.size() && !records.empty(), d.str()};
}

Verdict directional_benchmark() {
  const auto start = std::chrono::steady_clock::now();
  harness::TournamentConfig config;
  config.name = "directional";
  config.games = {{"threehex", {{"side", 4}}}, {"triinversion", {{"l", 3}}}};
  config.evaluated = {"umaxn-safe", "maxn"};
  config.benchmark = "maxn";
  config.E = 2;
  config.budget = search::Budget::node_budget(10000);
  config.seed = 1;
  const fs::path dir = fs::temp_directory_path() / ("mps-directional-" + std::to_string(::getpid()));
  fs::remove_all(dir);
  harness::RunOptions options;
  options.output_dir = dir;
  const auto summary = harness::run_experiment(config, options);
  fs::remove_all(dir);
  double safe = 0, maxn = 0;
  for (const auto& row : summary.table.rows) {
    if (row.algorithm == "umaxn-safe") safe = row.overall.mean;
    if (row.algorithm == "maxn") maxn = row.overall.mean;
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::ostringstream d;
  d << "umaxn-safe " << safe << " vs maxn " << maxn << " over " << summary.total << " matches, " << secs << " s";
  return {safe >= maxn - 0.05, d.str()};
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::pair<std::string, std::function<Verdict()>>> criteria{
      {"oracle equivalence", oracle_equivalence},
      {"depth-search equivalence", depth_equivalence},
      {"pruning soundness", pruning_soundness},
      {"completion safety", completion_safety},
      {"resolution permanence", resolution_permanence},
      {"mcts sanity", mcts_sanity},
      {"normalization", normalization},
      {"protocol arithmetic", protocol_arithmetic},
      {"bootstrap coverage", bootstrap_coverage},
      {"determinism and replay", determinism_replay},
      {"directional benchmark", directional_benchmark},
  };
  // Optional filter: run only criteria whose name contains argv[1].
  const std::string only = argc > 1 ? argv[1] : "";
  int failed = 0;
  for (const auto& [name, check] : criteria) {
    if (!only.empty() && name.find(only) == std::string::npos) continue;
    Verdict v;
    try {
      v = check();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    if (!v.pass) ++failed;
    std::cout << (v.pass ? "PASS " : "FAIL ") << name << ": " << v.detail << std::endl;
  }
  return failed == 0 ? 0 : 1;
}

#pragma once

#include <filesystem>
#include <functional>
#include <string>
#include <vector>

#include "harness/bootstrap.hpp"
#include "harness/match.hpp"

namespace mps::harness {

struct GameSpec {
  std::string name;
  nlohmann::json config = nlohmann::json::object();
};

struct TournamentConfig {
  std::string name = "experiment";
  std::vector<GameSpec> games;
  std::vector<std::string> evaluated;   // algorithm ids
  std::string benchmark = "maxn";       // benchmark adversary
  std::string evaluator_family = "heuristic";
  int E = 2;
  search::Budget budget = search::Budget::node_budget(1000);
  std::uint64_t seed = 1;
  std::vector<std::string> strata{"game", "seat"};
  int resamples = 10000;
  int workers = 1;
};

// Field errors name their JSON path, e.g. "games[1].config".
TournamentConfig parse_config(const nlohmann::json& j);
nlohmann::json to_json(const TournamentConfig& c);

struct Assignment {
  int seat = 0;
  int i = 0;
  std::vector<int> opponents;  // evaluator indices j, j+1, ... mod E for the other seats in order
};

// Every (seat, i, j) once: P * E^2 assignments, seat-major.
std::vector<Assignment> schedule(int players, int E);

struct Job {
  GameSpec game;
  std::string algorithm;
  Assignment assignment;
  std::uint64_t seed = 0;
  std::string key;
};

std::vector<Job> jobs(const TournamentConfig& config);

struct ScoreRow {
  std::string algorithm;
  Interval overall;
  std::vector<std::pair<std::string, Interval>> per_game;
};

struct ScoreTable {
  std::vector<ScoreRow> rows;
  std::vector<std::string> notes;
};

// Evaluated-seat binary scores grouped by the configured strata.
ScoreTable aggregate(std::vector<MatchRecord> records, const std::vector<std::string>& strata, int resamples,
                     std::uint64_t seed);

std::string format_text(const ScoreTable& table);
std::string format_csv(const ScoreTable& table);

struct RunOptions {
  std::filesystem::path output_dir = ".";
  int workers = 0;      // 0: use the config
  bool resume = false;  // reuse records already on disk
  std::size_t max_matches = 0;  // stop after this many new matches (0: all)
  std::function<void(const MatchRecord&)> on_record;
};

struct RunSummary {
  ScoreTable table;
  std::size_t played = 0;
  std::size_t reused = 0;
  std::size_t total = 0;
  std::filesystem::path records;
};

// Schedules, plays (across workers), appends every record to
// <output_dir>/records.jsonl, aggregates, writes table.txt and table.csv.
RunSummary run_experiment(const TournamentConfig& config, const RunOptions& options);

std::vector<MatchRecord> load_records(const std::filesystem::path& path);

}  // namespace mps::harness

#include "harness/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <fstream>
#include <iterator>
#include <iomanip>
#include <map>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>

#include "games/registry.hpp"

namespace mps::harness {
namespace {

std::uint64_t fnv1a(const std::string& text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : text) h = (h ^ ch) * 0x100000001b3ULL;
  return h;
}

[[noreturn]] void config_error(const std::string& path, const std::string& what) {
  fail(ErrorCode::invalid_config, "config field '" + path + "': " + what);
}

template <class T>
T field(const nlohmann::json& j, const std::string& key, const std::string& path, T fallback) {
  if (!j.contains(key)) return fallback;
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    config_error(path + key, e.what());
  }
}

std::string game_label(const std::string& name, const nlohmann::json& config) {
  std::string out = name;
  if (config.is_object())
    for (const auto& [k, v] : config.items()) {
      if (!v.is_array()) {
        out += " " + k + "=" + v.dump();
        continue;
      }
      // Flat lists print as a,b,c; nested ones (payoff tables) are left out.
      std::string list;
      bool flat = true;
      for (const auto& x : v) {
        flat = flat && x.is_primitive();
        list += (list.empty() ? "" : ",") + x.dump();
      }
      if (flat) out += " " + k + "=" + list;
    }
  return out;
}

std::string stratum_of(const MatchRecord& r, const std::vector<std::string>& strata) {
  std::string out;
  for (const auto& s : strata) {
    if (s == "game") out += "|" + r.game + r.config.dump();
    else if (s == "seat") out += "|s" + std::to_string(r.seat);
    else if (s == "cell") out += "|i" + std::to_string(r.i) + "j" + std::to_string(r.j);
  }
  return out;
}

std::string format_number(double v, bool sign) {
  std::ostringstream out;
  out << std::fixed << std::setprecision(3);
  if (sign && v >= 0) out << '+';
  out << v;
  return out.str();
}

}  // namespace

TournamentConfig parse_config(const nlohmann::json& j) {
  if (!j.is_object()) config_error("", "the config must be a JSON object");
  static const std::set<std::string> known{"name", "game", "config", "games", "evaluated", "benchmark", "evaluator_family",
                                           "E", "budget", "seed", "strata", "resamples", "workers"};
  for (const auto& [key, _] : j.items())
    if (!known.count(key)) config_error(key, "unknown field");
  TournamentConfig c;
  c.name = field(j, "name", "", c.name);
  if (j.contains("games")) {
    if (!j.at("games").is_array() || j.at("games").empty()) config_error("games", "must be a non-empty array");
    for (std::size_t k = 0; k < j.at("games").size(); ++k) {
      const auto& g = j.at("games")[k];
      const auto path = "games[" + std::to_string(k) + "].";
      GameSpec spec;
      spec.name = field<std::string>(g, "game", path, "");
      spec.config = g.contains("config") ? g.at("config") : nlohmann::json::object();
      c.games.push_back(spec);
    }
  } else if (j.contains("game")) {
    c.games.push_back({field<std::string>(j, "game", "", ""), j.contains("config") ? j.at("config") : nlohmann::json::object()});
  } else {
    config_error("games", "missing");
  }
  for (std::size_t k = 0; k < c.games.size(); ++k) {
    try {
      games::make_game(c.games[k].name, c.games[k].config);
    } catch (const Error& e) {
      config_error("games[" + std::to_string(k) + "]", e.what());
    }
  }
  c.evaluated = field(j, "evaluated", "", std::vector<std::string>{});
  if (c.evaluated.empty()) config_error("evaluated", "needs at least one algorithm");
  for (std::size_t k = 0; k < c.evaluated.size(); ++k) {
    try {
      validate_algorithm(c.evaluated[k]);
    } catch (const Error& e) {
      config_error("evaluated[" + std::to_string(k) + "]", e.what());
    }
  }
  c.benchmark = field(j, "benchmark", "", c.benchmark);
  try {
    validate_algorithm(c.benchmark);
  } catch (const Error& e) {
    config_error("benchmark", e.what());
  }
  c.evaluator_family = field(j, "evaluator_family", "", c.evaluator_family);
  c.E = field(j, "E", "", c.E);
  if (c.E < 1) config_error("E", "must be >= 1");
  if (j.contains("budget")) {
    try {
      c.budget = budget_from_json(j.at("budget"));
    } catch (const std::exception& e) {
      config_error("budget", e.what());
    }
  }
  c.seed = field(j, "seed", "", c.seed);
  c.strata = field(j, "strata", "", c.strata);
  for (std::size_t k = 0; k < c.strata.size(); ++k)
    if (c.strata[k] != "game" && c.strata[k] != "seat" && c.strata[k] != "cell")
      config_error("strata[" + std::to_string(k) + "]", "must be one of game, seat, cell");
  c.resamples = field(j, "resamples", "", c.resamples);
  if (c.resamples < 1) config_error("resamples", "must be >= 1");
  c.workers = field(j, "workers", "", c.workers);
  if (c.workers < 1) config_error("workers", "must be >= 1");
  return c;
}

nlohmann::json to_json(const TournamentConfig& c) {
  nlohmann::json games = nlohmann::json::array();
  for (const auto& g : c.games) games.push_back({{"game", g.name}, {"config", g.config}});
  return {{"name", c.name},     {"games", games},     {"evaluated", c.evaluated},
          {"benchmark", c.benchmark}, {"evaluator_family", c.evaluator_family},
          {"E", c.E},           {"budget", to_json(c.budget)}, {"seed", c.seed},
          {"strata", c.strata}, {"resamples", c.resamples},   {"workers", c.workers}};
}

std::vector<Assignment> schedule(int players, int E) {
  if (players < 2 || E < 1) fail(ErrorCode::invalid_config, "schedule needs P >= 2 and E >= 1");
  std::vector<Assignment> out;
  out.reserve(static_cast<std::size_t>(players * E * E));
  for (int seat = 0; seat < players; ++seat)
    for (int i = 0; i < E; ++i)
      for (int j = 0; j < E; ++j) {
        Assignment a;
        a.seat = seat;
        a.i = i;
        for (int k = 0; k < players - 1; ++k) a.opponents.push_back((j + k) % E);
        out.push_back(std::move(a));
      }
  return out;
}

std::vector<Job> jobs(const TournamentConfig& config) {
  std::vector<Job> out;
  for (const auto& g : config.games) {
    const auto game = games::make_game(g.name, g.config);
    const auto label = g.name + game->config().dump();
    const auto assignments = schedule(game->num_players(), config.E);
    for (const auto& algorithm : config.evaluated)
      for (const auto& a : assignments) {
        Job job;
        job.game = {g.name, game->config()};
        job.algorithm = algorithm;
        job.assignment = a;
        const auto cell = static_cast<std::uint64_t>((a.seat * config.E + a.i) * config.E + a.opponents[0]);
        job.seed = mix_seed(config.seed, fnv1a(label), cell);
        job.key = label + "|" + algorithm + "|seat" + std::to_string(a.seat) + "|i" + std::to_string(a.i) + "|j" +
                  std::to_string(a.opponents[0]) + "|seed" + std::to_string(job.seed);
        out.push_back(std::move(job));
      }
  }
  return out;
}

ScoreTable aggregate(std::vector<MatchRecord> records, const std::vector<std::string>& strata, int resamples,
                     std::uint64_t seed) {
  std::sort(records.begin(), records.end(), [](const MatchRecord& a, const MatchRecord& b) { return a.key < b.key; });
  ScoreTable table;
  std::map<std::string, std::vector<const MatchRecord*>> by_algorithm;
  std::vector<std::string> order;
  std::size_t forfeits = 0;
  for (const auto& r : records) {
    if (!by_algorithm.count(r.algorithm)) order.push_back(r.algorithm);
    by_algorithm[r.algorithm].push_back(&r);
    forfeits += r.status == "forfeit";
  }
  std::sort(order.begin(), order.end());
  for (const auto& algorithm : order) {
    ScoreRow row;
    row.algorithm = algorithm;
    std::vector<Observation> all;
    std::map<std::string, std::vector<Observation>> per_game;
    std::vector<std::string> game_order;
    for (const auto* r : by_algorithm[algorithm]) {
      const Observation o{stratum_of(*r, strata), static_cast<double>(binary_score(*r, r->seat))};
      all.push_back(o);
      const auto label = game_label(r->game, r->config);
      if (!per_game.count(label)) game_order.push_back(label);
      per_game[label].push_back(o);
    }
    std::sort(game_order.begin(), game_order.end());
    row.overall = stratified_bootstrap(all, resamples, mix_seed(seed, fnv1a(algorithm)));
    for (const auto& label : game_order)
      row.per_game.emplace_back(label, stratified_bootstrap(per_game[label], resamples, mix_seed(seed, fnv1a(algorithm), fnv1a(label))));
    table.rows.push_back(std::move(row));
  }
  if (forfeits) table.notes.push_back(std::to_string(forfeits) + " forfeited match(es) scored -1 for the forfeiter");
  return table;
}

std::string format_text(const ScoreTable& table) {
  std::vector<std::string> games;
  for (const auto& row : table.rows)
    for (const auto& [label, _] : row.per_game)
      if (std::find(games.begin(), games.end(), label) == games.end()) games.push_back(label);

  // Cells first, then pad by display width (UTF-8 continuation bytes do not count).
  std::vector<std::vector<std::string>> grid;
  grid.push_back({"algorithm"});
  for (const auto& g : games) grid.back().push_back(g);
  grid.back().push_back("mean / lower / upper");
  for (const auto& row : table.rows) {
    std::vector<std::string> line{row.algorithm};
    for (const auto& g : games) {
      std::string cell = "-";
      for (const auto& [label, iv] : row.per_game)
        if (label == g) cell = format_number(iv.mean, true) + " ± " + format_number((iv.upper - iv.lower) / 2, false);
      line.push_back(cell);
    }
    line.push_back(format_number(row.overall.mean, true) + " / " + format_number(row.overall.lower, true) + " / " +
                   format_number(row.overall.upper, true) + " (n=" + std::to_string(row.overall.n) + ")");
    grid.push_back(std::move(line));
  }
  const auto width = [](const std::string& s) {
    return static_cast<std::size_t>(std::count_if(s.begin(), s.end(), [](char c) { return (c & 0xC0) != 0x80; }));
  };
  std::vector<std::size_t> widths(games.size() + 2, 0);
  for (const auto& line : grid)
    for (std::size_t k = 0; k < line.size(); ++k) widths[k] = std::max(widths[k], width(line[k]));
  std::ostringstream out;
  for (const auto& line : grid) {
    for (std::size_t k = 0; k < line.size(); ++k) {
      if (k > 0) out << " | ";
      out << line[k];
      if (k + 1 < line.size()) out << std::string(widths[k] - width(line[k]), ' ');
    }
    out << '\n';
  }
  for (const auto& note : table.notes) out << "note: " << note << '\n';
  return out.str();
}

std::string format_csv(const ScoreTable& table) {
  std::ostringstream out;
  out << "algorithm,game,n,mean,lower,upper\n";
  for (const auto& row : table.rows) {
    for (const auto& [label, iv] : row.per_game)
      out << row.algorithm << ",\"" << label << "\"," << iv.n << ',' << iv.mean << ',' << iv.lower << ',' << iv.upper << '\n';
    out << row.algorithm << ",all," << row.overall.n << ',' << row.overall.mean << ',' << row.overall.lower << ','
        << row.overall.upper << '\n';
  }
  return out.str();
}

std::vector<MatchRecord> load_records(const std::filesystem::path& path) {
  std::vector<MatchRecord> out;
  std::ifstream in(path);
  if (!in) return out;
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (line.empty()) continue;
    try {
      out.push_back(record_from_json(nlohmann::json::parse(line)));
    } catch (const nlohmann::json::exception& e) {
      // A torn final line from an interrupted run is dropped; anything else is an error.
      if (in.peek() == EOF) break;
      fail(ErrorCode::parse_error, path.string() + ":" + std::to_string(number) + ": " + e.what());
    }
  }
  return out;
}

RunSummary run_experiment(const TournamentConfig& config, const RunOptions& options) {
  namespace fs = std::filesystem;
  fs::create_directories(options.output_dir);
  RunSummary summary;
  summary.records = options.output_dir / "records.jsonl";
  const auto all_jobs = jobs(config);
  summary.total = all_jobs.size();
  std::set<std::string> wanted;
  for (const auto& job : all_jobs) wanted.insert(job.key);

  std::vector<MatchRecord> records;
  std::set<std::string> done;
  if (fs::exists(summary.records)) {
    if (!options.resume)
      fail(ErrorCode::io_error, summary.records.string() + " already exists; pass --resume to continue that run");
    for (auto& r : load_records(summary.records))
      if (wanted.count(r.key) && done.insert(r.key).second) records.push_back(std::move(r));
  }
  summary.reused = records.size();

  std::vector<const Job*> pending;
  for (const auto& job : all_jobs)
    if (!done.count(job.key)) pending.push_back(&job);
  if (options.max_matches && pending.size() > options.max_matches) pending.resize(options.max_matches);

  if (fs::exists(summary.records)) {
    // Cut a torn final line left by an interrupted run.
    std::ifstream in(summary.records, std::ios::binary);
    const std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    in.close();
    if (!text.empty() && text.back() != '\n') {
      const auto last = text.find_last_of('\n');
      fs::resize_file(summary.records, last == std::string::npos ? 0 : last + 1);
    }
  }
  std::ofstream log(summary.records, std::ios::app);
  if (!log) fail(ErrorCode::io_error, "cannot append to " + summary.records.string());
  std::mutex mutex;
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  auto worker = [&] {
    while (true) {
      const std::size_t k = next++;
      if (k >= pending.size()) return;
      const Job& job = *pending[k];
      try {
        const auto game = games::make_game(job.game.name, job.game.config);
        std::vector<AgentSpec> seats(static_cast<std::size_t>(game->num_players()));
        std::size_t opponent = 0;
        for (int p = 0; p < game->num_players(); ++p) {
          auto& spec = seats[static_cast<std::size_t>(p)];
          spec.evaluator_family = config.evaluator_family;
          spec.budget = config.budget;
          if (p == job.assignment.seat) {
            spec.algorithm = job.algorithm;
            spec.evaluator = job.assignment.i;
          } else {
            spec.algorithm = config.benchmark;
            spec.evaluator = job.assignment.opponents[opponent++];
          }
        }
        auto record = play_match(game, seats, job.seed);
        record.key = job.key;
        record.algorithm = job.algorithm;
        record.seat = job.assignment.seat;
        record.i = job.assignment.i;
        record.j = job.assignment.opponents[0];
        std::lock_guard<std::mutex> lock(mutex);
        log << to_json(record).dump() << '\n';
        log.flush();
        if (options.on_record) options.on_record(record);
        records.push_back(std::move(record));
        ++summary.played;
      } catch (...) {
        std::lock_guard<std::mutex> lock(mutex);
        if (!failure) failure = std::current_exception();
        next = pending.size();
      }
    }
  };
  const int workers = std::max(1, options.workers > 0 ? options.workers : config.workers);
  std::vector<std::thread> pool;
  for (int w = 1; w < workers; ++w) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);

  summary.table = aggregate(records, config.strata, config.resamples, config.seed);
  if (records.size() < summary.total)
    summary.table.notes.push_back("partial run: " + std::to_string(records.size()) + " of " + std::to_string(summary.total) +
                                  " matches recorded");
  std::ofstream(options.output_dir / "table.txt") << format_text(summary.table);
  std::ofstream(options.output_dir / "table.csv") << format_csv(summary.table);
  return summary;
}

}  // namespace mps::harness

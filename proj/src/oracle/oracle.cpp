#include "oracle/oracle.hpp"

#include <algorithm>
#include <cstring>
#include <fstream>
#include <unordered_set>
#include <utility>

#include "core/tiebreak.hpp"

namespace mps::oracle {

const char* rule_name(Rule rule) { return rule == Rule::value ? "value" : "completion_value"; }

const Solved& SolvedTable::at(const State& s) const {
  auto it = entries.find(s.key);
  if (it == entries.end()) fail(ErrorCode::contract_violation, "state is not in the solved table");
  return it->second;
}

namespace {

class MaxnSolver {
 public:
  MaxnSolver(const Game& game, Rule rule, std::uint64_t cap, SolvedTable& out) : game_(game), rule_(rule), cap_(cap), out_(out) {}

  const Solved& solve(const State& s) {
    if (auto it = out_.entries.find(s.key); it != out_.entries.end()) return it->second;
    Solved node;
    if (game_.is_terminal(s)) {
      node.v = game_.terminal_payoff(s);
      node.c = game_.win_loss_vector(s);
      node.mover = -1;
    } else {
      node.mover = s.mover;
      const auto actions = game_.legal_actions(s);
      std::vector<std::pair<PayoffVector, PayoffVector>> children;
      children.reserve(actions.size());
      for (Action a : actions) {
        const auto& child = solve(game_.apply(s, a));
        children.emplace_back(child.v, child.c);
      }
      const PlayerId p = s.mover;
      const int count = static_cast<int>(actions.size());
      const int best = rule_ == Rule::value
                           ? lex_argmax(count, [&](int i) { return children[static_cast<std::size_t>(i)].first[p]; })
                           : lex_argmax(count, [&](int i) {
                               const auto& [v, c] = children[static_cast<std::size_t>(i)];
                               return std::pair<double, double>{c[p], v[p]};
                             });
      node.v = children[static_cast<std::size_t>(best)].first;
      node.c = children[static_cast<std::size_t>(best)].second;
      node.best = actions[static_cast<std::size_t>(best)];
      node.has_action = true;
    }
    if (out_.entries.size() >= cap_)
      fail(ErrorCode::cap_exceeded, "oracle: state-space cap of " + std::to_string(cap_) + " exceeded after " +
                                        std::to_string(out_.entries.size()) + " states");
    return out_.entries.emplace(s.key, node).first->second;
  }

 private:
  const Game& game_;
  Rule rule_;
  std::uint64_t cap_;
  SolvedTable& out_;
};

class ParanoidSolver {
 public:
  ParanoidSolver(const Game& game, PlayerId root, std::uint64_t cap) : game_(game), root_(root), cap_(cap) {}

  ParanoidSolution solve(const State& s) {
    if (auto it = memo_.find(s.key); it != memo_.end()) return it->second;
    ParanoidSolution out;
    if (game_.is_terminal(s)) {
      out.value = game_.terminal_payoff(s)[root_];
    } else {
      const bool maximizing = s.mover == root_;
      const auto actions = game_.legal_actions(s);
      std::vector<double> values;
      for (Action a : actions) values.push_back(solve(game_.apply(s, a)).value);
      const int best = lex_argmax(static_cast<int>(values.size()), [&](int i) {
        return maximizing ? values[static_cast<std::size_t>(i)] : -values[static_cast<std::size_t>(i)];
      });
      out.value = values[static_cast<std::size_t>(best)];
      out.best = actions[static_cast<std::size_t>(best)];
      out.has_action = true;
    }
    if (memo_.size() >= cap_)
      fail(ErrorCode::cap_exceeded, "oracle: state-space cap of " + std::to_string(cap_) + " exceeded");
    memo_.emplace(s.key, out);
    return out;
  }

 private:
  const Game& game_;
  PlayerId root_;
  std::uint64_t cap_;
  std::unordered_map<ZobristKey, ParanoidSolution> memo_;
};

template <class T>
void put(std::ostream& out, const T& value) {
  out.write(reinterpret_cast<const char*>(&value), sizeof(T));
}

template <class T>
T get(std::istream& in) {
  T value{};
  in.read(reinterpret_cast<char*>(&value), sizeof(T));
  if (!in) fail(ErrorCode::parse_error, "oracle fixture is truncated");
  return value;
}

}  // namespace

SolvedTable solve_maxn(const Game& game, const State& s, Rule rule, std::uint64_t cap) {
  SolvedTable out;
  out.game = game.name();
  out.config = game.config();
  out.rule = rule;
  out.root = s.key;
  MaxnSolver(game, rule, cap, out).solve(s);
  return out;
}

ParanoidSolution solve_paranoid(const Game& game, const State& s, PlayerId root_player, std::uint64_t cap) {
  if (root_player < 0 || root_player >= game.num_players()) fail(ErrorCode::contract_violation, "root player out of range");
  return ParanoidSolver(game, root_player, cap).solve(s);
}

std::uint64_t count_states(const Game& game, const State& s, std::uint64_t cap) {
  std::unordered_set<ZobristKey> seen{s.key};
  std::vector<State> stack{s};
  while (!stack.empty()) {
    State cur = std::move(stack.back());
    stack.pop_back();
    if (game.is_terminal(cur)) continue;
    for (Action a : game.legal_actions(cur)) {
      State next = game.apply_unchecked(cur, a);
      if (!seen.insert(next.key).second) continue;
      if (seen.size() > cap) return cap + 1;
      stack.push_back(std::move(next));
    }
  }
  return seen.size();
}

void write_fixture(const std::string& path, const SolvedTable& table, int players) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorCode::io_error, "cannot write " + path);
  const nlohmann::json header{{"game", table.game},       {"config", table.config},
                              {"tie_break", "ordinal"},   {"rule", rule_name(table.rule)},
                              {"states", table.entries.size()}, {"players", players},
                              {"root", table.root}};
  const auto text = header.dump();
  out.write("MPSO", 4);
  put(out, static_cast<std::uint32_t>(text.size()));
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  // Sorted by key so equal tables give identical files.
  std::vector<ZobristKey> keys;
  for (const auto& [key, _] : table.entries) keys.push_back(key);
  std::sort(keys.begin(), keys.end());
  for (ZobristKey key : keys) {
    const auto& e = table.entries.at(key);
    put(out, key);
    put(out, static_cast<std::int8_t>(e.mover));
    put(out, static_cast<std::uint8_t>(e.has_action));
    put(out, e.best.code);
    for (int p = 0; p < players; ++p) put(out, e.v[p]);
    for (int p = 0; p < players; ++p) put(out, e.c[p]);
  }
  if (!out) fail(ErrorCode::io_error, "failed writing " + path);
}

SolvedTable read_fixture(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::io_error, "cannot read " + path);
  char magic[4];
  in.read(magic, 4);
  if (!in || std::memcmp(magic, "MPSO", 4) != 0) fail(ErrorCode::parse_error, path + " is not an oracle fixture");
  const auto length = get<std::uint32_t>(in);
  std::string text(length, '\0');
  in.read(text.data(), length);
  if (!in) fail(ErrorCode::parse_error, "oracle fixture header is truncated");
  nlohmann::json header;
  try {
    header = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::parse_error, std::string("bad oracle fixture header: ") + e.what());
  }
  SolvedTable table;
  table.game = header.at("game").get<std::string>();
  table.config = header.at("config");
  table.rule = header.at("rule").get<std::string>() == "value" ? Rule::value : Rule::completion_value;
  table.root = header.at("root").get<ZobristKey>();
  const int players = header.at("players").get<int>();
  const auto states = header.at("states").get<std::uint64_t>();
  for (std::uint64_t i = 0; i < states; ++i) {
    Solved e;
    const auto key = get<ZobristKey>(in);
    e.mover = get<std::int8_t>(in);
    e.has_action = get<std::uint8_t>(in) != 0;
    e.best.code = get<std::int32_t>(in);
    e.v = PayoffVector(players);
    e.c = PayoffVector(players);
    for (int p = 0; p < players; ++p) e.v[p] = get<double>(in);
    for (int p = 0; p < players; ++p) e.c[p] = get<double>(in);
    table.entries.emplace(key, e);
  }
  return table;
}

}  // namespace mps::oracle

#include "core/game.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>

namespace mps {

void Game::require_non_terminal(const State& s, const char* op) const {
  if (s.terminal) fail(ErrorCode::contract_violation, std::string(op) + " called on a terminal " + name() + " state");
}

State Game::initial_state() const {
  State s = make_initial();
  seal(s);
  return s;
}

std::vector<Action> Game::legal_actions(const State& s) const {
  require_non_terminal(s, "legal_actions");
  std::vector<Action> out;
  generate(s, out);
  return out;
}

State Game::apply(const State& s, Action a) const {
  require_non_terminal(s, "apply");
  if (auto why = illegal_reason(s, a); !why.empty())
    fail(ErrorCode::illegal_action, name() + ": illegal action " + action_to_string(a) + ": " + why);
  return apply_unchecked(s, a);
}

State Game::apply_unchecked(const State& s, Action a) const {
  State next = s;
  play(next, a);
  seal(next);
  return next;
}

PlayerId Game::current_player(const State& s) const {
  require_non_terminal(s, "current_player");
  return s.mover;
}

PayoffVector Game::terminal_payoff(const State& s) const {
  if (!s.terminal) fail(ErrorCode::contract_violation, "terminal_payoff called on a non-terminal " + name() + " state");
  return score(s);
}

PayoffVector Game::win_loss_vector(const State& s) const {
  if (!s.terminal) fail(ErrorCode::contract_violation, "win_loss_vector called on a non-terminal " + name() + " state");
  return outcome(s);
}

std::vector<Action> Game::legal_actions_for(const State& s, PlayerId player) const {
  if (!supports_out_of_turn()) fail(ErrorCode::capability_missing, name() + " does not support out-of-turn moves");
  if (player < 0 || player >= players_) fail(ErrorCode::contract_violation, "player index out of range");
  std::vector<Action> out;
  if (!s.terminal) generate_for(s, player, out);
  return out;
}

State Game::apply_out_of_turn(const State& s, PlayerId player, Action a) const {
  if (!supports_out_of_turn()) fail(ErrorCode::capability_missing, name() + " does not support out-of-turn moves");
  require_non_terminal(s, "apply_out_of_turn");
  if (player < 0 || player >= players_) fail(ErrorCode::contract_violation, "player index out of range");
  if (auto why = illegal_reason_for(s, player, a); !why.empty())
    fail(ErrorCode::illegal_action, name() + ": illegal out-of-turn action " + action_to_string(a) + " for player " +
                                        std::to_string(player) + ": " + why);
  return apply_out_of_turn_unchecked(s, player, a);
}

State Game::apply_out_of_turn_unchecked(const State& s, PlayerId player, Action a) const {
  State next = s;
  play_for(next, player, a);
  seal(next);
  return next;
}

std::string Game::illegal_reason(const State& s, Action a) const {
  std::vector<Action> moves;
  generate(s, moves);
  return std::binary_search(moves.begin(), moves.end(), a) ? std::string{} : "not in the legal action list";
}

void Game::generate_for(const State&, PlayerId, std::vector<Action>&) const {
  fail(ErrorCode::capability_missing, name() + " does not support out-of-turn moves");
}

void Game::play_for(State&, PlayerId, Action) const {
  fail(ErrorCode::capability_missing, name() + " does not support out-of-turn moves");
}

std::string Game::illegal_reason_for(const State& s, PlayerId player, Action a) const {
  std::vector<Action> moves;
  generate_for(s, player, moves);
  return std::binary_search(moves.begin(), moves.end(), a) ? std::string{} : "not in the out-of-turn action list";
}

std::string Game::action_to_string(Action a) const {
  return a == kPass ? std::string("pass") : std::to_string(a.code);
}

Action Game::parse_action(std::string_view text) const {
  if (text == "pass") return kPass;
  int code = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), code);
  if (ec != std::errc{} || ptr != text.data() + text.size())
    fail(ErrorCode::parse_error, "cannot parse action '" + std::string(text) + "'");
  return Action{code};
}

namespace {

constexpr std::string_view kCellDigits = ".123456789abcdefghijklmnopqrstuvwxyz";

int cell_value(char c) {
  const auto pos = kCellDigits.find(c);
  if (pos == std::string_view::npos) fail(ErrorCode::parse_error, std::string("bad cell character '") + c + "'");
  return static_cast<int>(pos);
}

std::string_view field(std::string_view text, std::string_view key) {
  const std::string tag = std::string(key) + ":";
  const auto start = text.find(tag);
  if (start == std::string_view::npos) fail(ErrorCode::parse_error, "missing field '" + std::string(key) + "'");
  auto rest = text.substr(start + tag.size());
  return rest.substr(0, rest.find(';'));
}

}  // namespace

std::string Game::to_text(const State& s) const {
  std::string out = "cells:";
  for (auto v : s.cells) {
    if (v < 0 || v >= static_cast<int>(kCellDigits.size()))
      fail(ErrorCode::contract_violation, "cell value out of serializable range");
    out += kCellDigits[static_cast<std::size_t>(v)];
  }
  out += ";mover:" + std::to_string(s.mover) + ";extra:";
  for (std::size_t i = 0; i < s.extra.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(s.extra[i]);
  }
  return out;
}

State Game::parse_text(std::string_view text) const {
  State s = make_initial();
  const auto cells = field(text, "cells");
  if (cells.size() != s.cells.size())
    fail(ErrorCode::parse_error, name() + " expects " + std::to_string(s.cells.size()) + " cells, got " +
                                     std::to_string(cells.size()));
  for (std::size_t i = 0; i < cells.size(); ++i) s.cells[i] = static_cast<std::int8_t>(cell_value(cells[i]));
  const auto mover = field(text, "mover");
  int m = -1;
  std::from_chars(mover.data(), mover.data() + mover.size(), m);
  if (m < 0 || m >= players_) fail(ErrorCode::parse_error, "mover out of range");
  s.mover = m;
  std::vector<std::int32_t> extra;
  auto rest = field(text, "extra");
  while (!rest.empty()) {
    const auto comma = rest.find(',');
    const auto token = rest.substr(0, comma);
    std::int32_t v = 0;
    auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), v);
    if (ec != std::errc{} || ptr != token.data() + token.size())
      fail(ErrorCode::parse_error, "bad extra value '" + std::string(token) + "'");
    extra.push_back(v);
    if (comma == std::string_view::npos) break;
    rest = rest.substr(comma + 1);
  }
  if (extra.size() != s.extra.size())
    fail(ErrorCode::parse_error, name() + " expects " + std::to_string(s.extra.size()) + " extra values");
  s.extra = std::move(extra);
  normalize_parsed(s);
  seal(s);
  return s;
}

int ordinal_of(const std::vector<Action>& actions, Action a) {
  auto it = std::lower_bound(actions.begin(), actions.end(), a);
  if (it == actions.end() || *it != a) return -1;
  return static_cast<int>(it - actions.begin());
}

}  // namespace mps

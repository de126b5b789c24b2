#include "eval/heuristics.hpp"

#include <deque>
#include <limits>

#include "games/hex_games.hpp"
#include "games/hey_fish.hpp"
#include "games/othello_games.hpp"
#include "games/quadamazons.hpp"
#include "games/toy_games.hpp"

namespace mps::eval {

int connection_distance(const games::HexGraph& graph, const std::vector<std::int8_t>& cost,
                        const std::vector<bool>& from, const std::vector<bool>& to) {
  const int n = graph.size();
  const int unreachable = n + 1;
  std::vector<int> dist(static_cast<std::size_t>(n), std::numeric_limits<int>::max());
  std::deque<int> queue;
  for (int c = 0; c < n; ++c) {
    const auto w = cost[static_cast<std::size_t>(c)];
    if (!from[static_cast<std::size_t>(c)] || w < 0) continue;
    dist[static_cast<std::size_t>(c)] = w;
    if (w == 0) queue.push_front(c);
    else queue.push_back(c);
  }
  // 0-1 BFS; a popped cell may be stale, so recheck against its distance.
  std::vector<char> done(static_cast<std::size_t>(n), 0);
  while (!queue.empty()) {
    const int c = queue.front();
    queue.pop_front();
    if (done[static_cast<std::size_t>(c)]) continue;
    done[static_cast<std::size_t>(c)] = 1;
    const int d = dist[static_cast<std::size_t>(c)];
    if (to[static_cast<std::size_t>(c)]) return d;
    for (int nb : graph.neighbors[static_cast<std::size_t>(c)]) {
      if (nb < 0) continue;
      const auto w = cost[static_cast<std::size_t>(nb)];
      if (w < 0 || d + w >= dist[static_cast<std::size_t>(nb)]) continue;
      dist[static_cast<std::size_t>(nb)] = d + w;
      if (w == 0) queue.push_front(nb);
      else queue.push_back(nb);
    }
  }
  return unreachable;
}

HeuristicEvaluator::HeuristicEvaluator(GamePtr game, std::vector<Feature> features, int variant)
    : Evaluator(game, game->name() + ":heuristic:" + std::to_string(variant)), features_(std::move(features)) {
  if (variant == 0) return;
  std::uint64_t state = 0x6a6974746572ULL ^ (static_cast<std::uint64_t>(variant) << 20);
  for (auto& f : features_) {
    const double u = static_cast<double>(splitmix64(state) >> 11) * 0x1.0p-53;
    f.weight *= 0.5 + u;
  }
}

PayoffVector HeuristicEvaluator::compute(const State& s) const {
  const int players = game().num_players();
  PayoffVector v(players);
  double raw[kMaxPlayers];
  for (const auto& f : features_) {
    f.measure(s, raw);
    double total = 0;
    for (int p = 0; p < players; ++p) total += raw[p];
    for (int p = 0; p < players; ++p) v[p] += f.weight * (raw[p] - (total - raw[p]) / (players - 1));
  }
  return v;
}

namespace {

using Feature = HeuristicEvaluator::Feature;

std::size_t idx(int c) { return static_cast<std::size_t>(c); }

std::vector<Feature> othello_features(const GamePtr& game) {
  std::vector<Feature> out;
  if (const auto* g = dynamic_cast<const games::Quadrothello*>(game.get())) {
    out.push_back({"material", 1.0, [g](const State& s, double* v) {
                     for (PlayerId p = 0; p < 4; ++p) v[p] = g->stones(s, p);
                   }});
  } else {
    const auto* t = dynamic_cast<const games::Triinversion*>(game.get());
    out.push_back({"score", 1.0, [t](const State& s, double* v) {
                     for (PlayerId p = 0; p < 3; ++p)
                       v[p] = t->pieces(s, p) + t->pieces(s, games::Triinversion::indirect_opponent(p));
                   }});
  }
  const Game* g = game.get();
  out.push_back({"mobility", 0.5, [g](const State& s, double* v) {
                   for (PlayerId p = 0; p < g->num_players(); ++p)
                     v[p] = static_cast<double>(g->legal_actions_for(s, p).size());
                 }});
  return out;
}

std::vector<Feature> hex_features(const GamePtr& game) {
  std::vector<Feature> out;
  if (const auto* g = dynamic_cast<const games::ThreePlayerHex*>(game.get())) {
    out.push_back({"connection", 1.0, [g](const State& s, double* v) {
                     std::vector<std::int8_t> cost(s.cells.size());
                     for (PlayerId p = 0; p < 3; ++p) {
                       for (std::size_t c = 0; c < cost.size(); ++c)
                         cost[c] = s.cells[c] == 1 + p ? 0 : (s.cells[c] == 0 ? 1 : -1);
                       v[p] = -connection_distance(g->grid().graph(), cost, g->grid().edge(p, false), g->grid().edge(p, true));
                     }
                   }});
  } else if (const auto* g = dynamic_cast<const games::Threehex*>(game.get())) {
    out.push_back({"connection", 1.0, [g](const State& s, double* v) {
                     std::vector<std::int8_t> cost(s.cells.size());
                     for (PlayerId p = 0; p < 3; ++p) {
                       for (std::size_t c = 0; c < cost.size(); ++c) {
                         const auto cell = s.cells[c];
                         cost[c] = games::Threehex::holds(cell, p) ? 0 : (games::Threehex::placeable(cell, p) ? 1 : -1);
                       }
                       v[p] = -connection_distance(g->grid().graph(), cost, g->grid().edge(p, false), g->grid().edge(p, true));
                     }
                   }});
  } else {
    const auto* t = dynamic_cast<const games::SeparedTeamhex*>(game.get());
    out.push_back({"team_connection", 1.0, [t](const State& s, double* v) {
                     std::vector<std::int8_t> cost(s.cells.size());
                     double team_distance[2];
                     for (int team = 0; team < 2; ++team) {
                       for (std::size_t c = 0; c < cost.size(); ++c) {
                         const int cell = s.cells[c];
                         cost[c] = cell == 0 ? 1 : (games::SeparedTeamhex::team_of(cell - 1) == team ? 0 : -1);
                       }
                       team_distance[team] = -connection_distance(t->grid().graph(), cost, t->team_edge(team, 0), t->team_edge(team, 1));
                     }
                     for (PlayerId p = 0; p < 4; ++p) v[p] = team_distance[games::SeparedTeamhex::team_of(p)];
                   }});
    out.push_back({"own_connection", 0.5, [t](const State& s, double* v) {
                     std::vector<std::int8_t> cost(s.cells.size());
                     for (PlayerId p = 0; p < 4; ++p) {
                       for (std::size_t c = 0; c < cost.size(); ++c)
                         cost[c] = s.cells[c] == 1 + p ? 0 : (s.cells[c] == 0 ? 1 : -1);
                       v[p] = -connection_distance(t->grid().graph(), cost, t->player_edge(p, 0), t->player_edge(p, 1));
                     }
                   }});
  }
  return out;
}

std::vector<Feature> amazons_features(const games::Quadamazons* g) {
  std::vector<Feature> out;
  out.push_back({"mobility", 1.0, [g](const State& s, double* v) {
                   for (PlayerId p = 0; p < 4; ++p) v[p] = g->eliminated(s, p) ? 0 : g->mobility(s, p);
                 }});
  out.push_back({"liberties", 0.5, [g](const State& s, double* v) {
                   const int n = g->n();
                   for (PlayerId p = 0; p < 4; ++p) v[p] = 0;
                   for (int c = 0; c < n * n; ++c) {
                     const int cell = s.cells[idx(c)];
                     if (cell < 2) continue;
                     for (int dr = -1; dr <= 1; ++dr)
                       for (int dc = -1; dc <= 1; ++dc) {
                         const int r = c / n + dr, col = c % n + dc;
                         if ((dr || dc) && r >= 0 && r < n && col >= 0 && col < n && s.cells[idx(r * n + col)] == 0)
                           v[cell - 2] += 1;
                       }
                   }
                 }});
  return out;
}

std::vector<Feature> fish_features(const games::HeyFish* g) {
  std::vector<Feature> out;
  out.push_back({"score", 1.0, [g](const State& s, double* v) {
                   for (PlayerId p = 0; p < g->num_players(); ++p) v[p] = g->score_of(s, p);
                 }});
  out.push_back({"reachable_fish", 0.5, [g](const State& s, double* v) {
                   for (PlayerId p = 0; p < g->num_players(); ++p) v[p] = g->reachable_fish(s, p);
                 }});
  out.push_back({"penguins", 1.0, [g](const State& s, double* v) {
                   for (PlayerId p = 0; p < g->num_players(); ++p) {
                     v[p] = 0;
                     for (int k = 0; k < g->penguins_per_player(); ++k) v[p] += g->penguin_cell(s, p, k) >= 0;
                   }
                 }});
  return out;
}

// Whoever would take the last token if every remaining move took one.
std::vector<Feature> trinim_features(const Game* g) {
  return {{"parity", 1.0, [g](const State& s, double* v) {
             int left = 0;
             for (auto h : s.cells) left += h;
             const PlayerId last = (s.mover + left - 1) % g->num_players();
             for (PlayerId p = 0; p < g->num_players(); ++p) v[p] = p == last ? 1.0 : 0.0;
           }}};
}

std::vector<Feature> bandit_features(const games::Bandit* g) {
  return {{"mean_arm", 1.0, [g](const State&, double* v) {
             for (PlayerId p = 0; p < g->num_players(); ++p) {
               v[p] = 0;
               for (const auto& row : g->table()) v[p] += row[idx(p)] / g->arms();
             }
           }}};
}

}  // namespace

EvaluatorPtr builtin_heuristic(const GamePtr& game, int variant) {
  if (variant < 0) fail(ErrorCode::invalid_config, "heuristic variant must be >= 0");
  const auto name = game->name();
  std::vector<Feature> features;
  if (name == "quadrothello" || name == "triinversion") {
    features = othello_features(game);
  } else if (name == "three_player_hex" || name == "threehex" || name == "separed_teamhex") {
    features = hex_features(game);
  } else if (const auto* g = dynamic_cast<const games::Quadamazons*>(game.get())) {
    features = amazons_features(g);
  } else if (const auto* g = dynamic_cast<const games::HeyFish*>(game.get())) {
    features = fish_features(g);
  } else if (name == "trinim") {
    features = trinim_features(game.get());
  } else if (const auto* g = dynamic_cast<const games::Bandit*>(game.get())) {
    features = bandit_features(g);
  } else {
    fail(ErrorCode::unsupported_game, "no builtin heuristic for " + name);
  }
  return std::make_shared<HeuristicEvaluator>(game, std::move(features), variant);
}

}  // namespace mps::eval

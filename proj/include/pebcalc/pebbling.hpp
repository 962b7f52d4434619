#pragma once

#include <algorithm>
#include <bit>
#include <concepts>
#include <cstdint>
#include <deque>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "pebcalc/graph.hpp"

namespace pebcalc {

enum class GameVariant { Black, White, BlackWhite, Reversible };
enum class Color { Black, White };
enum class Action { Place, Remove };

inline std::string_view to_string(GameVariant v) {
  switch (v) {
    case GameVariant::Black: return "black";
    case GameVariant::White: return "white";
    case GameVariant::BlackWhite: return "bw";
    case GameVariant::Reversible: return "reversible";
  }
  return "?";
}

inline GameVariant parse_variant(std::string_view s) {
  if (s == "black") return GameVariant::Black;
  if (s == "white") return GameVariant::White;
  if (s == "bw" || s == "black-white" || s == "blackwhite") return GameVariant::BlackWhite;
  if (s == "reversible" || s == "rev") return GameVariant::Reversible;
  throw Error(Errc::InvalidParam, "unknown game variant '" + std::string(s) + "'");
}

struct PebbleConfig {
  VertexSet black = 0;
  VertexSet white = 0;

  VertexSet pebbled() const { return black | white; }
  int count() const { return std::popcount(pebbled()); }
  bool empty() const { return pebbled() == 0; }
  friend bool operator==(const PebbleConfig&, const PebbleConfig&) = default;
};

struct Move {
  Action action = Action::Place;
  Color color = Color::Black;
  Vertex vertex = 0;

  friend bool operator==(const Move&, const Move&) = default;
};

template <std::integral V>
Move place(V v, Color c = Color::Black) { return {Action::Place, c, static_cast<Vertex>(v)}; }
template <std::integral V>
Move remove(V v, Color c = Color::Black) { return {Action::Remove, c, static_cast<Vertex>(v)}; }

inline std::string to_string(const Move& m) {
  std::string s = m.action == Action::Place ? "P" : "R";
  if (m.color == Color::White) s += "w";
  return s + std::to_string(m.vertex);
}

struct PebblingStrategy {
  GameVariant variant = GameVariant::Black;
  std::vector<Move> moves;

  friend bool operator==(const PebblingStrategy&, const PebblingStrategy&) = default;
};

struct StrategyMeasures {
  std::size_t time = 0;
  std::size_t space = 0;
  friend bool operator==(const StrategyMeasures&, const StrategyMeasures&) = default;
};

struct FrontierPoint {
  std::size_t space = 0;
  std::size_t min_time = 0;
  friend bool operator==(const FrontierPoint&, const FrontierPoint&) = default;
};

/// Search limits: `cap_n` bounds single-colour games, `cap_n_bw` the
/// black-white game whose state space grows like 3^n.
struct SearchLimits {
  Vertex cap_n = kDefaultCapN;
  Vertex cap_n_bw = 16;
};

namespace detail {

inline Error illegal(const std::string& why, std::optional<std::size_t> step = std::nullopt) {
  return Error(Errc::IllegalMove, why, step);
}

}  // namespace detail

/// Applies one move under the rules of `variant`; throws IllegalMove naming
/// the violated rule.
inline PebbleConfig apply_move(const Dag& dag, const PebbleConfig& config, const Move& move, GameVariant variant) {
  if (move.vertex >= dag.size()) throw Error(Errc::UnknownVertex, "vertex " + std::to_string(move.vertex));
  const Vertex v = move.vertex;
  const VertexSet vb = bit(v);
  const VertexSet pebbled = config.pebbled();
  const bool preds_ok = (dag.pred_mask(v) & ~pebbled) == 0;
  const std::string where = " on vertex " + std::to_string(v);
  const bool white_allowed = variant == GameVariant::White || variant == GameVariant::BlackWhite;
  const bool black_allowed = variant != GameVariant::White;
  if (move.color == Color::White && !white_allowed) throw detail::illegal("white pebbles are not part of this game");
  if (move.color == Color::Black && !black_allowed) throw detail::illegal("black pebbles are not part of this game");
  PebbleConfig next = config;
  if (move.action == Action::Place) {
    if (pebbled & vb) throw detail::illegal("placement on an already pebbled vertex" + where);
    if (move.color == Color::Black) {
      if (!preds_ok) throw detail::illegal("black placement needs all predecessors pebbled" + where);
      next.black |= vb;
    } else {
      next.white |= vb;
    }
    return next;
  }
  if (move.color == Color::Black) {
    if (!(config.black & vb)) throw detail::illegal("no black pebble to remove" + where);
    if (variant == GameVariant::Reversible && !preds_ok)
      throw detail::illegal("reversible removal needs all predecessors pebbled" + where);
    next.black &= ~vb;
  } else {
    if (!(config.white & vb)) throw detail::illegal("no white pebble to remove" + where);
    if (!preds_ok) throw detail::illegal("white removal needs all predecessors pebbled" + where);
    next.white &= ~vb;
  }
  return next;
}

/// Replays `strategy` for the target vertex (default: the unique sink) and
/// returns its time and space.
inline StrategyMeasures validate_strategy(const Dag& dag, const PebblingStrategy& strategy,
                                          std::optional<Vertex> target = std::nullopt) {
  const Vertex z = target ? *target : dag.unique_sink();
  if (z >= dag.size()) throw Error(Errc::UnknownVertex, "target " + std::to_string(z));
  PebbleConfig config;
  bool touched = false;
  StrategyMeasures m;
  for (std::size_t i = 0; i < strategy.moves.size(); ++i) {
    try {
      config = apply_move(dag, config, strategy.moves[i], strategy.variant);
    } catch (const Error& e) {
      if (e.code() == Errc::IllegalMove) throw Error(Errc::IllegalMove, "step " + std::to_string(i) + ": " + e.what(), i);
      throw;
    }
    touched = touched || (config.pebbled() & bit(z));
    m.space = std::max<std::size_t>(m.space, static_cast<std::size_t>(config.count()));
  }
  m.time = strategy.moves.size();
  if (!touched) throw Error(Errc::DoesNotTouchSink, "vertex " + std::to_string(z) + " is never pebbled");
  if (!config.empty()) throw Error(Errc::DoesNotEndEmpty, std::to_string(config.count()) + " pebbles left");
  return m;
}

/// Reverses the move sequence, swapping Place/Remove and black/white. Maps
/// black strategies to white ones and back; time and space are preserved.
inline PebblingStrategy black_white_dual(const PebblingStrategy& s) {
  PebblingStrategy out;
  switch (s.variant) {
    case GameVariant::Black: out.variant = GameVariant::White; break;
    case GameVariant::White: out.variant = GameVariant::Black; break;
    default: throw Error(Errc::InvalidParam, "duality is defined for black and white strategies");
  }
  out.moves.reserve(s.moves.size());
  for (auto it = s.moves.rbegin(); it != s.moves.rend(); ++it) {
    Move m = *it;
    m.action = m.action == Action::Place ? Action::Remove : Action::Place;
    m.color = m.color == Color::Black ? Color::White : Color::Black;
    out.moves.push_back(m);
  }
  return out;
}

/// Exhaustive search over (configuration, target-touched) states, breadth
/// first so the first goal hit is time-optimal for the space bound.
class PebblingSearch {
 public:
  PebblingSearch(const Dag& dag, GameVariant variant, std::optional<Vertex> target = std::nullopt,
                 SearchLimits limits = {})
      : dag_(dag), variant_(variant), target_(target ? *target : dag.unique_sink()) {
    const Vertex cap = variant == GameVariant::BlackWhite ? limits.cap_n_bw : limits.cap_n;
    if (dag.size() > cap || dag.size() > 24)
      throw Error(Errc::GraphTooLarge, std::to_string(dag.size()) + " vertices exceed the search cap " +
                                           std::to_string(std::min<Vertex>(cap, 24)));
    if (target_ >= dag.size()) throw Error(Errc::UnknownVertex, "target " + std::to_string(target_));
  }

  /// Shortest strategy whose space never exceeds `space_bound`.
  std::optional<PebblingStrategy> shortest(std::size_t space_bound) const {
    using State = std::uint64_t;
    struct Parent {
      State prev;
      Move move;
    };
    const State start = 0;
    std::unordered_map<State, Parent> parent;
    parent.emplace(start, Parent{start, Move{}});
    std::deque<State> queue{start};
    std::vector<Move> moves;
    while (!queue.empty()) {
      State s = queue.front();
      queue.pop_front();
      PebbleConfig c = decode(s);
      const bool touched = s & kTouched;
      moves.clear();
      successors(c, moves);
      for (const Move& m : moves) {
        PebbleConfig next = step(c, m);
        if (static_cast<std::size_t>(next.count()) > space_bound) continue;
        const bool t = touched || (next.pebbled() & bit(target_));
        State ns = encode(next, t);
        if (!parent.emplace(ns, Parent{s, m}).second) continue;
        if (t && next.empty()) {
          PebblingStrategy out{variant_, {}};
          for (State cur = ns; cur != start; cur = parent.at(cur).prev) out.moves.push_back(parent.at(cur).move);
          std::reverse(out.moves.begin(), out.moves.end());
          return out;
        }
        queue.push_back(ns);
      }
    }
    return std::nullopt;
  }

  Vertex size() const { return dag_.size(); }

 private:
  static constexpr std::uint64_t kTouched = std::uint64_t{1} << 48;

  static std::uint64_t encode(const PebbleConfig& c, bool touched) {
    return c.black | (c.white << 24) | (touched ? kTouched : 0);
  }
  static PebbleConfig decode(std::uint64_t s) { return {s & 0xFFFFFFu, (s >> 24) & 0xFFFFFFu}; }

  void successors(const PebbleConfig& c, std::vector<Move>& out) const {
    const VertexSet pebbled = c.pebbled();
    const bool black = variant_ != GameVariant::White;
    const bool white = variant_ == GameVariant::White || variant_ == GameVariant::BlackWhite;
    for (Vertex v = 0; v < dag_.size(); ++v) {
      const VertexSet vb = bit(v);
      const bool preds_ok = (dag_.pred_mask(v) & ~pebbled) == 0;
      if (!(pebbled & vb)) {
        if (black && preds_ok) out.push_back(place(v, Color::Black));
        if (white) out.push_back(place(v, Color::White));
      } else if (c.black & vb) {
        if (variant_ != GameVariant::Reversible || preds_ok) out.push_back(remove(v, Color::Black));
      } else if (preds_ok) {
        out.push_back(remove(v, Color::White));
      }
    }
  }

  static PebbleConfig step(PebbleConfig c, const Move& m) {
    VertexSet& set = m.color == Color::Black ? c.black : c.white;
    if (m.action == Action::Place) set |= bit(m.vertex);
    else set &= ~bit(m.vertex);
    return c;
  }

  const Dag& dag_;
  GameVariant variant_;
  Vertex target_;
};

struct PriceResult {
  std::size_t price = 0;
  PebblingStrategy witness;
};

/// Exact pebbling price: the least space bound for which a strategy exists,
/// found by trying s = 1, 2, ... with a reachability search each time.
inline PriceResult pebbling_price_with_witness(const Dag& dag, GameVariant variant,
                                               std::optional<Vertex> target = std::nullopt, SearchLimits limits = {}) {
  PebblingSearch search(dag, variant, target, limits);
  for (std::size_t s = 1; s <= dag.size(); ++s)
    if (auto w = search.shortest(s)) return {s, std::move(*w)};
  // Unreachable: space n always suffices.
  throw Error(Errc::InvalidParam, "no strategy found");
}

inline std::size_t pebbling_price(const Dag& dag, GameVariant variant, std::optional<Vertex> target = std::nullopt,
                                  SearchLimits limits = {}) {
  return pebbling_price_with_witness(dag, variant, target, limits).price;
}

/// Length of the shortest strategy within `space_bound` pebbles, or nullopt
/// when no such strategy exists.
inline std::optional<PebblingStrategy> min_time_strategy(const Dag& dag, GameVariant variant, std::size_t space_bound,
                                                         std::optional<Vertex> target = std::nullopt,
                                                         SearchLimits limits = {}) {
  return PebblingSearch(dag, variant, target, limits).shortest(space_bound);
}

inline std::optional<std::size_t> min_time_with_space(const Dag& dag, GameVariant variant, std::size_t space_bound,
                                                      std::optional<Vertex> target = std::nullopt,
                                                      SearchLimits limits = {}) {
  auto s = min_time_strategy(dag, variant, space_bound, target, limits);
  return s ? std::optional<std::size_t>(s->moves.size()) : std::nullopt;
}

/// (s, minimal time within s pebbles) for s from the price up to n.
inline std::vector<FrontierPoint> tradeoff_frontier(const Dag& dag, GameVariant variant,
                                                    std::optional<Vertex> target = std::nullopt,
                                                    SearchLimits limits = {}) {
  PebblingSearch search(dag, variant, target, limits);
  std::vector<FrontierPoint> out;
  for (std::size_t s = 1; s <= dag.size(); ++s) {
    auto w = search.shortest(s);
    if (!w) {
      if (!out.empty()) throw Error(Errc::InvalidParam, "frontier lost feasibility at space " + std::to_string(s));
      continue;
    }
    out.push_back({s, w->moves.size()});
  }
  return out;
}

}  // namespace pebcalc

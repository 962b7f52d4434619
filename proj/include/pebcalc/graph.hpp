#pragma once

#include <algorithm>
#include <charconv>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "pebcalc/error.hpp"

namespace pebcalc {

using Vertex = std::uint32_t;

/// Vertex sets are bitmasks; the 64-vertex ceiling matches Monomial.
using VertexSet = std::uint64_t;

inline constexpr Vertex kMaxVertices = 64;

/// Vertex cap for the exhaustive configuration searches.
inline constexpr Vertex kDefaultCapN = 24;

inline constexpr VertexSet bit(Vertex v) { return VertexSet{1} << v; }

/// Immutable DAG given by predecessor lists. Construction validates range,
/// duplicates and acyclicity; `sink()` is set iff exactly one vertex has no
/// successors.
class Dag {
 public:
  Dag() = default;

  explicit Dag(std::vector<std::vector<Vertex>> preds, std::vector<std::string> names = {})
      : preds_(std::move(preds)), names_(std::move(names)) {
    validate();
  }

  static Dag from_edges(Vertex n, const std::vector<std::pair<Vertex, Vertex>>& edges,
                        std::vector<std::string> names = {}) {
    if (n == 0 || n > kMaxVertices) throw Error(Errc::InvalidParam, "vertex count must be in [1, 64]");
    std::vector<std::vector<Vertex>> preds(n);
    for (auto [u, v] : edges) {
      if (u >= n || v >= n)
        throw Error(Errc::IndexOutOfRange, "edge " + std::to_string(u) + "->" + std::to_string(v));
      preds[v].push_back(u);
    }
    return Dag(std::move(preds), std::move(names));
  }

  Vertex size() const { return static_cast<Vertex>(preds_.size()); }
  const std::vector<Vertex>& preds(Vertex v) const { return preds_.at(v); }
  VertexSet pred_mask(Vertex v) const { return pred_masks_.at(v); }
  const std::vector<VertexSet>& pred_masks() const { return pred_masks_; }
  std::optional<Vertex> sink() const { return sink_; }
  std::size_t edge_count() const {
    std::size_t e = 0;
    for (const auto& p : preds_) e += p.size();
    return e;
  }
  std::vector<Vertex> sinks() const {
    std::vector<Vertex> out;
    for (Vertex v = 0; v < size(); ++v)
      if (out_degree_[v] == 0) out.push_back(v);
    return out;
  }
  Vertex out_degree(Vertex v) const { return out_degree_.at(v); }
  const std::vector<Vertex>& topological_order() const { return topo_; }
  VertexSet all() const { return size() == 64 ? ~VertexSet{0} : bit(size()) - 1; }

  Vertex unique_sink() const {
    if (!sink_) throw Error(Errc::NoUniqueSink, std::to_string(sinks().size()) + " vertices have out-degree 0");
    return *sink_;
  }

  std::string name(Vertex v) const {
    return v < names_.size() && !names_[v].empty() ? names_[v] : std::to_string(v);
  }
  const std::vector<std::string>& names() const { return names_; }

  friend bool operator==(const Dag& a, const Dag& b) { return a.preds_ == b.preds_ && a.names_ == b.names_; }

 private:
  void validate() {
    const Vertex n = size();
    if (n == 0 || n > kMaxVertices) throw Error(Errc::InvalidParam, "vertex count must be in [1, 64]");
    if (!names_.empty()) names_.resize(n);
    pred_masks_.assign(n, 0);
    out_degree_.assign(n, 0);
    for (Vertex v = 0; v < n; ++v) {
      for (Vertex u : preds_[v]) {
        if (u >= n) throw Error(Errc::IndexOutOfRange, "predecessor " + std::to_string(u) + " of " + std::to_string(v));
        if (pred_masks_[v] & bit(u))
          throw Error(Errc::DuplicateEdge, "edge " + std::to_string(u) + "->" + std::to_string(v));
        pred_masks_[v] |= bit(u);
        ++out_degree_[u];
      }
    }
    // Kahn's algorithm, smallest ready vertex first.
    std::vector<Vertex> indeg(n);
    std::vector<std::vector<Vertex>> succ(n);
    for (Vertex v = 0; v < n; ++v) {
      indeg[v] = static_cast<Vertex>(preds_[v].size());
      for (Vertex u : preds_[v]) succ[u].push_back(v);
    }
    std::vector<Vertex> ready;
    for (Vertex v = 0; v < n; ++v)
      if (indeg[v] == 0) ready.push_back(v);
    while (!ready.empty()) {
      auto it = std::min_element(ready.begin(), ready.end());
      Vertex v = *it;
      ready.erase(it);
      topo_.push_back(v);
      for (Vertex w : succ[v])
        if (--indeg[w] == 0) ready.push_back(w);
    }
    if (topo_.size() != n) throw Error(Errc::CycleDetected, "predecessor relation has a cycle");
    std::optional<Vertex> only;
    int count = 0;
    for (Vertex v = 0; v < n; ++v)
      if (out_degree_[v] == 0) ++count, only = v;
    if (count == 1) sink_ = only;
  }

  std::vector<std::vector<Vertex>> preds_;
  std::vector<std::string> names_;
  std::vector<VertexSet> pred_masks_;
  std::vector<Vertex> out_degree_;
  std::vector<Vertex> topo_;
  std::optional<Vertex> sink_;
};

namespace detail {

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

inline std::vector<std::string_view> split_ws(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
    std::size_t j = i;
    while (j < s.size() && s[j] != ' ' && s[j] != '\t') ++j;
    if (j > i) out.push_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

inline std::optional<std::uint64_t> parse_uint(std::string_view s) {
  std::uint64_t v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || p != s.data() + s.size()) return std::nullopt;
  return v;
}

}  // namespace detail

/// Parses the graph text format:
///
///     n
///     u v        # edge u -> v
///     @name v label
///
/// Endpoints are vertex ids or labels introduced by `@name`. `#` starts a
/// comment; blank lines are ignored.
inline Dag parse_graph(std::string_view text) {
  std::optional<Vertex> n;
  std::vector<std::pair<Vertex, Vertex>> edges;
  std::vector<std::string> names;
  std::map<std::string, Vertex, std::less<>> by_name;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  auto fail = [&](const std::string& why) { throw Error(Errc::MalformedLine, "line " + std::to_string(line_no) + ": " + why, line_no); };
  auto endpoint = [&](std::string_view tok) -> Vertex {
    if (auto v = detail::parse_uint(tok)) {
      if (*v >= *n) throw Error(Errc::IndexOutOfRange, "vertex " + std::string(tok) + " on line " + std::to_string(line_no), line_no);
      return static_cast<Vertex>(*v);
    }
    auto it = by_name.find(tok);
    if (it == by_name.end()) fail("unknown vertex '" + std::string(tok) + "'");
    return it->second;
  };
  while (pos <= text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    std::string_view line = text.substr(pos, eol - pos);
    pos = eol + 1;
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = detail::trim(line);
    if (line.empty()) continue;
    auto toks = detail::split_ws(line);
    if (!n) {
      auto v = toks.size() == 1 ? detail::parse_uint(toks[0]) : std::nullopt;
      if (!v || *v == 0) fail("expected a positive vertex count");
      if (*v > kMaxVertices) throw Error(Errc::GraphTooLarge, "more than 64 vertices", line_no);
      n = static_cast<Vertex>(*v);
      continue;
    }
    if (toks[0] == "@name") {
      if (toks.size() != 3) fail("expected '@name <id> <label>'");
      auto v = detail::parse_uint(toks[1]);
      if (!v) fail("bad vertex id in @name");
      if (*v >= *n) throw Error(Errc::IndexOutOfRange, "vertex " + std::string(toks[1]), line_no);
      if (detail::parse_uint(toks[2])) fail("labels must not be numeric");
      if (names.empty()) names.resize(*n);
      names[*v] = std::string(toks[2]);
      by_name[std::string(toks[2])] = static_cast<Vertex>(*v);
      continue;
    }
    if (toks.size() != 2) fail("expected 'u v'");
    edges.emplace_back(endpoint(toks[0]), endpoint(toks[1]));
  }
  if (!n) throw Error(Errc::MalformedLine, "missing vertex count", 0);
  return Dag::from_edges(*n, edges, std::move(names));
}

/// Inverse of parse_graph; edges are grouped by target in topological order.
inline std::string render_graph(const Dag& dag) {
  std::ostringstream out;
  out << dag.size() << '\n';
  for (Vertex v = 0; v < dag.size(); ++v)
    if (v < dag.names().size() && !dag.names()[v].empty()) out << "@name " << v << ' ' << dag.names()[v] << '\n';
  for (Vertex v : dag.topological_order())
    for (Vertex u : dag.preds(v)) out << u << ' ' << v << '\n';
  return out.str();
}

enum class GraphKind { Path, Pyramid, BinaryTree, Random };

/// Directed path 0 -> 1 -> ... -> n-1.
inline Dag make_path(Vertex n) {
  if (n < 1 || n > kMaxVertices) throw Error(Errc::InvalidParam, "path length must be in [1, 64]");
  std::vector<std::vector<Vertex>> preds(n);
  for (Vertex v = 1; v < n; ++v) preds[v] = {v - 1};
  return Dag(std::move(preds));
}

/// Pyramid of height h: levels of h+1, h, ..., 1 vertices, numbered bottom-up;
/// vertex i of level l has the predecessors i and i+1 of level l-1.
inline Dag make_pyramid(Vertex h) {
  if (h < 1) throw Error(Errc::InvalidParam, "pyramid height must be >= 1");
  const Vertex n = (h + 1) * (h + 2) / 2;
  if (n > kMaxVertices) throw Error(Errc::InvalidParam, "pyramid too large");
  std::vector<std::vector<Vertex>> preds(n);
  Vertex level_start = 0;
  for (Vertex width = h + 1; width > 1; --width) {
    Vertex next = level_start + width;
    for (Vertex i = 0; i + 1 < width; ++i) preds[next + i] = {level_start + i, level_start + i + 1};
    level_start = next;
  }
  return Dag(std::move(preds));
}

/// Complete binary tree of height h with edges pointing to the root; leaves
/// come first, the root is the last vertex.
inline Dag make_binary_tree(Vertex h) {
  if (h < 1) throw Error(Errc::InvalidParam, "tree height must be >= 1");
  if (h > 5) throw Error(Errc::InvalidParam, "tree too large");
  const Vertex n = (Vertex{1} << (h + 1)) - 1;
  std::vector<std::vector<Vertex>> preds(n);
  Vertex level_start = 0;
  for (Vertex width = Vertex{1} << h; width > 1; width /= 2) {
    Vertex next = level_start + width;
    for (Vertex i = 0; i < width / 2; ++i) preds[next + i] = {level_start + 2 * i, level_start + 2 * i + 1};
    level_start = next;
  }
  return Dag(std::move(preds));
}

/// Random DAG on n vertices: each forward pair i < j gets the edge i -> j with
/// probability p. If several vertices end up without successors, a fresh apex
/// vertex is appended with an edge from each of them. Deterministic in `seed`
/// on every platform (no std distributions involved).
inline Dag make_random(Vertex n, double p, std::uint64_t seed) {
  if (n < 1 || n >= kMaxVertices) throw Error(Errc::InvalidParam, "random graph size must be in [1, 63]");
  if (!(p >= 0.0 && p <= 1.0)) throw Error(Errc::InvalidParam, "edge probability must be in [0, 1]");
  std::mt19937_64 rng(seed);
  const long double scale = 18446744073709551616.0L;  // 2^64
  std::vector<std::pair<Vertex, Vertex>> edges;
  std::vector<bool> has_succ(n, false);
  for (Vertex j = 1; j < n; ++j)
    for (Vertex i = 0; i < j; ++i)
      if (static_cast<long double>(rng()) < static_cast<long double>(p) * scale) {
        edges.emplace_back(i, j);
        has_succ[i] = true;
      }
  std::vector<Vertex> sinks;
  for (Vertex v = 0; v < n; ++v)
    if (!has_succ[v]) sinks.push_back(v);
  if (sinks.size() == 1) return Dag::from_edges(n, edges);
  for (Vertex s : sinks) edges.emplace_back(s, n);
  return Dag::from_edges(n + 1, edges);
}

inline Dag generate(GraphKind kind, Vertex param, double p = 0.3, std::uint64_t seed = 0) {
  switch (kind) {
    case GraphKind::Path: return make_path(param);
    case GraphKind::Pyramid: return make_pyramid(param);
    case GraphKind::BinaryTree: return make_binary_tree(param);
    case GraphKind::Random: return make_random(param, p, seed);
  }
  throw Error(Errc::InvalidParam, "unknown graph kind");
}

inline GraphKind parse_graph_kind(std::string_view s) {
  if (s == "path") return GraphKind::Path;
  if (s == "pyramid") return GraphKind::Pyramid;
  if (s == "binary_tree" || s == "tree") return GraphKind::BinaryTree;
  if (s == "random") return GraphKind::Random;
  throw Error(Errc::InvalidParam, "unknown graph kind '" + std::string(s) + "'");
}

/// All DAGs on exactly n vertices with a unique sink, one per isomorphism
/// class. Each representative has a topological labelling (edges go from
/// lower to higher ids) and the lexicographically smallest edge mask among
/// such labellings. Feasible for n <= 6.
inline std::vector<Dag> all_single_sink_dags(Vertex n) {
  if (n < 1 || n > 6) throw Error(Errc::InvalidParam, "exhaustive enumeration supports 1 <= n <= 6");
  std::vector<std::pair<Vertex, Vertex>> slots;
  for (Vertex j = 0; j < n; ++j)
    for (Vertex i = 0; i < j; ++i) slots.emplace_back(i, j);
  std::vector<Vertex> perm(n);
  std::vector<std::uint32_t> seen;
  std::vector<Dag> out;
  const std::uint32_t total = std::uint32_t{1} << slots.size();
  for (std::uint32_t mask = 0; mask < total; ++mask) {
    std::vector<std::uint8_t> adj(n * n, 0);
    std::vector<Vertex> outdeg(n, 0);
    for (std::size_t k = 0; k < slots.size(); ++k)
      if (mask >> k & 1u) adj[slots[k].first * n + slots[k].second] = 1, ++outdeg[slots[k].first];
    if (std::count(outdeg.begin(), outdeg.end(), 0u) != 1) continue;
    // canonical code: minimum mask over relabellings that keep edges forward
    for (Vertex i = 0; i < n; ++i) perm[i] = i;
    std::uint32_t best = mask;
    do {
      std::uint32_t code = 0;
      bool forward = true;
      for (Vertex a = 0; a < n && forward; ++a)
        for (Vertex b = 0; b < n && forward; ++b)
          if (adj[a * n + b]) {
            Vertex pa = perm[a], pb = perm[b];
            if (pa >= pb) forward = false;
            else code |= std::uint32_t{1} << (pb * (pb - 1) / 2 + pa);
          }
      if (forward) best = std::min(best, code);
    } while (std::next_permutation(perm.begin(), perm.end()));
    if (best != mask) continue;
    std::vector<std::pair<Vertex, Vertex>> edges;
    for (std::size_t k = 0; k < slots.size(); ++k)
      if (mask >> k & 1u) edges.push_back(slots[k]);
    out.push_back(Dag::from_edges(n, edges));
  }
  return out;
}

}  // namespace pebcalc

#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <fstream>
#include <istream>
#include <ostream>
#include <queue>
#include <span>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "liftlab/error.hpp"
#include "liftlab/random.hpp"

namespace liftlab {

using Vertex = std::uint32_t;
using Matrix = Eigen::MatrixXd;

struct Edge {
  Vertex u = 0;
  Vertex v = 0;

  friend auto operator<=>(const Edge&, const Edge&) = default;
};

// Sorted, duplicate-free set of vertex indices.
class VertexSubset {
 public:
  VertexSubset() = default;
  explicit VertexSubset(std::vector<Vertex> members) : members_(std::move(members)) {
    std::sort(members_.begin(), members_.end());
    members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
  }

  static VertexSubset from_mask(std::uint64_t mask) {
    std::vector<Vertex> members;
    for (Vertex v = 0; mask != 0; ++v, mask >>= 1) {
      if (mask & 1U) members.push_back(v);
    }
    return VertexSubset(std::move(members));
  }

  static VertexSubset range(Vertex first, Vertex last) {
    std::vector<Vertex> members;
    for (Vertex v = first; v < last; ++v) members.push_back(v);
    return VertexSubset(std::move(members));
  }

  const std::vector<Vertex>& members() const noexcept { return members_; }
  std::size_t size() const noexcept { return members_.size(); }
  bool empty() const noexcept { return members_.empty(); }
  bool contains(Vertex v) const { return std::binary_search(members_.begin(), members_.end(), v); }

  friend bool operator==(const VertexSubset&, const VertexSubset&) = default;

 private:
  std::vector<Vertex> members_;
};

// Simple undirected d-regular graph. Edges are stored with u < v in
// lexicographic order; the edge index is the position in that order and is
// what lift assignments and signings are keyed by.
class RegularGraph {
 public:
  RegularGraph(std::size_t n, std::size_t d, std::vector<Edge> edges) : n_(n), d_(d), edges_(std::move(edges)) {
    using detail::require;
    require(n_ >= 1, ErrorCode::validation_error, "graph needs at least one vertex");
    require(d_ >= 1, ErrorCode::validation_error, "degree must be positive");
    require((n_ * d_) % 2 == 0, ErrorCode::validation_error, "n*d must be even");
    for (auto& e : edges_) {
      require(e.u < n_ && e.v < n_, ErrorCode::validation_error,
              "edge (" + std::to_string(e.u) + "," + std::to_string(e.v) + ") out of range");
      require(e.u != e.v, ErrorCode::validation_error, "self-loop at vertex " + std::to_string(e.u));
      if (e.u > e.v) std::swap(e.u, e.v);
    }
    std::sort(edges_.begin(), edges_.end());
    for (std::size_t i = 1; i < edges_.size(); ++i) {
      require(edges_[i] != edges_[i - 1], ErrorCode::validation_error,
              "duplicate edge (" + std::to_string(edges_[i].u) + "," + std::to_string(edges_[i].v) + ")");
    }
    require(edges_.size() == n_ * d_ / 2, ErrorCode::validation_error,
            "expected " + std::to_string(n_ * d_ / 2) + " edges, got " + std::to_string(edges_.size()));

    std::vector<std::size_t> fill(n_, 0);
    neighbors_.assign(n_ * d_, 0);
    for (const auto& e : edges_) {
      require(fill[e.u] < d_ && fill[e.v] < d_, ErrorCode::validation_error, "graph is not regular");
      neighbors_[e.u * d_ + fill[e.u]++] = e.v;
      neighbors_[e.v * d_ + fill[e.v]++] = e.u;
    }
    for (Vertex v = 0; v < n_; ++v) {
      require(fill[v] == d_, ErrorCode::validation_error,
              "vertex " + std::to_string(v) + " has degree " + std::to_string(fill[v]) + ", expected " +
                  std::to_string(d_));
      std::sort(neighbors_.begin() + v * d_, neighbors_.begin() + (v + 1) * d_);
    }
  }

  std::size_t n() const noexcept { return n_; }
  std::size_t d() const noexcept { return d_; }
  std::size_t edge_count() const noexcept { return edges_.size(); }
  const std::vector<Edge>& edges() const noexcept { return edges_; }

  std::span<const Vertex> neighbors(Vertex v) const {
    return {neighbors_.data() + static_cast<std::size_t>(v) * d_, d_};
  }

  bool has_edge(Vertex a, Vertex b) const {
    const auto nb = neighbors(a);
    return std::binary_search(nb.begin(), nb.end(), b);
  }

  friend bool operator==(const RegularGraph& a, const RegularGraph& b) {
    return a.n_ == b.n_ && a.d_ == b.d_ && a.edges_ == b.edges_;
  }

 private:
  std::size_t n_;
  std::size_t d_;
  std::vector<Edge> edges_;
  std::vector<Vertex> neighbors_;
};

// ---------------------------------------------------------------------------
// Generators

inline RegularGraph complete_graph(std::size_t m) {
  detail::require(m >= 2, ErrorCode::invalid_parameter, "complete_graph needs m >= 2");
  std::vector<Edge> edges;
  for (Vertex u = 0; u < m; ++u)
    for (Vertex v = u + 1; v < m; ++v) edges.push_back({u, v});
  return RegularGraph(m, m - 1, std::move(edges));
}

// K_{m,m}: vertices [0,m) on one side, [m,2m) on the other.
inline RegularGraph complete_bipartite(std::size_t m) {
  detail::require(m >= 1, ErrorCode::invalid_parameter, "complete_bipartite needs m >= 1");
  std::vector<Edge> edges;
  for (Vertex u = 0; u < m; ++u)
    for (Vertex v = 0; v < m; ++v) edges.push_back({u, static_cast<Vertex>(m + v)});
  return RegularGraph(2 * m, m, std::move(edges));
}

inline RegularGraph cycle_graph(std::size_t n) {
  detail::require(n >= 3, ErrorCode::invalid_parameter, "cycle_graph needs n >= 3");
  std::vector<Edge> edges;
  for (Vertex v = 0; v < n; ++v) edges.push_back({v, static_cast<Vertex>((v + 1) % n)});
  return RegularGraph(n, 2, std::move(edges));
}

// Copy c occupies vertices [c*n, (c+1)*n).
inline RegularGraph disjoint_copies(const RegularGraph& g, std::size_t m) {
  detail::require(m >= 1, ErrorCode::invalid_parameter, "disjoint_copies needs m >= 1");
  std::vector<Edge> edges;
  edges.reserve(g.edge_count() * m);
  for (std::size_t c = 0; c < m; ++c) {
    const auto offset = static_cast<Vertex>(c * g.n());
    for (const auto& e : g.edges()) edges.push_back({e.u + offset, e.v + offset});
  }
  return RegularGraph(g.n() * m, g.d(), std::move(edges));
}

inline constexpr std::size_t kRandomRegularRestarts = 1000;

// Configuration-model pairing: unpaired half-edges are matched two at a time,
// drawing uniform pairs and discarding draws that would form a loop or a
// parallel edge. A dead end (no admissible pair left) restarts the whole
// pairing; more than kRandomRegularRestarts restarts is a generation failure.
inline RegularGraph random_regular(std::size_t n, std::size_t d, std::uint64_t seed) {
  using detail::require;
  require(n >= 2 && d >= 1, ErrorCode::invalid_parameter, "random_regular needs n >= 2 and d >= 1");
  require(d < n, ErrorCode::invalid_parameter, "random_regular needs d < n");
  require((n * d) % 2 == 0, ErrorCode::invalid_parameter, "random_regular needs n*d even");

  Rng rng(seed);
  std::vector<std::vector<Vertex>> adj(n);
  auto adjacent = [&](Vertex a, Vertex b) {
    const auto& na = adj[a];
    return std::find(na.begin(), na.end(), b) != na.end();
  };

  for (std::size_t restart = 0; restart <= kRandomRegularRestarts; ++restart) {
    for (auto& nb : adj) nb.clear();
    std::vector<Vertex> open;
    open.reserve(n * d);
    for (Vertex v = 0; v < n; ++v)
      for (std::size_t j = 0; j < d; ++j) open.push_back(v);

    std::vector<Edge> edges;
    edges.reserve(n * d / 2);
    bool stuck = false;
    std::size_t misses = 0;
    while (!open.empty()) {
      const std::size_t r = open.size();
      std::size_t i = rng.below(r);
      std::size_t j = rng.below(r - 1);
      if (j >= i) ++j;
      const Vertex a = open[i];
      const Vertex b = open[j];
      if (a != b && !adjacent(a, b)) {
        adj[a].push_back(b);
        adj[b].push_back(a);
        edges.push_back({std::min(a, b), std::max(a, b)});
        if (i < j) std::swap(i, j);
        open[i] = open.back();
        open.pop_back();
        open[j] = open.back();
        open.pop_back();
        misses = 0;
        continue;
      }
      if (++misses < 64 + r) continue;
      // Many consecutive rejections: check whether any admissible pair is left.
      bool any = false;
      for (std::size_t x = 0; x < r && !any; ++x)
        for (std::size_t y = x + 1; y < r && !any; ++y)
          any = open[x] != open[y] && !adjacent(open[x], open[y]);
      if (!any) {
        stuck = true;
        break;
      }
      misses = 0;
    }
    if (!stuck) return RegularGraph(n, d, std::move(edges));
  }
  throw Error(ErrorCode::generation_failure, "random_regular(" + std::to_string(n) + "," + std::to_string(d) +
                                                 ") exceeded " + std::to_string(kRandomRegularRestarts) +
                                                 " restarts");
}

// ---------------------------------------------------------------------------
// Counting and matrices

namespace detail {

inline std::vector<char> membership(const RegularGraph& g, const VertexSubset& s) {
  std::vector<char> in(g.n(), 0);
  for (Vertex v : s.members()) {
    require(v < g.n(), ErrorCode::invalid_parameter, "vertex " + std::to_string(v) + " out of range");
    in[v] = 1;
  }
  return in;
}

}  // namespace detail

// Number of ordered incidences (u in S, v in T) over edges {u,v}. An edge with
// both endpoints in S∩T therefore counts twice, so E(S,V) = d|S|.
inline std::size_t edges_between(const RegularGraph& g, const VertexSubset& s, const VertexSubset& t) {
  const auto in_s = detail::membership(g, s);
  const auto in_t = detail::membership(g, t);
  std::size_t count = 0;
  for (const auto& e : g.edges()) {
    count += (in_s[e.u] && in_t[e.v]) ? 1 : 0;
    count += (in_s[e.v] && in_t[e.u]) ? 1 : 0;
  }
  return count;
}

inline Matrix adjacency_matrix(const RegularGraph& g) {
  Matrix a = Matrix::Zero(static_cast<Eigen::Index>(g.n()), static_cast<Eigen::Index>(g.n()));
  for (const auto& e : g.edges()) {
    a(e.u, e.v) = 1.0;
    a(e.v, e.u) = 1.0;
  }
  return a;
}

// Component label per vertex, labels assigned in order of first vertex.
inline std::vector<std::size_t> connected_components(const RegularGraph& g) {
  constexpr auto unset = static_cast<std::size_t>(-1);
  std::vector<std::size_t> label(g.n(), unset);
  std::size_t next = 0;
  for (Vertex root = 0; root < g.n(); ++root) {
    if (label[root] != unset) continue;
    std::queue<Vertex> frontier;
    frontier.push(root);
    label[root] = next;
    while (!frontier.empty()) {
      const Vertex x = frontier.front();
      frontier.pop();
      for (Vertex y : g.neighbors(x)) {
        if (label[y] == unset) {
          label[y] = next;
          frontier.push(y);
        }
      }
    }
    ++next;
  }
  return label;
}

inline std::size_t component_count(const RegularGraph& g) {
  const auto label = connected_components(g);
  return label.empty() ? 0 : *std::max_element(label.begin(), label.end()) + 1;
}

inline bool is_connected(const RegularGraph& g) { return component_count(g) == 1; }

inline bool is_bipartite(const RegularGraph& g) {
  std::vector<int> side(g.n(), -1);
  for (Vertex root = 0; root < g.n(); ++root) {
    if (side[root] >= 0) continue;
    side[root] = 0;
    std::queue<Vertex> frontier;
    frontier.push(root);
    while (!frontier.empty()) {
      const Vertex x = frontier.front();
      frontier.pop();
      for (Vertex y : g.neighbors(x)) {
        if (side[y] < 0) {
          side[y] = 1 - side[x];
          frontier.push(y);
        } else if (side[y] == side[x]) {
          return false;
        }
      }
    }
  }
  return true;
}

// ---------------------------------------------------------------------------
// Edge-list text format: "n d" then one "u v" line per edge (u < v, sorted).

inline void write_graph(std::ostream& out, const RegularGraph& g) {
  out << g.n() << ' ' << g.d() << '\n';
  for (const auto& e : g.edges()) out << e.u << ' ' << e.v << '\n';
}

namespace detail {

inline bool next_content_line(std::istream& in, std::string& line, std::size_t& line_no) {
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") != std::string::npos) return true;
  }
  return false;
}

inline std::string at_line(std::size_t line_no) { return "line " + std::to_string(line_no) + ": "; }

template <typename... T>
bool parse_exact(const std::string& line, T&... fields) {
  std::istringstream ss(line);
  ((ss >> fields), ...);
  if (!ss) return false;
  std::string rest;
  return !(ss >> rest);
}

}  // namespace detail

inline RegularGraph read_graph(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  if (!detail::next_content_line(in, line, line_no)) throw Error(ErrorCode::parse_error, "empty graph file");
  long long n = 0;
  long long d = 0;
  if (!detail::parse_exact(line, n, d) || n < 1 || d < 1)
    throw Error(ErrorCode::parse_error, detail::at_line(line_no) + "expected header \"n d\"");
  std::vector<Edge> edges;
  while (detail::next_content_line(in, line, line_no)) {
    long long u = -1;
    long long v = -1;
    if (!detail::parse_exact(line, u, v) || u < 0 || v < 0)
      throw Error(ErrorCode::parse_error, detail::at_line(line_no) + "expected edge \"u v\"");
    edges.push_back({static_cast<Vertex>(u), static_cast<Vertex>(v)});
  }
  return RegularGraph(static_cast<std::size_t>(n), static_cast<std::size_t>(d), std::move(edges));
}

inline RegularGraph read_graph_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::io_error, "cannot open " + path);
  return read_graph(in);
}

inline void write_graph_file(const std::string& path, const RegularGraph& g) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::io_error, "cannot write " + path);
  write_graph(out, g);
}

}  // namespace liftlab

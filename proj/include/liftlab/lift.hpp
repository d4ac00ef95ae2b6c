#pragma once

#include <cstdint>
#include <numeric>
#include <string>
#include <variant>
#include <vector>

#include "liftlab/graph.hpp"

namespace liftlab {

inline constexpr std::size_t kMaxLiftDegree = 64;

using Permutation = std::vector<std::uint32_t>;

namespace detail {

inline void check_lift_degree(std::size_t k) {
  require(k >= 2, ErrorCode::invalid_parameter, "lift degree k must be >= 2");
  require(k <= kMaxLiftDegree, ErrorCode::invalid_parameter, "lift degree k must be <= 64");
}

inline bool is_permutation_of_range(const Permutation& p) {
  std::vector<char> seen(p.size(), 0);
  for (auto x : p) {
    if (x >= p.size() || seen[x]) return false;
    seen[x] = 1;
  }
  return true;
}

}  // namespace detail

// One permutation of [0,k) per base edge (u,v), u < v, in base-edge order.
// perms[e][i] is π_uv(i); the reverse direction is the inverse and is never
// stored.
class LiftAssignment {
 public:
  LiftAssignment(std::size_t k, std::vector<Permutation> perms) : k_(k), perms_(std::move(perms)) {
    detail::check_lift_degree(k_);
    for (std::size_t e = 0; e < perms_.size(); ++e) {
      detail::require(perms_[e].size() == k_ && detail::is_permutation_of_range(perms_[e]),
                      ErrorCode::invalid_parameter, "edge " + std::to_string(e) + ": not a permutation of [0,k)");
    }
  }

  std::size_t k() const noexcept { return k_; }
  std::size_t size() const noexcept { return perms_.size(); }
  const std::vector<Permutation>& perms() const noexcept { return perms_; }
  const Permutation& perm(std::size_t edge) const { return perms_.at(edge); }

  friend bool operator==(const LiftAssignment&, const LiftAssignment&) = default;

 private:
  std::size_t k_;
  std::vector<Permutation> perms_;
};

// Cyclic shift amount s in [0,k) per base edge (u,v), u < v: π_uv(i) = i+s mod k.
// Shift(v,u) = -Shift(u,v) mod k.
class ShiftAssignment {
 public:
  ShiftAssignment(std::size_t k, std::vector<std::uint32_t> shifts) : k_(k), shifts_(std::move(shifts)) {
    detail::check_lift_degree(k_);
    for (std::size_t e = 0; e < shifts_.size(); ++e) {
      detail::require(shifts_[e] < k_, ErrorCode::invalid_parameter,
                      "edge " + std::to_string(e) + ": shift out of [0,k)");
    }
  }

  std::size_t k() const noexcept { return k_; }
  std::size_t size() const noexcept { return shifts_.size(); }
  const std::vector<std::uint32_t>& shifts() const noexcept { return shifts_; }
  std::uint32_t shift(std::size_t edge) const { return shifts_.at(edge); }
  std::uint32_t reverse_shift(std::size_t edge) const {
    return static_cast<std::uint32_t>((k_ - shifts_.at(edge)) % k_);
  }

  friend bool operator==(const ShiftAssignment&, const ShiftAssignment&) = default;

 private:
  std::size_t k_;
  std::vector<std::uint32_t> shifts_;
};

class Signing {
 public:
  explicit Signing(std::vector<int> signs) : signs_(std::move(signs)) {
    for (std::size_t e = 0; e < signs_.size(); ++e) {
      detail::require(signs_[e] == 1 || signs_[e] == -1, ErrorCode::invalid_parameter,
                      "edge " + std::to_string(e) + ": sign must be +1 or -1");
    }
  }

  static Signing all_positive(std::size_t edges) { return Signing(std::vector<int>(edges, 1)); }

  // Bit e of mask set means edge e is negative.
  static Signing from_mask(std::size_t edges, std::uint64_t mask) {
    std::vector<int> signs(edges, 1);
    for (std::size_t e = 0; e < edges; ++e)
      if ((mask >> e) & 1U) signs[e] = -1;
    return Signing(std::move(signs));
  }

  std::size_t size() const noexcept { return signs_.size(); }
  const std::vector<int>& signs() const noexcept { return signs_; }
  int sign(std::size_t edge) const { return signs_.at(edge); }

  friend bool operator==(const Signing&, const Signing&) = default;

 private:
  std::vector<int> signs_;
};

// k-lift H of a base graph. Lift vertex (x,i) has index x*k + i.
struct LiftedGraph {
  RegularGraph base;
  std::size_t k;
  RegularGraph graph;
};

constexpr Vertex lift_vertex(Vertex x, std::size_t i, std::size_t k) noexcept {
  return static_cast<Vertex>(x * k + i);
}

// ---------------------------------------------------------------------------
// Sampling

inline Permutation identity_permutation(std::size_t k) {
  Permutation p(k);
  std::iota(p.begin(), p.end(), 0U);
  return p;
}

inline Permutation inverse(const Permutation& p) {
  Permutation inv(p.size());
  for (std::uint32_t i = 0; i < p.size(); ++i) inv[p[i]] = i;
  return inv;
}

// Independent uniform permutations (Fisher-Yates), one per edge in edge order.
inline LiftAssignment random_k_lift(const RegularGraph& g, std::size_t k, std::uint64_t seed) {
  detail::check_lift_degree(k);
  Rng rng(seed);
  std::vector<Permutation> perms;
  perms.reserve(g.edge_count());
  for (std::size_t e = 0; e < g.edge_count(); ++e) {
    Permutation p = identity_permutation(k);
    for (std::size_t i = k - 1; i > 0; --i) std::swap(p[i], p[rng.below(i + 1)]);
    perms.push_back(std::move(p));
  }
  return LiftAssignment(k, std::move(perms));
}

inline ShiftAssignment random_shift_lift(const RegularGraph& g, std::size_t k, std::uint64_t seed) {
  detail::check_lift_degree(k);
  Rng rng(seed);
  std::vector<std::uint32_t> shifts(g.edge_count());
  for (auto& s : shifts) s = static_cast<std::uint32_t>(rng.below(k));
  return ShiftAssignment(k, std::move(shifts));
}

inline Signing random_signing(const RegularGraph& g, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<int> signs(g.edge_count());
  for (auto& s : signs) s = rng.coin() ? -1 : 1;
  return Signing(std::move(signs));
}

// ---------------------------------------------------------------------------
// Conversions

// +1 -> identity, -1 -> swap.
inline LiftAssignment signing_to_assignment(const Signing& s) {
  std::vector<Permutation> perms;
  perms.reserve(s.size());
  for (int sign : s.signs()) perms.push_back(sign > 0 ? Permutation{0, 1} : Permutation{1, 0});
  return LiftAssignment(2, std::move(perms));
}

inline Signing assignment_to_signing(const LiftAssignment& a) {
  detail::require(a.k() == 2, ErrorCode::invalid_parameter, "only 2-lifts correspond to signings");
  std::vector<int> signs;
  signs.reserve(a.size());
  for (const auto& p : a.perms()) signs.push_back(p[0] == 0 ? 1 : -1);
  return Signing(std::move(signs));
}

inline LiftAssignment shift_to_assignment(const ShiftAssignment& sa) {
  std::vector<Permutation> perms;
  perms.reserve(sa.size());
  for (auto s : sa.shifts()) {
    Permutation p(sa.k());
    for (std::size_t i = 0; i < sa.k(); ++i) p[i] = static_cast<std::uint32_t>((i + s) % sa.k());
    perms.push_back(std::move(p));
  }
  return LiftAssignment(sa.k(), std::move(perms));
}

// For k = 2 a shift of 1 is the swap, i.e. sign -1.
inline Signing shift_to_signing(const ShiftAssignment& sa) {
  detail::require(sa.k() == 2, ErrorCode::invalid_parameter, "only shift 2-lifts correspond to signings");
  std::vector<int> signs;
  signs.reserve(sa.size());
  for (auto s : sa.shifts()) signs.push_back(s == 0 ? 1 : -1);
  return Signing(std::move(signs));
}

inline ShiftAssignment signing_to_shift(const Signing& s) {
  std::vector<std::uint32_t> shifts;
  shifts.reserve(s.size());
  for (int sign : s.signs()) shifts.push_back(sign > 0 ? 0U : 1U);
  return ShiftAssignment(2, std::move(shifts));
}

// ---------------------------------------------------------------------------
// Construction

inline LiftedGraph build_lift(const RegularGraph& g, const LiftAssignment& a) {
  detail::require(a.size() == g.edge_count(), ErrorCode::invalid_parameter,
                  "assignment has " + std::to_string(a.size()) + " permutations, graph has " +
                      std::to_string(g.edge_count()) + " edges");
  const std::size_t k = a.k();
  std::vector<Edge> edges;
  edges.reserve(g.edge_count() * k);
  for (std::size_t e = 0; e < g.edge_count(); ++e) {
    const auto [x, y] = g.edges()[e];
    const auto& p = a.perm(e);
    for (std::size_t i = 0; i < k; ++i) edges.push_back({lift_vertex(x, i, k), lift_vertex(y, p[i], k)});
  }
  return LiftedGraph{g, k, RegularGraph(g.n() * k, g.d(), std::move(edges))};
}

inline LiftedGraph build_lift(const RegularGraph& g, const ShiftAssignment& sa) {
  return build_lift(g, shift_to_assignment(sa));
}

inline LiftedGraph build_lift(const RegularGraph& g, const Signing& s) {
  return build_lift(g, signing_to_assignment(s));
}

inline Matrix signed_adjacency(const RegularGraph& g, const Signing& s) {
  detail::require(s.size() == g.edge_count(), ErrorCode::invalid_parameter, "signing length does not match edges");
  Matrix a = Matrix::Zero(static_cast<Eigen::Index>(g.n()), static_cast<Eigen::Index>(g.n()));
  for (std::size_t e = 0; e < g.edge_count(); ++e) {
    const auto [x, y] = g.edges()[e];
    a(x, y) = s.sign(e);
    a(y, x) = s.sign(e);
  }
  return a;
}

// 1/2 [[A+As, A-As], [A-As, A+As]]. Rows/columns are in layer-major order,
// (x,i) -> i*n + x, which differs from the lift's fiber-major x*k + i.
inline Matrix two_lift_block_matrix(const Matrix& a, const Matrix& as) {
  detail::require(a.rows() == a.cols() && as.rows() == as.cols() && a.rows() == as.rows(),
                  ErrorCode::invalid_parameter, "block matrix needs two square matrices of equal size");
  const Eigen::Index n = a.rows();
  Matrix h(2 * n, 2 * n);
  const Matrix same = 0.5 * (a + as);
  const Matrix cross = 0.5 * (a - as);
  h.topLeftCorner(n, n) = same;
  h.bottomRightCorner(n, n) = same;
  h.topRightCorner(n, n) = cross;
  h.bottomLeftCorner(n, n) = cross;
  return h;
}

// Reorders a layer-major matrix (i*n + x) into fiber-major (x*k + i).
inline Matrix layer_major_to_fiber_major(const Matrix& m, std::size_t n, std::size_t k) {
  detail::require(static_cast<std::size_t>(m.rows()) == n * k && m.rows() == m.cols(), ErrorCode::invalid_parameter,
                  "matrix dimension does not equal n*k");
  Eigen::VectorXi index(static_cast<Eigen::Index>(n * k));
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t i = 0; i < k; ++i) index(static_cast<Eigen::Index>(x * k + i)) = static_cast<int>(i * n + x);
  return m(index, index);
}

inline VertexSubset fiber(const LiftedGraph& lg, Vertex x) {
  detail::require(x < lg.base.n(), ErrorCode::invalid_parameter, "base vertex " + std::to_string(x) + " out of range");
  return VertexSubset::range(lift_vertex(x, 0, lg.k), lift_vertex(x + 1, 0, lg.k));
}

// ---------------------------------------------------------------------------
// Assignment text format: "k m", then one "shift s" or "perm i0 .. i{k-1}"
// line per base edge.

using AnyAssignment = std::variant<LiftAssignment, ShiftAssignment>;

inline void write_assignment(std::ostream& out, const ShiftAssignment& sa) {
  out << sa.k() << ' ' << sa.size() << '\n';
  for (auto s : sa.shifts()) out << "shift " << s << '\n';
}

inline void write_assignment(std::ostream& out, const LiftAssignment& a) {
  out << a.k() << ' ' << a.size() << '\n';
  for (const auto& p : a.perms()) {
    out << "perm";
    for (auto x : p) out << ' ' << x;
    out << '\n';
  }
}

inline void write_assignment(std::ostream& out, const AnyAssignment& a) {
  std::visit([&](const auto& x) { write_assignment(out, x); }, a);
}

// All-shift files come back as ShiftAssignment; any perm line makes the result
// a LiftAssignment.
inline AnyAssignment read_assignment(std::istream& in) {
  using detail::at_line;
  std::string line;
  std::size_t line_no = 0;
  if (!detail::next_content_line(in, line, line_no)) throw Error(ErrorCode::parse_error, "empty assignment file");
  long long k = 0;
  long long m = -1;
  if (!detail::parse_exact(line, k, m) || k < 2 || k > static_cast<long long>(kMaxLiftDegree) || m < 0)
    throw Error(ErrorCode::parse_error, at_line(line_no) + "expected header \"k m\" with 2 <= k <= 64");

  std::vector<Permutation> perms;
  std::vector<std::uint32_t> shifts;
  bool all_shifts = true;
  while (detail::next_content_line(in, line, line_no)) {
    std::istringstream ss(line);
    std::string kind;
    ss >> kind;
    std::vector<long long> values;
    long long x = 0;
    while (ss >> x) values.push_back(x);
    if (!ss.eof()) throw Error(ErrorCode::parse_error, at_line(line_no) + "non-numeric token");
    Permutation p;
    if (kind == "shift") {
      if (values.size() != 1 || values[0] < 0 || values[0] >= k)
        throw Error(ErrorCode::parse_error, at_line(line_no) + "expected \"shift s\" with 0 <= s < k");
      shifts.push_back(static_cast<std::uint32_t>(values[0]));
      for (long long i = 0; i < k; ++i) p.push_back(static_cast<std::uint32_t>((i + values[0]) % k));
    } else if (kind == "perm") {
      if (values.size() != static_cast<std::size_t>(k))
        throw Error(ErrorCode::parse_error, at_line(line_no) + "expected k permutation images");
      for (auto v : values) {
        if (v < 0 || v >= k) throw Error(ErrorCode::parse_error, at_line(line_no) + "image out of [0,k)");
        p.push_back(static_cast<std::uint32_t>(v));
      }
      if (!detail::is_permutation_of_range(p))
        throw Error(ErrorCode::parse_error, at_line(line_no) + "images do not form a permutation");
      all_shifts = false;
    } else {
      throw Error(ErrorCode::parse_error, at_line(line_no) + "expected \"shift\" or \"perm\"");
    }
    perms.push_back(std::move(p));
  }
  if (perms.size() != static_cast<std::size_t>(m))
    throw Error(ErrorCode::validation_error,
                "header declares " + std::to_string(m) + " edges, file has " + std::to_string(perms.size()));
  if (all_shifts) return ShiftAssignment(static_cast<std::size_t>(k), std::move(shifts));
  return LiftAssignment(static_cast<std::size_t>(k), std::move(perms));
}

inline AnyAssignment read_assignment_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::io_error, "cannot open " + path);
  return read_assignment(in);
}

inline LiftAssignment as_lift_assignment(const AnyAssignment& a) {
  if (const auto* sa = std::get_if<ShiftAssignment>(&a)) return shift_to_assignment(*sa);
  return std::get<LiftAssignment>(a);
}

}  // namespace liftlab

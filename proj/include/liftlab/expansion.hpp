#pragma once

#include <bit>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "liftlab/graph.hpp"
#include "liftlab/random.hpp"
#include "liftlab/spectral.hpp"

namespace liftlab {

inline constexpr std::size_t kExhaustiveExpansionLimit = 24;
inline constexpr std::size_t kExhaustivePairLimit = 12;
inline constexpr double kInequalitySlack = 1e-9;

struct SubsetMode {
  enum class Kind { exhaustive, sampled };
  Kind kind = Kind::exhaustive;
  std::size_t count = 0;
  std::uint64_t seed = 0;

  static SubsetMode exhaustive() { return {}; }
  static SubsetMode sampled(std::size_t count, std::uint64_t seed) { return {Kind::sampled, count, seed}; }
};

inline std::string to_string(SubsetMode::Kind kind) {
  return kind == SubsetMode::Kind::exhaustive ? "exhaustive" : "sampled";
}

struct ExpansionReport {
  // Exhaustive: h(G) exactly. Sampled: an upper bound on h(G).
  double h = 0.0;
  VertexSubset argmin;
  std::size_t boundary = 0;
  SubsetMode::Kind method = SubsetMode::Kind::exhaustive;
  double lambda2 = 0.0;
  double cheeger_lower = 0.0;  // (d - λ₂)/2
  double cheeger_upper = 0.0;  // sqrt(d (d - λ₂))
};

struct CheegerResult {
  bool lower_holds = false;
  bool upper_holds = false;
  ExpansionReport report;

  bool passed() const { return lower_holds && upper_holds; }
};

struct EmlReport {
  double max_ratio = 0.0;  // max |E(S,T) - d|S||T|/n| / sqrt(|S||T|)
  VertexSubset worst_s;
  VertexSubset worst_t;
  double lambda = 0.0;
  std::uint64_t pairs_checked = 0;
  SubsetMode::Kind method = SubsetMode::Kind::exhaustive;

  bool passed() const { return max_ratio <= lambda + kInequalitySlack; }
};

struct ConverseEmlReport {
  double alpha = 0.0;
  double lambda = 0.0;
  double alpha_log_term = 0.0;  // α (1 + log2(d/α)); compared with λ, nothing asserted
  EmlReport eml;
};

namespace detail {

inline std::vector<std::uint32_t> neighbor_masks(const RegularGraph& g) {
  std::vector<std::uint32_t> masks(g.n(), 0);
  for (const auto& e : g.edges()) {
    masks[e.u] |= 1U << e.v;
    masks[e.v] |= 1U << e.u;
  }
  return masks;
}

// Uniform random subset, each vertex kept with probability 1/2, never empty.
inline std::vector<char> random_nonempty_subset(std::size_t n, Rng& rng) {
  std::vector<char> in(n, 0);
  for (;;) {
    bool any = false;
    for (auto& x : in) {
      x = rng.coin() ? 1 : 0;
      any = any || x;
    }
    if (any) return in;
  }
}

inline VertexSubset subset_from_flags(const std::vector<char>& in) {
  std::vector<Vertex> members;
  for (Vertex v = 0; v < in.size(); ++v)
    if (in[v]) members.push_back(v);
  return VertexSubset(std::move(members));
}

inline void fill_cheeger_bounds(const RegularGraph& g, ExpansionReport& report) {
  const auto spectrum = adjacency_spectrum(g);
  const auto d = static_cast<double>(g.d());
  report.lambda2 = spectrum.size() >= 2 ? spectrum.values[1] : spectrum.values[0];
  const double gap = std::max(0.0, d - report.lambda2);
  report.cheeger_lower = gap / 2.0;
  report.cheeger_upper = std::sqrt(d * gap);
}

}  // namespace detail

// h(G) = min over nonempty S with |S| <= n/2 of E(S, V\S)/|S|.
inline ExpansionReport combinatorial_expansion(const RegularGraph& g, SubsetMode mode = SubsetMode::exhaustive()) {
  ExpansionReport report;
  report.method = mode.kind;
  const std::size_t n = g.n();
  std::size_t best_boundary = 0;
  std::size_t best_size = 0;

  // Ratios b/s compared exactly via cross-multiplication.
  auto better = [&](std::size_t boundary, std::size_t size) {
    return best_size == 0 || boundary * best_size < best_boundary * size;
  };

  if (mode.kind == SubsetMode::Kind::exhaustive) {
    detail::require(n <= kExhaustiveExpansionLimit, ErrorCode::size_limit,
                    "exhaustive expansion supports n <= 24, got " + std::to_string(n));
    const auto masks = detail::neighbor_masks(g);
    // Gray-code walk: consecutive subsets differ in one vertex, so the cut
    // size updates by d - 2|N(v) ∩ S|.
    std::uint32_t subset = 0;
    std::size_t boundary = 0;
    std::size_t size = 0;
    std::uint32_t best_subset = 0;
    const std::uint64_t total = std::uint64_t{1} << n;
    for (std::uint64_t step = 1; step < total; ++step) {
      const int v = std::countr_zero(step);
      const std::uint32_t bit = 1U << v;
      const auto inside = static_cast<std::size_t>(std::popcount(masks[v] & (subset & ~bit)));
      if (subset & bit) {
        subset &= ~bit;
        boundary = boundary + 2 * inside - g.d();
        --size;
      } else {
        subset |= bit;
        boundary = boundary + g.d() - 2 * inside;
        ++size;
      }
      if (size >= 1 && 2 * size <= n && better(boundary, size)) {
        best_boundary = boundary;
        best_size = size;
        best_subset = subset;
      }
    }
    report.argmin = VertexSubset::from_mask(best_subset);
  } else {
    detail::require(mode.count >= 1, ErrorCode::invalid_parameter, "sampled expansion needs count >= 1");
    Rng rng(mode.seed);
    std::vector<char> best_in;
    for (std::size_t trial = 0; trial < mode.count; ++trial) {
      auto in = detail::random_nonempty_subset(n, rng);
      std::size_t size = 0;
      for (char x : in) size += x ? 1 : 0;
      // E(S, V\S) is symmetric in S and its complement.
      if (2 * size > n) {
        for (auto& x : in) x = x ? 0 : 1;
        size = n - size;
      }
      if (size == 0) continue;
      std::size_t boundary = 0;
      for (const auto& e : g.edges()) boundary += (in[e.u] != in[e.v]) ? 1 : 0;
      if (better(boundary, size)) {
        best_boundary = boundary;
        best_size = size;
        best_in = in;
      }
    }
    if (best_size > 0) report.argmin = detail::subset_from_flags(best_in);
  }
  report.boundary = best_boundary;
  report.h = best_size == 0 ? std::numeric_limits<double>::infinity()
                            : static_cast<double>(best_boundary) / static_cast<double>(best_size);
  detail::fill_cheeger_bounds(g, report);
  return report;
}

// (d - λ₂)/2 <= h(G) <= sqrt(d (d - λ₂)), each with kInequalitySlack.
inline CheegerResult cheeger_check(const RegularGraph& g) {
  CheegerResult result;
  result.report = combinatorial_expansion(g, SubsetMode::exhaustive());
  result.lower_holds = result.report.cheeger_lower <= result.report.h + kInequalitySlack;
  result.upper_holds = result.report.h <= result.report.cheeger_upper + kInequalitySlack;
  return result;
}

// Expander-mixing deviation max over subset pairs. Exhaustive mode checks all
// ordered pairs of nonempty subsets (n <= 12); sampled mode checks `count`
// random pairs.
inline EmlReport eml_check(const RegularGraph& g, double lambda, SubsetMode mode = SubsetMode::exhaustive()) {
  EmlReport report;
  report.lambda = lambda;
  report.method = mode.kind;
  const std::size_t n = g.n();
  const auto d = static_cast<double>(g.d());
  const auto nn = static_cast<double>(n);

  if (mode.kind == SubsetMode::Kind::exhaustive) {
    detail::require(n <= kExhaustivePairLimit, ErrorCode::size_limit,
                    "exhaustive EML supports n <= 12, got " + std::to_string(n));
    const auto masks = detail::neighbor_masks(g);
    const std::uint32_t total = 1U << n;
    std::vector<std::uint32_t> counts(n);
    std::vector<std::uint32_t> e_st(total);
    std::uint32_t worst_s = 0;
    std::uint32_t worst_t = 0;
    for (std::uint32_t s = 1; s < total; ++s) {
      const int size_s = std::popcount(s);
      // counts[v] = |N(v) ∩ S|, so E(S,T) = Σ_{v∈T} counts[v].
      for (std::size_t v = 0; v < n; ++v) counts[v] = static_cast<std::uint32_t>(std::popcount(masks[v] & s));
      e_st[0] = 0;
      for (std::uint32_t t = 1; t < total; ++t) {
        e_st[t] = e_st[t & (t - 1)] + counts[std::countr_zero(t)];
        const int size_t_ = std::popcount(t);
        const double st = static_cast<double>(size_s) * static_cast<double>(size_t_);
        const double ratio = std::abs(static_cast<double>(e_st[t]) - d * st / nn) / std::sqrt(st);
        if (ratio > report.max_ratio) {
          report.max_ratio = ratio;
          worst_s = s;
          worst_t = t;
        }
      }
      report.pairs_checked += total - 1;
    }
    report.worst_s = VertexSubset::from_mask(worst_s);
    report.worst_t = VertexSubset::from_mask(worst_t);
  } else {
    detail::require(mode.count >= 1, ErrorCode::invalid_parameter, "sampled EML needs count >= 1");
    Rng rng(mode.seed);
    for (std::size_t trial = 0; trial < mode.count; ++trial) {
      const auto in_s = detail::random_nonempty_subset(n, rng);
      const auto in_t = detail::random_nonempty_subset(n, rng);
      std::size_t e = 0;
      for (const auto& edge : g.edges()) {
        e += (in_s[edge.u] && in_t[edge.v]) ? 1 : 0;
        e += (in_s[edge.v] && in_t[edge.u]) ? 1 : 0;
      }
      double size_s = 0.0;
      double size_t_ = 0.0;
      for (std::size_t v = 0; v < n; ++v) {
        size_s += in_s[v] ? 1.0 : 0.0;
        size_t_ += in_t[v] ? 1.0 : 0.0;
      }
      const double st = size_s * size_t_;
      const double ratio = std::abs(static_cast<double>(e) - d * st / nn) / std::sqrt(st);
      if (ratio > report.max_ratio || trial == 0) {
        report.max_ratio = std::max(report.max_ratio, ratio);
        report.worst_s = detail::subset_from_flags(in_s);
        report.worst_t = detail::subset_from_flags(in_t);
      }
      ++report.pairs_checked;
    }
  }
  return report;
}

// λ for the mixing bound. The plain convention excludes only one copy of d;
// the bipartite-aware variant also drops -d, under which the plain bound can
// fail for subset pairs that straddle the bipartition.
inline double eml_lambda(const RegularGraph& g, bool bipartite_aware = false) {
  return lambda_nontrivial(adjacency_spectrum(g), g.d(), bipartite_aware && is_bipartite(g));
}

inline ConverseEmlReport converse_eml_alpha(const RegularGraph& g, SubsetMode mode = SubsetMode::exhaustive()) {
  ConverseEmlReport report;
  report.lambda = eml_lambda(g);
  report.eml = eml_check(g, report.lambda, mode);
  report.alpha = report.eml.max_ratio;
  if (report.alpha > 0.0)
    report.alpha_log_term = report.alpha * (1.0 + std::log2(static_cast<double>(g.d()) / report.alpha));
  return report;
}

}  // namespace liftlab

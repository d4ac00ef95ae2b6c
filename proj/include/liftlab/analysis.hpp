#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "liftlab/graph.hpp"
#include "liftlab/random.hpp"

namespace liftlab {

// Indices of nonzero entries.
template <typename T>
VertexSubset support(std::span<const T> u) {
  std::vector<Vertex> members;
  for (std::size_t j = 0; j < u.size(); ++j)
    if (u[j] != T{0}) members.push_back(static_cast<Vertex>(j));
  return VertexSubset(std::move(members));
}

inline VertexSubset support(const std::vector<double>& u) { return support(std::span<const double>(u)); }
inline VertexSubset support(const std::vector<int>& u) { return support(std::span<const int>(u)); }

struct DyadicTerm {
  int level = 1;         // i >= 1
  std::vector<int> unit;  // u_i in {-1, 0, +1}^n
};

// y = Σ 2^{-i} u_i with pairwise disjoint supports; terms ordered by level and
// only nonempty levels kept.
struct DyadicDecomposition {
  std::size_t dimension = 0;
  std::vector<DyadicTerm> terms;

  std::vector<double> reconstruct() const {
    std::vector<double> y(dimension, 0.0);
    for (const auto& term : terms)
      for (std::size_t j = 0; j < dimension; ++j)
        if (term.unit[j] != 0) y[j] += std::ldexp(static_cast<double>(term.unit[j]), -term.level);
    return y;
  }
};

namespace detail {

// For a > 0 returns e with a = m 2^e, m in [1/2, 1), so a lies in [2^{e-1}, 2^e).
inline int binade(double a) {
  int e = 0;
  std::frexp(a, &e);
  return e;
}

}  // namespace detail

inline DyadicDecomposition dyadic_decompose(std::span<const double> y) {
  DyadicDecomposition out;
  out.dimension = y.size();
  std::vector<int> level_of(y.size(), 0);
  int deepest = 0;
  for (std::size_t j = 0; j < y.size(); ++j) {
    if (y[j] == 0.0) continue;
    int e = 0;
    const double mantissa = std::frexp(std::abs(y[j]), &e);
    if (!std::isfinite(y[j]) || mantissa != 0.5 || e > 0) {
      throw Error(ErrorCode::invalid_parameter,
                  "entry " + std::to_string(j) + " is not 0 or ±2^-i with i >= 1");
    }
    level_of[j] = 1 - e;
    deepest = std::max(deepest, level_of[j]);
  }
  std::vector<std::size_t> slot(static_cast<std::size_t>(deepest) + 1, 0);
  for (int level = 1; level <= deepest; ++level) {
    bool used = false;
    for (int l : level_of) used = used || l == level;
    if (!used) continue;
    slot[static_cast<std::size_t>(level)] = out.terms.size();
    out.terms.push_back({level, std::vector<int>(y.size(), 0)});
  }
  for (std::size_t j = 0; j < y.size(); ++j) {
    if (level_of[j] == 0) continue;
    out.terms[slot[static_cast<std::size_t>(level_of[j])]].unit[j] = y[j] > 0.0 ? 1 : -1;
  }
  return out;
}

inline DyadicDecomposition dyadic_decompose(const std::vector<double>& y) {
  return dyadic_decompose(std::span<const double>(y));
}

// One independent randomized rounding: with |x_j| = (1 + δ) 2^{-i}, δ in [0,1),
// x_j goes to sign·2^{-i+1} with probability δ and to sign·2^{-i} otherwise,
// so E[y_j] = x_j. Zero stays zero.
inline std::vector<double> round_to_dyadic(std::span<const double> x, Rng& rng) {
  std::vector<double> y(x.size(), 0.0);
  for (std::size_t j = 0; j < x.size(); ++j) {
    const double a = std::abs(x[j]);
    if (a == 0.0) continue;
    const double lower = std::ldexp(1.0, detail::binade(a) - 1);
    const double delta = a / lower - 1.0;
    const double magnitude = rng.uniform() < delta ? 2.0 * lower : lower;
    y[j] = std::copysign(magnitude, x[j]);
  }
  return y;
}

struct DiscretizeResult {
  std::vector<double> y;
  std::size_t tries = 0;
  double target = 0.0;    // |x^T M x|
  double achieved = 0.0;  // |y^T M y|
};

struct DiscretizePairResult {
  std::vector<double> y1;
  std::vector<double> y2;
  std::size_t tries = 0;
  double target = 0.0;    // |x1^T M x2|
  double achieved = 0.0;  // |y1^T M y2|
};

class SearchFailure : public Error {
 public:
  SearchFailure(const std::string& what, std::vector<double> best, double best_value)
      : Error(ErrorCode::search_failure, what), best_(std::move(best)), best_value_(best_value) {}

  const std::vector<double>& best_candidate() const noexcept { return best_; }
  double best_value() const noexcept { return best_value_; }

 private:
  std::vector<double> best_;
  double best_value_;
};

inline constexpr double kDiscretizeSlack = 1e-12;

namespace detail {

inline void check_rounding_input(std::span<const double> x, const Matrix& m) {
  require(m.rows() == m.cols() && static_cast<std::size_t>(m.rows()) == x.size(), ErrorCode::invalid_parameter,
          "matrix dimension does not match vector length");
  for (std::size_t j = 0; j < x.size(); ++j) {
    require(std::isfinite(x[j]) && std::abs(x[j]) <= 0.5, ErrorCode::invalid_parameter,
            "entry " + std::to_string(j) + " exceeds 1/2 in absolute value; rescale first");
    require(m(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(j)) == 0.0, ErrorCode::invalid_parameter,
            "matrix diagonal must be zero");
  }
}

inline double bilinear(std::span<const double> a, const Matrix& m, std::span<const double> b) {
  const Eigen::Map<const Eigen::VectorXd> va(a.data(), static_cast<Eigen::Index>(a.size()));
  const Eigen::Map<const Eigen::VectorXd> vb(b.data(), static_cast<Eigen::Index>(b.size()));
  return va.dot(m * vb);
}

}  // namespace detail

// Repeats the randomized rounding until |y^T M y| >= |x^T M x| - 1e-12.
// Because E[y^T M y] = x^T M x when diag(M) = 0, some rounding achieves it.
inline DiscretizeResult discretize(std::span<const double> x, const Matrix& m, std::uint64_t seed,
                                   std::size_t max_tries) {
  detail::check_rounding_input(x, m);
  Rng rng(seed);
  DiscretizeResult result;
  result.target = std::abs(detail::bilinear(x, m, x));
  std::vector<double> best;
  double best_value = -1.0;
  for (std::size_t attempt = 1; attempt <= max_tries; ++attempt) {
    auto y = round_to_dyadic(x, rng);
    const double value = std::abs(detail::bilinear(y, m, y));
    if (value >= result.target - kDiscretizeSlack) {
      result.y = std::move(y);
      result.tries = attempt;
      result.achieved = value;
      return result;
    }
    if (value > best_value) {
      best_value = value;
      best = std::move(y);
    }
  }
  throw SearchFailure("no rounding reached |x^T M x| = " + std::to_string(result.target) + " in " +
                          std::to_string(max_tries) + " tries",
                      std::move(best), best_value);
}

inline DiscretizeResult discretize(const std::vector<double>& x, const Matrix& m, std::uint64_t seed,
                                   std::size_t max_tries) {
  return discretize(std::span<const double>(x), m, seed, max_tries);
}

// Two-vector form: x1 and x2 are rounded independently each try, and both are
// re-rounded until |y1^T M y2| >= |x1^T M x2| - 1e-12.
inline DiscretizePairResult discretize_pair(std::span<const double> x1, std::span<const double> x2, const Matrix& m,
                                            std::uint64_t seed, std::size_t max_tries) {
  detail::check_rounding_input(x1, m);
  detail::check_rounding_input(x2, m);
  Rng rng(seed);
  DiscretizePairResult result;
  result.target = std::abs(detail::bilinear(x1, m, x2));
  std::vector<double> best;
  double best_value = -1.0;
  for (std::size_t attempt = 1; attempt <= max_tries; ++attempt) {
    auto y1 = round_to_dyadic(x1, rng);
    auto y2 = round_to_dyadic(x2, rng);
    const double value = std::abs(detail::bilinear(y1, m, y2));
    if (value >= result.target - kDiscretizeSlack) {
      result.y1 = std::move(y1);
      result.y2 = std::move(y2);
      result.tries = attempt;
      result.achieved = value;
      return result;
    }
    if (value > best_value) {
      best_value = value;
      best = std::move(y1);
    }
  }
  throw SearchFailure("no joint rounding reached |x1^T M x2| = " + std::to_string(result.target), std::move(best),
                      best_value);
}

struct AgpLogBound {
  double lhs = 0.0;  // Σ_{i=0}^{t} (r^i log(z/r^i))^x
  double rhs = 0.0;  // c(r) (r^t log(z/r^t))^x
  double c_r = 0.0;
  double alpha_r = 0.0;

  bool holds() const { return lhs <= rhs; }
};

// Geometric-logarithmic sum bound with the explicit constant
// c(r) = 1 + α/(α-1), α(r) = (r (1 + log r) / (1 + 2 log r))^x. Logs are base 2.
inline AgpLogBound agp_log_bound(double r, int t, double z, double x) {
  using detail::require;
  require(r >= 2.0 && std::isfinite(r), ErrorCode::invalid_parameter, "agp_log_bound needs r >= 2");
  require(t >= 0, ErrorCode::invalid_parameter, "agp_log_bound needs t >= 0");
  require(x > 0.0 && std::isfinite(x), ErrorCode::invalid_parameter, "agp_log_bound needs x > 0");
  require(std::pow(r, t) <= z / 2.0, ErrorCode::invalid_parameter, "agp_log_bound needs r^t <= z/2");

  auto term = [&](int i) {
    const double ri = std::pow(r, i);
    return std::pow(ri * std::log2(z / ri), x);
  };
  AgpLogBound out;
  for (int i = 0; i <= t; ++i) out.lhs += term(i);
  const double log_r = std::log2(r);
  out.alpha_r = std::pow(r * (1.0 + log_r) / (1.0 + 2.0 * log_r), x);
  out.c_r = 1.0 + out.alpha_r / (out.alpha_r - 1.0);
  out.rhs = out.c_r * term(t);
  return out;
}

}  // namespace liftlab

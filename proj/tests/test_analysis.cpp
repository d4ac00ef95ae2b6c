#include <gtest/gtest.h>

#include "liftlab/liftlab.hpp"
#include "oracles.hpp"

using namespace liftlab;

namespace {

std::vector<double> random_grid_vector(std::size_t n, Rng& rng, int max_level = 40) {
  std::vector<double> y(n, 0.0);
  for (auto& v : y) {
    if (rng.below(4) == 0) continue;
    const int level = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(max_level)));
    v = std::ldexp(rng.coin() ? -1.0 : 1.0, -level);
  }
  return y;
}

std::vector<double> random_half_box(std::size_t n, Rng& rng) {
  std::vector<double> x(n);
  for (auto& v : x) v = rng.uniform() - 0.5;
  return x;
}

Matrix random_signed_zero_diagonal(std::size_t n, Rng& rng) {
  Matrix m = Matrix::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      const double s = rng.coin() ? -1.0 : 1.0;
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = s;
      m(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(i)) = s;
    }
  return m;
}

double quad(const std::vector<double>& y, const Matrix& m) {
  const Eigen::Map<const Eigen::VectorXd> v(y.data(), static_cast<Eigen::Index>(y.size()));
  return v.dot(m * v);
}

double norm2(const std::vector<double>& y) {
  double s = 0.0;
  for (double v : y) s += v * v;
  return s;
}

}  // namespace

TEST(Support, Basics) {
  EXPECT_TRUE(support(std::vector<double>{0, 0, 0}).empty());
  EXPECT_EQ(support(std::vector<int>{1, 0, -1}).members(), (std::vector<Vertex>{0, 2}));
}

TEST(Dyadic, WorkedExample) {
  const auto dec = dyadic_decompose(std::vector<double>{0.5, -0.25, 0.0});
  ASSERT_EQ(dec.terms.size(), 2U);
  EXPECT_EQ(dec.terms[0].level, 1);
  EXPECT_EQ(dec.terms[0].unit, (std::vector<int>{1, 0, 0}));
  EXPECT_EQ(dec.terms[1].level, 2);
  EXPECT_EQ(dec.terms[1].unit, (std::vector<int>{0, -1, 0}));
  EXPECT_TRUE(dyadic_decompose(std::vector<double>{0, 0}).terms.empty());
}

TEST(Dyadic, ReconstructionIsBitExactAndSupportsDisjoint) {
  Rng rng(77);
  for (int trial = 0; trial < 2000; ++trial) {
    const auto y = random_grid_vector(1 + rng.below(30), rng);
    const auto dec = dyadic_decompose(y);
    EXPECT_EQ(dec.reconstruct(), y);
    std::vector<int> covered(y.size(), 0);
    double energy = 0.0;
    for (const auto& term : dec.terms) {
      EXPECT_GE(term.level, 1);
      const auto s = support(term.unit);
      for (Vertex j : s.members()) ++covered[j];
      energy += std::ldexp(static_cast<double>(s.size()), -2 * term.level);
    }
    for (int c : covered) EXPECT_LE(c, 1);
    EXPECT_DOUBLE_EQ(energy, norm2(y));
  }
}

TEST(Dyadic, OffGridEntryNamesIndex) {
  for (const auto& bad : {std::vector<double>{0.5, 0.3}, std::vector<double>{0.0, 1.0}, std::vector<double>{0.25, -0.75}}) {
    try {
      dyadic_decompose(bad);
      FAIL();
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::invalid_parameter);
      EXPECT_NE(std::string(e.what()).find("entry 1"), std::string::npos);
    }
  }
}

TEST(Rounding, StaysOnGridWithinOneLevel) {
  Rng rng(3);
  for (int trial = 0; trial < 500; ++trial) {
    const auto x = random_half_box(12, rng);
    const auto y = round_to_dyadic(x, rng);
    EXPECT_NO_THROW(dyadic_decompose(y));
    for (std::size_t j = 0; j < x.size(); ++j) {
      EXPECT_EQ(std::signbit(x[j]), std::signbit(y[j]));
      EXPECT_LE(std::abs(y[j]), 2.0 * std::abs(x[j]));
      EXPECT_GE(std::abs(y[j]), std::abs(x[j]) / 2.0);
    }
    EXPECT_LE(norm2(y), 4.0 * norm2(x));
  }
  Rng r2(1);
  EXPECT_EQ(round_to_dyadic(std::vector<double>{0.0, 0.25, -0.5}, r2), (std::vector<double>{0.0, 0.25, -0.5}));
}

TEST(Rounding, IsUnbiasedPerCoordinate) {
  const std::vector<double> x{0.3, -0.17, 0.49, -0.013, 0.26};
  Rng rng(11);
  const int rounds = 20000;
  std::vector<double> sum(x.size(), 0.0);
  std::vector<double> sum_sq(x.size(), 0.0);
  for (int r = 0; r < rounds; ++r) {
    const auto y = round_to_dyadic(x, rng);
    for (std::size_t j = 0; j < x.size(); ++j) {
      sum[j] += y[j];
      sum_sq[j] += y[j] * y[j];
    }
  }
  for (std::size_t j = 0; j < x.size(); ++j) {
    const double mean = sum[j] / rounds;
    const double var = sum_sq[j] / rounds - mean * mean;
    EXPECT_NEAR(mean, x[j], 3.0 * std::sqrt(var / rounds) + 1e-15) << "coordinate " << j;
  }
}

TEST(Discretize, MeetsTheQuadraticFormTarget) {
  Rng rng(5);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 2 + rng.below(20);
    const auto x = random_half_box(n, rng);
    const Matrix m = random_signed_zero_diagonal(n, rng);
    const auto res = discretize(x, m, rng(), 10000);
    EXPECT_GE(res.tries, 1U);
    EXPECT_GE(std::abs(quad(res.y, m)), std::abs(quad(x, m)) - kDiscretizeSlack);
    EXPECT_LE(norm2(res.y), 4.0 * norm2(x));
    EXPECT_NO_THROW(dyadic_decompose(res.y));
  }
}

TEST(Discretize, GridAndZeroInputsReturnImmediately) {
  const Matrix m = Matrix::Zero(3, 3);
  const std::vector<double> grid{0.5, -0.125, 0.0};
  const auto res = discretize(grid, m, 1, 1);
  EXPECT_EQ(res.tries, 1U);
  EXPECT_EQ(res.y, grid);
  EXPECT_EQ(discretize(std::vector<double>(3, 0.0), m, 1, 1).y, std::vector<double>(3, 0.0));
}

TEST(Discretize, ExpectationIdentity) {
  // E[y^T M y] = x^T M x when diag(M) = 0.
  Rng rng(8);
  const std::size_t n = 20;
  const auto x = random_half_box(n, rng);
  const Matrix m = random_signed_zero_diagonal(n, rng);
  const int rounds = 50000;
  double sum = 0.0;
  double sum_sq = 0.0;
  for (int r = 0; r < rounds; ++r) {
    const double v = quad(round_to_dyadic(x, rng), m);
    sum += v;
    sum_sq += v * v;
  }
  const double mean = sum / rounds;
  const double se = std::sqrt((sum_sq / rounds - mean * mean) / rounds);
  // 4 se: one fixed draw, false alarm rate about 6e-5.
  EXPECT_NEAR(mean, quad(x, m), 4.0 * se);
}

TEST(Discretize, RejectsBadInputAndReportsBestOnFailure) {
  Matrix m = Matrix::Zero(2, 2);
  EXPECT_THROW(discretize(std::vector<double>{0.6, 0.1}, m, 0, 10), Error);
  m(0, 0) = 1.0;
  EXPECT_THROW(discretize(std::vector<double>{0.3, 0.1}, m, 0, 10), Error);
  // An empty try budget always fails.
  Matrix off = Matrix::Zero(2, 2);
  off(0, 1) = off(1, 0) = 1.0;
  try {
    discretize(std::vector<double>{0.3, 0.3}, off, 0, 0);
    FAIL();
  } catch (const SearchFailure& e) {
    EXPECT_EQ(e.code(), ErrorCode::search_failure);
  }
}

TEST(Discretize, PairVariant) {
  Rng rng(12);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = 10;
    const auto x1 = random_half_box(n, rng);
    const auto x2 = random_half_box(n, rng);
    const Matrix m = random_signed_zero_diagonal(n, rng);
    const auto res = discretize_pair(x1, x2, m, rng(), 10000);
    const Eigen::Map<const Eigen::VectorXd> a(res.y1.data(), n), b(res.y2.data(), n);
    EXPECT_GE(std::abs(a.dot(m * b)), res.target - kDiscretizeSlack);
  }
}

TEST(AgpLogBound, WorkedExample) {
  const auto b = agp_log_bound(2.0, 3, 32.0, 1.0);
  EXPECT_DOUBLE_EQ(b.lhs, 41.0);
  // α(2) = 2·2/3 = 4/3, c(2) = 1 + (4/3)/(1/3) = 5
  EXPECT_NEAR(b.alpha_r, 4.0 / 3.0, 1e-15);
  EXPECT_NEAR(b.c_r, 5.0, 1e-12);
  EXPECT_NEAR(b.rhs, 80.0, 1e-12);
  EXPECT_TRUE(b.holds());
}

TEST(AgpLogBound, TZeroAndPreconditions) {
  const auto b = agp_log_bound(3.0, 0, 10.0, 2.0);
  EXPECT_NEAR(b.lhs, std::pow(std::log2(10.0), 2.0), 1e-12);
  EXPECT_TRUE(b.holds());
  EXPECT_THROW(agp_log_bound(1.5, 1, 10.0, 1.0), Error);
  EXPECT_THROW(agp_log_bound(2.0, 3, 15.0, 1.0), Error);  // 2^3 > 15/2
  EXPECT_THROW(agp_log_bound(2.0, 1, 10.0, 0.0), Error);
  EXPECT_THROW(agp_log_bound(2.0, -1, 10.0, 1.0), Error);
}

TEST(AgpLogBound, HoldsOnSweepGrid) {
  for (double r : {2.0, 4.0})
    for (int t = 0; t <= 10; ++t)
      for (double x : {0.5, 1.0, 2.0}) {
        const double z = 2.0 * std::pow(r, t);
        const auto b = agp_log_bound(r, t, z, x);
        EXPECT_TRUE(b.holds()) << "r=" << r << " t=" << t << " x=" << x << ": " << b.lhs << " > " << b.rhs;
      }
}

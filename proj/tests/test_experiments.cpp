#include <gtest/gtest.h>

#include <sstream>

#include "liftlab/liftlab.hpp"
#include "oracles.hpp"

using namespace liftlab;

TEST(GraphSpec, Families) {
  EXPECT_EQ(make_graph("complete:4"), complete_graph(4));
  EXPECT_EQ(make_graph("bipartite:3"), complete_bipartite(3));
  EXPECT_EQ(make_graph("cycle:9"), cycle_graph(9));
  EXPECT_EQ(make_graph("random:20,3,5"), random_regular(20, 3, 5));
  EXPECT_EQ(make_graph("complete:4x25"), disjoint_copies(complete_graph(4), 25));
  for (const char* bad : {"complete", "complete:", "torus:4", "random:10,3", "complete:4x0", "complete:-4"})
    EXPECT_THROW(make_graph(bad), Error) << bad;
}

TEST(Config, ParsesKeysAndComments) {
  std::stringstream ss("# campaign\ngraph = random:100,4,1\nk=3\ntrials=7  # few\nseed=42\nmode=shift_lift\n"
                       "constants=0.5, 1.5\r\n");
  const auto cfg = parse_config(ss);
  EXPECT_EQ(cfg.graph, "random:100,4,1");
  EXPECT_EQ(cfg.k, 3U);
  EXPECT_EQ(cfg.trials, 7U);
  EXPECT_EQ(cfg.base_seed, 42U);
  EXPECT_EQ(cfg.mode, LiftMode::shift_lift);
  EXPECT_EQ(cfg.constants, (std::vector<double>{0.5, 1.5}));
  EXPECT_NO_THROW(cfg.validate());

  for (const char* bad : {"k=abc\n", "colour=red\n", "trials\n", "mode=three_lift\n", "constants=1,x\n"}) {
    std::stringstream b(bad);
    EXPECT_THROW(parse_config(b), Error) << bad;
  }
  ExperimentConfig two;
  two.k = 3;
  EXPECT_THROW(two.validate(), Error);
  two.k = 2;
  two.trials = 0;
  EXPECT_THROW(two.validate(), Error);
}

TEST(Seeds, TrialSeedMixesIndex) {
  EXPECT_EQ(trial_seed(0, 0), splitmix64(0));
  EXPECT_EQ(trial_seed(5, 3), 5 ^ splitmix64(3));
  // Reference SplitMix64 output for state 0 after one increment.
  EXPECT_EQ(splitmix64(0), 0xE220A8397B1DCDAFULL);
}

TEST(Trials, K2AlwaysGivesOne) {
  ExperimentConfig cfg;
  cfg.graph = "complete:2";
  cfg.trials = 20;
  const auto rep = run_lift_trials(cfg);
  EXPECT_EQ(rep.failed, 0U);
  for (const auto& r : rep.records) EXPECT_NEAR(r.lambda_new, 1.0, 1e-12);
}

TEST(Trials, SplitAgreesWithDirectComputation) {
  ExperimentConfig cfg;
  cfg.graph = "random:40,4,3";
  cfg.trials = 12;
  cfg.base_seed = 99;
  const auto rep = run_lift_trials(cfg);
  const auto base = make_graph(cfg.graph);
  ASSERT_EQ(rep.failed, 0U);
  for (const auto& r : rep.records) {
    EXPECT_EQ(r.seed, trial_seed(99, r.index));
    ASSERT_TRUE(r.cross_check.has_value());
    EXPECT_NEAR(r.lambda_new, spectral_radius(signed_adjacency(base, random_signing(base, r.seed))), 1e-6);
  }

  cfg.mode = LiftMode::shift_lift;
  cfg.k = 5;
  const auto shift = run_lift_trials(cfg);
  ASSERT_EQ(shift.failed, 0U);
  for (const auto& r : shift.records) {
    ASSERT_EQ(r.root_radii.size(), 4U);
    EXPECT_NEAR(r.lambda_new, *std::max_element(r.root_radii.begin(), r.root_radii.end()), 1e-6);
    // ω^j and ω^{k-j} are conjugate, so their spectra coincide.
    EXPECT_NEAR(r.root_radii[0], r.root_radii[3], 1e-9);
    EXPECT_NEAR(r.root_radii[1], r.root_radii[2], 1e-9);
  }
}

TEST(Trials, FractionsAreMonotoneAndInRange) {
  ExperimentConfig cfg;
  cfg.graph = "random:30,3,1";
  cfg.trials = 30;
  cfg.constants = {0.25, 0.5, 1.0, 2.0};
  const auto rep = run_lift_trials(cfg);
  for (std::size_t i = 0; i < rep.fractions.size(); ++i) {
    EXPECT_GE(rep.fractions[i].additive, 0.0);
    EXPECT_LE(rep.fractions[i].additive, 1.0);
    if (i > 0) {
      EXPECT_GE(rep.fractions[i].additive, rep.fractions[i - 1].additive);
      EXPECT_GE(rep.fractions[i].multiplicative, rep.fractions[i - 1].multiplicative);
    }
  }
  EXPECT_LE(rep.min, rep.median);
  EXPECT_LE(rep.median, rep.max);
  EXPECT_DOUBLE_EQ(rep.quantiles[2].second, rep.median);
}

TEST(Trials, IdenticalAcrossThreadCounts) {
  ExperimentConfig cfg;
  cfg.graph = "random:60,4,2";
  cfg.trials = 16;
  cfg.base_seed = 7;
  const auto a = run_lift_trials(cfg, 1);
  const auto b = run_lift_trials(cfg, 4);
  ASSERT_EQ(a.records.size(), b.records.size());
  for (std::size_t i = 0; i < a.records.size(); ++i) {
    EXPECT_EQ(a.records[i].seed, b.records[i].seed);
    EXPECT_EQ(a.records[i].lambda_new, b.records[i].lambda_new);
  }
  std::stringstream ca;
  std::stringstream cb;
  write_trials_csv(ca, a);
  write_trials_csv(cb, b);
  EXPECT_EQ(ca.str(), cb.str());
}

TEST(Quantile, TypeSeven) {
  EXPECT_DOUBLE_EQ(quantile({1, 2, 3, 4}, 0.5), 2.5);
  EXPECT_DOUBLE_EQ(quantile({4, 1, 3, 2}, 0.25), 1.75);
  EXPECT_DOUBLE_EQ(quantile({5}, 0.9), 5.0);
}

TEST(Tightness, K4SigningCensus) {
  // Enumerating the 64 signings of K_4: 8 are switching-trivial and exactly
  // those have a new eigenvalue +3; 8 more are their negations, with -3. So
  // |λ_new| = 3 happens for 16 of 64.
  const auto g = complete_graph(4);
  int balanced = 0;
  int plus_three = 0;
  int radius_three = 0;
  for (std::uint64_t mask = 0; mask < 64; ++mask) {
    const auto s = Signing::from_mask(6, mask);
    const auto spec = eig_symmetric(signed_adjacency(g, s));
    const bool is_balanced = oracle::balanced(g, s);
    balanced += is_balanced;
    plus_three += spec.largest() >= 3.0 - 1e-9;
    radius_three += spectral_radius(spec) >= 3.0 - 1e-9;
    EXPECT_EQ(is_balanced, spec.largest() >= 3.0 - 1e-9);
    EXPECT_EQ(is_balanced, component_count(build_lift(g, s).graph) == 2);
  }
  EXPECT_EQ(balanced, 8);
  EXPECT_EQ(plus_three, 8);
  EXPECT_EQ(radius_three, 16);
}

TEST(Tightness, TopNewEigenvalueIsTheSignedMaximum) {
  ExperimentConfig cfg;
  cfg.graph = "complete:4x3";
  cfg.trials = 40;
  const auto rep = run_lift_trials(cfg);
  const auto base = make_graph(cfg.graph);
  for (const auto& r : rep.records)
    EXPECT_NEAR(r.top_new, eig_symmetric(signed_adjacency(base, random_signing(base, r.seed))).largest(), 1e-9);
}

TEST(Lemmas, PreconditionShapes) {
  const std::size_t n = 400;
  const std::size_t d = 4;
  const double lambda = 3.4;
  for (auto [su, sv] : lemma3_shapes(n, d, lambda)) {
    EXPECT_LE(su, sv);
    EXPECT_LE(sv, d * su);
    EXPECT_GT(static_cast<double>(sv), static_cast<double>(n) / (d * d));
    EXPECT_LT((d / lambda) * std::sqrt(static_cast<double>(su * sv)), static_cast<double>(n));
  }
  Rng rng(1);
  const auto sizes = lemma4_shapes(n, d, lambda);
  ASSERT_FALSE(sizes.empty());
  for (int i = 0; i < 200; ++i) {
    const auto vec = draw_lemma4_vectors(n, d, lambda, sizes, rng);
    // u = Σ 2^i u_i with disjoint supports and |S(v)| >= 4^i |S(u_i)|
    std::vector<std::size_t> per_level(vec.levels.size(), 0);
    for (double x : vec.u) {
      if (x == 0.0) continue;
      const int level = std::ilogb(std::abs(x));
      ASSERT_LT(static_cast<std::size_t>(level), per_level.size());
      ++per_level[static_cast<std::size_t>(level)];
    }
    EXPECT_EQ(per_level, vec.levels);
    for (std::size_t l = 0; l < vec.levels.size(); ++l) {
      EXPECT_GE(vec.support_v, (std::size_t{1} << (2 * l)) * vec.levels[l]);
      EXPECT_GE((d / lambda) * std::sqrt(static_cast<double>(vec.levels[l] * vec.support_v)), static_cast<double>(n));
    }
    EXPECT_EQ(support(vec.v).size(), vec.support_v);
  }
}

TEST(Lemmas, BoundsMatchFormulas) {
  // 8 sqrt(λ sqrt(su sv) sv log2(2 d su / sv))
  EXPECT_NEAR(lemma3_bound(100, 4, 2.0, 4, 16), 8.0 * std::sqrt(2.0 * 8.0 * 16.0 * 1.0), 1e-12);
  // 8 sqrt(d sv² (Σ su_i 4^i) log2(2n/sv) / n)
  EXPECT_NEAR(lemma4_bound(64, 4, 32, {2, 1}), 8.0 * std::sqrt(4.0 * 1024.0 * 6.0 * 2.0 / 64.0), 1e-12);
}

TEST(Lemmas, SpotCheckSmallGraph) {
  const auto g = random_regular(100, 4, 3);
  const auto r3 = lemma_inequality_spot_check(g, 500, 1, LemmaKind::lemma3, 2);
  EXPECT_TRUE(r3.applicable);
  EXPECT_EQ(r3.violations, 0U);
  EXPECT_GT(r3.max_ratio, 0.0);
  const auto again = lemma_inequality_spot_check(g, 500, 1, LemmaKind::lemma3, 1);
  EXPECT_EQ(again.max_ratio, r3.max_ratio);

  // K_{3,3} has λ = 0, so no support sizes are admissible.
  const auto none = lemma_inequality_spot_check(complete_bipartite(3), 10, 1, LemmaKind::lemma3);
  EXPECT_FALSE(none.applicable);
  EXPECT_FALSE(none.reason.empty());
}

TEST(Lemmas, SignSumHasMeanZero) {
  const auto g = random_regular(50, 4, 2);
  std::vector<double> u(50, 0.0);
  std::vector<double> v(50, 0.0);
  for (int i = 0; i < 20; ++i) u[i] = (i % 3 == 0) ? -1.0 : 1.0;
  for (int i = 10; i < 50; ++i) v[i] = (i % 2 == 0) ? -1.0 : 1.0;
  const auto m = sign_sum_moments(g, u, v, 20000, 4);
  EXPECT_TRUE(m.mean_within(3.0)) << m.mean << " vs se " << m.standard_error;
  // The variance of a sum of independent ±c_e is Σ c_e².
  EXPECT_NEAR(m.stddev * m.stddev, m.exact_variance, 0.05 * m.exact_variance);
}

TEST(SigningSearch, SmallCases) {
  const auto k2 = exhaustive_signing_search(complete_graph(2));
  EXPECT_DOUBLE_EQ(k2.min_radius, 1.0);
  EXPECT_DOUBLE_EQ(k2.ramanujan_bound, 0.0);
  EXPECT_FALSE(k2.within_bound);

  const auto k4 = exhaustive_signing_search(complete_graph(4));
  EXPECT_EQ(k4.signings_evaluated, 64U);
  EXPECT_LE(k4.min_radius, 2.0 * std::sqrt(2.0) + 1e-9);
  EXPECT_NEAR(spectral_radius(signed_adjacency(complete_graph(4), k4.best)), k4.min_radius, 1e-12);
  // Brute-force oracle over the 64 masks with an independent solver.
  double best = 1e9;
  for (std::uint64_t mask = 0; mask < 64; ++mask) {
    const auto ev = oracle::jacobi_eigenvalues(signed_adjacency(complete_graph(4), Signing::from_mask(6, mask)));
    best = std::min(best, std::max(ev.front(), -ev.back()));
  }
  EXPECT_NEAR(k4.min_radius, best, 1e-9);

  const auto c4 = exhaustive_signing_search(cycle_graph(4));
  EXPECT_EQ(c4.signings_evaluated, 16U);
  // A cycle with an odd number of negative edges has spectrum 2cos((2j+1)π/4).
  EXPECT_NEAR(c4.min_radius, std::sqrt(2.0), 1e-12);
  EXPECT_THROW(exhaustive_signing_search(random_regular(10, 5, 0)), Error);
}

TEST(Growth, LevelZeroAndExhaustiveFirstLevel) {
  const auto g = complete_graph(4);
  const auto none = greedy_lift_growth(g, 0, 10, 2, 1);
  EXPECT_EQ(none.steps.size(), 1U);
  EXPECT_EQ(none.final_graph, g);

  const auto full = greedy_lift_growth(g, 1, 64, 2, 1);
  ASSERT_EQ(full.steps.size(), 2U);
  EXPECT_TRUE(full.steps[1].exhaustive);
  EXPECT_NEAR(full.steps[1].lambda_new, exhaustive_signing_search(g).min_radius, 1e-12);
}

TEST(Growth, K4FiveLevelsStaysNearRamanujan) {
  const auto t = greedy_lift_growth(complete_graph(4), 5, 50, 2, 2024);
  ASSERT_FALSE(t.truncated);
  ASSERT_EQ(t.steps.size(), 6U);
  EXPECT_EQ(t.final_graph.n(), 128U);
  for (std::size_t i = 1; i < t.steps.size(); ++i) {
    EXPECT_EQ(t.steps[i].n, 4U << i);
    EXPECT_GE(t.steps[i].lambda, t.steps[i - 1].lambda);
  }
  // The recorded λ is the true nontrivial λ of the final graph.
  const auto final_spec = adjacency_spectrum(t.final_graph);
  EXPECT_NEAR(t.steps.back().lambda, lambda_nontrivial(final_spec, 3, is_bipartite(t.final_graph)), 1e-9);
  EXPECT_LE(t.steps.back().lambda, 2.0 * std::sqrt(2.0) + 0.2);
}

TEST(Growth, BudgetTruncates) {
  const auto t = greedy_lift_growth(complete_graph(4), 5, 4, 2, 1, 20);
  EXPECT_TRUE(t.truncated);
  EXPECT_EQ(t.final_graph.n(), 16U);
  EXPECT_FALSE(t.truncation_reason.empty());
}

TEST(Growth, HigherDegreeLifts) {
  const auto t = greedy_lift_growth(complete_graph(5), 2, 5, 3, 8);
  ASSERT_EQ(t.steps.size(), 3U);
  EXPECT_EQ(t.final_graph.n(), 45U);
}

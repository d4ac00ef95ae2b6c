#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <limits>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "liftlab/graph.hpp"
#include "liftlab/lift.hpp"
#include "liftlab/parallel.hpp"
#include "liftlab/random.hpp"
#include "liftlab/shift_character.hpp"
#include "liftlab/spectral.hpp"

namespace liftlab {

// ---------------------------------------------------------------------------
// Base-graph specs
//
//   complete:M | bipartite:M | cycle:N | random:N,D,SEED | file:PATH
//
// with an optional "xC" suffix (not for file:) meaning C disjoint copies,
// e.g. "complete:4x25".

namespace detail {

inline std::vector<std::uint64_t> parse_unsigned_list(const std::string& text, const std::string& context) {
  std::vector<std::uint64_t> values;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty() || item.find_first_not_of("0123456789") != std::string::npos)
      throw Error(ErrorCode::parse_error, context + ": expected unsigned integers, got \"" + text + "\"");
    values.push_back(std::stoull(item));
  }
  return values;
}

}  // namespace detail

inline RegularGraph make_graph(const std::string& spec) {
  const auto colon = spec.find(':');
  if (colon == std::string::npos) throw Error(ErrorCode::parse_error, "graph spec \"" + spec + "\" lacks ':'");
  const std::string family = spec.substr(0, colon);
  std::string params = spec.substr(colon + 1);
  if (family == "file") return read_graph_file(params);

  std::size_t copies = 1;
  if (const auto x = params.find('x'); x != std::string::npos) {
    const auto c = detail::parse_unsigned_list(params.substr(x + 1), "graph spec copies");
    if (c.size() != 1 || c[0] < 1) throw Error(ErrorCode::parse_error, "graph spec copy count must be >= 1");
    copies = c[0];
    params = params.substr(0, x);
  }
  const auto p = detail::parse_unsigned_list(params, "graph spec \"" + spec + "\"");
  auto expect = [&](std::size_t count) {
    if (p.size() != count)
      throw Error(ErrorCode::parse_error, "graph family " + family + " takes " + std::to_string(count) + " parameter(s)");
  };
  std::optional<RegularGraph> g;
  if (family == "complete") {
    expect(1);
    g = complete_graph(p[0]);
  } else if (family == "bipartite") {
    expect(1);
    g = complete_bipartite(p[0]);
  } else if (family == "cycle") {
    expect(1);
    g = cycle_graph(p[0]);
  } else if (family == "random") {
    expect(3);
    g = random_regular(p[0], p[1], p[2]);
  } else {
    throw Error(ErrorCode::parse_error, "unknown graph family \"" + family + "\"");
  }
  return copies == 1 ? std::move(*g) : disjoint_copies(*g, copies);
}

// ---------------------------------------------------------------------------
// Lift trials

enum class LiftMode { two_lift, shift_lift };

inline std::string to_string(LiftMode mode) { return mode == LiftMode::two_lift ? "two_lift" : "shift_lift"; }

inline LiftMode parse_lift_mode(const std::string& text) {
  if (text == "two_lift") return LiftMode::two_lift;
  if (text == "shift_lift") return LiftMode::shift_lift;
  throw Error(ErrorCode::parse_error, "unknown mode \"" + text + "\" (expected two_lift or shift_lift)");
}

struct ExperimentConfig {
  std::string graph = "complete:4";
  std::size_t k = 2;
  std::size_t trials = 1;
  std::uint64_t base_seed = 0;
  std::vector<double> constants = {1.0, 2.0, 3.0};
  LiftMode mode = LiftMode::two_lift;

  void validate() const {
    detail::require(trials >= 1, ErrorCode::invalid_parameter, "trials must be >= 1");
    detail::check_lift_degree(k);
    detail::require(mode == LiftMode::shift_lift || k == 2, ErrorCode::invalid_parameter, "two_lift mode needs k = 2");
    detail::require(!constants.empty(), ErrorCode::invalid_parameter, "at least one bound constant is required");
  }
};

// Flat key=value text; '#' starts a comment. Keys: graph, k, trials, seed,
// constants (comma separated), mode.
inline ExperimentConfig parse_config(std::istream& in) {
  ExperimentConfig cfg;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw Error(ErrorCode::parse_error, detail::at_line(line_no) + "expected key=value");
    auto trim = [](std::string s) {
      const auto b = s.find_first_not_of(" \t\r");
      const auto e = s.find_last_not_of(" \t\r");
      return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    const std::string where = detail::at_line(line_no) + key;
    auto one_unsigned = [&] {
      const auto v = detail::parse_unsigned_list(value, where);
      if (v.size() != 1) throw Error(ErrorCode::parse_error, where + ": expected one integer");
      return v[0];
    };
    if (key == "graph") {
      cfg.graph = value;
    } else if (key == "k") {
      cfg.k = one_unsigned();
    } else if (key == "trials") {
      cfg.trials = one_unsigned();
    } else if (key == "seed") {
      cfg.base_seed = one_unsigned();
    } else if (key == "mode") {
      cfg.mode = parse_lift_mode(value);
    } else if (key == "constants") {
      cfg.constants.clear();
      std::stringstream ss(value);
      std::string item;
      while (std::getline(ss, item, ',')) {
        std::size_t used = 0;
        double c = 0.0;
        try {
          c = std::stod(item, &used);
        } catch (const std::exception&) {
          used = 0;
        }
        if (used == 0 || trim(item.substr(used)).size() != 0 || !std::isfinite(c))
          throw Error(ErrorCode::parse_error, where + ": bad constant \"" + item + "\"");
        cfg.constants.push_back(c);
      }
    } else {
      throw Error(ErrorCode::parse_error, detail::at_line(line_no) + "unknown key \"" + key + "\"");
    }
  }
  return cfg;
}

inline ExperimentConfig read_config_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::io_error, "cannot open " + path);
  return parse_config(in);
}

struct TrialRecord {
  std::size_t index = 0;
  std::uint64_t seed = 0;
  double lambda = 0.0;      // base nontrivial λ
  double lambda_new = 0.0;  // from the old/new split of the lift spectrum
  double top_new = 0.0;     // largest new eigenvalue, signed
  std::vector<double> root_radii;  // shift mode: ‖A_s(ω^j)‖, j = 1..k-1
  std::optional<double> cross_check;  // independent λ_new (signed or root matrices)
  double wall_seconds = 0.0;  // not serialized; reports stay byte-identical
  bool failed = false;
  std::string failure;
};

struct BoundFraction {
  double c = 0.0;
  double additive = 0.0;        // fraction with λ_new <= λ + c√d
  double multiplicative = 0.0;  // fraction with λ_new <= c λ
};

struct ExperimentReport {
  ExperimentConfig config;
  std::size_t n = 0;
  std::size_t d = 0;
  double lambda = 0.0;
  bool bipartite = false;
  bool moderately_expanding = false;  // λ <= d / log2 d
  std::vector<TrialRecord> records;
  std::size_t failed = 0;
  std::vector<BoundFraction> fractions;
  double fraction_at_degree = 0.0;      // λ_new >= d - 1e-9
  double fraction_top_new_at_d = 0.0;   // some new eigenvalue >= d - 1e-9
  std::vector<std::pair<double, double>> quantiles;  // (p, value)
  double min = 0.0;
  double median = 0.0;
  double max = 0.0;
};

inline constexpr std::size_t kCrossCheckLimit = 200;

// Linear interpolation between order statistics (type 7).
inline double quantile(std::vector<double> sorted, double p) {
  if (sorted.empty()) return std::numeric_limits<double>::quiet_NaN();
  std::sort(sorted.begin(), sorted.end());
  const double h = p * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(h));
  const auto hi = std::min(lo + 1, sorted.size() - 1);
  return sorted[lo] + (h - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

namespace detail {

inline TrialRecord run_one_trial(const RegularGraph& base, const Spectrum& base_spectrum, double lambda,
                                 const ExperimentConfig& cfg, std::size_t index) {
  const auto start = std::chrono::steady_clock::now();
  TrialRecord rec;
  rec.index = index;
  rec.seed = trial_seed(cfg.base_seed, index);
  rec.lambda = lambda;
  try {
    if (cfg.mode == LiftMode::two_lift) {
      const Signing s = random_signing(base, rec.seed);
      const auto lifted = build_lift(base, s);
      const auto split = split_old_new(base_spectrum, eig_symmetric(adjacency_matrix(lifted.graph)), 2);
      rec.lambda_new = split.lambda_new;
      rec.top_new = split.new_values.front();
      if (base.n() <= kCrossCheckLimit) rec.cross_check = spectral_radius(signed_adjacency(base, s));
    } else {
      const ShiftAssignment sa = random_shift_lift(base, cfg.k, rec.seed);
      const auto lifted = build_lift(base, sa);
      const auto split = split_old_new(base_spectrum, eig_symmetric(adjacency_matrix(lifted.graph)), cfg.k);
      rec.lambda_new = split.lambda_new;
      rec.top_new = split.new_values.front();
      double from_roots = 0.0;
      for (std::size_t j = 1; j < cfg.k; ++j) {
        rec.root_radii.push_back(spectral_radius(shift_matrix(base, sa, RootOfUnity(cfg.k, j))));
        from_roots = std::max(from_roots, rec.root_radii.back());
      }
      rec.cross_check = from_roots;
    }
    if (rec.cross_check && std::abs(*rec.cross_check - rec.lambda_new) > kMatchWindow) {
      rec.failed = true;
      rec.failure = "cross-check mismatch: split gives " + std::to_string(rec.lambda_new) + ", direct gives " +
                    std::to_string(*rec.cross_check);
    }
  } catch (const Error& e) {
    rec.failed = true;
    rec.failure = e.what();
  }
  rec.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return rec;
}

}  // namespace detail

inline ExperimentReport summarize(const ExperimentConfig& cfg, const RegularGraph& base, double lambda, bool bipartite,
                                  std::vector<TrialRecord> records) {
  ExperimentReport report;
  report.config = cfg;
  report.n = base.n();
  report.d = base.d();
  report.lambda = lambda;
  report.bipartite = bipartite;
  const auto d = static_cast<double>(base.d());
  report.moderately_expanding = base.d() >= 2 && lambda <= d / std::log2(d);
  report.records = std::move(records);

  std::vector<double> values;
  for (const auto& r : report.records) {
    if (r.failed)
      ++report.failed;
    else
      values.push_back(r.lambda_new);
  }
  const auto ok = static_cast<double>(values.size());
  auto fraction = [&](auto predicate) {
    if (values.empty()) return 0.0;
    return static_cast<double>(std::count_if(values.begin(), values.end(), predicate)) / ok;
  };
  for (double c : cfg.constants) {
    report.fractions.push_back({c, fraction([&](double x) { return x <= lambda + c * std::sqrt(d); }),
                                fraction([&](double x) { return x <= c * lambda; })});
  }
  report.fraction_at_degree = fraction([&](double x) { return x >= d - 1e-9; });
  std::vector<double> tops;
  for (const auto& r : report.records)
    if (!r.failed) tops.push_back(r.top_new);
  if (!tops.empty()) {
    report.fraction_top_new_at_d =
        static_cast<double>(std::count_if(tops.begin(), tops.end(), [&](double x) { return x >= d - 1e-9; })) /
        static_cast<double>(tops.size());
  }
  for (double p : {0.05, 0.25, 0.5, 0.75, 0.95}) report.quantiles.emplace_back(p, quantile(values, p));
  report.min = quantile(values, 0.0);
  report.median = quantile(values, 0.5);
  report.max = quantile(values, 1.0);
  return report;
}

// Samples cfg.trials independent lifts (trial i uses seed
// trial_seed(base_seed, i)) and records λ_new for each. Trials run on up to
// `threads` workers and are merged in index order.
inline ExperimentReport run_lift_trials(const ExperimentConfig& cfg, std::size_t threads = 1) {
  cfg.validate();
  const RegularGraph base = make_graph(cfg.graph);
  const Spectrum base_spectrum = adjacency_spectrum(base);
  const bool bipartite = is_bipartite(base);
  const double lambda = lambda_nontrivial(base_spectrum, base.d(), bipartite);

  std::vector<TrialRecord> records(cfg.trials);
  parallel_for(cfg.trials, threads, [&](std::size_t i) {
    records[i] = detail::run_one_trial(base, base_spectrum, lambda, cfg, i);
  });
  return summarize(cfg, base, lambda, bipartite, std::move(records));
}

inline void write_trials_csv(std::ostream& out, const ExperimentReport& report) {
  char buf[64];
  out << "trial,seed,lambda_new,status\n";
  for (const auto& r : report.records) {
    std::snprintf(buf, sizeof buf, "%.17g", r.lambda_new);
    out << r.index << ',' << r.seed << ',' << (r.failed ? "" : buf) << ',' << (r.failed ? "failed" : "ok") << '\n';
  }
}

// ---------------------------------------------------------------------------
// Lemma spot checks

enum class LemmaKind { lemma3, lemma4 };

inline std::string to_string(LemmaKind which) { return which == LemmaKind::lemma3 ? "lemma3" : "lemma4"; }

// A test pair for the bilinear-form inequalities. For lemma 4, `levels` holds
// the support sizes |S(u_i)| and u = Σ_i 2^i u_i.
struct LemmaVectors {
  std::vector<double> u;
  std::vector<double> v;
  std::vector<std::size_t> levels;
  std::size_t support_u = 0;
  std::size_t support_v = 0;
};

struct LemmaCheckReport {
  LemmaKind which = LemmaKind::lemma3;
  std::size_t n = 0;
  std::size_t d = 0;
  double lambda = 0.0;
  std::uint64_t seed = 0;
  std::size_t trials = 0;
  bool applicable = true;
  std::string reason;
  std::size_t admissible_shapes = 0;
  std::size_t violations = 0;
  double max_ratio = 0.0;  // max |bilinear| / bound
};

namespace detail {

inline std::vector<Vertex> random_subset_of_size(std::size_t n, std::size_t size, Rng& rng) {
  std::vector<Vertex> all(n);
  std::iota(all.begin(), all.end(), 0U);
  for (std::size_t i = 0; i < size; ++i) std::swap(all[i], all[i + rng.below(n - i)]);
  all.resize(size);
  return all;
}

inline double sign_of(Rng& rng) { return rng.coin() ? -1.0 : 1.0; }

}  // namespace detail

// |u^T A_s v| with the signing applied edge by edge.
inline double signed_bilinear(const RegularGraph& g, const Signing& s, const std::vector<double>& u,
                              const std::vector<double>& v) {
  double sum = 0.0;
  for (std::size_t e = 0; e < g.edge_count(); ++e) {
    const auto [a, b] = g.edges()[e];
    sum += s.sign(e) * (u[a] * v[b] + u[b] * v[a]);
  }
  return sum;
}

// Admissible support sizes (|S(u)|, |S(v)|) for the first inequality:
// |S(u)| <= |S(v)| <= d|S(u)|, |S(v)| > n/d², (d/λ) sqrt(|S(u)||S(v)|) < n.
inline std::vector<std::pair<std::size_t, std::size_t>> lemma3_shapes(std::size_t n, std::size_t d, double lambda) {
  std::vector<std::pair<std::size_t, std::size_t>> shapes;
  const auto nn = static_cast<double>(n);
  const auto dd = static_cast<double>(d);
  for (std::size_t su = 1; su <= n; ++su) {
    for (std::size_t sv = su; sv <= std::min(n, d * su); ++sv) {
      if (static_cast<double>(sv) <= nn / (dd * dd)) continue;
      if (!((dd / lambda) * std::sqrt(static_cast<double>(su) * static_cast<double>(sv)) < nn)) continue;
      shapes.emplace_back(su, sv);
    }
  }
  return shapes;
}

inline double lemma3_bound(std::size_t n, std::size_t d, double lambda, std::size_t su, std::size_t sv) {
  (void)n;
  const double a = static_cast<double>(su);
  const double b = static_cast<double>(sv);
  return 8.0 * std::sqrt(lambda * std::sqrt(a * b) * b * std::log2(2.0 * static_cast<double>(d) * a / b));
}

// Smallest |S(u_i)| meeting (d/λ) sqrt(|S(u_i)||S(v)|) >= n, or 0 if none <= n.
inline std::size_t lemma4_min_level_size(std::size_t n, std::size_t d, double lambda, std::size_t sv) {
  const auto nn = static_cast<double>(n);
  for (std::size_t su = 1; su <= n; ++su) {
    if ((static_cast<double>(d) / lambda) * std::sqrt(static_cast<double>(su) * static_cast<double>(sv)) >= nn)
      return su;
  }
  return 0;
}

inline double lemma4_bound(std::size_t n, std::size_t d, std::size_t sv, const std::vector<std::size_t>& levels) {
  double weighted = 0.0;
  for (std::size_t i = 0; i < levels.size(); ++i) weighted += static_cast<double>(levels[i]) * std::ldexp(1.0, 2 * static_cast<int>(i));
  const auto nn = static_cast<double>(n);
  const auto b = static_cast<double>(sv);
  return 8.0 * std::sqrt((1.0 / nn) * static_cast<double>(d) * b * b * weighted * std::log2(2.0 * nn / b));
}

inline LemmaVectors draw_lemma3_vectors(std::size_t n, const std::vector<std::pair<std::size_t, std::size_t>>& shapes,
                                        Rng& rng) {
  const auto [su, sv] = shapes[rng.below(shapes.size())];
  LemmaVectors out;
  out.u.assign(n, 0.0);
  out.v.assign(n, 0.0);
  for (Vertex x : detail::random_subset_of_size(n, su, rng)) out.u[x] = detail::sign_of(rng);
  for (Vertex x : detail::random_subset_of_size(n, sv, rng)) out.v[x] = detail::sign_of(rng);
  out.support_u = su;
  out.support_v = sv;
  return out;
}

// Admissible |S(v)| values for the second inequality.
inline std::vector<std::size_t> lemma4_shapes(std::size_t n, std::size_t d, double lambda) {
  std::vector<std::size_t> sizes;
  for (std::size_t sv = 1; sv <= n; ++sv) {
    const std::size_t lo = lemma4_min_level_size(n, d, lambda, sv);
    if (lo != 0 && lo <= sv) sizes.push_back(sv);
  }
  return sizes;
}

// Draws |S(v)| uniformly from the admissible sizes, then a level count L
// uniformly among the feasible ones, then each |S(u_i)| uniformly within
// [lo, |S(v)|/4^i] leaving room for the remaining levels. Supports of the
// u_i are disjoint.
inline LemmaVectors draw_lemma4_vectors(std::size_t n, std::size_t d, double lambda,
                                        const std::vector<std::size_t>& sizes, Rng& rng) {
  const std::size_t sv = sizes[rng.below(sizes.size())];
  const std::size_t lo = lemma4_min_level_size(n, d, lambda, sv);
  std::size_t max_levels = 0;
  while (max_levels < 30 && (sv >> (2 * max_levels)) >= lo && (max_levels + 1) * lo <= n) ++max_levels;
  const std::size_t levels = 1 + rng.below(max_levels);

  LemmaVectors out;
  out.u.assign(n, 0.0);
  out.v.assign(n, 0.0);
  out.support_v = sv;
  for (Vertex x : detail::random_subset_of_size(n, sv, rng)) out.v[x] = detail::sign_of(rng);

  std::vector<Vertex> order = detail::random_subset_of_size(n, n, rng);
  std::size_t used = 0;
  for (std::size_t i = 0; i < levels; ++i) {
    const std::size_t cap = std::min(sv >> (2 * i), n - used - lo * (levels - 1 - i));
    const std::size_t size = lo + rng.below(cap - lo + 1);
    const double weight = std::ldexp(1.0, static_cast<int>(i));
    for (std::size_t j = 0; j < size; ++j) out.u[order[used + j]] = weight * detail::sign_of(rng);
    used += size;
    out.levels.push_back(size);
  }
  out.support_u = used;
  return out;
}

// Each trial draws a fresh uniform signing and one admissible vector pair and
// evaluates the inequality. Trial i uses trial_seed(seed, i) for the signing
// and splitmix64 of that for the vectors.
inline LemmaCheckReport lemma_inequality_spot_check(const RegularGraph& g, std::size_t trials, std::uint64_t seed,
                                                    LemmaKind which, std::size_t threads = 1) {
  LemmaCheckReport report;
  report.which = which;
  report.n = g.n();
  report.d = g.d();
  report.seed = seed;
  report.trials = trials;
  report.lambda = lambda_nontrivial(adjacency_spectrum(g), g.d(), is_bipartite(g));

  std::vector<std::pair<std::size_t, std::size_t>> shapes3;
  std::vector<std::size_t> shapes4;
  if (which == LemmaKind::lemma3) {
    shapes3 = lemma3_shapes(g.n(), g.d(), report.lambda);
    report.admissible_shapes = shapes3.size();
  } else {
    shapes4 = lemma4_shapes(g.n(), g.d(), report.lambda);
    report.admissible_shapes = shapes4.size();
  }
  if (report.admissible_shapes == 0) {
    report.applicable = false;
    report.reason = "no support sizes satisfy the preconditions for n = " + std::to_string(g.n()) +
                    ", d = " + std::to_string(g.d());
    return report;
  }

  std::vector<double> ratios(trials, 0.0);
  parallel_for(trials, threads, [&](std::size_t i) {
    const std::uint64_t s = trial_seed(seed, i);
    const Signing signing = random_signing(g, s);
    Rng rng(splitmix64(s));
    if (which == LemmaKind::lemma3) {
      const auto vec = draw_lemma3_vectors(g.n(), shapes3, rng);
      const double lhs = std::abs(signed_bilinear(g, signing, vec.u, vec.v));
      ratios[i] = lhs / lemma3_bound(g.n(), g.d(), report.lambda, vec.support_u, vec.support_v);
    } else {
      const auto vec = draw_lemma4_vectors(g.n(), g.d(), report.lambda, shapes4, rng);
      const double lhs = std::abs(signed_bilinear(g, signing, vec.v, vec.u));
      ratios[i] = lhs / lemma4_bound(g.n(), g.d(), vec.support_v, vec.levels);
    }
  });
  for (double r : ratios) {
    report.max_ratio = std::max(report.max_ratio, r);
    if (r > 1.0) ++report.violations;
  }
  return report;
}

struct SignSumMoments {
  std::size_t samples = 0;
  double mean = 0.0;
  double stddev = 0.0;
  double standard_error = 0.0;
  double exact_variance = 0.0;  // Σ_e (u_a v_b + u_b v_a)²

  bool mean_within(double sigmas) const { return std::abs(mean) <= sigmas * standard_error; }
};

// Empirical distribution of u^T A_s v over independent uniform signings.
inline SignSumMoments sign_sum_moments(const RegularGraph& g, const std::vector<double>& u,
                                       const std::vector<double>& v, std::size_t signings, std::uint64_t seed) {
  detail::require(signings >= 2, ErrorCode::invalid_parameter, "need at least two signings");
  SignSumMoments out;
  out.samples = signings;
  for (const auto& [a, b] : g.edges()) out.exact_variance += std::pow(u[a] * v[b] + u[b] * v[a], 2);
  double sum = 0.0;
  double sum_sq = 0.0;
  for (std::size_t i = 0; i < signings; ++i) {
    const double x = signed_bilinear(g, random_signing(g, trial_seed(seed, i)), u, v);
    sum += x;
    sum_sq += x * x;
  }
  const auto m = static_cast<double>(signings);
  out.mean = sum / m;
  out.stddev = std::sqrt(std::max(0.0, (sum_sq - m * out.mean * out.mean) / (m - 1.0)));
  out.standard_error = out.stddev / std::sqrt(m);
  return out;
}

// ---------------------------------------------------------------------------
// Exhaustive signing search

inline constexpr std::size_t kExhaustiveSigningEdges = 24;

struct SigningSearchResult {
  Signing best;
  double min_radius = 0.0;
  double ramanujan_bound = 0.0;  // 2 sqrt(d-1)
  bool within_bound = false;
  std::uint64_t signings_evaluated = 0;
};

inline SigningSearchResult exhaustive_signing_search(const RegularGraph& g) {
  const std::size_t m = g.edge_count();
  detail::require(m <= kExhaustiveSigningEdges, ErrorCode::size_limit,
                  "exhaustive signing search supports |E| <= 24, got " + std::to_string(m));
  const std::uint64_t total = std::uint64_t{1} << m;
  std::uint64_t best_mask = 0;
  double best = std::numeric_limits<double>::infinity();
  for (std::uint64_t mask = 0; mask < total; ++mask) {
    const double radius = spectral_radius(signed_adjacency(g, Signing::from_mask(m, mask)));
    if (radius < best) {
      best = radius;
      best_mask = mask;
    }
  }
  const double bound = 2.0 * std::sqrt(static_cast<double>(g.d()) - 1.0);
  return {Signing::from_mask(m, best_mask), best, bound, best <= bound + 1e-9, total};
}

// ---------------------------------------------------------------------------
// Greedy iterated lifts

struct GrowthStep {
  std::size_t level = 0;
  std::size_t n = 0;
  double lambda = 0.0;      // nontrivial λ of the graph after this level
  double lambda_new = 0.0;  // λ_new of the chosen lift (0 at level 0)
  std::uint64_t samples = 0;
  bool exhaustive = false;
};

struct GrowthTrajectory {
  std::vector<GrowthStep> steps;
  bool truncated = false;
  std::string truncation_reason;
  RegularGraph final_graph;
};

inline constexpr std::size_t kGrowthVertexBudget = 4096;

// Each level samples lifts of the current graph and keeps the one with the
// smallest λ_new. For k = 2, a sample budget >= 2^|E| (with |E| <= 24)
// enumerates every signing instead of sampling. λ of the lift is
// max(λ, λ_new) since the old spectrum is inherited.
inline GrowthTrajectory greedy_lift_growth(const RegularGraph& g0, std::size_t levels, std::size_t samples_per_level,
                                           std::size_t k, std::uint64_t seed,
                                           std::size_t vertex_budget = kGrowthVertexBudget) {
  detail::check_lift_degree(k);
  detail::require(samples_per_level >= 1, ErrorCode::invalid_parameter, "samples_per_level must be >= 1");
  const Spectrum s0 = adjacency_spectrum(g0);
  GrowthTrajectory out{{}, false, {}, g0};
  out.steps.push_back({0, g0.n(), lambda_nontrivial(s0, g0.d(), is_bipartite(g0)), 0.0, 0, false});

  for (std::size_t level = 1; level <= levels; ++level) {
    const RegularGraph& current = out.final_graph;
    if (current.n() * k > vertex_budget) {
      out.truncated = true;
      out.truncation_reason = "level " + std::to_string(level) + " would exceed " + std::to_string(vertex_budget) +
                              " vertices";
      break;
    }
    const std::size_t m = current.edge_count();
    const bool enumerate = k == 2 && m <= kExhaustiveSigningEdges && samples_per_level >= (std::uint64_t{1} << m);
    const std::uint64_t count = enumerate ? (std::uint64_t{1} << m) : samples_per_level;
    const Spectrum base_spectrum = k == 2 ? Spectrum{} : adjacency_spectrum(current);

    Rng rng(trial_seed(seed, level));
    double best = std::numeric_limits<double>::infinity();
    std::optional<LiftAssignment> chosen;
    for (std::uint64_t sample = 0; sample < count; ++sample) {
      double lambda_new = 0.0;
      std::optional<LiftAssignment> candidate;
      if (k == 2) {
        const Signing s = enumerate ? Signing::from_mask(m, sample) : random_signing(current, rng());
        lambda_new = spectral_radius(signed_adjacency(current, s));
        if (lambda_new < best) candidate = signing_to_assignment(s);
      } else {
        auto a = random_k_lift(current, k, rng());
        const auto lifted = build_lift(current, a);
        lambda_new = split_old_new(base_spectrum, eig_symmetric(adjacency_matrix(lifted.graph)), k).lambda_new;
        if (lambda_new < best) candidate = std::move(a);
      }
      if (candidate) {
        best = lambda_new;
        chosen = std::move(candidate);
      }
    }
    RegularGraph next = build_lift(current, *chosen).graph;
    const double lambda = std::max(out.steps.back().lambda, best);
    out.steps.push_back({level, next.n(), lambda, best, count, enumerate});
    out.final_graph = std::move(next);
  }
  return out;
}

}  // namespace liftlab

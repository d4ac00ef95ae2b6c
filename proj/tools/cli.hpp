#pragma once

// Command-line front end. dispatch() is the whole program; main() only
// forwards to it so tests can drive commands in-process.
//
// Exit codes: 0 success, 1 check failure, 2 usage/input error, 3 numerical
// failure.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "liftlab/liftlab.hpp"
#include "report_json.hpp"

namespace liftlab::cli {

enum ExitCode : int { kOk = 0, kCheckFailed = 1, kUsage = 2, kNumerical = 3 };

inline int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::characterization_violation:
      return kCheckFailed;
    case ErrorCode::numerical_failure:
    case ErrorCode::matching_failure:
    case ErrorCode::generation_failure:
    case ErrorCode::search_failure:
      return kNumerical;
    default:
      return kUsage;
  }
}

// --graph takes either a path to an edge-list file or a generator spec such
// as "complete:4x25" (see make_graph).
inline RegularGraph load_graph(const std::string& arg) {
  if (std::filesystem::exists(arg)) return read_graph_file(arg);
  if (arg.find(':') != std::string::npos) return make_graph(arg);
  throw Error(ErrorCode::io_error, "no such graph file: " + arg);
}

inline std::vector<std::uint32_t> parse_shift_list(const std::string& text) {
  std::vector<std::uint32_t> out;
  for (auto v : detail::parse_unsigned_list(text, "--shifts")) out.push_back(static_cast<std::uint32_t>(v));
  return out;
}

class Output {
 public:
  Output(std::string path, std::ostream& out, std::ostream& err) : path_(std::move(path)), out_(out), err_(err) {}

  // Writes the artifact to --out, or to stdout when no path was given.
  void artifact(const std::function<void(std::ostream&)>& write) const {
    if (path_.empty()) {
      write(out_);
      return;
    }
    std::ofstream file(path_, std::ios::binary);
    if (!file) throw Error(ErrorCode::io_error, "cannot write " + path_);
    write(file);
    if (!file) throw Error(ErrorCode::io_error, "write to " + path_ + " failed");
  }

  void json(const report::Json& j) const {
    artifact([&](std::ostream& os) { os << j.dump(2) << '\n'; });
  }

  // One-line summary; goes to stderr when stdout carries the artifact.
  void summary(const std::string& line) const { (path_.empty() ? err_ : out_) << line << '\n'; }

 private:
  std::string path_;
  std::ostream& out_;
  std::ostream& err_;
};

inline std::string fmt(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", x);
  return buf;
}

inline int dispatch(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  CLI::App app{"liftlab: lifts of regular graphs, their spectra, and random-lift experiments"};
  app.require_subcommand(1);

  std::string graph_arg;
  std::string out_path;
  std::uint64_t seed = 0;
  std::size_t k = 2;
  std::size_t trials = 0;
  std::string config_path;
  std::string mode;  // mc
  std::string lift_mode;
  std::string eml_mode;
  double tol = 1e-8;

  // gen
  auto* gen = app.add_subcommand("gen", "generate a regular graph");
  std::string family;
  std::size_t m = 0;
  std::size_t n_arg = 0;
  std::size_t d_arg = 0;
  std::size_t copies = 1;
  gen->add_option("--family", family, "complete | bipartite | cycle | random")->required();
  gen->add_option("--m", m, "size parameter for complete (K_m) and bipartite (K_{m,m})");
  gen->add_option("--n", n_arg, "vertex count for cycle and random");
  gen->add_option("--d", d_arg, "degree for random");
  gen->add_option("--seed", seed);
  gen->add_option("--copies", copies, "number of disjoint copies")->check(CLI::PositiveNumber);
  gen->add_option("--out", out_path);

  // lift
  auto* lift = app.add_subcommand("lift", "build a k-lift of a graph");
  std::string assignment_path;
  std::string assignment_out;
  lift->add_option("--graph", graph_arg)->required();
  lift->add_option("--k", k);
  lift->add_option("--seed", seed);
  lift->add_option("--mode", lift_mode, "perm | shift | two_lift (random assignment kind)")->default_val("perm");
  lift->add_option("--assignment", assignment_path, "use this assignment file instead of sampling");
  lift->add_option("--assignment-out", assignment_out, "write the assignment used");
  lift->add_option("--out", out_path);

  // spec
  auto* spec = app.add_subcommand("spec", "adjacency spectrum of a graph or of its lift");
  spec->add_option("--graph", graph_arg)->required();
  spec->add_option("--assignment", assignment_path, "report the lift spectrum and its old/new split");
  spec->add_option("--tol", tol);
  spec->add_option("--out", out_path);

  // verify-shift
  auto* verify = app.add_subcommand("verify-shift", "check the root-of-unity characterization of a shift lift");
  std::string shifts;
  verify->add_option("--graph", graph_arg)->required();
  verify->add_option("--shifts", shifts, "comma-separated shift per edge");
  verify->add_option("--assignment", assignment_path, "shift assignment file");
  verify->add_option("--k", k);
  verify->add_option("--seed", seed, "sample a random shift lift when no shifts are given");
  verify->add_option("--tol", tol, "relative eigenvector residual tolerance");
  verify->add_option("--out", out_path);

  // eml
  auto* eml = app.add_subcommand("eml", "expander mixing lemma check");
  std::size_t eml_samples = 0;
  bool bipartite_aware = false;
  eml->add_option("--graph", graph_arg)->required();
  eml->add_option("--mode", eml_mode, "exhaustive | sampled")->default_val("exhaustive");
  eml->add_option("--samples", eml_samples, "subset pairs in sampled mode")->default_val(10000);
  eml->add_option("--seed", seed);
  eml->add_flag("--bipartite-aware", bipartite_aware, "also exclude -d from lambda for bipartite graphs");
  eml->add_option("--out", out_path);

  // cheeger
  auto* cheeger = app.add_subcommand("cheeger", "exhaustive expansion and Cheeger inequality check");
  cheeger->add_option("--graph", graph_arg)->required();
  cheeger->add_option("--out", out_path);

  // mc
  auto* mc = app.add_subcommand("mc", "Monte-Carlo random-lift experiment");
  std::string csv_path;
  std::string constants;
  mc->add_option("--config", config_path, "key=value config file");
  mc->add_option("--graph", graph_arg, "graph spec or file (overrides config)");
  mc->add_option("--k", k);
  mc->add_option("--trials", trials);
  mc->add_option("--seed", seed);
  mc->add_option("--mode", mode, "two_lift | shift_lift");
  mc->add_option("--constants", constants, "comma-separated bound constants");
  mc->add_option("--csv", csv_path, "per-trial lambda_new CSV");
  mc->add_option("--out", out_path);

  // search-signing
  auto* search = app.add_subcommand("search-signing", "minimum spectral radius over all signings");
  search->add_option("--graph", graph_arg)->required();
  search->add_option("--out", out_path);

  // grow
  auto* grow = app.add_subcommand("grow", "greedy iterated lifts");
  std::size_t levels = 1;
  std::size_t budget = kGrowthVertexBudget;
  grow->add_option("--graph", graph_arg)->required();
  grow->add_option("--levels", levels);
  std::size_t grow_samples = 0;
  grow->add_option("--samples", grow_samples, "lifts sampled per level")->default_val(50);
  grow->add_option("--k", k);
  grow->add_option("--seed", seed);
  grow->add_option("--budget", budget, "maximum lifted vertex count");
  grow->add_option("--out", out_path);

  // lemma-check
  auto* lemma = app.add_subcommand("lemma-check", "spot-check the bilinear-form inequalities on random signings");
  int which = 3;
  std::size_t mean_signings = 0;
  lemma->add_option("--graph", graph_arg)->required();
  std::size_t lemma_trials = 0;
  lemma->add_option("--trials", lemma_trials)->default_val(10000);
  lemma->add_option("--seed", seed);
  lemma->add_option("--lemma", which, "3 or 4")->check(CLI::IsMember({3, 4}));
  lemma->add_option("--mean-signings", mean_signings, "also estimate the mean of u^T A_s v over this many signings");
  lemma->add_option("--out", out_path);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  const Output output(out_path, out, err);
  const std::size_t threads = configured_threads();

  try {
    if (*gen) {
      std::optional<RegularGraph> g;
      if (family == "complete") {
        g = complete_graph(m);
      } else if (family == "bipartite") {
        g = complete_bipartite(m);
      } else if (family == "cycle") {
        g = cycle_graph(n_arg);
      } else if (family == "random") {
        g = random_regular(n_arg, d_arg, seed);
      } else {
        throw Error(ErrorCode::invalid_parameter, "unknown family \"" + family + "\"");
      }
      if (copies > 1) g = disjoint_copies(*g, copies);
      output.artifact([&](std::ostream& os) { write_graph(os, *g); });
      output.summary("gen: n=" + std::to_string(g->n()) + " d=" + std::to_string(g->d()) +
                     " edges=" + std::to_string(g->edge_count()));
      return kOk;
    }

    if (*lift) {
      const RegularGraph g = load_graph(graph_arg);
      AnyAssignment a = LiftAssignment(2, {});
      if (!assignment_path.empty()) {
        a = read_assignment_file(assignment_path);
      } else if (lift_mode == "perm") {
        a = random_k_lift(g, k, seed);
      } else if (lift_mode == "shift") {
        a = random_shift_lift(g, k, seed);
      } else if (lift_mode == "two_lift") {
        a = signing_to_shift(random_signing(g, seed));
      } else {
        throw Error(ErrorCode::invalid_parameter, "unknown lift mode \"" + lift_mode + "\"");
      }
      const LiftedGraph lg = build_lift(g, as_lift_assignment(a));
      if (!assignment_out.empty()) {
        std::ofstream file(assignment_out, std::ios::binary);
        if (!file) throw Error(ErrorCode::io_error, "cannot write " + assignment_out);
        write_assignment(file, a);
      }
      output.artifact([&](std::ostream& os) { write_graph(os, lg.graph); });
      output.summary("lift: k=" + std::to_string(lg.k) + " n=" + std::to_string(lg.graph.n()) +
                     " components=" + std::to_string(component_count(lg.graph)));
      return kOk;
    }

    if (*spec) {
      const RegularGraph g = load_graph(graph_arg);
      const Spectrum base = adjacency_spectrum(g, tol);
      const double lambda = lambda_nontrivial(base, g.d(), is_bipartite(g));
      if (assignment_path.empty()) {
        output.artifact([&](std::ostream& os) { write_spectrum(os, base); });
        output.summary("spec: n=" + std::to_string(g.n()) + " lambda=" + fmt(lambda));
        return kOk;
      }
      const auto a = as_lift_assignment(read_assignment_file(assignment_path));
      const LiftedGraph lg = build_lift(g, a);
      const Spectrum lifted = adjacency_spectrum(lg.graph, tol);
      const OldNewSplit split = split_old_new(base, lifted, a.k());
      output.artifact([&](std::ostream& os) { write_spectrum(os, lifted); });
      output.summary("spec: n=" + std::to_string(lg.graph.n()) + " lambda=" + fmt(lambda) +
                     " lambda_new=" + fmt(split.lambda_new));
      return kOk;
    }

    if (*verify) {
      const RegularGraph g = load_graph(graph_arg);
      std::optional<ShiftAssignment> sa;
      if (!assignment_path.empty()) {
        auto a = read_assignment_file(assignment_path);
        if (!std::holds_alternative<ShiftAssignment>(a))
          throw Error(ErrorCode::invalid_parameter, "assignment file is not a shift assignment");
        sa = std::get<ShiftAssignment>(a);
      } else if (!shifts.empty()) {
        sa = ShiftAssignment(k, parse_shift_list(shifts));
      } else {
        sa = random_shift_lift(g, k, seed);
      }
      const auto rep = characterize_shift_lift(g, *sa, tol);
      output.json(report::to_json(rep));
      output.summary(std::string("verify-shift: ") + (rep.passed() ? "PASS" : "FAIL") +
                     " mismatch=" + fmt(rep.max_multiset_mismatch) + " residual=" + fmt(rep.max_residual) +
                     " inner=" + fmt(rep.max_cross_inner_product));
      return rep.passed() ? kOk : kCheckFailed;
    }

    if (*eml) {
      const RegularGraph g = load_graph(graph_arg);
      SubsetMode subset_mode;
      if (eml_mode == "exhaustive")
        subset_mode = SubsetMode::exhaustive();
      else if (eml_mode == "sampled")
        subset_mode = SubsetMode::sampled(eml_samples, seed);
      else
        throw Error(ErrorCode::invalid_parameter, "unknown eml mode \"" + eml_mode + "\"");
      const double lambda = eml_lambda(g, bipartite_aware);
      const EmlReport rep = eml_check(g, lambda, subset_mode);
      report::Json j = report::to_json(rep);
      if (rep.max_ratio > 0.0) {
        const double alpha_term = rep.max_ratio * (1.0 + std::log2(static_cast<double>(g.d()) / rep.max_ratio));
        j["converse"] = {{"alpha", rep.max_ratio}, {"lambda", lambda}, {"alpha_log_term", alpha_term}};
      }
      output.json(j);
      output.summary(std::string("eml: ") + (rep.passed() ? "PASS" : "FAIL") + " max_ratio=" + fmt(rep.max_ratio) +
                     " lambda=" + fmt(lambda));
      return rep.passed() ? kOk : kCheckFailed;
    }

    if (*cheeger) {
      const RegularGraph g = load_graph(graph_arg);
      const CheegerResult rep = cheeger_check(g);
      output.json(report::to_json(rep));
      output.summary(std::string("cheeger: ") + (rep.passed() ? "PASS" : "FAIL") + " " + fmt(rep.report.cheeger_lower) +
                     " <= h=" + fmt(rep.report.h) + " <= " + fmt(rep.report.cheeger_upper));
      return rep.passed() ? kOk : kCheckFailed;
    }

    if (*mc) {
      ExperimentConfig cfg = config_path.empty() ? ExperimentConfig{} : read_config_file(config_path);
      if (!graph_arg.empty()) cfg.graph = std::filesystem::exists(graph_arg) ? "file:" + graph_arg : graph_arg;
      if (mc->count("--k")) cfg.k = k;
      if (mc->count("--trials")) cfg.trials = trials;
      if (mc->count("--seed")) cfg.base_seed = seed;
      if (!mode.empty()) cfg.mode = parse_lift_mode(mode);
      if (!constants.empty()) {
        std::istringstream ss("constants=" + constants);
        cfg.constants = parse_config(ss).constants;
      }
      const ExperimentReport rep = run_lift_trials(cfg, threads);
      output.json(report::to_json(rep));
      if (!csv_path.empty()) {
        std::ofstream file(csv_path, std::ios::binary);
        if (!file) throw Error(ErrorCode::io_error, "cannot write " + csv_path);
        write_trials_csv(file, rep);
      }
      std::string line = "mc: trials=" + std::to_string(rep.records.size()) + " failed=" + std::to_string(rep.failed) +
                         " lambda=" + fmt(rep.lambda) + " median_lambda_new=" + fmt(rep.median);
      output.summary(line);
      return rep.failed == 0 ? kOk : kNumerical;
    }

    if (*search) {
      const RegularGraph g = load_graph(graph_arg);
      const SigningSearchResult rep = exhaustive_signing_search(g);
      output.json(report::to_json(rep));
      output.summary("search-signing: min_radius=" + fmt(rep.min_radius) + " bound=" + fmt(rep.ramanujan_bound) +
                     (rep.within_bound ? " (within)" : " (above)"));
      return kOk;
    }

    if (*grow) {
      const RegularGraph g = load_graph(graph_arg);
      const GrowthTrajectory t = greedy_lift_growth(g, levels, grow_samples, k, seed, budget);
      output.json(report::to_json(t));
      output.summary("grow: levels=" + std::to_string(t.steps.size() - 1) + " n=" + std::to_string(t.final_graph.n()) +
                     " lambda=" + fmt(t.steps.back().lambda) + (t.truncated ? " (truncated)" : ""));
      return kOk;
    }

    if (*lemma) {
      const RegularGraph g = load_graph(graph_arg);
      const LemmaKind kind = which == 3 ? LemmaKind::lemma3 : LemmaKind::lemma4;
      const LemmaCheckReport rep = lemma_inequality_spot_check(g, lemma_trials, seed, kind, threads);
      report::Json j = report::to_json(rep);
      if (mean_signings >= 2 && rep.applicable) {
        Rng rng(splitmix64(seed ^ 0xA5A5A5A5A5A5A5A5ULL));
        LemmaVectors vec;
        if (kind == LemmaKind::lemma3)
          vec = draw_lemma3_vectors(g.n(), lemma3_shapes(g.n(), g.d(), rep.lambda), rng);
        else
          vec = draw_lemma4_vectors(g.n(), g.d(), rep.lambda, lemma4_shapes(g.n(), g.d(), rep.lambda), rng);
        j["sign_sum"] = report::to_json(sign_sum_moments(g, vec.u, vec.v, mean_signings, seed));
      }
      output.json(j);
      if (!rep.applicable) {
        output.summary("lemma-check: not applicable (" + rep.reason + ")");
        return kOk;
      }
      output.summary("lemma-check: " + to_string(kind) + " violations=" + std::to_string(rep.violations) + "/" +
                     std::to_string(rep.trials) + " max_ratio=" + fmt(rep.max_ratio));
      return rep.violations == 0 ? kOk : kCheckFailed;
    }
  } catch (const Error& e) {
    err << e.what() << '\n';
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}

}  // namespace liftlab::cli

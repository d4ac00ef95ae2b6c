#pragma once

#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "liftlab/lift.hpp"
#include "liftlab/spectral.hpp"

namespace liftlab {

// ω^j for ω = e^{2πi/k}. Powers are reduced mod k before evaluating the
// exponential so that t^s never accumulates rounding from repeated products.
class RootOfUnity {
 public:
  RootOfUnity(std::size_t k, std::size_t j) : k_(k), j_(j % k) {
    detail::require(k >= 1, ErrorCode::invalid_parameter, "root of unity needs k >= 1");
  }

  std::size_t k() const noexcept { return k_; }
  std::size_t j() const noexcept { return j_; }

  Complex value() const { return power(1); }

  Complex power(long long s) const {
    const auto kk = static_cast<long long>(k_);
    const long long e = ((static_cast<long long>(j_) * (s % kk)) % kk + kk) % kk;
    if (e == 0) return {1.0, 0.0};
    const double angle = 2.0 * std::numbers::pi * static_cast<double>(e) / static_cast<double>(k_);
    return std::polar(1.0, angle);
  }

 private:
  std::size_t k_;
  std::size_t j_;
};

// [A_s(t)]_{uv} = t^{Shift(u,v)} on edges, 0 elsewhere.
inline HermitianMatrix shift_matrix(const RegularGraph& g, const ShiftAssignment& sa, const RootOfUnity& t) {
  detail::require(sa.size() == g.edge_count(), ErrorCode::invalid_parameter, "shift assignment does not match edges");
  HermitianMatrix h(g.n());
  for (std::size_t e = 0; e < g.edge_count(); ++e) {
    const auto [u, v] = g.edges()[e];
    h.set(u, v, t.power(sa.shift(e)));
  }
  return h;
}

// v^l = [v, t v, t^2 v, ..., t^{k-1} v] laid out fiber-major: entry (x,i) at
// index x*k + i equals t^i v_x, matching build_lift's vertex numbering.
inline ComplexVector lift_eigenvector(const ComplexVector& v, const RootOfUnity& t, std::size_t k) {
  detail::require(v.size() > 0 && v.squaredNorm() > 0.0, ErrorCode::invalid_parameter,
                  "cannot lift the zero vector");
  detail::require(k >= 1, ErrorCode::invalid_parameter, "k must be positive");
  const auto n = static_cast<std::size_t>(v.size());
  ComplexVector out(static_cast<Eigen::Index>(n * k));
  for (std::size_t i = 0; i < k; ++i) {
    const Complex phase = t.power(static_cast<long long>(i));
    for (std::size_t x = 0; x < n; ++x)
      out(static_cast<Eigen::Index>(x * k + i)) = phase * v(static_cast<Eigen::Index>(x));
  }
  return out;
}

struct CharacterizationReport {
  std::size_t n = 0;
  std::size_t k = 0;
  std::vector<Spectrum> per_root;  // index j: spectrum of A_s(ω^j)
  Spectrum pooled;
  Spectrum lift;
  double max_multiset_mismatch = 0.0;
  // max ‖A_H v^l − α v^l‖ / ‖A_H‖_F over unit-norm v^l
  double max_residual = 0.0;
  // max |<v^l, w^l>| over unit-norm lifted vectors from distinct roots
  double max_cross_inner_product = 0.0;
  std::string worst_residual_at;
  std::string worst_inner_product_at;

  double window = kMatchWindow;
  double residual_tol = 1e-8;
  double orthogonality_tol = 1e-8;

  bool multiset_ok() const { return max_multiset_mismatch <= window; }
  bool residual_ok() const { return max_residual <= residual_tol; }
  bool orthogonality_ok() const { return max_cross_inner_product <= orthogonality_tol; }
  bool passed() const { return multiset_ok() && residual_ok() && orthogonality_ok(); }

  // λ_new read off the roots ω^j, j >= 1.
  double lambda_new_from_roots() const {
    double lambda = 0.0;
    for (std::size_t j = 1; j < per_root.size(); ++j) lambda = std::max(lambda, spectral_radius(per_root[j]));
    return lambda;
  }
};

class CharacterizationViolation : public Error {
 public:
  explicit CharacterizationViolation(CharacterizationReport report)
      : Error(ErrorCode::characterization_violation, describe(report)), report_(std::move(report)) {}

  const CharacterizationReport& report() const noexcept { return report_; }

 private:
  static std::string describe(const CharacterizationReport& r) {
    if (!r.multiset_ok()) return "pooled root spectra differ from lift spectrum by " + std::to_string(r.max_multiset_mismatch);
    if (!r.residual_ok()) return "lifted eigenvector residual " + std::to_string(r.max_residual) + " at " + r.worst_residual_at;
    return "cross-root inner product " + std::to_string(r.max_cross_inner_product) + " at " + r.worst_inner_product_at;
  }

  CharacterizationReport report_;
};

// Computes every check of the shift-lift characterization and returns the
// report without judging it.
inline CharacterizationReport characterize_shift_lift(const RegularGraph& g, const ShiftAssignment& sa,
                                                      double residual_tol = 1e-8, double window = kMatchWindow,
                                                      double orthogonality_tol = 1e-8) {
  const std::size_t k = sa.k();
  const std::size_t n = g.n();
  CharacterizationReport report;
  report.n = n;
  report.k = k;
  report.window = window;
  report.residual_tol = residual_tol;
  report.orthogonality_tol = orthogonality_tol;

  const LiftedGraph lifted = build_lift(g, sa);
  const Matrix a_h = adjacency_matrix(lifted.graph);
  const double a_h_norm = a_h.norm();
  report.lift = eig_symmetric(a_h);

  // Unit-norm lifted eigenvectors for each root, kept to test orthogonality.
  std::vector<ComplexMatrix> lifted_vectors(k);
  for (std::size_t j = 0; j < k; ++j) {
    const RootOfUnity t(k, j);
    const auto dec = eig_hermitian_vectors(shift_matrix(g, sa, t));
    report.per_root.push_back(dec.spectrum);

    ComplexMatrix& lv = lifted_vectors[j];
    lv.resize(static_cast<Eigen::Index>(n * k), static_cast<Eigen::Index>(n));
    for (std::size_t c = 0; c < n; ++c) {
      const ComplexVector v = dec.vectors.col(static_cast<Eigen::Index>(c)).normalized();
      const ComplexVector vl = lift_eigenvector(v, t, k).normalized();
      const double alpha = dec.spectrum.values[c];
      const double residual = (a_h * vl - alpha * vl).norm() / (a_h_norm > 0.0 ? a_h_norm : 1.0);
      if (residual > report.max_residual || report.worst_residual_at.empty()) {
        report.max_residual = std::max(report.max_residual, residual);
        report.worst_residual_at = "root " + std::to_string(j) + ", eigenpair " + std::to_string(c);
      }
      lv.col(static_cast<Eigen::Index>(c)) = vl;
    }
  }

  report.pooled = merge_spectra(report.per_root);
  report.max_multiset_mismatch = multiset_mismatch(report.pooled, report.lift);

  for (std::size_t j1 = 0; j1 < k; ++j1) {
    for (std::size_t j2 = j1 + 1; j2 < k; ++j2) {
      const ComplexMatrix gram = lifted_vectors[j1].adjoint() * lifted_vectors[j2];
      Eigen::Index r = 0;
      Eigen::Index c = 0;
      const double worst = gram.cwiseAbs().maxCoeff(&r, &c);
      if (worst > report.max_cross_inner_product || report.worst_inner_product_at.empty()) {
        report.max_cross_inner_product = std::max(report.max_cross_inner_product, worst);
        report.worst_inner_product_at = "roots (" + std::to_string(j1) + "," + std::to_string(j2) +
                                        "), eigenvectors (" + std::to_string(r) + "," + std::to_string(c) + ")";
      }
    }
  }
  return report;
}

// As characterize_shift_lift, but a failed check raises
// CharacterizationViolation naming the worst offender.
inline CharacterizationReport verify_characterization(const RegularGraph& g, const ShiftAssignment& sa,
                                                      double tol = 1e-8) {
  auto report = characterize_shift_lift(g, sa, tol);
  if (!report.passed()) throw CharacterizationViolation(std::move(report));
  return report;
}

}  // namespace liftlab

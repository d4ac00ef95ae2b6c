#pragma once

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <limits>
#include <string>
#include <vector>

#include "liftlab/error.hpp"
#include "liftlab/graph.hpp"

namespace liftlab {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXd;
using ComplexVector = Eigen::VectorXcd;

// Residual tolerance of the eigensolver, relative to the Frobenius norm.
inline constexpr double kSolverTol = 1e-9;
// Window for pairing eigenvalues of two spectra as multisets.
inline constexpr double kMatchWindow = 1e-6;

// Real eigenvalues sorted in descending order.
struct Spectrum {
  std::vector<double> values;
  double tol = kSolverTol;

  std::size_t size() const noexcept { return values.size(); }
  double largest() const { return values.front(); }
  double smallest() const { return values.back(); }
};

struct OldNewSplit {
  std::vector<double> old_values;
  std::vector<double> new_values;
  double lambda_new = 0.0;
};

// Hermitian matrix whose symmetry holds by construction: writing (i,j) also
// writes conj into (j,i), and the diagonal is real.
class HermitianMatrix {
 public:
  explicit HermitianMatrix(std::size_t n)
      : m_(ComplexMatrix::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n))) {}

  // Adopts a dense matrix after checking it is Hermitian within tol.
  static HermitianMatrix from_dense(const ComplexMatrix& m, double tol = 1e-12) {
    detail::require(m.rows() == m.cols(), ErrorCode::invalid_parameter, "Hermitian matrix must be square");
    detail::require(m.allFinite(), ErrorCode::invalid_parameter, "matrix has non-finite entries");
    detail::require((m - m.adjoint()).cwiseAbs().maxCoeff() <= tol, ErrorCode::invalid_parameter,
                    "matrix is not Hermitian");
    HermitianMatrix h(static_cast<std::size_t>(m.rows()));
    h.m_ = 0.5 * (m + m.adjoint());
    return h;
  }

  std::size_t dimension() const noexcept { return static_cast<std::size_t>(m_.rows()); }

  void set(std::size_t i, std::size_t j, Complex z) {
    if (i == j) {
      set_diagonal(i, z.real());
      return;
    }
    m_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = z;
    m_(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(i)) = std::conj(z);
  }

  void set_diagonal(std::size_t i, double x) {
    m_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) = Complex(x, 0.0);
  }

  Complex operator()(std::size_t i, std::size_t j) const {
    return m_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
  }

  const ComplexMatrix& dense() const noexcept { return m_; }

 private:
  ComplexMatrix m_;
};

template <typename Scalar>
struct EigenDecomposition {
  Spectrum spectrum;
  // Column c is the unit eigenvector for spectrum.values[c].
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> vectors;
};

namespace detail {

inline void check_symmetric(const Matrix& m) {
  require(m.rows() == m.cols(), ErrorCode::invalid_parameter, "matrix must be square");
  require(m.allFinite(), ErrorCode::invalid_parameter, "matrix has non-finite entries");
  if (m.size() > 0) {
    require((m - m.transpose()).cwiseAbs().maxCoeff() <= 1e-12, ErrorCode::invalid_parameter,
            "matrix is not symmetric");
  }
}

// Runs Eigen's self-adjoint solver (Householder tridiagonalization followed by
// implicit symmetric QR) and returns eigenpairs in descending order.
template <typename MatrixType>
auto solve_self_adjoint(const MatrixType& m, double tol, bool want_vectors) {
  using Scalar = typename MatrixType::Scalar;
  EigenDecomposition<Scalar> out;
  out.spectrum.tol = tol;
  const Eigen::Index n = m.rows();
  if (n == 0) return out;

  Eigen::SelfAdjointEigenSolver<MatrixType> solver(m, want_vectors ? Eigen::ComputeEigenvectors
                                                                   : Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorCode::numerical_failure,
                "eigensolver did not converge (dimension " + std::to_string(n) + ", Frobenius norm " +
                    std::to_string(m.norm()) + ")");
  }
  const auto& ascending = solver.eigenvalues();
  out.spectrum.values.resize(static_cast<std::size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i) out.spectrum.values[static_cast<std::size_t>(i)] = ascending(n - 1 - i);

  if (want_vectors) {
    out.vectors = solver.eigenvectors().rowwise().reverse();
    const double bound = tol * m.norm();
    for (Eigen::Index c = 0; c < n; ++c) {
      const double lambda = out.spectrum.values[static_cast<std::size_t>(c)];
      const double residual = (m * out.vectors.col(c) - lambda * out.vectors.col(c)).norm();
      if (residual > bound) {
        throw Error(ErrorCode::numerical_failure, "eigenpair " + std::to_string(c) + " residual " +
                                                      std::to_string(residual) + " exceeds " +
                                                      std::to_string(bound));
      }
    }
  }
  return out;
}

}  // namespace detail

inline Spectrum eig_symmetric(const Matrix& m, double tol = kSolverTol) {
  detail::check_symmetric(m);
  return detail::solve_self_adjoint(m, tol, false).spectrum;
}

inline EigenDecomposition<double> eig_symmetric_vectors(const Matrix& m, double tol = kSolverTol) {
  detail::check_symmetric(m);
  return detail::solve_self_adjoint(m, tol, true);
}

// Native complex solver: the n real eigenvalues come back directly, with no
// doubled real embedding and hence no pairing step.
inline Spectrum eig_hermitian(const HermitianMatrix& h, double tol = kSolverTol) {
  return detail::solve_self_adjoint(h.dense(), tol, false).spectrum;
}

inline EigenDecomposition<Complex> eig_hermitian_vectors(const HermitianMatrix& h, double tol = kSolverTol) {
  return detail::solve_self_adjoint(h.dense(), tol, true);
}

inline double spectral_radius(const Spectrum& s) {
  if (s.values.empty()) return 0.0;
  return std::max(std::abs(s.largest()), std::abs(s.smallest()));
}

inline double spectral_radius(const Matrix& m) { return spectral_radius(eig_symmetric(m)); }

inline double spectral_radius(const HermitianMatrix& h) { return spectral_radius(eig_hermitian(h)); }

inline Spectrum adjacency_spectrum(const RegularGraph& g, double tol = kSolverTol) {
  return eig_symmetric(adjacency_matrix(g), tol);
}

// Greedy pairing of base eigenvalues (descending) with the nearest unused lift
// eigenvalue; equal distances go to the lower lift index. Unpaired lift
// eigenvalues are the new ones.
inline OldNewSplit split_old_new(const Spectrum& base, const Spectrum& lift, std::size_t k,
                                 double window = kMatchWindow) {
  detail::require(lift.size() == k * base.size(), ErrorCode::invalid_parameter,
                  "lift spectrum size " + std::to_string(lift.size()) + " is not k * " +
                      std::to_string(base.size()));
  std::vector<char> used(lift.size(), 0);
  OldNewSplit split;
  split.old_values.reserve(base.size());
  for (std::size_t b = 0; b < base.size(); ++b) {
    const double target = base.values[b];
    std::size_t best = lift.size();
    double best_distance = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < lift.size(); ++i) {
      if (used[i]) continue;
      const double distance = std::abs(lift.values[i] - target);
      if (distance < best_distance) {
        best_distance = distance;
        best = i;
      }
    }
    if (best == lift.size() || best_distance > window) {
      throw Error(ErrorCode::matching_failure, "base eigenvalue " + std::to_string(target) +
                                                   " has no lift eigenvalue within " + std::to_string(window));
    }
    used[best] = 1;
    split.old_values.push_back(lift.values[best]);
  }
  for (std::size_t i = 0; i < lift.size(); ++i) {
    if (used[i]) continue;
    split.new_values.push_back(lift.values[i]);
    split.lambda_new = std::max(split.lambda_new, std::abs(lift.values[i]));
  }
  return split;
}

// Largest |λ_i| after removing one copy of d (and one copy of -d when the
// bipartite flag is set).
inline double lambda_nontrivial(const Spectrum& s, std::size_t d, bool bipartite, double tol = kMatchWindow) {
  const auto degree = static_cast<double>(d);
  detail::require(!s.values.empty(), ErrorCode::invalid_parameter, "empty spectrum");
  detail::require(std::abs(s.largest() - degree) <= tol, ErrorCode::invalid_parameter,
                  "top eigenvalue " + std::to_string(s.largest()) + " differs from d = " + std::to_string(d));
  std::size_t last = s.size();
  if (bipartite) {
    detail::require(s.size() >= 2 && std::abs(s.smallest() + degree) <= tol, ErrorCode::invalid_parameter,
                    "bottom eigenvalue " + std::to_string(s.smallest()) + " differs from -d");
    --last;
  }
  double lambda = 0.0;
  for (std::size_t i = 1; i < last; ++i) lambda = std::max(lambda, std::abs(s.values[i]));
  return lambda;
}

// |x^T M x| / x^T x
inline double rayleigh_quotient(const Matrix& m, const Vector& x) {
  detail::require(x.size() == m.rows(), ErrorCode::invalid_parameter, "vector length does not match matrix");
  const double norm2 = x.squaredNorm();
  detail::require(norm2 > 0.0, ErrorCode::invalid_parameter, "Rayleigh quotient of the zero vector");
  return std::abs(x.dot(m * x)) / norm2;
}

// |x^* H x| / x^* x
inline double rayleigh_quotient(const HermitianMatrix& h, const ComplexVector& x) {
  detail::require(static_cast<std::size_t>(x.size()) == h.dimension(), ErrorCode::invalid_parameter,
                  "vector length does not match matrix");
  const double norm2 = x.squaredNorm();
  detail::require(norm2 > 0.0, ErrorCode::invalid_parameter, "Rayleigh quotient of the zero vector");
  return std::abs(x.dot(h.dense() * x)) / norm2;
}

// Sorted-sequence pairing of two equal-size spectra; returns the largest
// pairwise difference.
inline double multiset_mismatch(const Spectrum& a, const Spectrum& b) {
  detail::require(a.size() == b.size(), ErrorCode::invalid_parameter, "spectra differ in size");
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a.values[i] - b.values[i]));
  return worst;
}

inline Spectrum merge_spectra(const std::vector<Spectrum>& parts) {
  Spectrum out;
  for (const auto& p : parts) {
    out.values.insert(out.values.end(), p.values.begin(), p.values.end());
    out.tol = std::max(out.tol, p.tol);
  }
  std::sort(out.values.begin(), out.values.end(), std::greater<>());
  return out;
}

// One eigenvalue per line, 15 significant digits, descending.
inline void write_spectrum(std::ostream& out, const Spectrum& s) {
  char buf[64];
  for (double v : s.values) {
    if (v == 0.0) v = 0.0;  // no "-0"
    std::snprintf(buf, sizeof buf, "%.15g\n", v);
    out << buf;
  }
}

inline Spectrum read_spectrum(std::istream& in) {
  Spectrum s;
  std::string line;
  std::size_t line_no = 0;
  while (detail::next_content_line(in, line, line_no)) {
    double v = 0.0;
    if (!detail::parse_exact(line, v)) throw Error(ErrorCode::parse_error, detail::at_line(line_no) + "expected a number");
    s.values.push_back(v);
  }
  if (!std::is_sorted(s.values.begin(), s.values.end(), std::greater<>()))
    throw Error(ErrorCode::validation_error, "spectrum is not in descending order");
  return s;
}

}  // namespace liftlab

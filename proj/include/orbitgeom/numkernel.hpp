#pragma once

// Dense complex linear algebra with one tolerance policy shared by every
// other module. All routines are pure functions of their arguments.

#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>

#include "errors.hpp"

namespace orbitgeom {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using Index = Eigen::Index;

/// Tolerance policy.
///
/// Rank decisions use `base_tol * sigma_max * max(rows, cols)`, zero-eigenvalue
/// decisions use `base_tol * max|lambda|`. Both are floored at `base_tol`, so a
/// matrix whose entries are all below `base_tol` is treated as zero.
struct ToleranceConfig {
  double base_tol = 1e-9;

  [[nodiscard]] double rank_threshold(double sigma_max, Index rows, Index cols) const {
    return std::max(base_tol * sigma_max * static_cast<double>(std::max(rows, cols)), base_tol);
  }

  [[nodiscard]] double zero_eig_threshold(double max_abs_eig) const {
    return std::max(base_tol * max_abs_eig, base_tol);
  }

  /// Admissible ||H - H*|| before an "Hermitian" input is rejected.
  [[nodiscard]] double hermitian_defect_bound(double norm) const {
    return 1e3 * base_tol * std::max(1.0, norm);
  }
};

inline void validate(const ToleranceConfig& tol) {
  if (!(tol.base_tol > 0.0) || !std::isfinite(tol.base_tol)) {
    throw InvalidArgument("tolerance must be a positive finite number");
  }
}

[[nodiscard]] inline bool all_finite(const ComplexMatrix& m) {
  for (Index j = 0; j < m.cols(); ++j) {
    for (Index i = 0; i < m.rows(); ++i) {
      if (!std::isfinite(m(i, j).real()) || !std::isfinite(m(i, j).imag())) return false;
    }
  }
  return true;
}

namespace detail {

inline void require_finite(const ComplexMatrix& m, const char* what) {
  if (!all_finite(m)) throw InvalidArgument(std::string(what) + ": matrix has non-finite entries");
}

/// Makes the entry of largest modulus in each column real and positive.
/// Near-ties (within a relative 1e-10) go to the lowest row index so that
/// rounding noise cannot flip the choice.
inline void fix_column_phases(ComplexMatrix& q) {
  for (Index j = 0; j < q.cols(); ++j) {
    double max_abs = 0.0;
    for (Index i = 0; i < q.rows(); ++i) max_abs = std::max(max_abs, std::abs(q(i, j)));
    if (max_abs == 0.0) continue;
    Index pivot = 0;
    for (Index i = 0; i < q.rows(); ++i) {
      if (std::abs(q(i, j)) >= max_abs * (1.0 - 1e-10)) {
        pivot = i;
        break;
      }
    }
    const Complex phase = std::conj(q(pivot, j)) / std::abs(q(pivot, j));
    q.col(j) *= phase;
    q(pivot, j) = Complex(q(pivot, j).real(), 0.0);
  }
}

inline Eigen::VectorXd singular_values(const ComplexMatrix& m) {
  if (m.size() == 0) return Eigen::VectorXd();
  Eigen::JacobiSVD<ComplexMatrix> svd(m);
  return svd.singularValues();
}

inline int rank_from_singular_values(const Eigen::VectorXd& s, Index rows, Index cols,
                                     const ToleranceConfig& tol) {
  if (s.size() == 0) return 0;
  const double thr = tol.rank_threshold(s(0), rows, cols);
  int r = 0;
  for (Index i = 0; i < s.size(); ++i) {
    if (s(i) > thr) ++r;
  }
  return r;
}

}  // namespace detail

/// Number of singular values above the rank threshold. The empty and the zero
/// matrix both have rank 0.
[[nodiscard]] inline int numeric_rank(const ComplexMatrix& m, const ToleranceConfig& tol = {}) {
  detail::require_finite(m, "numeric_rank");
  return detail::rank_from_singular_values(detail::singular_values(m), m.rows(), m.cols(), tol);
}

[[nodiscard]] inline int numeric_rank_real(const RealMatrix& m, const ToleranceConfig& tol = {}) {
  if (m.size() == 0) return 0;
  Eigen::JacobiSVD<RealMatrix> svd(m);
  return detail::rank_from_singular_values(svd.singularValues(), m.rows(), m.cols(), tol);
}

/// Orthonormal basis of the column span, with as many columns as the numeric
/// rank. Full-rank input goes through Householder QR, which leaves an already
/// orthonormal frame unchanged up to column phases; rank-deficient input uses
/// the leading left singular vectors.
[[nodiscard]] inline ComplexMatrix orthonormal_basis(const ComplexMatrix& m,
                                                     const ToleranceConfig& tol = {}) {
  detail::require_finite(m, "orthonormal_basis");
  const int rank = numeric_rank(m, tol);
  ComplexMatrix q;
  if (rank == 0) {
    return ComplexMatrix(m.rows(), 0);
  }
  if (rank == m.cols()) {
    Eigen::HouseholderQR<ComplexMatrix> qr(m);
    q = qr.householderQ() * ComplexMatrix::Identity(m.rows(), m.cols());
  } else {
    Eigen::JacobiSVD<ComplexMatrix> svd(m, Eigen::ComputeThinU);
    q = svd.matrixU().leftCols(rank);
  }
  detail::fix_column_phases(q);
  return q;
}

/// Orthonormal basis of the orthogonal complement of col(m) in C^rows.
[[nodiscard]] inline ComplexMatrix orthogonal_complement(const ComplexMatrix& m,
                                                         const ToleranceConfig& tol = {}) {
  const Index n = m.rows();
  if (m.cols() == 0) return ComplexMatrix::Identity(n, n);
  Eigen::JacobiSVD<ComplexMatrix> svd(m, Eigen::ComputeFullU);
  const int rank =
      detail::rank_from_singular_values(svd.singularValues(), m.rows(), m.cols(), tol);
  ComplexMatrix q = svd.matrixU().rightCols(n - rank);
  detail::fix_column_phases(q);
  return q;
}

/// Orthonormal basis of {x : m x = 0}.
[[nodiscard]] inline ComplexMatrix null_space(const ComplexMatrix& m,
                                              const ToleranceConfig& tol = {}) {
  const Index c = m.cols();
  if (m.rows() == 0) return ComplexMatrix::Identity(c, c);
  Eigen::JacobiSVD<ComplexMatrix> svd(m, Eigen::ComputeFullV);
  const int rank =
      detail::rank_from_singular_values(svd.singularValues(), m.rows(), m.cols(), tol);
  return svd.matrixV().rightCols(c - rank);
}

/// col(a) ∩ col(b) for frames with orthonormal columns.
///
/// Solves a x = b y through the null space of [a | -b] and re-orthonormalizes
/// a x; the result has exactly dim(null space) columns.
[[nodiscard]] inline ComplexMatrix subspace_intersection(const ComplexMatrix& a,
                                                         const ComplexMatrix& b,
                                                         const ToleranceConfig& tol = {}) {
  if (a.rows() != b.rows()) throw InvalidArgument("subspace_intersection: row counts differ");
  const Index n = a.rows();
  if (a.cols() == 0 || b.cols() == 0) return ComplexMatrix(n, 0);
  ComplexMatrix stacked(n, a.cols() + b.cols());
  stacked << a, -b;
  const ComplexMatrix kernel = null_space(stacked, tol);
  if (kernel.cols() == 0) return ComplexMatrix(n, 0);
  const ComplexMatrix span = a * kernel.topRows(a.cols());
  Eigen::JacobiSVD<ComplexMatrix> svd(span, Eigen::ComputeThinU);
  ComplexMatrix q = svd.matrixU().leftCols(kernel.cols());
  detail::fix_column_phases(q);
  return q;
}

/// Eigenvalues of a Hermitian matrix in ascending order. The input is
/// symmetrized first; a defect beyond `hermitian_defect_bound` is a caller bug.
[[nodiscard]] inline std::vector<double> hermitian_eigenvalues(const ComplexMatrix& h,
                                                               const ToleranceConfig& tol = {}) {
  if (h.rows() != h.cols()) throw InvalidArgument("hermitian_eigenvalues: matrix is not square");
  detail::require_finite(h, "hermitian_eigenvalues");
  if (h.size() == 0) return {};
  const double defect = (h - h.adjoint()).norm();
  if (defect > tol.hermitian_defect_bound(h.norm())) {
    throw CallerBug("hermitian_eigenvalues: matrix is not Hermitian (defect " +
                    std::to_string(defect) + ")");
  }
  const ComplexMatrix sym = 0.5 * (h + h.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(sym, Eigen::EigenvaluesOnly);
  const Eigen::VectorXd ev = es.eigenvalues();
  return {ev.data(), ev.data() + ev.size()};
}

struct Signature {
  int positive = 0;
  int negative = 0;
  int zero = 0;

  [[nodiscard]] int size() const { return positive + negative + zero; }
  friend bool operator==(const Signature&, const Signature&) = default;
};

[[nodiscard]] inline Signature signature_of_eigenvalues(const std::vector<double>& ev,
                                                        const ToleranceConfig& tol = {}) {
  double max_abs = 0.0;
  for (double x : ev) max_abs = std::max(max_abs, std::abs(x));
  const double thr = tol.zero_eig_threshold(max_abs);
  Signature s;
  for (double x : ev) {
    if (x > thr) {
      ++s.positive;
    } else if (x < -thr) {
      ++s.negative;
    } else {
      ++s.zero;
    }
  }
  return s;
}

/// Sylvester inertia (n_pos, n_neg, n_zero) of a Hermitian matrix.
[[nodiscard]] inline Signature sylvester_signature(const ComplexMatrix& h,
                                                   const ToleranceConfig& tol = {}) {
  return signature_of_eigenvalues(hermitian_eigenvalues(h, tol), tol);
}

/// exp(X) by Pade scaling and squaring (Eigen's MatrixFunctions module).
[[nodiscard]] inline ComplexMatrix matrix_exponential(const ComplexMatrix& x) {
  if (x.rows() != x.cols()) throw InvalidArgument("matrix_exponential: matrix is not square");
  detail::require_finite(x, "matrix_exponential");
  if (x.size() == 0) return x;
  return x.exp();
}

/// Spectral norm of a (possibly non-square) matrix.
[[nodiscard]] inline double operator_norm(const ComplexMatrix& m) {
  const Eigen::VectorXd s = detail::singular_values(m);
  return s.size() == 0 ? 0.0 : s(0);
}

/// ||A A* - B B*||_2 for frames with orthonormal columns; 0 iff the spans agree.
[[nodiscard]] inline double subspace_distance(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols() != b.cols()) throw InvalidArgument("subspace_distance: dimensions differ");
  if (a.rows() != b.rows()) throw InvalidArgument("subspace_distance: ambient dimensions differ");
  if (a.cols() == 0) return 0.0;
  const ComplexMatrix diff = a * a.adjoint() - b * b.adjoint();
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(diff, Eigen::EigenvaluesOnly);
  return es.eigenvalues().cwiseAbs().maxCoeff();
}

/// ||Q*Q - I||_F.
[[nodiscard]] inline double orthonormality_defect(const ComplexMatrix& q) {
  if (q.cols() == 0) return 0.0;
  return (q.adjoint() * q - ComplexMatrix::Identity(q.cols(), q.cols())).norm();
}

}  // namespace orbitgeom

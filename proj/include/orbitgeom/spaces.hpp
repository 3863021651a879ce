#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

#include "numkernel.hpp"

namespace orbitgeom {

/// C^n with the form h(v, w) = v* J w, J = diag(I_p, -I_q), split as
/// V = E+ ⊕ E- with E+ = span(e_1..e_p) and E- = span(e_{p+1}..e_n).
class HermitianSpace {
public:
  HermitianSpace(int p, int q) : p_(p), q_(q) {
    if (p < 1 || q < 1) throw InvalidArgument("HermitianSpace: p and q must be positive");
  }

  [[nodiscard]] int p() const { return p_; }
  [[nodiscard]] int q() const { return q_; }
  [[nodiscard]] int n() const { return p_ + q_; }

  [[nodiscard]] double sign(Index i) const { return i < p_ ? 1.0 : -1.0; }

  [[nodiscard]] ComplexMatrix form() const {
    ComplexMatrix j = ComplexMatrix::Identity(n(), n());
    j.bottomRightCorner(q_, q_) *= -1.0;
    return j;
  }

  /// J * m without forming J.
  [[nodiscard]] ComplexMatrix apply_form(const ComplexMatrix& m) const {
    ComplexMatrix out = m;
    out.bottomRows(q_) *= -1.0;
    return out;
  }

  /// Orthonormal frames of E+ and E- as n x p and n x q matrices.
  [[nodiscard]] ComplexMatrix positive_frame() const {
    return ComplexMatrix::Identity(n(), n()).leftCols(p_);
  }
  [[nodiscard]] ComplexMatrix negative_frame() const {
    return ComplexMatrix::Identity(n(), n()).rightCols(q_);
  }

  friend bool operator==(const HermitianSpace&, const HermitianSpace&) = default;

private:
  int p_;
  int q_;
};

[[nodiscard]] inline HermitianSpace make_space(int p, int q) { return HermitianSpace(p, q); }

/// A k-plane in V stored by an orthonormal n x k basis. k = 0 is legal and
/// denotes the zero subspace.
class Subspace {
public:
  [[nodiscard]] const HermitianSpace& space() const { return space_; }
  [[nodiscard]] const ComplexMatrix& basis() const { return basis_; }
  [[nodiscard]] int k() const { return static_cast<int>(basis_.cols()); }
  [[nodiscard]] int n() const { return space_.n(); }

  /// Wraps a frame already known to be orthonormal; only the column phase
  /// convention is applied.
  static Subspace from_orthonormal_frame(const HermitianSpace& space, ComplexMatrix frame) {
    if (frame.rows() != space.n()) {
      throw InvalidArgument("Subspace: frame has " + std::to_string(frame.rows()) +
                            " rows, ambient dimension is " + std::to_string(space.n()));
    }
    if (orthonormality_defect(frame) > 1e-10) {
      throw InvalidArgument("Subspace: frame is not orthonormal");
    }
    detail::fix_column_phases(frame);
    return Subspace(space, std::move(frame));
  }

  static Subspace zero(const HermitianSpace& space) {
    return Subspace(space, ComplexMatrix(space.n(), 0));
  }

private:
  Subspace(const HermitianSpace& space, ComplexMatrix basis)
      : space_(space), basis_(std::move(basis)) {}

  HermitianSpace space_;
  ComplexMatrix basis_;
};

/// Canonical subspace spanned by the columns of `m`; the columns must be
/// independent.
[[nodiscard]] inline Subspace subspace_from_matrix(const HermitianSpace& space,
                                                   const ComplexMatrix& m,
                                                   const ToleranceConfig& tol = {}) {
  if (m.rows() != space.n()) {
    throw InvalidArgument("subspace_from_matrix: expected " + std::to_string(space.n()) +
                          " rows, got " + std::to_string(m.rows()));
  }
  if (m.cols() > m.rows()) throw RankDeficient("subspace_from_matrix: more columns than rows");
  if (m.cols() == 0) return Subspace::zero(space);
  const int rank = numeric_rank(m, tol);
  if (rank < m.cols()) {
    throw RankDeficient("subspace_from_matrix: frame of " + std::to_string(m.cols()) +
                        " columns has numeric rank " + std::to_string(rank));
  }
  return Subspace::from_orthonormal_frame(space, orthonormal_basis(m, tol));
}

[[nodiscard]] inline double distance(const Subspace& a, const Subspace& b) {
  return subspace_distance(a.basis(), b.basis());
}

/// Gram matrix B* J B of the stored basis.
[[nodiscard]] inline ComplexMatrix gram(const Subspace& w) {
  const ComplexMatrix g = w.basis().adjoint() * w.space().apply_form(w.basis());
  return 0.5 * (g + g.adjoint());
}

[[nodiscard]] inline Subspace positive_part(const HermitianSpace& s) {
  return Subspace::from_orthonormal_frame(s, s.positive_frame());
}
[[nodiscard]] inline Subspace negative_part(const HermitianSpace& s) {
  return Subspace::from_orthonormal_frame(s, s.negative_frame());
}

/// W ∩ E+ and W ∩ E-.
[[nodiscard]] inline Subspace intersect_positive(const Subspace& w, const ToleranceConfig& tol = {}) {
  return Subspace::from_orthonormal_frame(
      w.space(), subspace_intersection(w.basis(), w.space().positive_frame(), tol));
}
[[nodiscard]] inline Subspace intersect_negative(const Subspace& w, const ToleranceConfig& tol = {}) {
  return Subspace::from_orthonormal_frame(
      w.space(), subspace_intersection(w.basis(), w.space().negative_frame(), tol));
}

// ---------------------------------------------------------------------------
// Plücker coordinates

inline constexpr std::uint64_t kMaxPluckerCoordinates = 10000;

[[nodiscard]] inline std::uint64_t binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  std::uint64_t r = 1;
  for (int i = 1; i <= k; ++i) {
    r = r * static_cast<std::uint64_t>(n - k + i) / static_cast<std::uint64_t>(i);
  }
  return r;
}

/// Sorted k-subsets of {0..n-1} in lexicographic order.
[[nodiscard]] inline std::vector<std::vector<int>> k_subsets(int n, int k) {
  std::vector<std::vector<int>> out;
  std::vector<int> idx(static_cast<size_t>(k));
  std::iota(idx.begin(), idx.end(), 0);
  while (true) {
    out.push_back(idx);
    int i = k - 1;
    while (i >= 0 && idx[static_cast<size_t>(i)] == n - k + i) --i;
    if (i < 0) break;
    ++idx[static_cast<size_t>(i)];
    for (int j = i + 1; j < k; ++j) idx[static_cast<size_t>(j)] = idx[static_cast<size_t>(j - 1)] + 1;
  }
  return out;
}

namespace detail {

/// Determinant by fraction-free (Bareiss) elimination with row pivoting.
inline Complex bareiss_determinant(ComplexMatrix m) {
  const Index k = m.rows();
  if (k == 0) return 1.0;
  Complex prev = 1.0;
  double sign = 1.0;
  for (Index i = 0; i < k; ++i) {
    Index piv = i;
    for (Index r = i + 1; r < k; ++r) {
      if (std::abs(m(r, i)) > std::abs(m(piv, i))) piv = r;
    }
    if (m(piv, i) == Complex(0.0)) return 0.0;
    if (piv != i) {
      m.row(i).swap(m.row(piv));
      sign = -sign;
    }
    for (Index r = i + 1; r < k; ++r) {
      for (Index c = i + 1; c < k; ++c) {
        m(r, c) = (m(r, c) * m(i, i) - m(r, i) * m(i, c)) / prev;
      }
    }
    prev = m(i, i);
  }
  return sign * m(k - 1, k - 1);
}

inline Complex minor_determinant(const ComplexMatrix& basis, const std::vector<int>& rows) {
  const Index k = basis.cols();
  ComplexMatrix sub(k, k);
  for (Index i = 0; i < k; ++i) sub.row(i) = basis.row(rows[static_cast<size_t>(i)]);
  if (k <= 4) return bareiss_determinant(sub);
  return sub.partialPivLu().determinant();
}

}  // namespace detail

struct PluckerVector {
  int n = 0;
  int k = 0;
  /// Indexed like k_subsets(n, k).
  std::vector<Complex> coordinates;
  bool normalized = false;
};

/// Divides by the coordinate of largest modulus (lowest index among
/// near-ties), so that coordinate becomes exactly 1.
inline void normalize(PluckerVector& pv) {
  double max_abs = 0.0;
  for (const auto& c : pv.coordinates) max_abs = std::max(max_abs, std::abs(c));
  if (max_abs == 0.0) throw NumericalDegeneracy("plucker: all coordinates vanish");
  size_t pivot = 0;
  for (size_t i = 0; i < pv.coordinates.size(); ++i) {
    if (std::abs(pv.coordinates[i]) >= max_abs * (1.0 - 1e-9)) {
      pivot = i;
      break;
    }
  }
  const Complex scale = pv.coordinates[pivot];
  for (auto& c : pv.coordinates) c /= scale;
  pv.coordinates[pivot] = 1.0;
  pv.normalized = true;
}

/// Unnormalized k x k minors of an n x k frame.
[[nodiscard]] inline PluckerVector plucker_minors(const ComplexMatrix& frame) {
  const int n = static_cast<int>(frame.rows());
  const int k = static_cast<int>(frame.cols());
  if (binomial(n, k) > kMaxPluckerCoordinates) {
    throw SizeError("plucker: C(" + std::to_string(n) + "," + std::to_string(k) +
                    ") exceeds the coordinate limit");
  }
  PluckerVector pv{n, k, {}, false};
  for (const auto& rows : k_subsets(n, k)) {
    pv.coordinates.push_back(detail::minor_determinant(frame, rows));
  }
  return pv;
}

[[nodiscard]] inline PluckerVector plucker(const Subspace& w) {
  PluckerVector pv = plucker_minors(w.basis());
  normalize(pv);
  return pv;
}

/// p12 p34 - p13 p24 + p14 p23 for a point of Gr_2(C^4).
[[nodiscard]] inline Complex plucker_relation_residual(const PluckerVector& pv) {
  if (pv.n != 4 || pv.k != 2) throw InvalidArgument("plucker relation: needs k = 2, n = 4");
  const auto& c = pv.coordinates;  // 12 13 14 23 24 34
  return c[0] * c[5] - c[1] * c[4] + c[2] * c[3];
}

// ---------------------------------------------------------------------------
// Graph charts

/// W as the graph of a linear map: rows `pivots` of the representing frame
/// are the identity, the remaining rows (in increasing order) form `chart`.
struct GraphChart {
  std::vector<int> pivots;  // 0-based, increasing
  ComplexMatrix chart;      // (n - k) x k
};

namespace detail {

inline std::vector<int> complement_rows(int n, const std::vector<int>& pivots) {
  std::vector<int> rest;
  for (int i = 0; i < n; ++i) {
    if (!std::binary_search(pivots.begin(), pivots.end(), i)) rest.push_back(i);
  }
  return rest;
}

}  // namespace detail

/// Chart of the span of an arbitrary full-rank n x k frame over the given pivot rows.
[[nodiscard]] inline GraphChart chart_of_frame(const ComplexMatrix& b, std::vector<int> pivots) {
  const int n = static_cast<int>(b.rows());
  const int k = static_cast<int>(b.cols());
  std::sort(pivots.begin(), pivots.end());
  if (static_cast<int>(pivots.size()) != k ||
      std::adjacent_find(pivots.begin(), pivots.end()) != pivots.end() ||
      (k > 0 && (pivots.front() < 0 || pivots.back() >= n))) {
    throw InvalidArgument("graph_chart: pivots must be k distinct rows");
  }
  ComplexMatrix top(k, k);
  for (int i = 0; i < k; ++i) top.row(i) = b.row(pivots[static_cast<size_t>(i)]);
  if (numeric_rank(top) < k) throw InvalidArgument("graph_chart: pivot block is singular");
  const auto rest = detail::complement_rows(n, pivots);
  ComplexMatrix bottom(static_cast<Index>(rest.size()), k);
  for (size_t i = 0; i < rest.size(); ++i) bottom.row(static_cast<Index>(i)) = b.row(rest[i]);
  const ComplexMatrix chart = top.transpose().partialPivLu().solve(bottom.transpose()).transpose();
  return {std::move(pivots), chart};
}

/// Pivot rows picked by column-pivoted QR of the transposed frame.
[[nodiscard]] inline std::vector<int> choose_pivots(const ComplexMatrix& b) {
  const Index k = b.cols();
  if (k == 0) return {};
  const ComplexMatrix bt = b.transpose();
  Eigen::ColPivHouseholderQR<ComplexMatrix> qr(bt);
  std::vector<int> pivots;
  for (Index i = 0; i < k; ++i) pivots.push_back(qr.colsPermutation().indices()(i));
  std::sort(pivots.begin(), pivots.end());
  return pivots;
}

[[nodiscard]] inline GraphChart graph_chart(const Subspace& w, std::vector<int> pivots) {
  return chart_of_frame(w.basis(), std::move(pivots));
}

/// Chart centred on pivot rows chosen by column-pivoted QR of the basis.
[[nodiscard]] inline GraphChart graph_chart(const Subspace& w) {
  return chart_of_frame(w.basis(), choose_pivots(w.basis()));
}

/// Frame whose pivot rows are I_k and other rows are the chart matrix.
[[nodiscard]] inline ComplexMatrix chart_frame(int n, const GraphChart& g) {
  const Index k = static_cast<Index>(g.pivots.size());
  if (g.chart.rows() != n - k || g.chart.cols() != k) {
    throw InvalidArgument("chart_frame: chart has the wrong shape");
  }
  ComplexMatrix f = ComplexMatrix::Zero(n, k);
  for (Index i = 0; i < k; ++i) f(g.pivots[static_cast<size_t>(i)], i) = 1.0;
  const auto rest = detail::complement_rows(n, g.pivots);
  for (size_t i = 0; i < rest.size(); ++i) f.row(rest[i]) = g.chart.row(static_cast<Index>(i));
  return f;
}

[[nodiscard]] inline Subspace subspace_from_chart(const HermitianSpace& space, const GraphChart& g) {
  return subspace_from_matrix(space, chart_frame(space.n(), g));
}

}  // namespace orbitgeom

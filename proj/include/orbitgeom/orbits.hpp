#pragma once

#include <cmath>
#include <compare>
#include <optional>
#include <string>
#include <vector>

#include "spaces.hpp"

namespace orbitgeom {

/// K-orbit label: l = dim(W ∩ E+), m = dim(W ∩ E-).
struct KLabel {
  int l = 0;
  int m = 0;
  friend auto operator<=>(const KLabel&, const KLabel&) = default;
};

/// G0-orbit label: Sylvester signature of h restricted to W.
struct G0Label {
  int a = 0;  // positive
  int b = 0;  // negative
  int c = 0;  // null
  friend auto operator<=>(const G0Label&, const G0Label&) = default;
};

struct MatsukiLabel {
  int l = 0;
  int m = 0;
  int r = 0;
  friend auto operator<=>(const MatsukiLabel&, const MatsukiLabel&) = default;

  [[nodiscard]] KLabel k_label() const { return {l, m}; }
  [[nodiscard]] G0Label g0_label() const { return {l, m, r}; }
  [[nodiscard]] int k() const { return l + m + r; }
};

[[nodiscard]] inline std::string to_string(const KLabel& x) {
  return "(" + std::to_string(x.l) + "," + std::to_string(x.m) + ")";
}
[[nodiscard]] inline std::string to_string(const G0Label& x) {
  return "(" + std::to_string(x.a) + "," + std::to_string(x.b) + "," + std::to_string(x.c) + ")";
}
[[nodiscard]] inline std::string to_string(const MatsukiLabel& x) {
  return "M(" + std::to_string(x.l) + "," + std::to_string(x.m) + "," + std::to_string(x.r) + ")";
}

// ---------------------------------------------------------------------------
// Feasibility

[[nodiscard]] inline bool is_feasible(const KLabel& x, int p, int q, int k) {
  const int r = k - x.l - x.m;
  return x.l >= 0 && x.m >= 0 && r >= 0 && x.l <= p && x.m <= q && r <= p - x.l && r <= q - x.m;
}

[[nodiscard]] inline bool is_feasible(const G0Label& x, int p, int q, int k) {
  return x.a >= 0 && x.b >= 0 && x.c >= 0 && x.a + x.b + x.c == k && x.a <= p && x.b <= q &&
         x.c <= p - x.a && x.c <= q - x.b;
}

[[nodiscard]] inline bool is_feasible(const MatsukiLabel& x, int p, int q) {
  return x.r >= 0 && is_feasible(x.k_label(), p, q, x.k()) &&
         is_feasible(x.g0_label(), p, q, x.k());
}

// ---------------------------------------------------------------------------
// Invariants

[[nodiscard]] inline KLabel k_invariants(const Subspace& w, const ToleranceConfig& tol = {}) {
  return {intersect_positive(w, tol).k(), intersect_negative(w, tol).k()};
}

[[nodiscard]] inline G0Label g0_invariants(const Subspace& w, const ToleranceConfig& tol = {}) {
  const Signature s = sylvester_signature(gram(w), tol);
  return {s.positive, s.negative, s.zero};
}

struct Classification {
  KLabel k_label;
  G0Label g0_label;
  /// Present iff the G0 label equals (l, m, k - l - m).
  std::optional<MatsukiLabel> matsuki;
  std::vector<double> gram_eigenvalues;
};

[[nodiscard]] inline Classification matsuki_classify(const Subspace& w,
                                                     const ToleranceConfig& tol = {}) {
  Classification c;
  c.k_label = k_invariants(w, tol);
  c.gram_eigenvalues = hermitian_eigenvalues(gram(w), tol);
  const Signature s = signature_of_eigenvalues(c.gram_eigenvalues, tol);
  c.g0_label = {s.positive, s.negative, s.zero};
  const MatsukiLabel candidate{c.k_label.l, c.k_label.m, w.k() - c.k_label.l - c.k_label.m};
  if (c.g0_label == candidate.g0_label()) c.matsuki = candidate;
  return c;
}

// ---------------------------------------------------------------------------
// Splitting W = (W ∩ E+) ⊕ (W ∩ E-) ⊕ W_comp

/// W_comp is W ∩ (W+ ⊕ W-)^⊥. Because W± lie in the eigenspaces of J, the
/// J-orthogonal and Euclidean complements coincide; W_comp meets E+ and E-
/// trivially and has dimension r = k - l - m.
struct Splitting {
  Subspace plus;
  Subspace minus;
  ComplexMatrix complement;  // n x r, orthonormal columns
};

[[nodiscard]] inline Splitting split(const Subspace& w, const ToleranceConfig& tol = {}) {
  Subspace plus = intersect_positive(w, tol);
  Subspace minus = intersect_negative(w, tol);
  const Index r = w.k() - plus.k() - minus.k();
  ComplexMatrix d(w.n(), plus.k() + minus.k());
  d << plus.basis(), minus.basis();
  ComplexMatrix comp(w.n(), 0);
  if (r > 0) {
    const ComplexMatrix residual = w.basis() - d * (d.adjoint() * w.basis());
    Eigen::JacobiSVD<ComplexMatrix> svd(residual, Eigen::ComputeThinU);
    comp = svd.matrixU().leftCols(r);
    detail::fix_column_phases(comp);
  }
  return {std::move(plus), std::move(minus), std::move(comp)};
}

// ---------------------------------------------------------------------------
// Basepoints

/// span{e_1..e_l} ⊕ span{e_{p+1}..e_{p+m}} ⊕ span{(e_{l+i} + e_{p+m+i})/√2 : i = 1..r}.
[[nodiscard]] inline Subspace basepoint(const MatsukiLabel& label, const HermitianSpace& space) {
  const int p = space.p();
  if (!is_feasible(label, p, space.q())) {
    throw InfeasibleLabel("basepoint: label " + to_string(label) + " is infeasible for (p,q) = (" +
                          std::to_string(p) + "," + std::to_string(space.q()) + ")");
  }
  ComplexMatrix b = ComplexMatrix::Zero(space.n(), label.k());
  Index col = 0;
  for (int i = 0; i < label.l; ++i) b(i, col++) = 1.0;
  for (int i = 0; i < label.m; ++i) b(p + i, col++) = 1.0;
  for (int i = 0; i < label.r; ++i) {
    b(label.l + i, col) = M_SQRT1_2;
    b(p + label.m + i, col) = M_SQRT1_2;
    ++col;
  }
  return Subspace::from_orthonormal_frame(space, std::move(b));
}

[[nodiscard]] inline Subspace basepoint(const KLabel& label, const HermitianSpace& space, int k) {
  return basepoint(MatsukiLabel{label.l, label.m, k - label.l - label.m}, space);
}

[[nodiscard]] inline Subspace basepoint(const G0Label& label, const HermitianSpace& space) {
  return basepoint(MatsukiLabel{label.a, label.b, label.c}, space);
}

// ---------------------------------------------------------------------------
// Enumeration and dimensions

struct FeasibleLabels {
  std::vector<KLabel> k_labels;
  std::vector<G0Label> g0_labels;
  std::vector<MatsukiLabel> matsuki_labels;
};

/// All feasible labels in lexicographic order. Each one is confirmed by
/// building its basepoint and classifying it.
[[nodiscard]] inline FeasibleLabels feasible_labels(int p, int q, int k,
                                                    const ToleranceConfig& tol = {}) {
  const HermitianSpace space(p, q);
  if (k < 1 || k > space.n()) {
    throw InvalidArgument("feasible_labels: k must lie in [1, " + std::to_string(space.n()) + "]");
  }
  FeasibleLabels out;
  for (int l = 0; l <= std::min(k, p); ++l) {
    for (int m = 0; m <= std::min(k - l, q); ++m) {
      if (is_feasible(KLabel{l, m}, p, q, k)) out.k_labels.push_back({l, m});
    }
  }
  for (int a = 0; a <= std::min(k, p); ++a) {
    for (int b = 0; b <= std::min(k - a, q); ++b) {
      const G0Label g{a, b, k - a - b};
      if (is_feasible(g, p, q, k)) out.g0_labels.push_back(g);
    }
  }
  for (const auto& kl : out.k_labels) out.matsuki_labels.push_back({kl.l, kl.m, k - kl.l - kl.m});

  for (const auto& ml : out.matsuki_labels) {
    const Classification c = matsuki_classify(basepoint(ml, space), tol);
    if (!c.matsuki || *c.matsuki != ml) {
      throw NumericalDegeneracy("feasible_labels: basepoint of " + to_string(ml) +
                                " does not classify back to its label");
    }
  }
  for (const auto& gl : out.g0_labels) {
    if (g0_invariants(basepoint(gl, space), tol) != gl) {
      throw NumericalDegeneracy("feasible_labels: basepoint of G0 label " + to_string(gl) +
                                " does not classify back to its label");
    }
  }
  return out;
}

/// Complex dimension of O_{l,m}: l(p-l) + m(q-m) + r((p-l) + (q-m) - r).
[[nodiscard]] inline int dim_k_orbit(const KLabel& label, int p, int q, int k) {
  if (!is_feasible(label, p, q, k)) {
    throw InfeasibleLabel("dim_k_orbit: label " + to_string(label) + " is infeasible");
  }
  const int r = k - label.l - label.m;
  const int pp = p - label.l;
  const int qq = q - label.m;
  return label.l * pp + label.m * qq + r * (pp + qq - r);
}

/// dim_C Gr_k(C^n).
[[nodiscard]] inline constexpr int grassmannian_dimension(int k, int n) { return k * (n - k); }

}  // namespace orbitgeom

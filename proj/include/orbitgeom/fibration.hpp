#pragma once

// The projection O_{l,m} -> Gr_l(E+) x Gr_m(E-), W -> (W ∩ E+, W ∩ E-), its
// fibers, and infinitesimal measurements (tangent ranks, CR dimensions,
// tangential Cauchy-Riemann residuals) on orbits.

#include <cmath>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "actions.hpp"

namespace orbitgeom {

struct BasePoint {
  Subspace plus;   // inside E+, dimension l
  Subspace minus;  // inside E-, dimension m
};

[[nodiscard]] inline BasePoint project(const Subspace& w, const ToleranceConfig& tol = {}) {
  return {intersect_positive(w, tol), intersect_negative(w, tol)};
}

[[nodiscard]] inline double base_distance(const BasePoint& a, const BasePoint& b) {
  if (a.plus.k() != b.plus.k() || a.minus.k() != b.minus.k()) return 1.0;
  return std::max(distance(a.plus, b.plus), distance(a.minus, b.minus));
}

/// Image of a base point under a block-diagonal g: (g+ W+, g- W-).
[[nodiscard]] inline BasePoint act(const GroupElement& g, const BasePoint& b,
                                   const ToleranceConfig& tol = {}) {
  return {act(g, b.plus, tol), act(g, b.minus, tol)};
}

/// V' = (W+ ⊕ W-)^⊥ with its splitting E'+ ⊕ E'-. For W± inside the
/// eigenspaces of J the h-orthogonal and Euclidean complements agree.
struct ComplementSpace {
  HermitianSpace ambient;
  ComplexMatrix basis;          // n x d, d = n - l - m, equals [positive | negative]
  ComplexMatrix induced_form;   // d x d, restriction of J
  ComplexMatrix positive;       // n x (p - l), V' ∩ E+
  ComplexMatrix negative;       // n x (q - m), V' ∩ E-

  [[nodiscard]] int dim() const { return static_cast<int>(basis.cols()); }
};

[[nodiscard]] inline ComplementSpace complement_space(const BasePoint& b,
                                                      const ToleranceConfig& tol = {}) {
  const HermitianSpace& s = b.plus.space();
  const int p = s.p();
  const int q = s.q();
  if (b.plus.basis().bottomRows(q).norm() > 1e-10 || b.minus.basis().topRows(p).norm() > 1e-10) {
    throw InvalidArgument("complement_space: base point components leave E+ / E-");
  }
  ComplementSpace c{s, {}, {}, ComplexMatrix::Zero(s.n(), p - b.plus.k()),
                    ComplexMatrix::Zero(s.n(), q - b.minus.k())};
  c.positive.topRows(p) = orthogonal_complement(b.plus.basis().topRows(p), tol);
  c.negative.bottomRows(q) = orthogonal_complement(b.minus.basis().bottomRows(q), tol);
  c.basis.resize(s.n(), c.positive.cols() + c.negative.cols());
  c.basis << c.positive, c.negative;
  c.induced_form = c.basis.adjoint() * s.apply_form(c.basis);
  const Signature sig = sylvester_signature(c.induced_form, tol);
  if (sig.positive != p - b.plus.k() || sig.negative != q - b.minus.k() || sig.zero != 0) {
    throw NumericalDegeneracy("complement_space: induced form has the wrong signature");
  }
  return c;
}

/// Random totally isotropic r-plane span{(u_i + v_i)/√2} of V', with {u_i},
/// {v_i} Haar-random orthonormal r-frames of E'+ and E'-.
[[nodiscard]] inline Subspace fiber_sample_isotropic(const ComplementSpace& c, int r,
                                                     std::uint64_t seed) {
  if (r < 0 || r > std::min(c.positive.cols(), c.negative.cols())) {
    throw InvalidArgument("fiber_sample_isotropic: r = " + std::to_string(r) +
                          " exceeds min(p - l, q - m)");
  }
  Rng rng(seed);
  const ComplexMatrix u = c.positive * rng.haar_isometry(c.positive.cols(), r);
  const ComplexMatrix v = c.negative * rng.haar_isometry(c.negative.cols(), r);
  return Subspace::from_orthonormal_frame(c.ambient, (u + v) * M_SQRT1_2);
}

/// Random r-plane of V' meeting E'+ and E'- trivially: the graph of a random
/// full-rank map from a random r-plane of E'+ into E'-.
[[nodiscard]] inline Subspace fiber_sample_open(const ComplementSpace& c, int r, std::uint64_t seed,
                                                const ToleranceConfig& tol = {}) {
  if (r < 0 || r > std::min(c.positive.cols(), c.negative.cols())) {
    throw InvalidArgument("fiber_sample_open: r = " + std::to_string(r) +
                          " exceeds min(p - l, q - m)");
  }
  if (r == 0) return Subspace::zero(c.ambient);
  for (std::uint64_t attempt = 0; attempt < 16; ++attempt) {
    Rng rng(attempt == 0 ? seed : derive_seed(seed, "open-fiber", attempt));
    const ComplexMatrix x = c.positive * rng.haar_isometry(c.positive.cols(), r);
    const ComplexMatrix g = rng.ginibre(c.negative.cols(), r);
    if (numeric_rank(g, tol) < r) continue;
    Subspace w = subspace_from_matrix(c.ambient, x + c.negative * g, tol);
    if (k_invariants(w, tol) == KLabel{0, 0}) return w;
  }
  throw NumericalDegeneracy("fiber_sample_open: no transverse sample after retries");
}

/// (W ∩ E+) ⊕ (W ∩ E-) ⊕ W_comp for W_comp inside V'.
[[nodiscard]] inline Subspace assemble(const BasePoint& b, const Subspace& comp,
                                       const ToleranceConfig& tol = {}) {
  const HermitianSpace& s = b.plus.space();
  const int k = b.plus.k() + b.minus.k() + comp.k();
  if (k > s.n()) throw InvalidArgument("assemble: total dimension exceeds n");
  const ComplexMatrix d = detail::hstack({&b.plus.basis(), &b.minus.basis()}, s.n());
  if (comp.k() > 0 && (d.adjoint() * comp.basis()).norm() > 1e-9) {
    throw InvalidArgument("assemble: complement is not inside (W+ ⊕ W-)^⊥");
  }
  return subspace_from_matrix(s, detail::hstack({&d, &comp.basis()}, s.n()), tol);
}

/// W ∩ (W+ ⊕ W-)^⊥, the fiber coordinate of W.
[[nodiscard]] inline Subspace fiber_component(const Subspace& w, const ToleranceConfig& tol = {}) {
  return Subspace::from_orthonormal_frame(w.space(), split(w, tol).complement);
}

/// |h(v,v)| / ||v||^2.
[[nodiscard]] inline double quadric_residual(const HermitianSpace& s, const ComplexVector& v) {
  if (v.size() != s.n()) throw InvalidArgument("quadric_residual: vector has the wrong length");
  const double nn = v.squaredNorm();
  if (nn == 0.0) throw InvalidArgument("quadric_residual: zero vector");
  const ComplexVector jv = s.apply_form(v);
  return std::abs(v.dot(jv)) / nn;
}

// ---------------------------------------------------------------------------
// Infinitesimal action

/// Basis of the Lie algebra of `g` as a real vector space. The identity
/// direction (which acts trivially on Gr_k) is not removed, so K and K0 use
/// gl(p) ⊕ gl(q) and u(p) ⊕ u(q).
[[nodiscard]] inline std::vector<ComplexMatrix> lie_algebra_basis(Group g, const HermitianSpace& s) {
  const int n = s.n();
  const int p = s.p();
  const Complex i1(0.0, 1.0);
  std::vector<ComplexMatrix> out;
  auto unit = [n](int i, int j) {
    ComplexMatrix e = ComplexMatrix::Zero(n, n);
    e(i, j) = 1.0;
    return e;
  };
  auto same_block = [p](int i, int j) { return (i < p) == (j < p); };
  switch (g) {
    case Group::GL:
    case Group::K:
      for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
          if (g == Group::K && !same_block(i, j)) continue;
          out.push_back(unit(i, j));
          out.push_back(i1 * unit(i, j));
        }
      }
      break;
    case Group::K0:
    case Group::G0:
      for (int i = 0; i < n; ++i) {
        out.push_back(i1 * unit(i, i));
        for (int j = i + 1; j < n; ++j) {
          if (same_block(i, j)) {
            out.push_back(unit(i, j) - unit(j, i));
            out.push_back(i1 * (unit(i, j) + unit(j, i)));
          } else if (g == Group::G0) {
            out.push_back(unit(i, j) + unit(j, i));
            out.push_back(i1 * (unit(i, j) - unit(j, i)));
          }
        }
      }
      break;
  }
  return out;
}

namespace detail {

/// Complex n x k matrix -> real vector (Re; Im) of length 2nk.
inline Eigen::VectorXd realify(const ComplexMatrix& m) {
  const Index len = m.size();
  Eigen::VectorXd v(2 * len);
  for (Index j = 0; j < m.cols(); ++j) {
    for (Index i = 0; i < m.rows(); ++i) {
      v(j * m.rows() + i) = m(i, j).real();
      v(len + j * m.rows() + i) = m(i, j).imag();
    }
  }
  return v;
}

inline ComplexMatrix complexify(const Eigen::VectorXd& v, Index rows, Index cols) {
  const Index len = rows * cols;
  ComplexMatrix m(rows, cols);
  for (Index j = 0; j < cols; ++j) {
    for (Index i = 0; i < rows; ++i) m(i, j) = Complex(v(j * rows + i), v(len + j * rows + i));
  }
  return m;
}

/// Multiplication by i in realified coordinates.
inline RealMatrix times_i(const RealMatrix& m) {
  const Index len = m.rows() / 2;
  RealMatrix out(m.rows(), m.cols());
  out.topRows(len) = -m.bottomRows(len);
  out.bottomRows(len) = m.topRows(len);
  return out;
}

/// Orthonormal basis (columns) of the column space of a real matrix.
inline RealMatrix real_range(const RealMatrix& m, const ToleranceConfig& tol) {
  if (m.cols() == 0) return RealMatrix(m.rows(), 0);
  Eigen::JacobiSVD<RealMatrix> svd(m, Eigen::ComputeThinU);
  const int rank = rank_from_singular_values(svd.singularValues(), m.rows(), m.cols(), tol);
  return svd.matrixU().leftCols(rank);
}

inline RealMatrix real_null_space(const RealMatrix& m, const ToleranceConfig& tol) {
  if (m.rows() == 0) return RealMatrix::Identity(m.cols(), m.cols());
  Eigen::JacobiSVD<RealMatrix> svd(m, Eigen::ComputeFullV);
  const int rank = rank_from_singular_values(svd.singularValues(), m.rows(), m.cols(), tol);
  return svd.matrixV().rightCols(m.cols() - rank);
}

/// Tangent vector at W of the curve exp(tX)·W, in the horizontal model
/// (I - BB*) X B of T_W Gr_k.
inline ComplexMatrix infinitesimal_action(const ComplexMatrix& x, const ComplexMatrix& b) {
  const ComplexMatrix xb = x * b;
  return xb - b * (b.adjoint() * xb);
}

}  // namespace detail

/// Real 2nk x N matrix whose columns are the realified tangent images of a
/// real basis of the Lie algebra of `g`.
[[nodiscard]] inline RealMatrix tangent_images(const Subspace& w, Group g) {
  const auto gens = lie_algebra_basis(g, w.space());
  RealMatrix a(2 * w.n() * w.k(), static_cast<Index>(gens.size()));
  for (size_t i = 0; i < gens.size(); ++i) {
    a.col(static_cast<Index>(i)) = detail::realify(detail::infinitesimal_action(gens[i], w.basis()));
  }
  return a;
}

/// Real dimension of the orbit of `g` through W, as the rank of the
/// infinitesimal action.
[[nodiscard]] inline int tangent_dimension(const Subspace& w, Group g, const ToleranceConfig& tol = {}) {
  if (w.k() == 0) return 0;
  return numeric_rank_real(tangent_images(w, g), tol);
}

struct TangentReport {
  std::string label;
  Group group = Group::K0;
  int real_dim = 0;
  int cr_dim = 0;
  int cr_codim = 0;
  int base_dim_c = 0;  // dim_C Gr_l(E+) x Gr_m(E-), for comparison
};

namespace detail {

inline MatsukiLabel require_matsuki(const Subspace& w, const ToleranceConfig& tol) {
  const Classification c = matsuki_classify(w, tol);
  if (!c.matsuki) {
    throw NotMatsuki("point with K-label " + to_string(c.k_label) + " and G0-label " +
                     to_string(c.g0_label) + " is not on a Matsuki orbit");
  }
  return *c.matsuki;
}

struct CrFrame {
  RealMatrix tangent;  // ONB of T (2nk x dimT)
  RealMatrix cr;       // ONB of T ∩ iT (2nk x 2 crdim)
};

inline CrFrame cr_frame(const Subspace& w, const ToleranceConfig& tol) {
  CrFrame f;
  f.tangent = real_range(tangent_images(w, Group::K0), tol);
  const RealMatrix it = times_i(f.tangent);
  RealMatrix stacked(f.tangent.rows(), 2 * f.tangent.cols());
  stacked << f.tangent, -it;
  const RealMatrix kernel = real_null_space(stacked, tol);
  f.cr = real_range(f.tangent * kernel.topRows(f.tangent.cols()), tol);
  return f;
}

}  // namespace detail

/// CR dimension of the Matsuki orbit through W: with T the real tangent space
/// of the K0-orbit, cr_dim = dim_R(T ∩ iT) / 2 where
/// dim_R(T ∩ iT) = 2 dim T - rank[T | iT].
[[nodiscard]] inline TangentReport cr_dimension(const Subspace& w, const ToleranceConfig& tol = {}) {
  const MatsukiLabel label = detail::require_matsuki(w, tol);
  TangentReport rep;
  rep.label = to_string(label);
  rep.group = Group::K0;
  if (w.k() == 0) return rep;
  const RealMatrix t = detail::real_range(tangent_images(w, Group::K0), tol);
  RealMatrix both(t.rows(), 2 * t.cols());
  both << t, detail::times_i(t);
  const int dim_t = static_cast<int>(t.cols());
  const int joint = numeric_rank_real(both, tol);
  const int inter = 2 * dim_t - joint;
  if (inter % 2 != 0) throw NumericalDegeneracy("cr_dimension: odd dimension of T ∩ iT");
  rep.real_dim = dim_t;
  rep.cr_dim = inter / 2;
  rep.cr_codim = dim_t - 2 * rep.cr_dim;
  const HermitianSpace& s = w.space();
  rep.base_dim_c = label.l * (s.p() - label.l) + label.m * (s.q() - label.m);
  return rep;
}

/// Real dimension of the isotropic fiber through W, measured as
/// dim_R Gr_r(V') minus the rank of the Jacobian of C -> C* J' C on T Gr_r(V').
[[nodiscard]] inline int measured_fiber_dimension(const Subspace& w, const ToleranceConfig& tol = {}) {
  const BasePoint b = project(w, tol);
  const ComplementSpace c = complement_space(b, tol);
  const ComplexMatrix comp = c.basis.adjoint() * split(w, tol).complement;  // d x r
  const Index d = comp.rows();
  const Index r = comp.cols();
  if (r == 0) return 0;
  RealMatrix tangent(2 * d * r, 2 * d * r);
  Index col = 0;
  for (Index i = 0; i < d; ++i) {
    for (Index j = 0; j < r; ++j) {
      for (Complex unit : {Complex(1.0, 0.0), Complex(0.0, 1.0)}) {
        ComplexMatrix e = ComplexMatrix::Zero(d, r);
        e(i, j) = unit;
        tangent.col(col++) = detail::realify(e - comp * (comp.adjoint() * e));
      }
    }
  }
  const RealMatrix t = detail::real_range(tangent, tol);
  RealMatrix jac(2 * r * r, t.cols());
  for (Index i = 0; i < t.cols(); ++i) {
    const ComplexMatrix delta = detail::complexify(t.col(i), d, r);
    const ComplexMatrix dphi =
        delta.adjoint() * c.induced_form * comp + comp.adjoint() * c.induced_form * delta;
    jac.col(i) = detail::realify(dphi);
  }
  return static_cast<int>(t.cols()) - numeric_rank_real(jac, tol);
}

// ---------------------------------------------------------------------------
// Tangential Cauchy-Riemann residuals

using SubspaceFunction = std::function<Complex(const Subspace&)>;

inline constexpr double kDefaultDbarStep = 1e-5;

struct DbarDirections {
  std::vector<ComplexMatrix> generators;  // X_j in Lie(K) with X_j·W tangent = h_j
};

namespace detail {

/// For each vector h_j of an orthonormal basis of the CR space at W, a
/// complex-Lie(K) element whose infinitesimal action is h_j. Curves exp(sX)·W
/// stay in O_{l,m}, where pulled-back base functions are defined.
inline DbarDirections cr_generators(const Subspace& w, const ToleranceConfig& tol) {
  const CrFrame f = cr_frame(w, tol);
  const auto gens = lie_algebra_basis(Group::K, w.space());
  const RealMatrix images = tangent_images(w, Group::K);
  Eigen::CompleteOrthogonalDecomposition<RealMatrix> cod(images);
  DbarDirections out;
  for (Index j = 0; j < f.cr.cols(); ++j) {
    const Eigen::VectorXd coeffs = cod.solve(f.cr.col(j));
    if ((images * coeffs - f.cr.col(j)).norm() > 1e-8) {
      throw NumericalDegeneracy("dbar_b_check: CR direction is not tangent to the K-orbit");
    }
    ComplexMatrix x = ComplexMatrix::Zero(w.n(), w.n());
    for (size_t i = 0; i < gens.size(); ++i) x += coeffs(static_cast<Index>(i)) * gens[i];
    out.generators.push_back(std::move(x));
  }
  return out;
}

inline Complex directional_derivative(const SubspaceFunction& f, const Subspace& w,
                                      const ComplexMatrix& x, double step,
                                      const ToleranceConfig& tol) {
  auto at = [&](double s) {
    return f(subspace_from_matrix(w.space(), matrix_exponential(s * x) * w.basis(), tol));
  };
  auto central = [&](double h) { return (at(h) - at(-h)) / (2.0 * h); };
  // Richardson extrapolation with steps h and h/2.
  return (4.0 * central(step / 2.0) - central(step)) / 3.0;
}

}  // namespace detail

/// Largest |∂f/∂h̄_j| = |(D_h f + i D_{ih} f) / 2| over an orthonormal basis
/// {h_j} of the CR space at W, from central differences along K-orbit curves.
[[nodiscard]] inline double dbar_b_check(const SubspaceFunction& f, const Subspace& w,
                                         double step = kDefaultDbarStep,
                                         const ToleranceConfig& tol = {}) {
  if (!(step >= 1e-8 && step <= 1e-2)) {
    throw InvalidArgument("dbar_b_check: step must lie in [1e-8, 1e-2]");
  }
  detail::require_matsuki(w, tol);
  const DbarDirections dirs = detail::cr_generators(w, tol);
  const Complex i1(0.0, 1.0);
  double worst = 0.0;
  for (const auto& x : dirs.generators) {
    const Complex dh = detail::directional_derivative(f, w, x, step, tol);
    const Complex dih = detail::directional_derivative(f, w, i1 * x, step, tol);
    worst = std::max(worst, std::abs(0.5 * (dh + i1 * dih)));
  }
  return worst;
}

/// Which factor of the base a chart coordinate lives on.
enum class BaseFactor { Plus, Minus };

/// Chart coordinate (i, j) of Gr_l(E+) (or Gr_m(E-)) pulled back along the
/// projection, with pivots fixed at the reference point. Optionally conjugated
/// (a non-holomorphic control).
[[nodiscard]] inline SubspaceFunction base_coordinate(const Subspace& reference, BaseFactor factor,
                                                      int i, int j, bool conjugate = false,
                                                      const ToleranceConfig& tol = {}) {
  const HermitianSpace& s = reference.space();
  auto block = [factor, s, tol](const Subspace& w) -> ComplexMatrix {
    if (factor == BaseFactor::Plus) return intersect_positive(w, tol).basis().topRows(s.p());
    return intersect_negative(w, tol).basis().bottomRows(s.q());
  };
  const ComplexMatrix ref_block = block(reference);
  if (ref_block.cols() == 0 || ref_block.rows() == ref_block.cols()) {
    throw InvalidArgument("base_coordinate: base factor is a point and has no coordinates");
  }
  if (i < 0 || i >= ref_block.rows() - ref_block.cols() || j < 0 || j >= ref_block.cols()) {
    throw InvalidArgument("base_coordinate: coordinate index out of range");
  }
  const std::vector<int> pivots = choose_pivots(ref_block);
  return [block, pivots, i, j, conjugate](const Subspace& w) {
    const Complex z = chart_of_frame(block(w), pivots).chart(i, j);
    return conjugate ? std::conj(z) : z;
  };
}

/// Chart coordinate (i, j) of W itself in Gr_k(V), pivots fixed at the
/// reference. Holomorphic on the whole chart, and it varies along fibers.
[[nodiscard]] inline SubspaceFunction ambient_coordinate(const Subspace& reference, int i, int j) {
  const std::vector<int> pivots = choose_pivots(reference.basis());
  return [pivots, i, j](const Subspace& w) { return chart_of_frame(w.basis(), pivots).chart(i, j); };
}

/// Pulled-back base coordinate available at a point, if the base is not a point.
[[nodiscard]] inline std::optional<BaseFactor> coordinate_factor(const MatsukiLabel& label,
                                                                 const HermitianSpace& s) {
  if (label.l >= 1 && label.l < s.p()) return BaseFactor::Plus;
  if (label.m >= 1 && label.m < s.q()) return BaseFactor::Minus;
  return std::nullopt;
}

}  // namespace orbitgeom

#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <string>
#include <string_view>

#include "orbits.hpp"
#include "random.hpp"

namespace orbitgeom {

/// K = S(GL(E+) x GL(E-)), K0 = S(U(E+) x U(E-)), G0 = SU(p,q). GL (all of
/// GL(n, C)) only appears as an action for tangent-rank measurements.
enum class Group { K, K0, G0, GL };

[[nodiscard]] inline std::string_view to_string(Group g) {
  switch (g) {
    case Group::K: return "K";
    case Group::K0: return "K0";
    case Group::G0: return "G0";
    case Group::GL: return "GL";
  }
  return "?";
}

[[nodiscard]] inline Group parse_group(std::string_view s) {
  if (s == "K") return Group::K;
  if (s == "K0") return Group::K0;
  if (s == "G0") return Group::G0;
  if (s == "GL") return Group::GL;
  throw InvalidArgument("unknown group '" + std::string(s) + "' (expected K, K0, G0)");
}

inline constexpr double kMembershipTolerance = 1e-8;
inline constexpr double kWitnessDistanceTolerance = 1e-7;

struct GroupElement {
  Group group = Group::K;
  ComplexMatrix matrix;

  static GroupElement identity(Group g, int n) { return {g, ComplexMatrix::Identity(n, n)}; }
};

/// Defects measured against the defining equations of a group. Only those
/// relevant to the element's group are filled in.
struct MembershipCertificate {
  double det_defect = 0.0;       // |det g - 1|
  double block_defect = 0.0;     // ||off-diagonal blocks||_F
  double unitary_defect = 0.0;   // ||g*g - I||_F
  double form_defect = 0.0;      // ||g*Jg - J||_F
  double inverse_condition = 1.0;

  [[nodiscard]] double residual() const {
    return std::max({det_defect, block_defect, unitary_defect, form_defect});
  }
  [[nodiscard]] bool passes(double tol = kMembershipTolerance) const {
    return residual() < tol && inverse_condition > 1e-12;
  }
};

[[nodiscard]] inline MembershipCertificate certify(const GroupElement& g, const HermitianSpace& s) {
  const ComplexMatrix& m = g.matrix;
  if (m.rows() != s.n() || m.cols() != s.n()) {
    throw InvalidArgument("certify: element has the wrong size");
  }
  MembershipCertificate c;
  c.det_defect = std::abs(m.determinant() - Complex(1.0));
  Eigen::JacobiSVD<ComplexMatrix> svd(m);
  const auto& sv = svd.singularValues();
  c.inverse_condition = sv(sv.size() - 1) / sv(0);
  const int p = s.p();
  const int q = s.q();
  switch (g.group) {
    case Group::K0:
      c.unitary_defect =
          (m.adjoint() * m - ComplexMatrix::Identity(s.n(), s.n())).norm();
      [[fallthrough]];
    case Group::K:
      c.block_defect = std::hypot(m.topRightCorner(p, q).norm(), m.bottomLeftCorner(q, p).norm());
      break;
    case Group::G0:
      c.form_defect = (m.adjoint() * s.apply_form(m) - s.form()).norm();
      break;
    case Group::GL:
      c.det_defect = 0.0;
      break;
  }
  return c;
}

namespace detail {

/// Multiplies by the principal n-th root of 1/det so the determinant becomes
/// 1. A global scalar acts trivially on every Grassmannian.
inline void normalize_determinant(ComplexMatrix& g) {
  const Complex det = g.determinant();
  if (std::abs(det) == 0.0) throw NumericalDegeneracy("normalize_determinant: singular matrix");
  g *= std::exp(-std::log(det) / static_cast<double>(g.rows()));
}

inline ComplexMatrix block_diagonal(const ComplexMatrix& a, const ComplexMatrix& d) {
  ComplexMatrix g = ComplexMatrix::Zero(a.rows() + d.rows(), a.cols() + d.cols());
  g.topLeftCorner(a.rows(), a.cols()) = a;
  g.bottomRightCorner(d.rows(), d.cols()) = d;
  return g;
}

inline ComplexMatrix skew_hermitian_part(const ComplexMatrix& g) {
  return 0.5 * (g - g.adjoint());
}

/// Random element of su(p,q): [[A, B], [B*, D]] with A, D skew-Hermitian,
/// entries standard complex normal scaled by 1/√n, made traceless.
inline ComplexMatrix random_su_pq(const HermitianSpace& s, Rng& rng) {
  const int p = s.p();
  const int q = s.q();
  const double scale = 1.0 / std::sqrt(static_cast<double>(s.n()));
  ComplexMatrix x(s.n(), s.n());
  x.topLeftCorner(p, p) = skew_hermitian_part(rng.ginibre(p, p)) * scale;
  x.bottomRightCorner(q, q) = skew_hermitian_part(rng.ginibre(q, q)) * scale;
  const ComplexMatrix b = rng.ginibre(p, q) * scale;
  x.topRightCorner(p, q) = b;
  x.bottomLeftCorner(q, p) = b.adjoint();
  x -= (x.trace() / static_cast<double>(s.n())) * ComplexMatrix::Identity(s.n(), s.n());
  return x;
}

inline ComplexMatrix sample_matrix(Group g, const HermitianSpace& s, Rng& rng) {
  const int p = s.p();
  const int q = s.q();
  switch (g) {
    case Group::K0: {
      ComplexMatrix up = rng.haar_unitary(p);
      const ComplexMatrix um = rng.haar_unitary(q);
      const Complex det = up.determinant() * um.determinant();
      up *= std::exp(Complex(0.0, -std::arg(det) / p));
      return block_diagonal(up, um);
    }
    case Group::K: {
      const ComplexMatrix ap = ComplexMatrix::Identity(p, p) + 0.5 * rng.ginibre(p, p) / std::sqrt(double(p));
      const ComplexMatrix am = ComplexMatrix::Identity(q, q) + 0.5 * rng.ginibre(q, q) / std::sqrt(double(q));
      ComplexMatrix m = block_diagonal(ap, am);
      Eigen::JacobiSVD<ComplexMatrix> svd(m);
      const auto& sv = svd.singularValues();
      if (sv(sv.size() - 1) < 1e-3 * sv(0)) return ComplexMatrix();  // ill-conditioned: reject
      normalize_determinant(m);
      return m;
    }
    case Group::G0:
      return matrix_exponential(random_su_pq(s, rng));
    case Group::GL:
      break;
  }
  throw InvalidArgument("random_element: cannot sample GL");
}

}  // namespace detail

/// Seeded random element of K, K0 or G0 with a verified membership
/// certificate. K0 samples are Haar; K and G0 samples are not.
[[nodiscard]] inline GroupElement random_element(Group group, const HermitianSpace& space,
                                                 std::uint64_t seed) {
  constexpr int kMaxAttempts = 32;
  for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
    Rng rng(attempt == 0 ? seed : derive_seed(seed, "resample", static_cast<std::uint64_t>(attempt)));
    ComplexMatrix m = detail::sample_matrix(group, space, rng);
    if (m.size() == 0) continue;
    GroupElement g{group, std::move(m)};
    if (certify(g, space).passes(1e-10)) return g;
  }
  throw NumericalDegeneracy("random_element: no certified sample after retries");
}

[[nodiscard]] inline GroupElement compose(const GroupElement& a, const GroupElement& b) {
  return {a.group, a.matrix * b.matrix};
}

[[nodiscard]] inline GroupElement inverse(const GroupElement& g) {
  return {g.group, g.matrix.inverse()};
}

/// span(g · basis(W)).
[[nodiscard]] inline Subspace act(const GroupElement& g, const Subspace& w,
                                  const ToleranceConfig& tol = {}) {
  if (g.matrix.rows() != w.n() || g.matrix.cols() != w.n()) {
    throw InvalidArgument("act: element and subspace dimensions differ");
  }
  return subspace_from_matrix(w.space(), g.matrix * w.basis(), tol);
}

// ---------------------------------------------------------------------------
// Transitivity witnesses

namespace detail {

inline void require_same_space(const Subspace& a, const Subspace& b) {
  if (!(a.space() == b.space())) throw InvalidArgument("witness: subspaces live in different spaces");
  if (a.k() != b.k()) throw LabelMismatch("witness: subspaces have different dimensions");
}

/// Square frame [cols | orthonormal completion]; throws if cols are dependent.
inline ComplexMatrix complete_frame(const ComplexMatrix& cols, const ToleranceConfig& tol) {
  const ComplexMatrix rest = orthogonal_complement(cols, tol);
  if (cols.cols() + rest.cols() != cols.rows()) {
    throw NumericalDegeneracy("witness: adapted frame is rank deficient");
  }
  ComplexMatrix f(cols.rows(), cols.rows());
  f << cols, rest;
  return f;
}

inline ComplexMatrix hstack(std::initializer_list<const ComplexMatrix*> parts, Index rows) {
  Index cols = 0;
  for (const auto* p : parts) cols += p->cols();
  ComplexMatrix out(rows, cols);
  Index at = 0;
  for (const auto* p : parts) {
    out.middleCols(at, p->cols()) = *p;
    at += p->cols();
  }
  return out;
}

/// Applies the witness, checks it, and returns it; a failed check throws.
inline GroupElement self_checked(GroupElement g, const Subspace& w1, const Subspace& w2,
                                 const ToleranceConfig& tol) {
  const double dist = distance(act(g, w1, tol), w2);
  const MembershipCertificate cert = certify(g, w1.space());
  if (!(dist < kWitnessDistanceTolerance) || !cert.passes()) {
    throw NumericalDegeneracy("witness self-check failed: distance " + std::to_string(dist) +
                              ", membership residual " + std::to_string(cert.residual()));
  }
  return g;
}

/// Polar factor U V* of a nearly unitary matrix.
inline ComplexMatrix nearest_unitary(const ComplexMatrix& m) {
  Eigen::JacobiSVD<ComplexMatrix> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
  return svd.matrixU() * svd.matrixV().adjoint();
}

inline ComplexMatrix inverse_sqrt_hpd(const ComplexMatrix& h) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(0.5 * (h + h.adjoint()));
  const Eigen::VectorXd ev = es.eigenvalues();
  if (ev.size() > 0 && ev(0) <= 0.0) throw NumericalDegeneracy("inverse_sqrt_hpd: not positive");
  return es.eigenvectors() * ev.cwiseSqrt().cwiseInverse().asDiagonal() *
         es.eigenvectors().adjoint();
}

/// Block-diagonal unitary mapping a Matsuki point to the basepoint of its orbit.
inline ComplexMatrix canonicalizing_unitary(const Subspace& w, const ToleranceConfig& tol) {
  const HermitianSpace& s = w.space();
  const int p = s.p();
  const int q = s.q();
  const Splitting sp = split(w, tol);
  ComplexMatrix x = sp.complement.topRows(p);
  ComplexMatrix y = sp.complement.bottomRows(q);
  if (x.cols() > 0) {
    // Isotropy gives X*X = Y*Y, so one normalization makes both frames orthonormal.
    const ComplexMatrix t = inverse_sqrt_hpd(x.adjoint() * x);
    x = x * t;
    y = y * t;
  }
  const ComplexMatrix pp = sp.plus.basis().topRows(p);
  const ComplexMatrix mm = sp.minus.basis().bottomRows(q);
  const ComplexMatrix fp = nearest_unitary(complete_frame(hstack({&pp, &x}, p), tol));
  const ComplexMatrix fm = nearest_unitary(complete_frame(hstack({&mm, &y}, q), tol));
  return block_diagonal(fp.adjoint(), fm.adjoint());
}

/// Frame F of V whose first k columns span W and with
/// F* J F = diag(I_a, -I_b, [[0, I_c], [I_c, 0]], I_{p-a-c}, -I_{q-b-c}).
inline ComplexMatrix witt_frame(const Subspace& w, const G0Label& label, const ToleranceConfig& tol) {
  const HermitianSpace& s = w.space();
  const Index n = s.n();
  const ComplexMatrix& b = w.basis();

  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(gram(w));
  const Eigen::VectorXd ev = es.eigenvalues();
  const double thr = tol.zero_eig_threshold(ev.size() ? ev.cwiseAbs().maxCoeff() : 0.0);
  ComplexMatrix pos(n, label.a), neg(n, label.b), null(n, label.c);
  Index ip = 0, in = 0, iz = 0;
  // Eigenvalues ascend: negatives first, then null, then positives. Positives
  // are stored largest |h| first.
  for (Index i = ev.size() - 1; i >= 0; --i) {
    const ComplexVector v = b * es.eigenvectors().col(i);
    if (ev(i) > thr) {
      if (ip >= label.a) throw LabelMismatch("witt_frame: signature changed");
      pos.col(ip++) = v / std::sqrt(ev(i));
    }
  }
  for (Index i = 0; i < ev.size(); ++i) {
    const ComplexVector v = b * es.eigenvectors().col(i);
    if (ev(i) < -thr) {
      if (in >= label.b) throw LabelMismatch("witt_frame: signature changed");
      neg.col(in++) = v / std::sqrt(-ev(i));
    } else if (ev(i) <= thr) {
      if (iz >= label.c) throw LabelMismatch("witt_frame: signature changed");
      null.col(iz++) = v;
    }
  }
  if (ip != label.a || in != label.b || iz != label.c) {
    throw LabelMismatch("witt_frame: signature changed");
  }

  // Hyperbolic partners for the null directions, inside the h-complement of
  // the nondegenerate part.
  const ComplexMatrix nondeg = hstack({&pos, &neg}, n);
  const ComplexMatrix q_frame =
      nondeg.cols() == 0 ? ComplexMatrix(ComplexMatrix::Identity(n, n))
                         : null_space(nondeg.adjoint() * s.form(), tol);
  ComplexMatrix dual(n, label.c);
  if (label.c > 0) {
    const ComplexMatrix pairing = null.adjoint() * s.apply_form(q_frame);  // c x d
    if (numeric_rank(pairing, tol) < label.c) {
      throw NumericalDegeneracy("witt_frame: null directions admit no dual partners");
    }
    const ComplexMatrix coeffs =
        pairing.adjoint() * (pairing * pairing.adjoint()).partialPivLu().inverse();
    dual = q_frame * coeffs;
    const ComplexMatrix hz = dual.adjoint() * s.apply_form(dual);
    dual -= null * (0.5 * hz);
  }

  // h-orthonormal completion of the remaining nondegenerate complement.
  const ComplexMatrix used = hstack({&pos, &neg, &null, &dual}, n);
  const ComplexMatrix rest = null_space(used.adjoint() * s.form(), tol);
  if (rest.cols() != n - used.cols()) {
    throw NumericalDegeneracy("witt_frame: complement has the wrong dimension");
  }
  const int rest_pos = s.p() - label.a - label.c;
  const int rest_neg = s.q() - label.b - label.c;
  ComplexMatrix tpos(n, rest_pos), tneg(n, rest_neg);
  if (rest.cols() > 0) {
    const ComplexMatrix gr = rest.adjoint() * s.apply_form(rest);
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> er(0.5 * (gr + gr.adjoint()));
    const Eigen::VectorXd rv = er.eigenvalues();
    Index jp = 0, jn = 0;
    for (Index i = rv.size() - 1; i >= 0; --i) {
      const ComplexVector v = rest * er.eigenvectors().col(i);
      if (rv(i) > 0.0 && jp < rest_pos) {
        tpos.col(jp++) = v / std::sqrt(rv(i));
      } else if (rv(i) < 0.0 && jn < rest_neg) {
        tneg.col(jn++) = v / std::sqrt(-rv(i));
      } else {
        throw NumericalDegeneracy("witt_frame: complement has the wrong signature");
      }
    }
  }
  return hstack({&pos, &neg, &null, &dual, &tpos, &tneg}, n);
}

}  // namespace detail

/// Block-diagonal g with g·W1 = W2, for W1, W2 in the same K-orbit.
///
/// Both subspaces are split as (W ∩ E+) ⊕ (W ∩ E-) ⊕ W_comp with W_comp the
/// graph of A_i: U+^i -> U-^i. g+ maps the adapted frame [W∩E+ | π+ W_comp | rest]
/// of W1 to that of W2, and g- does the same with π- W_comp, which enforces
/// g- A1 = A2 g+. The determinant is fixed by a global scalar.
[[nodiscard]] inline GroupElement transitivity_witness_k(const Subspace& w1, const Subspace& w2,
                                                         const ToleranceConfig& tol = {}) {
  detail::require_same_space(w1, w2);
  const HermitianSpace& s = w1.space();
  const int p = s.p();
  const int q = s.q();
  const Splitting s1 = split(w1, tol);
  const Splitting s2 = split(w2, tol);
  if (s1.plus.k() != s2.plus.k() || s1.minus.k() != s2.minus.k()) {
    throw LabelMismatch("transitivity_witness_k: K-labels " +
                        to_string(KLabel{s1.plus.k(), s1.minus.k()}) + " and " +
                        to_string(KLabel{s2.plus.k(), s2.minus.k()}) + " differ");
  }
  auto adapted = [&](const Splitting& sp, bool positive) {
    const ComplexMatrix fixed =
        positive ? ComplexMatrix(sp.plus.basis().topRows(p)) : ComplexMatrix(sp.minus.basis().bottomRows(q));
    const ComplexMatrix graph =
        positive ? ComplexMatrix(sp.complement.topRows(p)) : ComplexMatrix(sp.complement.bottomRows(q));
    return detail::complete_frame(detail::hstack({&fixed, &graph}, fixed.rows()), tol);
  };
  const ComplexMatrix gp = adapted(s2, true) * adapted(s1, true).inverse();
  const ComplexMatrix gm = adapted(s2, false) * adapted(s1, false).inverse();
  ComplexMatrix g = detail::block_diagonal(gp, gm);
  detail::normalize_determinant(g);
  return detail::self_checked({Group::K, std::move(g)}, w1, w2, tol);
}

/// Block-diagonal unitary u with u·W1 = W2, for two points of one Matsuki orbit.
/// Each point is moved unitarily onto the orbit's basepoint; the witness is
/// u2^{-1} u1.
[[nodiscard]] inline GroupElement transitivity_witness_k0(const Subspace& w1, const Subspace& w2,
                                                          const ToleranceConfig& tol = {}) {
  detail::require_same_space(w1, w2);
  const Classification c1 = matsuki_classify(w1, tol);
  const Classification c2 = matsuki_classify(w2, tol);
  if (!c1.matsuki || !c2.matsuki) {
    throw NotMatsuki("transitivity_witness_k0: input is not on a Matsuki orbit");
  }
  if (*c1.matsuki != *c2.matsuki) {
    throw LabelMismatch("transitivity_witness_k0: " + to_string(*c1.matsuki) + " vs " +
                        to_string(*c2.matsuki));
  }
  const ComplexMatrix u1 = detail::canonicalizing_unitary(w1, tol);
  const ComplexMatrix u2 = detail::canonicalizing_unitary(w2, tol);
  ComplexMatrix u = u2.adjoint() * u1;
  detail::normalize_determinant(u);
  return detail::self_checked({Group::K0, std::move(u)}, w1, w2, tol);
}

/// g in SU(p,q) with g·W1 = W2 for subspaces with equal restricted-form
/// signature, built as the change of basis between two Witt-completed frames.
[[nodiscard]] inline GroupElement transitivity_witness_g0(const Subspace& w1, const Subspace& w2,
                                                          const ToleranceConfig& tol = {}) {
  detail::require_same_space(w1, w2);
  const G0Label l1 = g0_invariants(w1, tol);
  const G0Label l2 = g0_invariants(w2, tol);
  if (l1 != l2) {
    throw LabelMismatch("transitivity_witness_g0: G0-labels " + to_string(l1) + " and " +
                        to_string(l2) + " differ");
  }
  const ComplexMatrix f1 = detail::witt_frame(w1, l1, tol);
  const ComplexMatrix f2 = detail::witt_frame(w2, l2, tol);
  ComplexMatrix g = f1.transpose().partialPivLu().solve(f2.transpose()).transpose();
  detail::normalize_determinant(g);
  return detail::self_checked({Group::G0, std::move(g)}, w1, w2, tol);
}

[[nodiscard]] inline GroupElement transitivity_witness(Group group, const Subspace& w1,
                                                       const Subspace& w2,
                                                       const ToleranceConfig& tol = {}) {
  switch (group) {
    case Group::K: return transitivity_witness_k(w1, w2, tol);
    case Group::K0: return transitivity_witness_k0(w1, w2, tol);
    case Group::G0: return transitivity_witness_g0(w1, w2, tol);
    case Group::GL: break;
  }
  throw InvalidArgument("transitivity_witness: no witness construction for GL");
}

}  // namespace orbitgeom

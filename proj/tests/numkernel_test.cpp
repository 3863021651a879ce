#include <array>
#include <cmath>

#include <gtest/gtest.h>

#include "support.hpp"

using namespace orbitgeom;
using testing_support::e;

namespace {

ComplexMatrix mat2(Complex a, Complex b, Complex c, Complex d) {
  ComplexMatrix m(2, 2);
  m << a, b, c, d;
  return m;
}

ComplexMatrix diag(std::initializer_list<double> xs) {
  ComplexMatrix m = ComplexMatrix::Zero(static_cast<Index>(xs.size()), static_cast<Index>(xs.size()));
  Index i = 0;
  for (double x : xs) {
    m(i, i) = x;
    ++i;
  }
  return m;
}

}  // namespace

TEST(NumericRank, Examples) {
  EXPECT_EQ(numeric_rank(ComplexMatrix::Identity(2, 2)), 2);
  EXPECT_EQ(numeric_rank(mat2(1, 1, 1, 1)), 1);
  EXPECT_EQ(numeric_rank(HermitianSpace(2, 6).form()), 8);
  EXPECT_EQ(numeric_rank(ComplexMatrix::Zero(3, 3)), 0);
}

TEST(NumericRank, InvariantUnderUnitaryMultiplication) {
  for (std::uint64_t s = 0; s < 100; ++s) {
    Rng rng(derive_seed(7, "rank-invariance", s));
    const ComplexMatrix low = rng.ginibre(6, 2) * rng.ginibre(2, 5);
    const int r = numeric_rank(low);
    ASSERT_EQ(r, 2);
    EXPECT_EQ(numeric_rank(rng.haar_unitary(6) * low * rng.haar_unitary(5)), r);
  }
}

TEST(NumericRank, RejectsNonFinite) {
  ComplexMatrix m = ComplexMatrix::Identity(2, 2);
  m(0, 1) = std::nan("");
  EXPECT_THROW((void)numeric_rank(m), InvalidArgument);
}

TEST(Tolerance, ThresholdsMonotoneAndValidated) {
  ToleranceConfig a{1e-9}, b{1e-6};
  EXPECT_LT(a.rank_threshold(2.0, 3, 3), b.rank_threshold(2.0, 3, 3));
  EXPECT_LT(a.zero_eig_threshold(2.0), b.zero_eig_threshold(2.0));
  EXPECT_DOUBLE_EQ(a.zero_eig_threshold(1e-3), 1e-9);
  EXPECT_THROW(validate(ToleranceConfig{0.0}), InvalidArgument);
  EXPECT_THROW(validate(ToleranceConfig{-1.0}), InvalidArgument);
}

TEST(OrthonormalBasis, Examples) {
  ComplexMatrix m(2, 1);
  m << 2, 0;
  const ComplexMatrix q = orthonormal_basis(m);
  ASSERT_EQ(q.cols(), 1);
  EXPECT_NEAR(std::abs(q(0, 0) - Complex(1.0)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(q(1, 0)), 0.0, 1e-15);

  const ComplexMatrix q2 = orthonormal_basis(mat2(1, 1, 0, 0));
  ASSERT_EQ(q2.cols(), 1);
  EXPECT_NEAR(std::abs(q2(0, 0) - Complex(1.0)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(q2(1, 0)), 0.0, 1e-15);
}

TEST(OrthonormalBasis, GinibreSampleIsOrthonormal) {
  Rng rng(11);
  const ComplexMatrix g = rng.ginibre(8, 3);
  const ComplexMatrix q = orthonormal_basis(g);
  ASSERT_EQ(q.cols(), 3);
  EXPECT_LT((q.adjoint() * q - ComplexMatrix::Identity(3, 3)).norm(), 1e-12);
  EXPECT_LT(subspace_distance(q, orthonormal_basis(g * Rng(3).ginibre(3, 3))), 1e-10);
}

TEST(OrthonormalBasis, PhaseConventionMakesLargestEntryRealPositive) {
  Rng rng(5);
  for (int t = 0; t < 20; ++t) {
    const ComplexMatrix q = orthonormal_basis(rng.ginibre(5, 2));
    for (Index j = 0; j < q.cols(); ++j) {
      Index arg = 0;
      q.col(j).cwiseAbs().maxCoeff(&arg);
      EXPECT_NEAR(q(arg, j).imag(), 0.0, 1e-14);
      EXPECT_GT(q(arg, j).real(), 0.0);
    }
  }
}

TEST(SubspaceIntersection, Examples) {
  const ComplexMatrix a = testing_support::columns({e(3, 1), e(3, 2)});
  const ComplexMatrix b = testing_support::columns({e(3, 2), e(3, 3)});
  const ComplexMatrix i = subspace_intersection(a, b);
  ASSERT_EQ(i.cols(), 1);
  EXPECT_LT(subspace_distance(i, testing_support::columns({e(3, 2)})), 1e-12);

  EXPECT_LT(subspace_distance(subspace_intersection(a, a), a), 1e-12);
  EXPECT_EQ(subspace_intersection(testing_support::columns({e(3, 1)}),
                                  testing_support::columns({e(3, 2)}))
                .cols(),
            0);
}

TEST(SubspaceIntersection, ContainedInBothAndDimensionFormula) {
  for (std::uint64_t s = 0; s < 50; ++s) {
    Rng rng(derive_seed(1, "intersection", s));
    const ComplexMatrix common = rng.ginibre(7, 2);
    ComplexMatrix fa(7, 4), fb(7, 4);
    fa << common, rng.ginibre(7, 2);
    fb << common, rng.ginibre(7, 2);
    const ComplexMatrix qa = orthonormal_basis(fa);
    const ComplexMatrix qb = orthonormal_basis(fb);
    const ComplexMatrix i = subspace_intersection(qa, qb);
    ComplexMatrix both(7, 8);
    both << qa, qb;
    EXPECT_EQ(i.cols(), numeric_rank(qa) + numeric_rank(qb) - numeric_rank(both));
    ASSERT_EQ(i.cols(), 2);
    EXPECT_LT(((ComplexMatrix::Identity(7, 7) - qa * qa.adjoint()) * i).norm(), 1e-9);
    EXPECT_LT(((ComplexMatrix::Identity(7, 7) - qb * qb.adjoint()) * i).norm(), 1e-9);
  }
}

TEST(HermitianEigenvalues, Examples) {
  EXPECT_EQ(hermitian_eigenvalues(diag({1, -1})), (std::vector<double>{-1.0, 1.0}));
  EXPECT_EQ(hermitian_eigenvalues(ComplexMatrix::Zero(1, 1)), std::vector<double>{0.0});
  const auto ev = hermitian_eigenvalues(gram(basepoint(MatsukiLabel{1, 1, 1}, HermitianSpace(2, 6))));
  ASSERT_EQ(ev.size(), 3u);
  EXPECT_NEAR(ev[0], -1.0, 1e-14);
  EXPECT_NEAR(ev[1], 0.0, 1e-14);
  EXPECT_NEAR(ev[2], 1.0, 1e-14);
}

TEST(HermitianEigenvalues, RejectsNonHermitian) {
  EXPECT_THROW((void)hermitian_eigenvalues(mat2(1, 1, 0, 1)), CallerBug);
  EXPECT_THROW((void)hermitian_eigenvalues(ComplexMatrix::Zero(2, 3)), InvalidArgument);
  EXPECT_NO_THROW((void)hermitian_eigenvalues(mat2(1, 1e-14, 0, 1)));
}

TEST(Sylvester, Examples) {
  const Signature a = sylvester_signature(diag({1, -1}));
  EXPECT_EQ((std::array{a.positive, a.negative, a.zero}), (std::array{1, 1, 0}));
  const Signature b = sylvester_signature(ComplexMatrix::Zero(1, 1));
  EXPECT_EQ((std::array{b.positive, b.negative, b.zero}), (std::array{0, 0, 1}));
  const Signature c = sylvester_signature(diag({2, 3, -5, 0}));
  EXPECT_EQ((std::array{c.positive, c.negative, c.zero}), (std::array{2, 1, 1}));
}

TEST(Sylvester, LawOfInertia) {
  for (std::uint64_t s = 0; s < 100; ++s) {
    Rng rng(derive_seed(3, "sylvester", s));
    const ComplexMatrix h = diag({2.0, 1.0, -1.5, -3.0, 0.0});
    const ComplexMatrix m = rng.ginibre(5, 5) + 3.0 * ComplexMatrix::Identity(5, 5);
    const Signature before = sylvester_signature(h);
    const Signature after = sylvester_signature(m.adjoint() * h * m);
    EXPECT_EQ(after.positive, before.positive);
    EXPECT_EQ(after.negative, before.negative);
    EXPECT_EQ(after.zero, before.zero);
  }
}

TEST(MatrixExponential, Examples) {
  EXPECT_LT((matrix_exponential(ComplexMatrix::Zero(3, 3)) - ComplexMatrix::Identity(3, 3)).norm(),
            1e-15);
  const double t = M_PI / 2;
  const ComplexMatrix r = matrix_exponential(mat2(0, t, -t, 0));
  EXPECT_LT((r - mat2(0, 1, -1, 0)).norm(), 1e-12);
}

TEST(MatrixExponential, InverseRoundTrip) {
  for (std::uint64_t s = 0; s < 20; ++s) {
    Rng rng(derive_seed(4, "exp", s));
    ComplexMatrix x = rng.ginibre(6, 6);
    x = (x - x.adjoint()).eval();
    x *= 10.0 / operator_norm(x);
    const ComplexMatrix prod = matrix_exponential(x) * matrix_exponential(-x);
    EXPECT_LT((prod - ComplexMatrix::Identity(6, 6)).norm(), 1e-10);
  }
}

TEST(SubspaceDistance, Examples) {
  const ComplexMatrix a = testing_support::columns({e(2, 1)});
  EXPECT_DOUBLE_EQ(subspace_distance(a, a), 0.0);
  EXPECT_NEAR(subspace_distance(a, testing_support::columns({e(2, 2)})), 1.0, 1e-15);
  const double t = M_PI / 6;
  const ComplexMatrix b = testing_support::columns({std::cos(t) * e(2, 1) + std::sin(t) * e(2, 2)});
  EXPECT_NEAR(subspace_distance(a, b), 0.5, 1e-14);
  EXPECT_THROW((void)subspace_distance(a, ComplexMatrix::Identity(2, 2)), InvalidArgument);
}

TEST(SubspaceDistance, Pseudometric) {
  for (std::uint64_t s = 0; s < 50; ++s) {
    Rng rng(derive_seed(2, "pseudometric", s));
    const ComplexMatrix a = orthonormal_basis(rng.ginibre(6, 2));
    const ComplexMatrix b = orthonormal_basis(rng.ginibre(6, 2));
    const ComplexMatrix c = orthonormal_basis(rng.ginibre(6, 2));
    EXPECT_EQ(subspace_distance(a, b), subspace_distance(b, a));
    EXPECT_LE(subspace_distance(a, c), subspace_distance(a, b) + subspace_distance(b, c) + 1e-12);
  }
}

TEST(Seeds, DerivedSeedsAreDeterministicAndDistinct) {
  EXPECT_EQ(derive_seed(1, "x", 2), derive_seed(1, "x", 2));
  EXPECT_NE(derive_seed(1, "x", 2), derive_seed(1, "x", 3));
  EXPECT_NE(derive_seed(1, "x", 2), derive_seed(1, "y", 2));
  EXPECT_NE(derive_seed(1, "x", 2), derive_seed(2, "x", 2));
  Rng a(42), b(42);
  EXPECT_EQ(a.ginibre(3, 3), b.ginibre(3, 3));
}

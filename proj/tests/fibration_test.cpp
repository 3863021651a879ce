#include <gtest/gtest.h>

#include "support.hpp"

using namespace orbitgeom;
using testing_support::e;
using testing_support::span;

TEST(Project, Examples) {
  const HermitianSpace s(2, 6);
  const BasePoint b = project(basepoint(MatsukiLabel{1, 1, 1}, s));
  EXPECT_LT(distance(b.plus, span(s, {e(8, 1)})), 1e-15);
  EXPECT_LT(distance(b.minus, span(s, {e(8, 3)})), 1e-15);
  const BasePoint b0 = project(basepoint(MatsukiLabel{0, 1, 2}, s));
  EXPECT_EQ(b0.plus.k(), 0);
  EXPECT_EQ(b0.minus.k(), 1);
}

TEST(Project, KEquivariance) {
  const HermitianSpace s(2, 6);
  const Subspace w = act(random_element(Group::K, s, 1), basepoint(MatsukiLabel{1, 1, 1}, s));
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const GroupElement g = random_element(Group::K, s, derive_seed(seed, "equivariance", 0));
    EXPECT_LT(base_distance(project(act(g, w)), act(g, project(w))), 1e-9);
  }
}

TEST(ComplementSpace, Examples) {
  const HermitianSpace s(2, 6);
  const ComplementSpace c = complement_space(project(basepoint(MatsukiLabel{1, 1, 1}, s)));
  EXPECT_EQ(c.dim(), 6);
  EXPECT_LT(subspace_distance(c.basis, testing_support::columns({e(8, 2), e(8, 4), e(8, 5), e(8, 6),
                                                                 e(8, 7), e(8, 8)})),
            1e-14);
  const Signature sig = sylvester_signature(c.induced_form);
  EXPECT_EQ((std::array{sig.positive, sig.negative, sig.zero}), (std::array{1, 5, 0}));

  const ComplementSpace full = complement_space(project(basepoint(MatsukiLabel{0, 0, 2}, s)));
  EXPECT_EQ(full.dim(), 8);
}

TEST(ComplementSpace, RandomBaseSignature) {
  const HermitianSpace s(2, 6);
  const Subspace b = basepoint(MatsukiLabel{1, 1, 1}, s);
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const ComplementSpace c = complement_space(project(act(random_element(Group::K, s, seed), b)));
    const Signature sig = sylvester_signature(c.induced_form);
    EXPECT_EQ(sig.positive, 1);
    EXPECT_EQ(sig.negative, 5);
    EXPECT_EQ(sig.zero, 0);
  }
}

TEST(FiberSampler, IsotropicLines) {
  const HermitianSpace s(2, 6);
  const BasePoint base = project(basepoint(MatsukiLabel{1, 1, 1}, s));
  const ComplementSpace c = complement_space(base);
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const Subspace f = fiber_sample_isotropic(c, 1, seed);
    EXPECT_LT(gram(f).norm(), 1e-10);
    EXPECT_LT(quadric_residual(s, f.basis().col(0)), 1e-12);
    // (e2 + v)/√2 with v a unit vector of span(e4..e8).
    EXPECT_NEAR(std::abs(f.basis()(1, 0)), M_SQRT1_2, 1e-12);
    EXPECT_LT(std::abs(f.basis()(0, 0)) + std::abs(f.basis()(2, 0)), 1e-15);
    const Subspace w = assemble(base, f);
    const Classification cl = matsuki_classify(w);
    ASSERT_TRUE(cl.matsuki.has_value());
    EXPECT_EQ(*cl.matsuki, (MatsukiLabel{1, 1, 1}));
  }
}

TEST(FiberSampler, IsotropicPlanesAreNull) {
  const HermitianSpace s(3, 4);
  const ComplementSpace c = complement_space(project(basepoint(MatsukiLabel{0, 1, 0}, s)));
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const Subspace f = fiber_sample_isotropic(c, 3, seed);
    EXPECT_LT(gram(f).norm(), 1e-10);
    EXPECT_EQ(g0_invariants(f), (G0Label{0, 0, 3}));
  }
  EXPECT_THROW((void)fiber_sample_isotropic(c, 4, 0), InvalidArgument);
}

TEST(FiberSampler, SignatureOneOneLinesHaveEqualModulusEntries) {
  const HermitianSpace s(1, 1);
  const ComplementSpace c = complement_space(project(basepoint(MatsukiLabel{0, 0, 1}, s)));
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const ComplexMatrix v = fiber_sample_isotropic(c, 1, seed).basis();
    EXPECT_NEAR(std::abs(v(0, 0)), std::abs(v(1, 0)), 1e-12);
  }
}

TEST(FiberSampler, OpenFiber) {
  const HermitianSpace s(2, 6);
  const BasePoint base = project(basepoint(MatsukiLabel{1, 1, 1}, s));
  const ComplementSpace c = complement_space(base);
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const Subspace f = fiber_sample_open(c, 1, seed);
    EXPECT_EQ(k_invariants(f), (KLabel{0, 0}));
    EXPECT_EQ(k_invariants(assemble(base, f)), (KLabel{1, 1}));
  }
  EXPECT_EQ(fiber_sample_open(c, 0, 0).k(), 0);
  EXPECT_THROW((void)fiber_sample_open(c, 2, 0), InvalidArgument);
}

TEST(Assemble, RoundTrip) {
  const HermitianSpace s(2, 6);
  for (const auto& ml : feasible_labels(2, 6, 3).matsuki_labels) {
    const Subspace b = basepoint(ml, s);
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      const Subspace w = act(random_element(Group::K0, s, seed), b);
      const BasePoint base = project(w);
      const Subspace comp = fiber_component(w);
      EXPECT_EQ(comp.k(), ml.r);
      EXPECT_LT(distance(assemble(base, comp), w), 1e-9);
      EXPECT_LT(base_distance(project(assemble(base, comp)), base), 1e-9);
    }
  }
}

TEST(Assemble, Examples) {
  const HermitianSpace s(2, 6);
  const BasePoint base{span(s, {e(8, 1)}), span(s, {e(8, 3)})};
  const Subspace w = assemble(base, span(s, {e(8, 2) + e(8, 4)}));
  EXPECT_LT(distance(w, basepoint(MatsukiLabel{1, 1, 1}, s)), 1e-15);
  const Subspace mixed = assemble(base, span(s, {e(8, 2) + 2.0 * e(8, 4)}));
  EXPECT_FALSE(matsuki_classify(mixed).matsuki.has_value());
  EXPECT_THROW((void)assemble(base, span(s, {e(8, 1) + e(8, 4)})), InvalidArgument);
}

TEST(QuadricResidual, Examples) {
  const HermitianSpace s(2, 6);
  EXPECT_NEAR(quadric_residual(s, e(8, 2) + e(8, 4)), 0.0, 1e-15);
  EXPECT_NEAR(quadric_residual(s, e(8, 2)), 1.0, 1e-15);
  EXPECT_THROW((void)quadric_residual(s, ComplexVector::Zero(8)), InvalidArgument);
}

TEST(TangentDimension, Examples) {
  const HermitianSpace s(2, 6);
  const Subspace w = testing_support::random_subspace(s, 3, 4);
  EXPECT_EQ(tangent_dimension(w, Group::GL), 30);
  EXPECT_EQ(tangent_dimension(basepoint(KLabel{1, 1}, s, 3), Group::K), 22);
  EXPECT_EQ(tangent_dimension(basepoint(MatsukiLabel{1, 1, 1}, s), Group::K0), 21);
}

TEST(TangentDimension, KOrbitMatchesFormulaEverywhere) {
  for (auto [p, q, k] : {std::array{2, 6, 3}, std::array{2, 2, 3}, std::array{1, 1, 1},
                         std::array{3, 3, 2}}) {
    const HermitianSpace s(p, q);
    for (const auto& kl : feasible_labels(p, q, k).k_labels) {
      const Subspace b = basepoint(kl, s, k);
      for (std::uint64_t seed = 0; seed < 5; ++seed) {
        const Subspace w = act(random_element(Group::K, s, seed), b);
        EXPECT_EQ(tangent_dimension(w, Group::K), 2 * dim_k_orbit(kl, p, q, k));
      }
    }
  }
}

TEST(TangentDimension, K0OrbitSplitsIntoBaseAndFiber) {
  for (auto [p, q, k] : {std::array{2, 6, 3}, std::array{2, 2, 3}, std::array{3, 3, 2}}) {
    const HermitianSpace s(p, q);
    for (const auto& ml : feasible_labels(p, q, k).matsuki_labels) {
      const Subspace w = act(random_element(Group::K0, s, 9), basepoint(ml, s));
      const TangentReport t = cr_dimension(w);
      EXPECT_EQ(t.real_dim, 2 * t.base_dim_c + measured_fiber_dimension(w)) << to_string(ml);
    }
  }
}

TEST(CrDimension, Examples) {
  const HermitianSpace s(2, 6);
  const TangentReport a = cr_dimension(basepoint(MatsukiLabel{1, 2, 0}, s));
  EXPECT_EQ(a.cr_dim, 9);
  EXPECT_EQ(a.cr_codim, 0);
  const TangentReport b = cr_dimension(basepoint(MatsukiLabel{1, 1, 1}, s));
  EXPECT_EQ(b.real_dim, 21);
  EXPECT_EQ(b.cr_dim, 10);
  EXPECT_EQ(b.cr_codim, 1);
  const TangentReport c = cr_dimension(basepoint(MatsukiLabel{1, 1, 1}, HermitianSpace(2, 2)));
  EXPECT_EQ(c.cr_dim, 2);
  EXPECT_EQ(c.cr_codim, 1);
  EXPECT_EQ(c.cr_codim, c.real_dim - 2 * c.cr_dim);
}

TEST(CrDimension, ConstantAlongOrbits) {
  const HermitianSpace s(2, 6);
  for (const auto& ml : feasible_labels(2, 6, 3).matsuki_labels) {
    const Subspace b = basepoint(ml, s);
    const TangentReport ref = cr_dimension(b);
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      const TangentReport t = cr_dimension(act(random_element(Group::K0, s, seed), b));
      EXPECT_EQ(t.real_dim, ref.real_dim);
      EXPECT_EQ(t.cr_dim, ref.cr_dim);
    }
    if (ml.r == 0) EXPECT_EQ(ref.cr_codim, 0);
  }
}

TEST(CrDimension, RejectsMixedPoints) {
  const HermitianSpace s(2, 6);
  const Subspace mixed = span(s, {e(8, 1), e(8, 2) + 2.0 * e(8, 4), e(8, 3)});
  EXPECT_THROW((void)cr_dimension(mixed), NotMatsuki);
  EXPECT_THROW((void)dbar_b_check([](const Subspace&) { return Complex(0.0); }, mixed), NotMatsuki);
}

TEST(Dbar, Separation) {
  const HermitianSpace s(2, 6);
  const Subspace b = basepoint(MatsukiLabel{1, 1, 1}, s);
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Subspace w = act(random_element(Group::K0, s, seed), b);
    const double holo = dbar_b_check(base_coordinate(w, BaseFactor::Plus, 0, 0), w);
    const double conj = dbar_b_check(base_coordinate(w, BaseFactor::Plus, 0, 0, true), w);
    EXPECT_LT(holo, 1e-6);
    EXPECT_GT(conj, 1e-2);
    EXPECT_GE(conj, 1e4 * holo);
    EXPECT_LT(dbar_b_check([](const Subspace&) { return Complex(2.0, -1.0); }, w), 1e-12);
  }
}

TEST(Dbar, TotallyRealFiber) {
  const HermitianSpace s(2, 2);
  const Subspace b = basepoint(MatsukiLabel{1, 1, 1}, s);
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const Subspace w = act(random_element(Group::K0, s, seed), b);
    const double holo = dbar_b_check(base_coordinate(w, BaseFactor::Minus, 0, 0), w);
    const double conj = dbar_b_check(base_coordinate(w, BaseFactor::Minus, 0, 0, true), w);
    EXPECT_LT(holo, 1e-6);
    EXPECT_GE(conj, 1e4 * holo);
  }
}

TEST(Dbar, StepValidation) {
  const HermitianSpace s(2, 6);
  const Subspace b = basepoint(MatsukiLabel{1, 1, 1}, s);
  const auto f = [](const Subspace&) { return Complex(1.0); };
  EXPECT_THROW((void)dbar_b_check(f, b, 1e-9), InvalidArgument);
  EXPECT_THROW((void)dbar_b_check(f, b, 0.1), InvalidArgument);
  EXPECT_NO_THROW((void)dbar_b_check(f, b, 1e-4));
}

TEST(Dbar, BaseCoordinateRequiresNontrivialFactor) {
  const HermitianSpace s(2, 6);
  const Subspace w = basepoint(MatsukiLabel{2, 1, 0}, s);
  EXPECT_THROW((void)base_coordinate(w, BaseFactor::Plus, 0, 0), InvalidArgument);
  EXPECT_EQ(coordinate_factor(MatsukiLabel{2, 1, 0}, s), BaseFactor::Minus);
  EXPECT_FALSE(coordinate_factor(MatsukiLabel{0, 0, 2}, s).has_value());
}

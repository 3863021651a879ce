#pragma once

#include <initializer_list>

#include <orbitgeom/orbitgeom.hpp>

namespace testing_support {

using orbitgeom::Complex;
using orbitgeom::ComplexMatrix;
using orbitgeom::ComplexVector;
using orbitgeom::HermitianSpace;
using orbitgeom::Subspace;

/// Standard basis vector e_i, 1-based like the usual notation.
inline ComplexVector e(int n, int i) {
  ComplexVector v = ComplexVector::Zero(n);
  v(i - 1) = 1.0;
  return v;
}

inline ComplexMatrix columns(std::initializer_list<ComplexVector> cols) {
  const auto n = cols.begin()->size();
  ComplexMatrix m(n, static_cast<orbitgeom::Index>(cols.size()));
  orbitgeom::Index j = 0;
  for (const auto& c : cols) m.col(j++) = c;
  return m;
}

inline Subspace span(const HermitianSpace& s, std::initializer_list<ComplexVector> cols) {
  return orbitgeom::subspace_from_matrix(s, columns(cols));
}

/// Random k-plane of C^{p,q} from a Ginibre frame.
inline Subspace random_subspace(const HermitianSpace& s, int k, std::uint64_t seed) {
  orbitgeom::Rng rng(seed);
  return orbitgeom::subspace_from_matrix(s, rng.ginibre(s.n(), k));
}

}  // namespace testing_support

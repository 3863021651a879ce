#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <string_view>

#include "numkernel.hpp"

namespace orbitgeom {

namespace detail {

inline constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

inline constexpr std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (char c : s) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace detail

/// Seed for sample `index` of stream `stream` under master seed `seed`.
/// Campaigns draw every sample from its own derived seed so results do not
/// depend on evaluation order.
[[nodiscard]] inline constexpr std::uint64_t derive_seed(std::uint64_t seed, std::string_view stream,
                                                         std::uint64_t index) {
  return detail::splitmix64(detail::splitmix64(seed ^ detail::fnv1a(stream)) + index);
}

class Rng {
public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Standard complex normal: E|z|^2 = 1.
  Complex complex_normal() {
    const double re = normal_(engine_);
    const double im = normal_(engine_);
    return {re * M_SQRT1_2, im * M_SQRT1_2};
  }

  double uniform() { return std::uniform_real_distribution<double>(0.0, 1.0)(engine_); }

  ComplexMatrix ginibre(Index rows, Index cols) {
    ComplexMatrix g(rows, cols);
    for (Index j = 0; j < cols; ++j) {
      for (Index i = 0; i < rows; ++i) g(i, j) = complex_normal();
    }
    return g;
  }

  /// Haar-distributed n x cols isometry: Q factor of a Ginibre sample with
  /// the diagonal of R made positive.
  ComplexMatrix haar_isometry(Index n, Index cols) {
    if (cols == 0) return ComplexMatrix(n, 0);
    const ComplexMatrix g = ginibre(n, cols);
    Eigen::HouseholderQR<ComplexMatrix> qr(g);
    ComplexMatrix q = qr.householderQ() * ComplexMatrix::Identity(n, cols);
    const ComplexMatrix r = qr.matrixQR().topRows(cols).triangularView<Eigen::Upper>();
    for (Index j = 0; j < cols; ++j) {
      const double a = std::abs(r(j, j));
      if (a > 0.0) q.col(j) *= r(j, j) / a;
    }
    return q;
  }

  ComplexMatrix haar_unitary(Index n) { return haar_isometry(n, n); }

  std::mt19937_64& engine() { return engine_; }

private:
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
};

}  // namespace orbitgeom

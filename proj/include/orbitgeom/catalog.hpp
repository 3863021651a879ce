#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fibration.hpp"

namespace orbitgeom {

struct CatalogRow {
  std::string kind;  // "K", "G0" or "Matsuki"
  std::string label;
  std::optional<int> dim_c;   // complex dimension, K rows (formula)
  std::optional<int> dim_r;   // measured real dimension
  std::optional<int> cr_dim;  // measured CR dimension, Matsuki rows
  Subspace basepoint;
};

struct OrbitCatalog {
  int p = 0;
  int q = 0;
  int k = 0;
  std::vector<CatalogRow> rows;
};

/// Human-readable generator list of a basepoint, e.g. "e1, e3, (e2+e4)/√2".
[[nodiscard]] inline std::string describe_basepoint(const MatsukiLabel& label, int p) {
  std::string out;
  auto add = [&out](const std::string& s) {
    if (!out.empty()) out += ", ";
    out += s;
  };
  for (int i = 1; i <= label.l; ++i) add("e" + std::to_string(i));
  for (int i = 1; i <= label.m; ++i) add("e" + std::to_string(p + i));
  for (int i = 1; i <= label.r; ++i) {
    add("(e" + std::to_string(label.l + i) + "+e" + std::to_string(p + label.m + i) + ")/√2");
  }
  return "span(" + out + ")";
}

/// One row per feasible label, sorted by kind then label. K rows carry the
/// formula dimension and the measured K-orbit dimension; G0 rows the measured
/// G0-orbit dimension; Matsuki rows the measured K0-orbit and CR dimensions,
/// taken at a seeded K0-translate of the basepoint.
[[nodiscard]] inline OrbitCatalog orbit_catalog(int p, int q, int k, const ToleranceConfig& tol = {},
                                                std::uint64_t seed = 0) {
  const HermitianSpace space(p, q);
  if (binomial(space.n(), k) > kMaxPluckerCoordinates) {
    throw SizeError("orbit_catalog: Gr_" + std::to_string(k) + "(C^" + std::to_string(space.n()) +
                    ") is beyond the supported size");
  }
  const FeasibleLabels labels = feasible_labels(p, q, k, tol);
  OrbitCatalog cat{p, q, k, {}};
  for (const auto& kl : labels.k_labels) {
    const Subspace bp = basepoint(kl, space, k);
    cat.rows.push_back({"K", to_string(kl), dim_k_orbit(kl, p, q, k),
                        tangent_dimension(bp, Group::K, tol), std::nullopt, bp});
  }
  for (const auto& gl : labels.g0_labels) {
    const Subspace bp = basepoint(gl, space);
    cat.rows.push_back(
        {"G0", to_string(gl), std::nullopt, tangent_dimension(bp, Group::G0, tol), std::nullopt, bp});
  }
  for (const auto& ml : labels.matsuki_labels) {
    const Subspace bp = basepoint(ml, space);
    const GroupElement u = random_element(Group::K0, space, derive_seed(seed, "catalog", 0));
    const TangentReport rep = cr_dimension(act(u, bp, tol), tol);
    cat.rows.push_back({"Matsuki", to_string(ml), std::nullopt, rep.real_dim, rep.cr_dim, bp});
  }
  return cat;
}

}  // namespace orbitgeom

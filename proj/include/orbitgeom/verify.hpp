#pragma once

// Seeded property campaigns. Every sample draws from its own derived seed
// (seed, claim id, index), so reports are deterministic functions of the
// configuration.

#include <algorithm>
#include <cstdlib>
#include <cstdint>
#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "catalog.hpp"

namespace orbitgeom {

struct CampaignConfig {
  int p = 2;
  int q = 6;
  int k = 3;
  int samples = 100;
  std::uint64_t seed = 0;
  ToleranceConfig tol;
};

inline void validate(const CampaignConfig& cfg) {
  if (cfg.samples < 1) throw InvalidArgument("campaign: samples must be at least 1");
  validate(cfg.tol);
  const HermitianSpace s(cfg.p, cfg.q);
  if (cfg.k < 1 || cfg.k > s.n()) throw InvalidArgument("campaign: k out of range");
}

enum class ClaimStatus { Pass, Fail, Info };

struct ClaimRecord {
  std::string id;
  std::string anchor;
  int samples = 0;
  double max_residual = 0.0;
  ClaimStatus status = ClaimStatus::Pass;
  std::string detail;
};

struct VerificationReport {
  std::string campaign;
  CampaignConfig config;
  std::vector<ClaimRecord> claims;

  /// Conjunction over claims; informational records never fail.
  [[nodiscard]] bool passed() const {
    return std::none_of(claims.begin(), claims.end(),
                        [](const ClaimRecord& c) { return c.status == ClaimStatus::Fail; });
  }
};

[[nodiscard]] inline std::string_view to_string(ClaimStatus s) {
  switch (s) {
    case ClaimStatus::Pass: return "pass";
    case ClaimStatus::Fail: return "fail";
    case ClaimStatus::Info: return "info";
  }
  return "?";
}

namespace detail {

inline ClaimStatus status_of(bool ok) { return ok ? ClaimStatus::Pass : ClaimStatus::Fail; }

inline GroupElement sample(Group g, const HermitianSpace& s, std::uint64_t seed,
                           const std::string& stream, int index) {
  return random_element(g, s, derive_seed(seed, stream, static_cast<std::uint64_t>(index)));
}

/// Integer discrepancy as a residual.
inline double gap(int a, int b) { return std::abs(a - b); }

inline constexpr double kInf = std::numeric_limits<double>::infinity();

}  // namespace detail

/// Hook applied to every sampled group element before it acts; identity by
/// default. Tests use it to inject elements outside the group.
using ElementTransform = std::function<GroupElement(const GroupElement&)>;

/// Labels of acted basepoints must equal the original labels exactly.
[[nodiscard]] inline VerificationReport campaign_invariance(const CampaignConfig& cfg,
                                                            const ElementTransform& transform = {}) {
  validate(cfg);
  const HermitianSpace space(cfg.p, cfg.q);
  const FeasibleLabels labels = feasible_labels(cfg.p, cfg.q, cfg.k, cfg.tol);
  VerificationReport rep{"invariance", cfg, {}};

  auto run = [&](const std::string& label, const Subspace& bp, Group g, bool check_k, bool check_g0) {
    const Classification ref = matsuki_classify(bp, cfg.tol);
    const std::string id = "invariance/" + label + "/" + std::string(to_string(g));
    int discrepancies = 0;
    for (int i = 0; i < cfg.samples; ++i) {
      GroupElement e = detail::sample(g, space, cfg.seed, id, i);
      if (transform) e = transform(e);
      const Subspace w = act(e, bp, cfg.tol);
      if ((check_k && k_invariants(w, cfg.tol) != ref.k_label) ||
          (check_g0 && g0_invariants(w, cfg.tol) != ref.g0_label)) {
        ++discrepancies;
      }
    }
    rep.claims.push_back({id,
                          std::string(g == Group::G0 ? "restricted-form signature is G0-invariant"
                                      : g == Group::K ? "dim(W∩E+), dim(W∩E-) are K-invariant"
                                                      : "K0 preserves both labels"),
                          cfg.samples, static_cast<double>(discrepancies),
                          detail::status_of(discrepancies == 0),
                          std::to_string(discrepancies) + " label changes"});
  };
  for (const auto& kl : labels.k_labels) {
    run(to_string(kl), basepoint(kl, space, cfg.k), Group::K, true, false);
  }
  for (const auto& ml : labels.matsuki_labels) {
    run(to_string(ml), basepoint(ml, space), Group::K0, true, true);
  }
  for (const auto& gl : labels.g0_labels) {
    run(to_string(gl), basepoint(gl, space), Group::G0, false, true);
  }
  const bool same = labels.k_labels.size() == labels.g0_labels.size();
  rep.claims.push_back({"invariance/label-count", "(l,m) <-> (l,m,k-l-m) matches K- and G0-labels", 1,
                        same ? 0.0 : 1.0, detail::status_of(same),
                        std::to_string(labels.k_labels.size()) + " K labels, " +
                            std::to_string(labels.g0_labels.size()) + " G0 labels"});
  return rep;
}

/// project(g·W) against (g+ W+, g- W-) for random g in K.
[[nodiscard]] inline VerificationReport campaign_equivariance(const CampaignConfig& cfg,
                                                              bool identity_only = false) {
  validate(cfg);
  const HermitianSpace space(cfg.p, cfg.q);
  const FeasibleLabels labels = feasible_labels(cfg.p, cfg.q, cfg.k, cfg.tol);
  VerificationReport rep{"equivariance", cfg, {}};
  for (const auto& kl : labels.k_labels) {
    const std::string id = "equivariance/" + to_string(kl);
    const Subspace bp = basepoint(kl, space, cfg.k);
    double worst = 0.0;
    for (int i = 0; i < cfg.samples; ++i) {
      const Subspace w = act(detail::sample(Group::K, space, cfg.seed, id + "/point", i), bp, cfg.tol);
      const GroupElement g = identity_only ? GroupElement::identity(Group::K, space.n())
                                           : detail::sample(Group::K, space, cfg.seed, id, i);
      const BasePoint lhs = project(act(g, w, cfg.tol), cfg.tol);
      const BasePoint rhs = act(g, project(w, cfg.tol), cfg.tol);
      worst = std::max(worst, base_distance(lhs, rhs));
    }
    rep.claims.push_back({id, "projection W -> (W∩E+, W∩E-) is K-equivariant", cfg.samples, worst,
                          detail::status_of(worst < 1e-8), "max base-point distance"});
  }
  return rep;
}

/// Claimed complex dimension of the r = 1 fiber, the quadric Q^{n-l-m-2}.
[[nodiscard]] inline int claimed_quadric_fiber_dim_c(const MatsukiLabel& label, int n) {
  return n - label.l - label.m - 2;
}

/// Formula dimensions against infinitesimal-action ranks.
[[nodiscard]] inline VerificationReport campaign_dimensions(const CampaignConfig& cfg) {
  validate(cfg);
  const HermitianSpace space(cfg.p, cfg.q);
  const int n = space.n();
  const FeasibleLabels labels = feasible_labels(cfg.p, cfg.q, cfg.k, cfg.tol);
  const int points = std::min(cfg.samples, 20);
  VerificationReport rep{"dimensions", cfg, {}};

  {
    const Subspace bp = basepoint(labels.matsuki_labels.front(), space);
    const int measured = tangent_dimension(bp, Group::GL, cfg.tol);
    const int expected = 2 * grassmannian_dimension(cfg.k, n);
    rep.claims.push_back({"dimensions/ambient", "dim_C Gr_k(C^n) = k(n-k)", 1,
                          detail::gap(measured, expected), detail::status_of(measured == expected),
                          "measured " + std::to_string(measured) + " real, formula 2*" +
                              std::to_string(grassmannian_dimension(cfg.k, n))});
  }

  for (const auto& kl : labels.k_labels) {
    const std::string id = "dimensions/K" + to_string(kl);
    const int formula = dim_k_orbit(kl, cfg.p, cfg.q, cfg.k);
    const Subspace bp = basepoint(kl, space, cfg.k);
    int worst = 0;
    int seen = -1;
    for (int i = 0; i < points; ++i) {
      const Subspace w = act(detail::sample(Group::K, space, cfg.seed, id, i), bp, cfg.tol);
      seen = tangent_dimension(w, Group::K, cfg.tol);
      worst = std::max(worst, std::abs(seen - 2 * formula));
    }
    rep.claims.push_back({id, "dim_C O_{l,m} = l(p-l) + m(q-m) + r(p-l+q-m-r)", points, static_cast<double>(worst),
                          detail::status_of(worst == 0),
                          "formula " + std::to_string(formula) + " complex, measured " +
                              std::to_string(seen) + " real"});
  }

  for (const auto& gl : labels.g0_labels) {
    const std::string id = "dimensions/G0" + to_string(gl);
    const Subspace bp = basepoint(gl, space);
    const int ref = tangent_dimension(bp, Group::G0, cfg.tol);
    int changes = 0;
    for (int i = 0; i < points; ++i) {
      const Subspace w = act(detail::sample(Group::G0, space, cfg.seed, id, i), bp, cfg.tol);
      if (tangent_dimension(w, Group::G0, cfg.tol) != ref) ++changes;
    }
    rep.claims.push_back({id, "G0-orbit dimension is constant along the orbit", points, static_cast<double>(changes),
                          detail::status_of(changes == 0),
                          "measured " + std::to_string(ref) + " real"});
  }

  for (const auto& ml : labels.matsuki_labels) {
    const std::string id = "dimensions/" + to_string(ml);
    const Subspace bp = basepoint(ml, space);
    const TangentReport ref = cr_dimension(bp, cfg.tol);
    const int fiber = measured_fiber_dimension(bp, cfg.tol);
    int changes = 0;
    for (int i = 0; i < points; ++i) {
      const Subspace w = act(detail::sample(Group::K0, space, cfg.seed, id, i), bp, cfg.tol);
      const TangentReport t = cr_dimension(w, cfg.tol);
      if (t.real_dim != ref.real_dim || t.cr_dim != ref.cr_dim ||
          measured_fiber_dimension(w, cfg.tol) != fiber) {
        ++changes;
      }
    }
    rep.claims.push_back({id + "/constancy", "K0 acts transitively on M_{l,m,r}", points, static_cast<double>(changes),
                          detail::status_of(changes == 0),
                          "dimR " + std::to_string(ref.real_dim) + ", crdim " +
                              std::to_string(ref.cr_dim) + ", crcodim " +
                              std::to_string(ref.cr_codim) + ", fiber dimR " + std::to_string(fiber)});

    const int split_sum = 2 * ref.base_dim_c + fiber;
    rep.claims.push_back({id + "/bundle", "M_{l,m,r} fibers over Gr_l(E+) x Gr_m(E-)", 1,
                          detail::gap(split_sum, ref.real_dim), detail::status_of(split_sum == ref.real_dim),
                          "2*dim_C(base) + fiber dimR = " + std::to_string(split_sum) +
                              ", K0-orbit dimR = " + std::to_string(ref.real_dim)});

    const int open_formula = ml.r * (n - ml.l - ml.m - ml.r);
    const int open_measured = tangent_dimension(bp, Group::K, cfg.tol) / 2 - ref.base_dim_c;
    rep.claims.push_back({id + "/open-fiber", "fiber of O_{l,m} is open in Gr_r(V')", 1,
                          detail::gap(open_formula, open_measured), detail::status_of(open_formula == open_measured),
                          "dim_C Gr_r(V') = " + std::to_string(open_formula) +
                              ", measured dim_C O - dim_C base = " + std::to_string(open_measured)});

    if (ml.r == 0) {
      rep.claims.push_back({id + "/complex", "r = 0 orbits are complex submanifolds", 1,
                            static_cast<double>(ref.cr_codim), detail::status_of(ref.cr_codim == 0),
                            "crcodim " + std::to_string(ref.cr_codim)});
    }
    if (ml.r == 1) {
      const int claimed = claimed_quadric_fiber_dim_c(ml, n);
      rep.claims.push_back({id + "/quadric-fiber", "r = 1 fiber as quadric Q^{n-l-m-2}", 1,
                            detail::gap(2 * claimed, fiber), ClaimStatus::Info,
                            "claimed complex dim " + std::to_string(claimed) + " (real " +
                                std::to_string(2 * claimed) + "), measured real fiber dim " +
                                std::to_string(fiber)});
    }
    rep.claims.push_back({id + "/cr-vs-base", "CR bundle = horizontal directions", 1,
                          detail::gap(ref.cr_dim, ref.base_dim_c), ClaimStatus::Info,
                          "measured crdim " + std::to_string(ref.cr_dim) + ", dim_C base " +
                              std::to_string(ref.base_dim_c)});
  }
  return rep;
}

struct CrResiduals {
  double holomorphic = 0.0;
  double conjugate = 0.0;
  double constant = 0.0;
  double ambient = 0.0;
};

/// Tangential Cauchy-Riemann residuals at one point: a pulled-back base chart
/// coordinate, its conjugate, a constant, and an ambient chart coordinate.
[[nodiscard]] inline CrResiduals cr_residuals(const Subspace& w, BaseFactor factor,
                                              double step = kDefaultDbarStep,
                                              const ToleranceConfig& tol = {}) {
  CrResiduals r;
  r.holomorphic = dbar_b_check(base_coordinate(w, factor, 0, 0, false, tol), w, step, tol);
  r.conjugate = dbar_b_check(base_coordinate(w, factor, 0, 0, true, tol), w, step, tol);
  r.constant = dbar_b_check([](const Subspace&) { return Complex(1.0, 0.0); }, w, step, tol);
  if (w.k() < w.n()) r.ambient = dbar_b_check(ambient_coordinate(w, 0, 0), w, step, tol);
  return r;
}

/// Residual separation of pulled-back holomorphic base coordinates from their
/// conjugates along the CR directions of each Matsuki orbit.
[[nodiscard]] inline VerificationReport campaign_cr(const CampaignConfig& cfg) {
  validate(cfg);
  const HermitianSpace space(cfg.p, cfg.q);
  const FeasibleLabels labels = feasible_labels(cfg.p, cfg.q, cfg.k, cfg.tol);
  const int points = std::min(cfg.samples, 20);
  VerificationReport rep{"cr", cfg, {}};
  for (const auto& ml : labels.matsuki_labels) {
    const std::string id = "cr/" + to_string(ml);
    const auto factor = coordinate_factor(ml, space);
    if (!factor) {
      rep.claims.push_back({id, "CR functions are pullbacks from the base", 0, 0.0, ClaimStatus::Info,
                            "base is a point; no chart coordinates"});
      continue;
    }
    const Subspace bp = basepoint(ml, space);
    double holo = 0.0, cst = 0.0, amb = 0.0;
    double conj_min = detail::kInf, sep_min = detail::kInf;
    for (int i = 0; i < points; ++i) {
      const Subspace w = act(detail::sample(Group::K0, space, cfg.seed, id, i), bp, cfg.tol);
      const CrResiduals r = cr_residuals(w, *factor, kDefaultDbarStep, cfg.tol);
      holo = std::max(holo, r.holomorphic);
      conj_min = std::min(conj_min, r.conjugate);
      cst = std::max(cst, r.constant);
      amb = std::max(amb, r.ambient);
      sep_min = std::min(sep_min, r.conjugate / std::max(r.holomorphic, 1e-300));
    }
    const std::string coord = *factor == BaseFactor::Plus ? "z_11 on Gr_l(E+)" : "w_11 on Gr_m(E-)";
    rep.claims.push_back({id + "/holomorphic", "pullbacks of holomorphic base functions are CR",
                          points, holo, detail::status_of(holo < 1e-6),
                          "max residual of pulled-back " + coord});
    rep.claims.push_back({id + "/conjugate", "conjugated base coordinate is not CR", points,
                          conj_min, detail::status_of(conj_min > 1e-2),
                          "min residual of conjugate (max_residual holds the minimum)"});
    rep.claims.push_back({id + "/separation", "residual separation factor >= 1e4", points, sep_min,
                          detail::status_of(sep_min >= 1e4),
                          "min ratio conjugate / holomorphic (max_residual holds the ratio)"});
    rep.claims.push_back({id + "/constant", "constants are CR", points, cst,
                          detail::status_of(cst < 1e-12), "max residual"});
    rep.claims.push_back({id + "/ambient-coordinate", "CR functions are pullbacks from the base",
                          points, amb, ClaimStatus::Info,
                          "max residual of an ambient Gr_k chart coordinate (holomorphic on Gr_k, "
                          "not constant on fibers)"});
  }
  return rep;
}

/// Builds witnesses between pairs of points of each orbit and applies them.
[[nodiscard]] inline VerificationReport campaign_witness(const CampaignConfig& cfg) {
  validate(cfg);
  const HermitianSpace space(cfg.p, cfg.q);
  const FeasibleLabels labels = feasible_labels(cfg.p, cfg.q, cfg.k, cfg.tol);
  VerificationReport rep{"witness", cfg, {}};

  auto run = [&](const std::string& label, const Subspace& bp, Group g, const char* anchor) {
    const std::string id = "witness/" + label + "/" + std::string(to_string(g));
    double dist = 0.0;
    double member = 0.0;
    int failures = 0;
    for (int i = 0; i < cfg.samples; ++i) {
      const Subspace w1 = act(detail::sample(g, space, cfg.seed, id + "/a", i), bp, cfg.tol);
      const Subspace w2 = act(detail::sample(g, space, cfg.seed, id + "/b", i), bp, cfg.tol);
      try {
        const GroupElement wit = transitivity_witness(g, w1, w2, cfg.tol);
        dist = std::max(dist, distance(act(wit, w1, cfg.tol), w2));
        member = std::max(member, certify(wit, space).residual());
      } catch (const Error&) {
        ++failures;
      }
    }
    if (failures > 0) {
      dist = detail::kInf;
      member = detail::kInf;
    }
    rep.claims.push_back({id + "/application", anchor, cfg.samples, dist,
                          detail::status_of(dist < kWitnessDistanceTolerance),
                          std::to_string(failures) + " construction failures; max distance"});
    rep.claims.push_back({id + "/membership", anchor, cfg.samples, member,
                          detail::status_of(member < kMembershipTolerance),
                          "max membership residual"});
  };
  for (const auto& kl : labels.k_labels) {
    run(to_string(kl), basepoint(kl, space, cfg.k), Group::K, "O_{l,m} is a single K-orbit");
  }
  for (const auto& ml : labels.matsuki_labels) {
    run(to_string(ml), basepoint(ml, space), Group::K0, "M_{l,m,r} is K0-homogeneous");
  }
  for (const auto& gl : labels.g0_labels) {
    run(to_string(gl), basepoint(gl, space), Group::G0,
        "restricted-form signature classifies G0-orbits");
  }
  return rep;
}

[[nodiscard]] inline std::vector<std::string> campaign_names() {
  return {"invariance", "equivariance", "dimensions", "cr", "witness"};
}

[[nodiscard]] inline VerificationReport run_campaign(const std::string& name, const CampaignConfig& cfg) {
  if (name == "invariance") return campaign_invariance(cfg);
  if (name == "equivariance") return campaign_equivariance(cfg);
  if (name == "dimensions") return campaign_dimensions(cfg);
  if (name == "cr") return campaign_cr(cfg);
  if (name == "witness") return campaign_witness(cfg);
  throw InvalidArgument("unknown campaign '" + name + "'");
}

}  // namespace orbitgeom

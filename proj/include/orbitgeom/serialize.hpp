#pragma once

// JSON interchange. Complex scalars are [re, im]; matrices are row-major
// nested arrays.

#include <cmath>
#include <cstdio>
#include <string>

#include <nlohmann/json.hpp>

#include "verify.hpp"

namespace orbitgeom {

using Json = nlohmann::json;

[[nodiscard]] inline Json to_json(Complex z) { return Json::array({z.real(), z.imag()}); }

[[nodiscard]] inline Json to_json(const ComplexMatrix& m) {
  Json rows = Json::array();
  for (Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Index j = 0; j < m.cols(); ++j) row.push_back(to_json(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

/// Non-finite values are not representable in JSON; they become strings.
[[nodiscard]] inline Json number(double x) {
  if (std::isfinite(x)) return x;
  if (std::isnan(x)) return "nan";
  return x > 0 ? "inf" : "-inf";
}

[[nodiscard]] inline Complex complex_from_json(const Json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
    throw InvalidArgument("json: complex entries must be [re, im]");
  }
  return {j[0].get<double>(), j[1].get<double>()};
}

[[nodiscard]] inline ComplexMatrix matrix_from_json(const Json& j, Index rows, Index cols) {
  if (!j.is_array() || static_cast<Index>(j.size()) != rows) {
    throw InvalidArgument("json: matrix must have " + std::to_string(rows) + " rows");
  }
  ComplexMatrix m(rows, cols);
  for (Index i = 0; i < rows; ++i) {
    const Json& row = j[static_cast<std::size_t>(i)];
    if (!row.is_array() || static_cast<Index>(row.size()) != cols) {
      throw InvalidArgument("json: matrix row " + std::to_string(i) + " must have " +
                            std::to_string(cols) + " entries");
    }
    for (Index c = 0; c < cols; ++c) m(i, c) = complex_from_json(row[static_cast<std::size_t>(c)]);
  }
  return m;
}

[[nodiscard]] inline Json to_json(const Subspace& w) {
  return {{"p", w.space().p()}, {"q", w.space().q()}, {"k", w.k()}, {"basis", to_json(w.basis())}};
}

namespace detail {

inline int int_field(const Json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_number_integer()) {
    throw InvalidArgument(std::string("json: missing integer field '") + key + "'");
  }
  return j[key].get<int>();
}

}  // namespace detail

/// Any full-rank basis is accepted and orthonormalized.
[[nodiscard]] inline Subspace subspace_from_json(const Json& j, const ToleranceConfig& tol = {}) {
  if (!j.is_object()) throw InvalidArgument("json: subspace must be an object");
  const HermitianSpace space(detail::int_field(j, "p"), detail::int_field(j, "q"));
  const int k = detail::int_field(j, "k");
  if (k < 0 || k > space.n()) throw InvalidArgument("json: k out of range");
  if (!j.contains("basis")) throw InvalidArgument("json: missing field 'basis'");
  return subspace_from_matrix(space, matrix_from_json(j["basis"], space.n(), k), tol);
}

[[nodiscard]] inline Json to_json(const GroupElement& g) {
  return {{"group", std::string(to_string(g.group))}, {"matrix", to_json(g.matrix)}};
}

[[nodiscard]] inline GroupElement group_element_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("group") || !j["group"].is_string() || !j.contains("matrix")) {
    throw InvalidArgument("json: group element needs 'group' and 'matrix'");
  }
  const Json& rows = j["matrix"];
  if (!rows.is_array()) throw InvalidArgument("json: 'matrix' must be an array");
  const auto n = static_cast<Index>(rows.size());
  return {parse_group(j["group"].get<std::string>()), matrix_from_json(rows, n, n)};
}

[[nodiscard]] inline Json to_json(const MembershipCertificate& c) {
  return {{"det_defect", number(c.det_defect)},
          {"block_defect", number(c.block_defect)},
          {"unitary_defect", number(c.unitary_defect)},
          {"form_defect", number(c.form_defect)},
          {"inverse_condition", number(c.inverse_condition)},
          {"residual", number(c.residual())}};
}

[[nodiscard]] inline Json to_json(const BasePoint& b) {
  return {{"plus", to_json(b.plus)}, {"minus", to_json(b.minus)}};
}

[[nodiscard]] inline Json to_json(const TangentReport& t, const Json& residuals = Json::object()) {
  return {{"label", t.label},           {"dimR", t.real_dim},   {"crdim", t.cr_dim},
          {"crcodim", t.cr_codim},      {"base_dimC", t.base_dim_c},
          {"residuals", residuals}};
}

[[nodiscard]] inline Json to_json(const Classification& c) {
  Json eig = Json::array();
  for (double x : c.gram_eigenvalues) eig.push_back(x);
  return {{"k_label", to_string(c.k_label)},
          {"g0_label", to_string(c.g0_label)},
          {"matsuki", c.matsuki ? Json(to_string(*c.matsuki)) : Json(nullptr)},
          {"gram_eigenvalues", eig}};
}

[[nodiscard]] inline Json to_json(const CatalogRow& r) {
  Json j = {{"kind", r.kind}, {"label", r.label}};
  if (r.dim_c) j["dimC"] = *r.dim_c;
  if (r.dim_r) j["dimR"] = *r.dim_r;
  if (r.cr_dim) j["crdim"] = *r.cr_dim;
  j["basepoint"] = to_json(r.basepoint);
  return j;
}

[[nodiscard]] inline Json to_json(const OrbitCatalog& c) {
  Json rows = Json::array();
  for (const auto& r : c.rows) rows.push_back(to_json(r));
  return {{"p", c.p}, {"q", c.q}, {"k", c.k}, {"rows", rows}};
}

[[nodiscard]] inline Json to_json(const ClaimRecord& c) {
  return {{"id", c.id},
          {"anchor", c.anchor},
          {"samples", c.samples},
          {"max_residual", number(c.max_residual)},
          {"status", std::string(to_string(c.status))},
          {"detail", c.detail}};
}

[[nodiscard]] inline Json to_json(const VerificationReport& r) {
  Json claims = Json::array();
  for (const auto& c : r.claims) claims.push_back(to_json(c));
  return {{"campaign", r.campaign},
          {"overall", r.passed() ? "pass" : "fail"},
          {"environment",
           {{"p", r.config.p},
            {"q", r.config.q},
            {"k", r.config.k},
            {"samples", r.config.samples},
            {"seed", r.config.seed},
            {"base_tol", r.config.tol.base_tol}}},
          {"claims", claims}};
}

/// Residual formatting shared by the text and Markdown outputs.
[[nodiscard]] inline std::string format_residual(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.11e", x);
  return buf;
}

[[nodiscard]] inline std::string format_number(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

[[nodiscard]] inline std::string to_markdown(const VerificationReport& r) {
  std::string out = "### " + r.campaign + " (" + (r.passed() ? "pass" : "fail") + ")\n\n";
  out += "p=" + std::to_string(r.config.p) + " q=" + std::to_string(r.config.q) +
         " k=" + std::to_string(r.config.k) + " samples=" + std::to_string(r.config.samples) +
         " seed=" + std::to_string(r.config.seed) + " tol=" + format_number(r.config.tol.base_tol) +
         "\n\n";
  out += "| claim | anchor | samples | max residual | status | detail |\n";
  out += "|---|---|---|---|---|---|\n";
  for (const auto& c : r.claims) {
    out += "| " + c.id + " | " + c.anchor + " | " + std::to_string(c.samples) + " | " +
           format_residual(c.max_residual) + " | " + std::string(to_string(c.status)) + " | " +
           c.detail + " |\n";
  }
  return out;
}

}  // namespace orbitgeom

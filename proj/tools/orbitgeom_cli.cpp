#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include <orbitgeom/orbitgeom.hpp>

using namespace orbitgeom;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 1;
constexpr int kExitVerification = 2;

struct Options {
  int p = 2;
  int q = 6;
  int k = 3;
  std::uint64_t seed = 0;
  double tol = 1e-9;
  int samples = 100;
  std::string format = "text";
  std::string input;
  std::string input2;
  std::string label;
  std::string group = "K0";
  std::string kind = "isotropic";
  std::string campaign = "all";
};

/// Signals a verification failure after the report has been printed.
struct VerificationFailed {};

bool json_output(const Options& o) { return o.format == "json"; }

ToleranceConfig tolerance(const Options& o) {
  ToleranceConfig t;
  t.base_tol = o.tol;
  validate(t);
  return t;
}

Json read_json_file(const std::string& path) {
  if (path.empty()) throw InvalidArgument("missing --input file");
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw InvalidArgument("'" + path + "' is not valid JSON: " + e.what());
  }
}

Subspace read_subspace(const std::string& path, const ToleranceConfig& tol) {
  return subspace_from_json(read_json_file(path), tol);
}

MatsukiLabel parse_label(const Options& o, const HermitianSpace& space) {
  if (o.label.empty()) throw InvalidArgument("missing --label \"l,m,r\"");
  std::vector<int> parts;
  std::stringstream ss(o.label);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      parts.push_back(std::stoi(item, &used));
      if (used != item.size()) throw InvalidArgument("");
    } catch (const std::exception&) {
      throw InvalidArgument("label '" + o.label + "' is not of the form l,m,r");
    }
  }
  if (parts.size() != 3) throw InvalidArgument("label '" + o.label + "' is not of the form l,m,r");
  const MatsukiLabel label{parts[0], parts[1], parts[2]};
  if (!is_feasible(label, space.p(), space.q()) || label.k() < 1) {
    throw InvalidArgument(to_string(label) + " is not feasible for (p,q) = (" +
                          std::to_string(space.p()) + "," + std::to_string(space.q()) + ")");
  }
  return label;
}

void print_json(const Json& j) { std::cout << j.dump(2) << "\n"; }

std::string format_complex(Complex z) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%+.12g%+.12gi", z.real(), z.imag());
  return buf;
}

void print_matrix(const ComplexMatrix& m) {
  for (Index i = 0; i < m.rows(); ++i) {
    std::string line = " ";
    for (Index j = 0; j < m.cols(); ++j) {
      char cell[80];
      std::snprintf(cell, sizeof cell, " %40s", format_complex(m(i, j)).c_str());
      line += cell;
    }
    std::cout << line << "\n";
  }
}

void print_subspace(const std::string& title, const Subspace& w) {
  std::cout << title << ": k=" << w.k() << " in C^{" << w.space().p() << "," << w.space().q()
            << "}\n";
  print_matrix(w.basis());
}

std::string classification_line(const Classification& c) {
  return "K=" + to_string(c.k_label) + " G0=" + to_string(c.g0_label) +
         " Matsuki=" + (c.matsuki ? to_string(*c.matsuki) : std::string("none"));
}

// ---------------------------------------------------------------------------

int cmd_classify(const Options& o) {
  const ToleranceConfig tol = tolerance(o);
  const Subspace w = read_subspace(o.input, tol);
  const Classification c = matsuki_classify(w, tol);
  if (json_output(o)) {
    print_json(to_json(c));
    return kExitOk;
  }
  std::cout << classification_line(c) << "\n";
  std::cout << "gram eigenvalues:";
  for (double x : c.gram_eigenvalues) std::cout << " " << format_number(x);
  std::cout << "\n";
  return kExitOk;
}

int cmd_catalog(const Options& o) {
  const OrbitCatalog cat = orbit_catalog(o.p, o.q, o.k, tolerance(o), o.seed);
  if (json_output(o)) {
    print_json(to_json(cat));
    return kExitOk;
  }
  std::printf("%-8s %-10s %5s %5s %6s  %s\n", "kind", "label", "dimC", "dimR", "crdim", "basepoint");
  for (const auto& r : cat.rows) {
    auto opt = [](const std::optional<int>& x) { return x ? std::to_string(*x) : std::string("-"); };
    const auto& b = r.basepoint;
    const Classification c = matsuki_classify(b, tolerance(o));
    const MatsukiLabel ml = *c.matsuki;
    std::printf("%-8s %-10s %5s %5s %6s  %s\n", r.kind.c_str(), r.label.c_str(), opt(r.dim_c).c_str(),
                opt(r.dim_r).c_str(), opt(r.cr_dim).c_str(), describe_basepoint(ml, o.p).c_str());
  }
  return kExitOk;
}

int cmd_basepoint(const Options& o) {
  const HermitianSpace space(o.p, o.q);
  const MatsukiLabel label = parse_label(o, space);
  const Subspace w = basepoint(label, space);
  if (json_output(o)) {
    print_json(to_json(w));
    return kExitOk;
  }
  std::cout << to_string(label) << " = " << describe_basepoint(label, o.p) << "\n";
  print_subspace("basis", w);
  return kExitOk;
}

int cmd_sample(const Options& o) {
  const ToleranceConfig tol = tolerance(o);
  const HermitianSpace space(o.p, o.q);
  const MatsukiLabel label = parse_label(o, space);
  const Group g = parse_group(o.group);
  if (g == Group::GL) throw InvalidArgument("sample: --group must be K, K0 or G0");
  const Subspace w = act(random_element(g, space, o.seed), basepoint(label, space), tol);
  if (json_output(o)) {
    print_json(to_json(w));
    return kExitOk;
  }
  std::cout << std::string(to_string(g)) << "-translate of " << to_string(label) << " (seed "
            << o.seed << ")\n";
  std::cout << classification_line(matsuki_classify(w, tol)) << "\n";
  print_subspace("basis", w);
  return kExitOk;
}

int cmd_witness(const Options& o) {
  const ToleranceConfig tol = tolerance(o);
  const Subspace w1 = read_subspace(o.input, tol);
  if (o.input2.empty()) throw InvalidArgument("missing --input2 file");
  const Subspace w2 = read_subspace(o.input2, tol);
  const Group g = parse_group(o.group);
  const GroupElement wit = transitivity_witness(g, w1, w2, tol);
  const double dist = distance(act(wit, w1, tol), w2);
  const MembershipCertificate cert = certify(wit, w1.space());
  const bool ok = dist < kWitnessDistanceTolerance && cert.passes();
  if (json_output(o)) {
    Json j = to_json(wit);
    j["self_check"] = {{"distance", number(dist)},
                       {"membership", to_json(cert)},
                       {"pass", ok}};
    print_json(j);
  } else {
    std::cout << std::string(to_string(g)) << " witness\n";
    print_matrix(wit.matrix);
    std::cout << "application distance " << format_residual(dist) << "\n";
    std::cout << "membership residual  " << format_residual(cert.residual()) << "\n";
    std::cout << "self-check " << (ok ? "pass" : "fail") << "\n";
  }
  if (!ok) throw VerificationFailed{};
  return kExitOk;
}

int cmd_project(const Options& o) {
  const ToleranceConfig tol = tolerance(o);
  const BasePoint b = project(read_subspace(o.input, tol), tol);
  if (json_output(o)) {
    print_json(to_json(b));
    return kExitOk;
  }
  print_subspace("W ∩ E+", b.plus);
  print_subspace("W ∩ E-", b.minus);
  return kExitOk;
}

int cmd_fiber(const Options& o) {
  const ToleranceConfig tol = tolerance(o);
  const HermitianSpace space(o.p, o.q);
  const MatsukiLabel label = parse_label(o, space);
  const BasePoint base = project(basepoint(label, space), tol);
  const ComplementSpace c = complement_space(base, tol);
  Subspace comp = Subspace::zero(space);
  if (o.kind == "isotropic") {
    comp = fiber_sample_isotropic(c, label.r, o.seed);
  } else if (o.kind == "open") {
    comp = fiber_sample_open(c, label.r, o.seed, tol);
  } else {
    throw InvalidArgument("--kind must be isotropic or open");
  }
  const Subspace w = assemble(base, comp, tol);
  const double gram_norm = gram(comp).norm();
  const Classification cls = matsuki_classify(w, tol);
  if (json_output(o)) {
    print_json({{"label", to_string(label)},
                {"kind", o.kind},
                {"complement_dim", c.dim()},
                {"fiber", to_json(comp)},
                {"gram_norm", number(gram_norm)},
                {"assembled", to_json(w)},
                {"classification", to_json(cls)}});
    return kExitOk;
  }
  std::cout << o.kind << " fiber sample over the base of " << to_string(label) << "\n";
  std::cout << "complement dimension " << c.dim() << ", gram norm " << format_residual(gram_norm)
            << "\n";
  std::cout << classification_line(cls) << "\n";
  print_subspace("assembled", w);
  return kExitOk;
}

Json residual_json(const Subspace& w, const MatsukiLabel& label, const ToleranceConfig& tol) {
  const auto factor = coordinate_factor(label, w.space());
  if (!factor) return Json::object();
  const CrResiduals r = cr_residuals(w, *factor, kDefaultDbarStep, tol);
  return {{"holomorphic", number(r.holomorphic)},
          {"conjugate", number(r.conjugate)},
          {"constant", number(r.constant)},
          {"ambient_coordinate", number(r.ambient)}};
}

int cmd_crdim(const Options& o) {
  const ToleranceConfig tol = tolerance(o);
  Subspace w = Subspace::zero(HermitianSpace(o.p, o.q));
  if (!o.input.empty()) {
    w = read_subspace(o.input, tol);
  } else {
    const HermitianSpace space(o.p, o.q);
    w = act(random_element(Group::K0, space, o.seed), basepoint(parse_label(o, space), space), tol);
  }
  const TangentReport t = cr_dimension(w, tol);
  const MatsukiLabel label = *matsuki_classify(w, tol).matsuki;
  const Json res = residual_json(w, label, tol);
  if (json_output(o)) {
    print_json(to_json(t, res));
    return kExitOk;
  }
  std::printf("%-10s %5s %6s %8s %10s\n", "label", "dimR", "crdim", "crcodim", "base dimC");
  std::printf("%-10s %5d %6d %8d %10d\n", t.label.c_str(), t.real_dim, t.cr_dim, t.cr_codim,
              t.base_dim_c);
  for (const auto& [name, value] : res.items()) {
    std::printf("  %-20s %s\n", name.c_str(),
                value.is_number() ? format_residual(value.get<double>()).c_str()
                                  : value.dump().c_str());
  }
  return kExitOk;
}

int cmd_verify(const Options& o) {
  CampaignConfig cfg;
  cfg.p = o.p;
  cfg.q = o.q;
  cfg.k = o.k;
  cfg.samples = o.samples;
  cfg.seed = o.seed;
  cfg.tol = tolerance(o);
  validate(cfg);
  std::vector<std::string> names;
  if (o.campaign == "all") {
    names = campaign_names();
  } else {
    names.push_back(o.campaign);
  }
  std::vector<VerificationReport> reports;
  for (const auto& name : names) reports.push_back(run_campaign(name, cfg));
  bool overall = true;
  for (const auto& r : reports) overall = overall && r.passed();
  if (json_output(o)) {
    Json arr = Json::array();
    for (const auto& r : reports) arr.push_back(to_json(r));
    print_json({{"overall", overall ? "pass" : "fail"}, {"reports", arr}});
  } else {
    for (const auto& r : reports) std::cout << to_markdown(r) << "\n";
    std::cout << "overall: " << (overall ? "pass" : "fail") << "\n";
  }
  if (!overall) throw VerificationFailed{};
  return kExitOk;
}

int cmd_example_m111(const Options& o) {
  const ToleranceConfig tol = tolerance(o);
  const HermitianSpace space(2, 6);
  const MatsukiLabel label{1, 1, 1};
  const Subspace w0 = basepoint(label, space);
  const BasePoint base = project(w0, tol);
  const ComplementSpace comp = complement_space(base, tol);
  const int base_plus = grassmannian_dimension(label.l, space.p());
  const int base_minus = grassmannian_dimension(label.m, space.q());
  const int open_fiber = grassmannian_dimension(label.r, comp.dim());
  const int orbit_formula = dim_k_orbit(label.k_label(), space.p(), space.q(), label.k());
  const int orbit_measured = tangent_dimension(w0, Group::K, tol);
  const TangentReport t = cr_dimension(w0, tol);
  const int fiber_measured = measured_fiber_dimension(w0, tol);

  constexpr int kPoints = 20;
  struct Row {
    double holomorphic, conjugate;
  };
  std::vector<Row> rows;
  for (int i = 0; i < kPoints; ++i) {
    const Subspace w =
        act(random_element(Group::K0, space, derive_seed(o.seed, "example-m111", i)), w0, tol);
    const CrResiduals r = cr_residuals(w, BaseFactor::Plus, kDefaultDbarStep, tol);
    rows.push_back({r.holomorphic, r.conjugate});
  }
  const std::string claim =
      "claim - not machine-checked: the envelope of holomorphy of M(1,1,1) is biholomorphic to the "
      "K-orbit O(1,1)";

  if (json_output(o)) {
    Json table = Json::array();
    for (const auto& r : rows) {
      table.push_back({{"holomorphic", number(r.holomorphic)},
                       {"conjugate", number(r.conjugate)},
                       {"ratio", number(r.conjugate / r.holomorphic)}});
    }
    print_json({{"p", 2},
                {"q", 6},
                {"k", 3},
                {"label", to_string(label)},
                {"base_dims", {base_plus, base_minus}},
                {"base_dim", base_plus + base_minus},
                {"open_fiber_dim", open_fiber},
                {"k_orbit_dimC_formula", orbit_formula},
                {"k_orbit_dimR_measured", orbit_measured},
                {"matsuki", to_json(t)},
                {"fiber_dimR_measured", fiber_measured},
                {"cr_residuals", table},
                {"claim", claim}});
    return kExitOk;
  }
  std::printf("M(1,1,1) in Gr_3(C^8), form of signature (2,6)\n\n");
  std::printf("base Gr_1(E+) x Gr_1(E-): complex dimensions (%d, %d), product %d\n", base_plus,
              base_minus, base_plus + base_minus);
  std::printf("complement V': dimension %d, open fiber Gr_1(V') of complex dimension %d\n",
              comp.dim(), open_fiber);
  std::printf("K-orbit O(1,1): dimC %d by formula, dimR %d measured\n", orbit_formula,
              orbit_measured);
  std::printf("M(1,1,1): dimR %d, crdim %d, crcodim %d measured; isotropic fiber dimR %d\n\n",
              t.real_dim, t.cr_dim, t.cr_codim, fiber_measured);
  std::printf("CR residuals of the pulled-back base coordinate z11 at %d K0-translates\n", kPoints);
  std::printf("%5s %20s %20s %20s\n", "point", "holomorphic", "conjugate", "ratio");
  for (std::size_t i = 0; i < rows.size(); ++i) {
    std::printf("%5zu %20s %20s %20s\n", i, format_residual(rows[i].holomorphic).c_str(),
                format_residual(rows[i].conjugate).c_str(),
                format_residual(rows[i].conjugate / rows[i].holomorphic).c_str());
  }
  std::printf("\n%s\n", claim.c_str());
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Orbit geometry of Grassmannians under indefinite unitary groups"};
  app.require_subcommand(1);
  Options o;
  if (const char* env = std::getenv("ORBITGEOM_TOL")) {
    try {
      std::size_t used = 0;
      o.tol = std::stod(env, &used);
      if (used != std::string(env).size()) throw std::invalid_argument("trailing characters");
    } catch (const std::exception&) {
      std::cerr << "error: ORBITGEOM_TOL='" << env << "' is not a number\n";
      return kExitInput;
    }
  }

  auto space_flags = [&o](CLI::App* sub, bool with_k) {
    sub->add_option("--p", o.p, "dimension of the positive part")->check(CLI::PositiveNumber);
    sub->add_option("--q", o.q, "dimension of the negative part")->check(CLI::PositiveNumber);
    if (with_k) sub->add_option("--k", o.k, "subspace dimension")->check(CLI::PositiveNumber);
  };
  auto common = [&o](CLI::App* sub) {
    sub->add_option("--seed", o.seed, "random seed");
    sub->add_option("--tol", o.tol, "base numerical tolerance");
    sub->add_option("--format", o.format, "output format")->check(CLI::IsMember({"text", "json"}));
  };

  std::vector<std::pair<CLI::App*, int (*)(const Options&)>> commands;
  auto add = [&](const char* name, const char* help, int (*fn)(const Options&)) {
    CLI::App* sub = app.add_subcommand(name, help);
    common(sub);
    commands.emplace_back(sub, fn);
    return sub;
  };

  auto* classify = add("classify", "K, G0 and Matsuki labels of a subspace", cmd_classify);
  classify->add_option("--input", o.input, "subspace JSON file")->required();

  auto* catalog = add("catalog", "feasible orbit labels with basepoints and dimensions", cmd_catalog);
  space_flags(catalog, true);

  auto* bp = add("basepoint", "standard basepoint of a Matsuki orbit", cmd_basepoint);
  space_flags(bp, false);
  bp->add_option("--label", o.label, "l,m,r")->required();

  auto* sample = add("sample", "random point of an orbit", cmd_sample);
  space_flags(sample, false);
  sample->add_option("--label", o.label, "l,m,r")->required();
  sample->add_option("--group", o.group, "K, K0 or G0");

  auto* witness = add("witness", "group element carrying one subspace to another", cmd_witness);
  witness->add_option("--input", o.input, "source subspace JSON file")->required();
  witness->add_option("--input2", o.input2, "target subspace JSON file")->required();
  witness->add_option("--group", o.group, "K, K0 or G0");

  auto* proj = add("project", "intersections with the positive and negative parts", cmd_project);
  proj->add_option("--input", o.input, "subspace JSON file")->required();

  auto* fiber = add("fiber", "sample a fiber point over a basepoint and assemble it", cmd_fiber);
  space_flags(fiber, false);
  fiber->add_option("--label", o.label, "l,m,r")->required();
  fiber->add_option("--kind", o.kind, "isotropic or open")->check(CLI::IsMember({"isotropic", "open"}));

  auto* crdim = add("crdim", "real and CR dimensions of a Matsuki orbit at a point", cmd_crdim);
  space_flags(crdim, false);
  crdim->add_option("--input", o.input, "subspace JSON file");
  crdim->add_option("--label", o.label, "l,m,r (when no input file is given)");

  auto* verify = add("verify", "run the seeded verification campaigns", cmd_verify);
  space_flags(verify, true);
  verify->add_option("--samples", o.samples, "samples per claim")->check(CLI::PositiveNumber);
  verify->add_option("--campaign", o.campaign, "campaign name or all")
      ->check(CLI::IsMember({"all", "invariance", "equivariance", "dimensions", "cr", "witness"}));

  add("example-m111", "worked example: M(1,1,1) in Gr_3(C^8) with signature (2,6)",
      cmd_example_m111);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitInput;
  }

  for (const auto& [sub, fn] : commands) {
    if (!sub->parsed()) continue;
    try {
      return fn(o);
    } catch (const VerificationFailed&) {
      return kExitVerification;
    } catch (const std::exception& e) {
      std::cerr << "error: " << e.what() << "\n";
      return kExitInput;
    }
  }
  return kExitInput;
}

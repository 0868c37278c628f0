#include <CLI11.hpp>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "infloc/holonomy/holonomy.hpp"
#include "infloc/interval/interval.hpp"
#include "infloc/io/formats.hpp"
#include "infloc/mc/fixtures.hpp"
#include "infloc/perturbation/perturbation.hpp"

using namespace infloc;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct Checklist {
  json items = json::array();
  void add(const std::string& name, bool ok) { items.push_back({{"check", name}, {"ok", ok}}); }
};

std::optional<Ring> ring_flag(const std::string& s) {
  if (s.empty()) return std::nullopt;
  return Ring::parse(s);
}

JsonLoader loader_for(const std::string& file) { return JsonLoader(fs::path(file).parent_path()); }

json read_file(const std::string& file) { return JsonLoader::read(file); }

const json& need(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw InvalidInput(std::string("missing field '") + key + "'");
  return j.at(key);
}

std::shared_ptr<const FiniteSimplicialSet> complex_file(const std::string& file) {
  return std::make_shared<const FiniteSimplicialSet>(complex_from_json(read_file(file)));
}

AlgebraPtr algebra_of(const json& doc, const std::string& file, std::optional<Ring> ring) {
  return std::make_shared<const DgAlgebra>(algebra_from_ref(need(doc, "algebra"), loader_for(file), ring));
}

std::string dga_table(const DgAlgebra& a) {
  std::ostringstream s;
  s << "basis:";
  for (std::size_t i = 0; i < a.dim(); ++i) s << ' ' << a.basis().label(i) << '(' << a.degree(i) << ')';
  s << '\n';
  for (std::size_t i = 0; i < a.dim(); ++i) {
    Vec d = a.d(a.basis_vec(i));
    s << "d(" << a.basis().label(i) << ") = " << a.format(d) << '\n';
  }
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < a.dim(); ++j) {
      Vec p = a.mul(a.basis_vec(i), a.basis_vec(j));
      if (!is_zero_vec(p)) s << a.basis().label(i) << " * " << a.basis().label(j) << " = " << a.format(p) << '\n';
    }
  return s.str();
}

json cmd_check_dga(const std::string& file, const std::string& ring) {
  json doc = read_file(file);
  DgAlgebra a = algebra_from_ref(doc, loader_for(file), ring_flag(ring));
  DgaReport r = check_dga(a);
  json v = json::array();
  for (const auto& x : r.violations) v.push_back({{"axiom", x.axiom}, {"witness", x.witness}, {"residual", x.residual}});
  Checklist c;
  c.add("dga axioms", r.ok());
  return {{"ok", r.ok()}, {"dim", a.dim()}, {"ring", a.ring().name()}, {"violations", v}, {"violation_count", r.count},
          {"checks", c.items}};
}

json cmd_cohomology(const std::string& file, const std::string& ring, int lo) {
  if (fs::path(file).extension() != ".json") {
    std::ifstream in(file);
    if (!in) throw InvalidInput("cannot open " + file);
    auto ds = read_matrices(in);
    for (std::size_t k = 1; k < ds.size(); ++k)
      if (!(ds[k] * ds[k - 1]).is_zero()) throw InvalidInput("differentials " + std::to_string(k - 1) + " and " + std::to_string(k) + " do not compose to zero");
    json out = report_to_json(cohomology(ds, lo));
    Checklist c;
    c.add("d^2 = 0", true);
    out["checks"] = c.items;
    return out;
  }
  json doc = read_file(file);
  Checklist c;
  json out;
  if (doc.contains("twisting")) {
    TwistedModule m = twisted_module_from_json(doc, loader_for(file), ring_flag(ring));
    c.add("twisting is Maurer-Cartan", m.residual().is_zero());
    out = report_to_json(cohomology(m));
  } else {
    auto a = std::make_shared<const DgAlgebra>(algebra_from_ref(doc, loader_for(file), ring_flag(ring)));
    c.add("dga axioms", check_dga(*a).ok());
    out = report_to_json(cohomology(DgModule::regular(a)));
  }
  out["checks"] = c.items;
  return out;
}

json cmd_local_system(const std::string& complex, const std::string& system, const std::string& ring) {
  auto base = complex_file(complex);
  json doc = read_file(system);
  std::optional<Ring> r = ring_flag(ring);
  if (!r && doc.contains("ring")) r = Ring::parse(doc.at("ring").get<std::string>());
  if (!r) throw InvalidInput("local system needs a ring (--ring or a ring field)");
  LocalSystem ls = local_system_from_json(doc, base, *r);
  TwistedModule m = rep_to_mc(ls);
  Checklist c;
  c.add("functor condition on 2-simplices", true);
  c.add("twisting is Maurer-Cartan", m.residual().is_zero());
  c.add("representation roundtrip", mc_to_rep(base, m) == ls);
  CohomologyReport h = local_system_cohomology(ls);
  c.add("agrees with the twisted module", cohomology(m) == h);
  json out = report_to_json(h);
  out["checks"] = c.items;
  return out;
}

json cmd_mc_check(const std::string& file, const std::string& ring) {
  json doc = read_file(file);
  auto a = algebra_of(doc, file, ring_flag(ring));
  McCheck m = is_mc(*a, element_from_json(*a, need(doc, "value")));
  Checklist c;
  c.add("homogeneous of degree 1", true);
  return {{"mc", m.ok}, {"residual", element_to_json(*a, m.residual)}, {"checks", c.items}};
}

json cmd_gauge_search(const std::string& file, const std::string& ring, std::uint64_t seed, std::size_t budget) {
  json doc = read_file(file);
  auto a = algebra_of(doc, file, ring_flag(ring));
  Vec x = element_from_json(*a, need(doc, "x")), y = element_from_json(*a, need(doc, "y"));
  SearchResult r = search_homotopy_gauge(*a, x, y, budget, seed);
  json out{{"result", to_string(r.kind)}, {"invariant", r.invariant}, {"note", r.note}, {"samples", r.samples},
           {"miss_bound", r.miss_bound}, {"strict_gauge", r.strict_gauge}, {"seed", seed}};
  Checklist c;
  c.add("x is Maurer-Cartan", is_mc(*a, x).ok);
  c.add("y is Maurer-Cartan", is_mc(*a, y).ok);
  if (r.cert) {
    out["certificate"] = certificate_to_json(*a, *r.cert);
    c.add("certificate verifies", verify_homotopy_gauge(*a, x, y, *r.cert).ok);
  }
  out["checks"] = c.items;
  return out;
}

json cmd_k2_dict(const std::string& file, const std::string& ring) {
  json doc = read_file(file);
  auto a = algebra_of(doc, file, ring_flag(ring));
  PathObject p(a, 2);
  Checklist c;
  json out;
  if (doc.contains("certificate")) {
    Vec x = element_from_json(*a, need(doc, "x")), y = element_from_json(*a, need(doc, "y"));
    HomotopyGaugeCertificate cert = certificate_from_json(*a, doc.at("certificate"));
    c.add("certificate verifies", verify_homotopy_gauge(*a, x, y, cert).ok);
    Vec X = k2_homotopy_from_certificate(p, x, y, cert);
    c.add("homotopy is Maurer-Cartan", is_mc(p.ak, X).ok);
    K2Homotopy back = certificate_from_k2_homotopy(p, X);
    c.add("roundtrip", back.x == x && back.xp == y && back.cert.g == cert.g && back.cert.h == cert.h &&
                           back.cert.wx == cert.wx && back.cert.wy == cert.wy);
    out["homotopy"] = element_to_json(p.ak, X);
  } else {
    Vec X = element_from_json(p.ak, need(doc, "homotopy"));
    K2Homotopy k = certificate_from_k2_homotopy(p, X);
    c.add("homotopy is Maurer-Cartan", true);
    c.add("certificate verifies", verify_homotopy_gauge(*a, k.x, k.xp, k.cert).ok);
    c.add("roundtrip", k2_homotopy_from_certificate(p, k.x, k.xp, k.cert) == X);
    out["x"] = element_to_json(*a, k.x);
    out["y"] = element_to_json(*a, k.xp);
    out["certificate"] = certificate_to_json(*a, k.cert);
  }
  out["checks"] = c.items;
  return out;
}

json cmd_kinfty(int N) {
  KInftyCategoryTrunc k = k_infty_category(N);
  json gens = json::array();
  for (std::size_t g = 0; g < k.gens.size(); ++g) {
    const auto& G = k.gens[g];
    gens.push_back({{"name", G.name()}, {"degree", -G.n}, {"word", G.word}, {"source", G.src == 0 ? "O1" : "O2"},
                    {"target", G.dst == 0 ? "O1" : "O2"}, {"sigma", G.sigma}, {"d", k.format_d(g)}});
  }
  Checklist c;
  c.add("d^2 = 0 on every generator", true);
  return {{"N", N}, {"generators", gens}, {"ledger", k.ledger}, {"checks", c.items}};
}

json cmd_minimal_model(const std::string& file, const std::string& ring, std::uint64_t seed) {
  json doc = read_file(file);
  TwistedModule m = twisted_module_from_json(doc, loader_for(file), ring_flag(ring));
  MinimalModel mm = minimal_model(m, seed);
  CohomologyReport hin = cohomology(m), hout = cohomology(mm.minimal);
  Checklist c;
  c.add("input is reduced", is_reduced(m));
  c.add("output is minimal", is_minimal(mm.minimal));
  c.add("output twisting is Maurer-Cartan", mm.minimal.residual().is_zero());
  c.add("p i = 1", mm.p * mm.i == AMatrix::identity(m.alg, mm.minimal.v));
  c.add("D h + h D = 1 - i p", hom_d(m, m, mm.h) == AMatrix::identity(m.alg, m.v) - mm.i * mm.p);
  c.add("cohomology preserved", hin == hout);
  json out = twisted_module_to_json(mm.minimal);
  out.erase("algebra");
  return {{"minimal", out}, {"input_cohomology", report_to_json(hin)}, {"minimal_cohomology", report_to_json(hout)},
          {"rank", mm.minimal.v.size()}, {"checks", c.items}};
}

json cmd_resolve(const std::string& complex, const std::string& system) {
  auto base = complex_file(complex);
  json doc = read_file(system);
  long m = need(doc, "modulus").get<long>();
  std::map<std::size_t, long> transports;
  if (doc.contains("transports"))
    for (const auto& t : doc.at("transports")) {
      if (!t.is_array() || t.size() != 2) throw InvalidInput("transports are [edge, integer]");
      auto e = base->find(1, t[0].get<std::string>());
      if (!e) throw InvalidInput("no edge " + t[0].get<std::string>() + " in the complex");
      transports[*e] = t[1].get<long>();
    }
  ResolutionLift lift = lift_to_free_resolution(cyclic_resolution_input(base, m, transports));
  CohomologyReport got = cohomology(lift.module), want = cyclic_local_cohomology(base, m, transports);
  Checklist c;
  c.add("D_W^2 = 0", lift.module.residual().is_zero());
  c.add("matches the cohomology of the non-free system", got == want);
  json parts = json::array();
  for (std::size_t k = 0; k < lift.parts.size(); ++k) parts.push_back({{"degree", k}, {"zero", lift.parts[k].is_zero()}});
  json mod = twisted_module_to_json(lift.module);
  mod.erase("algebra");
  return {{"cohomology", report_to_json(got)}, {"expected", report_to_json(want)}, {"module", mod}, {"parts", parts},
          {"checks", c.items}};
}

json cmd_truncate(const std::string& file, const std::string& ring, std::optional<int> below, std::optional<int> above) {
  if (below.has_value() == above.has_value()) throw InvalidInput("truncate needs exactly one of --below and --above");
  json doc = read_file(file);
  TwistedModule m = twisted_module_from_json(doc, loader_for(file), ring_flag(ring));
  Checklist c;
  TwistedModule t;
  if (below) {
    Truncated tr = truncate_below(m, *below);
    c.add("inclusion is closed", hom_d(tr.module, m, tr.inclusion).is_zero());
    t = tr.module;
  } else {
    t = truncate_above(m, *above);
  }
  c.add("twisting is Maurer-Cartan", t.residual().is_zero());
  json mod = twisted_module_to_json(t);
  mod.erase("algebra");
  return {{"module", mod}, {"cohomology", report_to_json(cohomology(t))}, {"input_cohomology", report_to_json(cohomology(m))},
          {"checks", c.items}};
}

json cmd_kn(int n, const std::string& ring) {
  Ring R = ring.empty() ? Ring::Z() : Ring::parse(ring);
  IntervalAlgebra k = build_interval_algebra(n, R);
  const DgAlgebra& a = k.dga;
  json out = algebra_to_json(a);
  std::vector<std::size_t> ranks;
  for (int d = 0; d <= a.basis().max_degree(); ++d) ranks.push_back(a.basis().in_degree(d).size());
  out["n"] = n;
  out["ranks"] = ranks;
  CohomologyReport h = cohomology(DgModule::regular(std::make_shared<const DgAlgebra>(a)));
  out["cohomology"] = report_to_json(h);
  json pres = json::array();
  for (const auto& p : check_printed_presentation(k))
    pres.push_back({{"relation", p.relation}, {"holds", p.holds}, {"derived", p.derived}});
  out["printed_presentation"] = pres;
  out["table"] = dga_table(a);
  Checklist c;
  c.add("dga axioms", check_dga(a).ok());
  out["checks"] = c.items;
  return out;
}

std::vector<RMat> read_csv_path(const std::string& file) {
  std::ifstream in(file);
  if (!in) throw InvalidInput("cannot open " + file);
  std::vector<RMat> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos || line[line.find_first_not_of(" \t")] == '#') continue;
    std::vector<double> v;
    std::stringstream s(line);
    std::string cell;
    while (std::getline(s, cell, ',')) {
      try {
        std::size_t used = 0;
        v.push_back(std::stod(cell, &used));
        if (cell.find_first_not_of(" \t\r", used) != std::string::npos) throw std::invalid_argument(cell);
      } catch (const std::exception&) {
        throw InvalidInput("line " + std::to_string(lineno) + ": not a number: '" + cell + "'");
      }
    }
    auto n = static_cast<Eigen::Index>(std::llround(std::sqrt(static_cast<double>(v.size()))));
    if (n == 0 || static_cast<std::size_t>(n * n) != v.size())
      throw InvalidInput("line " + std::to_string(lineno) + ": entry count is not a square");
    RMat m(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
      for (Eigen::Index j = 0; j < n; ++j) m(i, j) = v[static_cast<std::size_t>(i * n + j)];
    out.push_back(m);
  }
  return out;
}

json rmat_to_json(const RMat& m) {
  json j = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(i, c));
    j.push_back(row);
  }
  return j;
}

json cmd_holonomy(const std::string& file, double z, double tol) {
  SampledMatrixPath y(read_csv_path(file), SampledMatrixPath::Kind::Form);
  Pexp p = pexp(y, z);
  Transport t = solve_transport(y, RMat::Identity(y.dim(), y.dim()), tol);
  StepHalving s = step_halving(y.function(), z, std::max(2, y.steps() / 8));
  Checklist c;
  c.add("transport residual within tolerance", !t.flagged);
  c.add("result invertible", p.condition < 1e12);
  return {{"result", rmat_to_json(p.value)}, {"z", z}, {"samples", y.steps() + 1}, {"condition", p.condition},
          {"residuals", {{"transport", t.residual}}}, {"order_estimate", s.order}, {"step_halving_ratio", s.ratio},
          {"checks", c.items}};
}

void write_json(const fs::path& p, const json& j) {
  std::ofstream out(p);
  if (!out) throw InvalidInput("cannot write " + p.string());
  out << j.dump(2) << '\n';
}

json emit_fixtures(const fs::path& dir) {
  fs::create_directories(dir);
  std::vector<std::string> written;
  auto put = [&](const std::string& name, const json& j) {
    write_json(dir / name, j);
    written.push_back(name);
  };
  Ring Z = Ring::Z(), Q = Ring::Q();

  DgAlgebra kx = polynomial_mc_algebra(Q, 4);
  put("kx.json", algebra_to_json(kx));
  put("kx-fixture.json", {{"algebra", "kx.json"}, {"value", json::array({json::array({"x", 1})})}});

  DgAlgebra ge = gauge_example_algebra(Q, 4);
  GaugeExample ex = gauge_example_elements(ge);
  put("gauge-example-algebra.json", algebra_to_json(ge));
  put("gauge-example.json", {{"algebra", "gauge-example-algebra.json"},
                             {"x", element_to_json(ge, ex.x)},
                             {"y", element_to_json(ge, ex.y)},
                             {"certificate", certificate_to_json(ge, ex.cert)}});

  for (int n = 0; n <= 6; ++n) put("k" + std::to_string(n) + ".json", algebra_to_json(build_interval_algebra(n, Z).dga));
  put("k0-twist.json", {{"algebra", "k0.json"}, {"x", json::array()}, {"y", json::array({json::array({"s", 1})})}});

  std::vector<std::pair<std::string, FiniteSimplicialSet>> complexes = {
      {"circle3", circle(3)},          {"circle4", circle(4)},          {"circle5", circle(5)},
      {"torus7", torus7()},            {"simplex3", standard_simplex(3)}, {"boundary3", simplex_boundary(3)}};
  for (const auto& [name, x] : complexes) put(name + ".json", complex_to_json(x));
  for (int v : {3, 4, 5}) {
    put("sign-circle" + std::to_string(v) + ".json",
        {{"complex", "circle" + std::to_string(v) + ".json"},
         {"rank", 1},
         {"ring", "Z"},
         {"monodromy", json::array({json::array({"01", json::array({json::array({-1})})})})}});
  }
  put("trivial.json", {{"rank", 1}, {"ring", "Z"}, {"monodromy", json::array()}});
  put("z2-circle3.json", {{"modulus", 2}, {"transports", json::array()}});
  put("z3-circle3.json", {{"modulus", 3}, {"transports", json::array({json::array({"01", 2})})}});

  // rank three module on the circle: d0(u) = b, edge 01 twists a, edge 02 sends u to a
  put("rank3-circle.json", {{"algebra", {{"complex", "circle3.json"}, {"ring", "Q"}}},
                            {"basis", json::array({json::array({"a", 0}), json::array({"u", 0}), json::array({"b", 1})})},
                            {"twisting", json::array({json::array({"b", "u", json::array({json::array({"0", 1}),
                                                                                          json::array({"1", 1}),
                                                                                          json::array({"2", 1})})}),
                                                      json::array({"a", "a", json::array({json::array({"01", 1})})}),
                                                      json::array({"a", "u", json::array({json::array({"02", 1})})})})}});

  std::ofstream csv(dir / "path.csv");
  for (int k = 0; k <= 64; ++k) {
    double t = k / 64.0;
    csv << 0.0 << ',' << t << ',' << -t << ',' << 0.0 << '\n';
  }
  written.push_back("path.csv");
  return {{"directory", dir.string()}, {"files", written}};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Maurer-Cartan elements, twisted modules and local systems over finite dg algebras"};
  app.set_help_all_flag("--help-all");
  std::string fixtures_dir;
  app.add_option("--emit-fixtures", fixtures_dir, "write the built-in fixtures to this directory");
  app.require_subcommand(0, 1);

  std::string file, file2, ring;
  std::uint64_t seed = 0;
  std::size_t budget = 200;
  int lo = 0, n = 0;
  std::optional<int> below, above;
  double z = 1.0, tol = 1e-6;

  auto* check_dga_cmd = app.add_subcommand("check-dga", "check the dg algebra axioms");
  check_dga_cmd->add_option("file", file, "algebra or complex JSON")->required();
  check_dga_cmd->add_option("--ring", ring);

  auto* cohomology_cmd = app.add_subcommand("cohomology", "cohomology of an algebra, a twisted module or a matrix complex");
  cohomology_cmd->add_option("file", file, "algebra / module JSON or matrix text")->required();
  cohomology_cmd->add_option("--ring", ring);
  cohomology_cmd->add_option("--lo", lo, "degree of the first matrix source");

  auto* local_cmd = app.add_subcommand("local-system", "cohomology with local coefficients");
  local_cmd->add_option("complex", file)->required();
  local_cmd->add_option("system", file2)->required();
  local_cmd->add_option("--ring", ring);

  auto* mc_cmd = app.add_subcommand("mc-check", "is the element Maurer-Cartan");
  mc_cmd->add_option("file", file)->required();
  mc_cmd->add_option("--ring", ring);

  auto* gauge_cmd = app.add_subcommand("gauge-search", "seeded search for a homotopy gauge equivalence");
  gauge_cmd->add_option("file", file)->required();
  gauge_cmd->add_option("--seed", seed)->required();
  gauge_cmd->add_option("--budget", budget);
  gauge_cmd->add_option("--ring", ring);

  auto* k2_cmd = app.add_subcommand("k2-dict", "certificate <-> homotopy over A ⊗ K_2");
  k2_cmd->add_option("file", file)->required();
  k2_cmd->add_option("--ring", ring);

  auto* kinfty_cmd = app.add_subcommand("kinfty", "truncated resolution category");
  kinfty_cmd->add_option("--N", n)->required();

  auto* minimal_cmd = app.add_subcommand("minimal-model", "minimal model of a reduced twisted module");
  minimal_cmd->add_option("file", file)->required();
  minimal_cmd->add_option("--seed", seed);
  minimal_cmd->add_option("--ring", ring);

  auto* resolve_cmd = app.add_subcommand("resolve", "lift a Z/m local system to a free resolution");
  resolve_cmd->add_option("complex", file)->required();
  resolve_cmd->add_option("system", file2)->required();

  auto* truncate_cmd = app.add_subcommand("truncate", "canonical truncation of a reduced twisted module");
  truncate_cmd->add_option("file", file)->required();
  truncate_cmd->add_option("--below", below, "keep degrees <= i");
  truncate_cmd->add_option("--above", above, "keep degrees >= i");
  truncate_cmd->add_option("--ring", ring);

  auto* kn_cmd = app.add_subcommand("kn", "presentation of the level-n interval algebra");
  kn_cmd->add_option("--n", n)->required();
  kn_cmd->add_option("--ring", ring);

  auto* holonomy_cmd = app.add_subcommand("holonomy", "path-ordered exponential of a sampled path");
  holonomy_cmd->add_option("file", file, "CSV, one row-major matrix per line")->required();
  holonomy_cmd->add_option("--z", z);
  holonomy_cmd->add_option("--tol", tol);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    json out;
    if (!fixtures_dir.empty()) {
      out = emit_fixtures(fixtures_dir);
      if (app.get_subcommands().empty()) {
        std::cout << out.dump(2) << '\n';
        return 0;
      }
    }
    if (app.got_subcommand(check_dga_cmd)) out = cmd_check_dga(file, ring);
    else if (app.got_subcommand(cohomology_cmd)) out = cmd_cohomology(file, ring, lo);
    else if (app.got_subcommand(local_cmd)) out = cmd_local_system(file, file2, ring);
    else if (app.got_subcommand(mc_cmd)) out = cmd_mc_check(file, ring);
    else if (app.got_subcommand(gauge_cmd)) out = cmd_gauge_search(file, ring, seed, budget);
    else if (app.got_subcommand(k2_cmd)) out = cmd_k2_dict(file, ring);
    else if (app.got_subcommand(kinfty_cmd)) out = cmd_kinfty(n);
    else if (app.got_subcommand(minimal_cmd)) out = cmd_minimal_model(file, ring, seed);
    else if (app.got_subcommand(resolve_cmd)) out = cmd_resolve(file, file2);
    else if (app.got_subcommand(truncate_cmd)) out = cmd_truncate(file, ring, below, above);
    else if (app.got_subcommand(kn_cmd)) out = cmd_kn(n, ring);
    else if (app.got_subcommand(holonomy_cmd)) out = cmd_holonomy(file, z, tol);
    else {
      std::cerr << app.help();
      return 1;
    }
    std::cout << out.dump(2) << '\n';
    return 0;
  } catch (const InvalidInput& e) {
    std::cerr << "invalid input: " << e.what() << '\n';
    std::cout << json{{"error", "invalid input"}, {"message", e.what()}}.dump() << '\n';
    return 1;
  } catch (const InvariantViolation& e) {
    std::cerr << "invariant violation: " << e.what() << '\n';
    std::cout << json{{"error", "invariant violation"}, {"message", e.what()}}.dump() << '\n';
    return 2;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "invalid input: " << e.what() << '\n';
    std::cout << json{{"error", "invalid input"}, {"message", e.what()}}.dump() << '\n';
    return 1;
  }
}

#include "infloc/io/formats.hpp"

#include <algorithm>
#include <fstream>

#include "infloc/simplicial/sset.hpp"

namespace infloc {

using nlohmann::json;

namespace {

const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw InvalidInput(std::string("missing field '") + key + "'");
  return j.at(key);
}

json mpz_to_json(const mpz_class& z) {
  if (z.fits_slong_p()) return z.get_si();
  return z.get_str();
}

}  // namespace

json JsonLoader::read(const std::filesystem::path& p) {
  std::ifstream in(p);
  if (!in) throw InvalidInput("cannot open " + p.string());
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw InvalidInput(p.string() + " is not valid JSON: " + e.what());
  }
}

json JsonLoader::resolve(const json& ref) const {
  if (ref.is_string()) return read(base_ / ref.get<std::string>());
  if (ref.is_object()) return ref;
  throw InvalidInput("expected an object or a file name, got " + ref.dump());
}

JsonLoader JsonLoader::at(const json& ref) const {
  if (ref.is_string()) return JsonLoader((base_ / ref.get<std::string>()).parent_path());
  return *this;
}

FiniteSimplicialSet complex_from_json(const json& j) {
  try {
    auto vertices = field(j, "vertices").get<std::vector<std::string>>();
    std::vector<std::vector<std::size_t>> simplices;
    for (const auto& s : field(j, "simplices")) {
      std::vector<std::size_t> vs;
      for (const auto& v : s) {
        if (v.is_number_unsigned()) {
          vs.push_back(v.get<std::size_t>());
        } else if (v.is_string()) {
          auto it = std::find(vertices.begin(), vertices.end(), v.get<std::string>());
          if (it == vertices.end()) throw InvalidInput("simplex uses an unknown vertex " + v.dump());
          vs.push_back(static_cast<std::size_t>(it - vertices.begin()));
        } else {
          throw InvalidInput("simplex vertices are indices or labels, got " + v.dump());
        }
      }
      simplices.push_back(vs);
    }
    return from_ordered_complex(vertices, simplices);
  } catch (const json::exception& e) {
    throw InvalidInput(std::string("malformed complex JSON: ") + e.what());
  }
}

json complex_to_json(const FiniteSimplicialSet& x) {
  json j;
  j["vertices"] = json::array();
  for (std::size_t k = 0; k < x.count(0); ++k) j["vertices"].push_back(x.label(0, k));
  j["simplices"] = json::array();
  for (int n = 0; n <= x.dim(); ++n)
    for (std::size_t k = 0; k < x.count(n); ++k) {
      Simplex s = nondegenerate(n, k);
      json vs = json::array();
      for (int v = 0; v <= n; ++v) {
        Simplex p = x.vertex(s, v);
        vs.push_back(p.base);
      }
      j["simplices"].push_back(vs);
    }
  return j;
}

Matrix matrix_from_json(const Ring& ring, const json& j) {
  if (!j.is_array() || j.empty()) throw InvalidInput("matrix must be a non-empty array of rows");
  const std::size_t cols = j[0].size();
  Matrix m(ring, j.size(), cols);
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_array() || j[i].size() != cols) throw InvalidInput("matrix rows must have equal length");
    for (std::size_t c = 0; c < cols; ++c) m.set(i, c, scalar_from_json(ring, j[i][c]));
  }
  return m;
}

json matrix_to_json(const Matrix& m) {
  json j = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(scalar_to_json(m.at(i, c)));
    j.push_back(row);
  }
  return j;
}

LocalSystem local_system_from_json(const json& j, std::shared_ptr<const FiniteSimplicialSet> base, const Ring& ring) {
  try {
    LocalSystem ls = LocalSystem::trivial(base, ring, field(j, "rank").get<std::size_t>());
    if (j.contains("monodromy"))
      for (const auto& e : j.at("monodromy")) {
        if (!e.is_array() || e.size() != 2) throw InvalidInput("monodromy entries are [edge, matrix]");
        std::string label;
        if (e[0].is_string()) {
          label = e[0].get<std::string>();
        } else if (e[0].is_array() && e[0].size() == 2) {
          label = e[0][0].get<std::string>() + e[0][1].get<std::string>();
        } else {
          throw InvalidInput("edge must be a label or a pair of vertex labels, got " + e[0].dump());
        }
        auto k = base->find(1, label);
        if (!k) throw InvalidInput("no edge " + label + " in the complex");
        Matrix f = matrix_from_json(ring, e[1]);
        if (f.rows() != ls.rank || f.cols() != ls.rank) throw InvalidInput("monodromy on edge " + label + " has the wrong size");
        ls.monodromy[*k] = f;
      }
    ls.check();
    return ls;
  } catch (const json::exception& e) {
    throw InvalidInput(std::string("malformed local system JSON: ") + e.what());
  }
}

json local_system_to_json(const LocalSystem& ls) {
  json j;
  j["rank"] = ls.rank;
  j["ring"] = ls.ring.name();
  j["monodromy"] = json::array();
  for (const auto& [e, f] : ls.monodromy) j["monodromy"].push_back({ls.base->label(1, e), matrix_to_json(f)});
  return j;
}

DgAlgebra algebra_from_ref(const json& ref, const JsonLoader& loader, std::optional<Ring> ring) {
  json j = loader.resolve(ref);
  if (j.contains("basis")) {
    if (ring) j["ring"] = ring->name();
    return algebra_from_json(j);
  }
  if (j.contains("complex") || j.contains("vertices")) {
    json c = j.contains("complex") ? loader.at(ref).resolve(j.at("complex")) : j;
    if (!ring && j.contains("ring")) ring = Ring::parse(j.at("ring").get<std::string>());
    if (!ring) throw InvalidInput("cochain algebra needs a ring");
    return cochain_algebra(complex_from_json(c), *ring);
  }
  throw InvalidInput("algebra reference must be an algebra or { complex, ring }");
}

TwistedModule twisted_module_from_json(const json& j, const JsonLoader& loader, std::optional<Ring> ring) {
  try {
    auto alg = std::make_shared<const DgAlgebra>(algebra_from_ref(field(j, "algebra"), loader, ring));
    const Ring& R = alg->ring();
    std::vector<std::string> labels;
    std::vector<int> degs;
    for (const auto& b : field(j, "basis")) {
      if (!b.is_array() || b.size() != 2) throw InvalidInput("basis entries are [label, degree]");
      labels.push_back(b[0].get<std::string>());
      degs.push_back(b[1].get<int>());
    }
    GradedModule v(R, labels, degs);
    AMatrix x(alg, v, v);
    if (j.contains("twisting"))
      for (const auto& t : j.at("twisting")) {
        if (!t.is_array() || t.size() != 3) throw InvalidInput("twisting entries are [row, column, element]");
        std::size_t r = v.index(t[0].get<std::string>()), c = v.index(t[1].get<std::string>());
        x.at(r, c) = x.at(r, c) + element_from_json(*alg, t[2]);
      }
    return TwistedModule(alg, v, x);
  } catch (const json::exception& e) {
    throw InvalidInput(std::string("malformed twisted module JSON: ") + e.what());
  }
}

json twisted_module_to_json(const TwistedModule& m) {
  json j;
  j["algebra"] = algebra_to_json(*m.alg);
  j["basis"] = json::array();
  for (std::size_t i = 0; i < m.v.size(); ++i) j["basis"].push_back({m.v.label(i), m.v.degree(i)});
  j["twisting"] = json::array();
  for (std::size_t r = 0; r < m.v.size(); ++r)
    for (std::size_t c = 0; c < m.v.size(); ++c)
      if (!is_zero_vec(m.x.at(r, c)))
        j["twisting"].push_back({m.v.label(r), m.v.label(c), element_to_json(*m.alg, m.x.at(r, c))});
  return j;
}

json report_to_json(const CohomologyReport& r) {
  json j;
  j["lo"] = r.lo;
  j["H"] = json::array();
  for (const auto& g : r.H) {
    json e;
    e["rank"] = g.rank;
    if (!g.torsion.empty()) {
      e["torsion"] = json::array();
      for (const auto& t : g.torsion) e["torsion"].push_back(mpz_to_json(t));
    }
    j["H"].push_back(e);
  }
  j["text"] = r.str();
  return j;
}

json certificate_to_json(const DgAlgebra& a, const HomotopyGaugeCertificate& c) {
  return {{"g", element_to_json(a, c.g)}, {"h", element_to_json(a, c.h)}, {"wx", element_to_json(a, c.wx)},
          {"wy", element_to_json(a, c.wy)}};
}

HomotopyGaugeCertificate certificate_from_json(const DgAlgebra& a, const json& j) {
  return {element_from_json(a, field(j, "g")), element_from_json(a, field(j, "h")), element_from_json(a, field(j, "wx")),
          element_from_json(a, field(j, "wy"))};
}

}  // namespace infloc

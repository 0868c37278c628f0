#include "infloc/dg/io.hpp"

namespace infloc {

using nlohmann::json;

Scalar scalar_from_json(const Ring& ring, const json& j) {
  if (j.is_number_integer()) return ring.make(j.get<long>());
  if (j.is_string()) return ring.parse_scalar(j.get<std::string>());
  throw InvalidInput("coefficient must be an integer or a string, got " + j.dump());
}

json scalar_to_json(const Scalar& s) {
  if (s.is_integer() && s.value().get_num().fits_slong_p()) return s.value().get_num().get_si();
  return s.value().get_str();
}

namespace {

const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw InvalidInput(std::string("missing field '") + key + "'");
  return j.at(key);
}

}  // namespace

DgAlgebra algebra_from_json(const json& j) {
  try {
    Ring ring = Ring::parse(field(j, "ring").get<std::string>());
    std::vector<std::string> labels;
    std::vector<int> degs;
    for (const auto& b : field(j, "basis")) {
      if (!b.is_array() || b.size() != 2) throw InvalidInput("basis entries are [label, degree]");
      labels.push_back(b[0].get<std::string>());
      degs.push_back(b[1].get<int>());
    }
    GradedModule basis(ring, labels, degs);
    const std::size_t n = basis.size();
    Sparse unit;
    const json& u = field(j, "unit");
    if (u.is_string()) {
      unit.emplace_back(basis.index(u.get<std::string>()), ring.one());
    } else {
      for (const auto& t : u) unit.emplace_back(basis.index(t.at(0).get<std::string>()), scalar_from_json(ring, t.at(1)));
    }
    std::vector<Sparse> diff(n);
    if (j.contains("diff"))
      for (const auto& t : j.at("diff")) {
        if (!t.is_array() || t.size() != 3) throw InvalidInput("diff entries are [from, to, coeff]");
        diff[basis.index(t[0].get<std::string>())].emplace_back(basis.index(t[1].get<std::string>()),
                                                               scalar_from_json(ring, t[2]));
      }
    std::vector<std::vector<DgAlgebra::Product>> left(n);
    if (j.contains("mult"))
      for (const auto& t : j.at("mult")) {
        if (!t.is_array() || t.size() != 4) throw InvalidInput("mult entries are [left, right, result, coeff]");
        left[basis.index(t[0].get<std::string>())].push_back(
            {basis.index(t[1].get<std::string>()), basis.index(t[2].get<std::string>()), scalar_from_json(ring, t[3])});
      }
    std::optional<Truncation> tr;
    if (j.contains("truncation")) {
      const json& t = j.at("truncation");
      tr = Truncation{field(t, "weights").get<std::vector<int>>(), field(t, "horizon").get<int>(),
                      field(t, "raise").get<int>()};
    }
    return DgAlgebra(basis, unit, diff, left, tr);
  } catch (const json::exception& e) {
    throw InvalidInput(std::string("malformed algebra JSON: ") + e.what());
  }
}

json algebra_to_json(const DgAlgebra& a) {
  const auto& b = a.basis();
  json j;
  j["ring"] = a.ring().name();
  j["basis"] = json::array();
  for (std::size_t i = 0; i < a.dim(); ++i) j["basis"].push_back({b.label(i), b.degree(i)});
  if (a.unit().size() == 1 && a.unit()[0].second.is_one()) {
    j["unit"] = b.label(a.unit()[0].first);
  } else {
    j["unit"] = json::array();
    for (const auto& [i, c] : a.unit()) j["unit"].push_back({b.label(i), scalar_to_json(c)});
  }
  j["diff"] = json::array();
  j["mult"] = json::array();
  for (std::size_t i = 0; i < a.dim(); ++i) {
    for (const auto& [k, c] : a.diff(i)) j["diff"].push_back({b.label(i), b.label(k), scalar_to_json(c)});
    for (const auto& p : a.left(i))
      j["mult"].push_back({b.label(i), b.label(p.other), b.label(p.result), scalar_to_json(p.c)});
  }
  if (a.truncation()) {
    const auto& t = *a.truncation();
    j["truncation"] = {{"weights", t.weight}, {"horizon", t.horizon}, {"raise", t.raise}};
  }
  return j;
}

Vec element_from_json(const DgAlgebra& a, const json& j) {
  Vec v = a.zero();
  if (!j.is_array()) throw InvalidInput("element must be a list of [label, coeff]");
  for (const auto& t : j) {
    if (!t.is_array() || t.size() != 2) throw InvalidInput("element terms are [label, coeff]");
    v[a.basis().index(t[0].get<std::string>())] += scalar_from_json(a.ring(), t[1]);
  }
  return v;
}

json element_to_json(const DgAlgebra& a, const Vec& v) {
  json j = json::array();
  for (std::size_t i = 0; i < v.size(); ++i)
    if (!v[i].is_zero()) j.push_back({a.basis().label(i), scalar_to_json(v[i])});
  return j;
}

}  // namespace infloc

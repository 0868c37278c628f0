#pragma once

#include <json.hpp>

#include "infloc/dg/algebra.hpp"

namespace infloc {

// Coefficients may be JSON integers or strings "a" / "a/b".
Scalar scalar_from_json(const Ring& ring, const nlohmann::json& j);
nlohmann::json scalar_to_json(const Scalar& s);

// { ring, basis: [[label, degree]...], unit: label | [[label, coeff]...],
//   diff: [[from, to, coeff]...], mult: [[left, right, result, coeff]...],
//   truncation?: { weights: [...], horizon, raise } }
DgAlgebra algebra_from_json(const nlohmann::json& j);
nlohmann::json algebra_to_json(const DgAlgebra& a);

// [[label, coeff]...] <-> element
Vec element_from_json(const DgAlgebra& a, const nlohmann::json& j);
nlohmann::json element_to_json(const DgAlgebra& a, const Vec& v);

}  // namespace infloc

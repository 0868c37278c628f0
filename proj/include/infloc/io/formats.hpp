#pragma once

#include <filesystem>
#include <json.hpp>
#include <memory>

#include "infloc/dg/io.hpp"
#include "infloc/dg/twisted.hpp"
#include "infloc/linalg/cohomology.hpp"
#include "infloc/mc/mc.hpp"
#include "infloc/simplicial/local.hpp"

namespace infloc {

// Reads JSON files; a string where an object is expected is a path relative to
// the file that mentions it.
class JsonLoader {
 public:
  explicit JsonLoader(std::filesystem::path base = ".") : base_(std::move(base)) {}
  static nlohmann::json read(const std::filesystem::path& p);
  // object as is, string as a file next to the referring document
  nlohmann::json resolve(const nlohmann::json& ref) const;
  JsonLoader at(const nlohmann::json& ref) const;  // loader for nested references

 private:
  std::filesystem::path base_;
};

// { vertices: [labels], simplices: [[v...]...] } with vertex indices or labels
FiniteSimplicialSet complex_from_json(const nlohmann::json& j);
// every nondegenerate simplex by its vertex indices; needs a vertex-ordered complex
nlohmann::json complex_to_json(const FiniteSimplicialSet& x);

// [[a, b, ...], ...] rows of coefficients
Matrix matrix_from_json(const Ring& ring, const nlohmann::json& j);
nlohmann::json matrix_to_json(const Matrix& m);

// { complex: ref, rank, ring, monodromy: [[edge, matrix]...] }; edge is a label
// such as "01" or a pair of vertex labels. complex and ring may come from the caller.
LocalSystem local_system_from_json(const nlohmann::json& j, std::shared_ptr<const FiniteSimplicialSet> base,
                                   const Ring& ring);
nlohmann::json local_system_to_json(const LocalSystem& ls);

// Algebra reference: a DgAlgebra object, or { complex: ref, ring } for its cochains.
// A given ring overrides the one in an algebra object; coefficients are read in it.
DgAlgebra algebra_from_ref(const nlohmann::json& ref, const JsonLoader& loader, std::optional<Ring> ring = {});

// { algebra: ref, basis: [[label, degree]...], twisting: [[row, column, [[label, coeff]...]]...] }
// with row and column basis labels of V: v_column -> v_row ⊗ a.
TwistedModule twisted_module_from_json(const nlohmann::json& j, const JsonLoader& loader, std::optional<Ring> ring = {});
// the algebra is written inline
nlohmann::json twisted_module_to_json(const TwistedModule& m);

nlohmann::json report_to_json(const CohomologyReport& r);
nlohmann::json certificate_to_json(const DgAlgebra& a, const HomotopyGaugeCertificate& c);
HomotopyGaugeCertificate certificate_from_json(const DgAlgebra& a, const nlohmann::json& j);

}  // namespace infloc

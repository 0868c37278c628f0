#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "infloc/linalg/matrix.hpp"

namespace infloc {

// Sparse linear combination of basis elements: (index, coefficient), sorted by index.
using Sparse = std::vector<std::pair<std::size_t, Scalar>>;

// Accumulates a sparse combination, dropping entries that cancel.
class SparseAcc {
 public:
  void add(std::size_t i, const Scalar& c);
  void add(const Sparse& s, const Scalar& c);
  bool empty() const { return m_.empty(); }
  Sparse take() const;
  const std::map<std::size_t, Scalar>& map() const { return m_; }

 private:
  std::map<std::size_t, Scalar> m_;
};

Sparse to_sparse(const Vec& v);
Vec to_dense(const Ring& ring, std::size_t n, const Sparse& s);

class GradedModule {
 public:
  GradedModule() = default;
  GradedModule(Ring ring, std::vector<std::string> labels, std::vector<int> degrees);

  const Ring& ring() const { return ring_; }
  std::size_t size() const { return labels_.size(); }
  const std::string& label(std::size_t i) const { return labels_.at(i); }
  int degree(std::size_t i) const { return degrees_.at(i); }
  const std::vector<int>& degrees() const { return degrees_; }
  const std::vector<std::string>& labels() const { return labels_; }
  std::optional<std::size_t> find(const std::string& label) const;
  std::size_t index(const std::string& label) const;  // throws InvalidInput
  std::vector<std::size_t> in_degree(int d) const;
  int min_degree() const;
  int max_degree() const;
  // V[k]^i = V^{i+k}: every degree drops by k
  GradedModule shifted(int k) const;
  GradedModule direct_sum(const GradedModule& o) const;

 private:
  Ring ring_;
  std::vector<std::string> labels_;
  std::vector<int> degrees_;
  std::map<std::string, std::size_t> index_;
};

// Words of weight > horizon have been quotiented out. Weights are additive
// under the product and d raises weight by at most `raise`, so d^2 is exact on
// weight <= horizon - raise and Leibniz on pairs of total weight <= horizon.
struct Truncation {
  std::vector<int> weight;
  int horizon = 0;
  int raise = 0;
};

class DgAlgebra {
 public:
  struct Product {
    std::size_t other, result;
    Scalar c;
  };

  DgAlgebra() = default;
  // left[i] lists the products b_i * b_other = c * b_result; duplicates are merged.
  DgAlgebra(GradedModule basis, Sparse unit, std::vector<Sparse> diff, std::vector<std::vector<Product>> left,
            std::optional<Truncation> trunc = std::nullopt);

  static DgAlgebra ground(const Ring& ring);

  const GradedModule& basis() const { return basis_; }
  const Ring& ring() const { return basis_.ring(); }
  std::size_t dim() const { return basis_.size(); }
  int degree(std::size_t i) const { return basis_.degree(i); }
  const Sparse& unit() const { return unit_; }
  const Sparse& diff(std::size_t i) const { return diff_.at(i); }
  // b_i * b_other, sorted by other
  const std::vector<Product>& left(std::size_t i) const { return left_.at(i); }
  // b_other * b_j, sorted by other
  const std::vector<Product>& right(std::size_t j) const { return right_.at(j); }
  Sparse product(std::size_t i, std::size_t j) const;
  const std::optional<Truncation>& truncation() const { return trunc_; }
  std::size_t product_count() const;

  Vec zero() const { return zero_vec(ring(), dim()); }
  Vec one() const { return to_dense(ring(), dim(), unit_); }
  Vec basis_vec(std::size_t i) const;
  Vec element(const std::vector<std::pair<std::string, Scalar>>& terms) const;
  Vec d(const Vec& a) const;
  Vec mul(const Vec& a, const Vec& b) const;
  // [a, b] = ab - (-1)^{|a||b|} ba for homogeneous a, b
  Vec commutator(const Vec& a, const Vec& b) const;
  // zero counts as homogeneous of every degree
  bool is_homogeneous(const Vec& a, int deg) const;
  std::optional<int> degree_of(const Vec& a) const;  // nullopt for zero; throws if inhomogeneous
  std::string format(const Vec& a) const;

  // The same algebra with a different differential (sparse rows).
  DgAlgebra with_diff(std::vector<Sparse> diff) const;
  DgAlgebra relabeled(std::vector<std::string> labels) const;

 private:
  GradedModule basis_;
  Sparse unit_;
  std::vector<Sparse> diff_;
  std::vector<std::vector<Product>> left_, right_;
  std::optional<Truncation> trunc_;
};

struct Violation {
  std::string axiom;  // degree, d^2, leibniz, associativity, unit, truncation
  std::vector<std::string> witness;
  std::string residual;
};

struct DgaReport {
  std::vector<Violation> violations;  // first few, in discovery order
  std::size_t count = 0;
  bool ok() const { return count == 0; }
  bool has(const std::string& axiom) const;
  std::string str() const;
};

DgaReport check_dga(const DgAlgebra& a, std::size_t keep = 20);

// f (dim dst x dim src) preserves the unit and d, and f(ab) = f(a) f(b) on
// every pair of basis elements.
DgaReport check_dga_map(const DgAlgebra& src, const DgAlgebra& dst, const Matrix& f, std::size_t keep = 20);

// (a⊗x)(b⊗y) = (-1)^{|x||b|} ab⊗xy, d = d⊗1 + 1⊗d. Labels "a|x".
DgAlgebra tensor_dga(const DgAlgebra& a, const DgAlgebra& b);

// Free algebra on the given generators, cut off at word length `max_len`
// (weight = length). Generator differentials are lists of (coeff, word).
struct FreeGenerator {
  std::string label;
  int degree;
  std::vector<std::pair<Scalar, std::vector<std::size_t>>> diff;
};
DgAlgebra free_algebra(const Ring& ring, const std::vector<FreeGenerator>& gens, int max_len);

}  // namespace infloc

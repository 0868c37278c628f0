#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "infloc/dg/algebra.hpp"

namespace infloc {

// surj^*(x) for the nondegenerate base simplex x of dimension base_dim;
// surj is a monotone surjection [dim] -> [base_dim].
struct Simplex {
  int dim = 0;
  int base_dim = 0;
  std::size_t base = 0;
  std::vector<int> surj;

  bool degenerate() const { return dim != base_dim; }
  auto key() const { return std::tie(dim, base_dim, base, surj); }
  bool operator==(const Simplex& o) const { return key() == o.key(); }
  bool operator<(const Simplex& o) const { return key() < o.key(); }
};

Simplex nondegenerate(int n, std::size_t k);

class FiniteSimplicialSet {
 public:
  FiniteSimplicialSet() = default;
  // faces[n][k][i] = ∂_i of the k-th nondegenerate n-simplex (empty for n = 0).
  // Throws InvariantViolation if the simplicial identities fail.
  FiniteSimplicialSet(std::vector<std::vector<std::string>> labels,
                      std::vector<std::vector<std::vector<Simplex>>> faces);

  int dim() const { return static_cast<int>(labels_.size()) - 1; }
  std::size_t count(int n) const;
  const std::string& label(int n, std::size_t k) const { return labels_.at(n).at(k); }
  std::string label(const Simplex& s) const;
  std::optional<std::size_t> find(int n, const std::string& label) const;
  std::vector<std::size_t> f_vector() const;
  long euler_characteristic() const;

  Simplex face(const Simplex& s, int i) const;
  // theta^* s for a monotone map theta: [k] -> [s.dim], given by its values
  Simplex restrict(const Simplex& s, const std::vector<int>& theta) const;
  Simplex front(const Simplex& s, int p) const;  // vertices 0..p
  Simplex back(const Simplex& s, int q) const;   // vertices n-q..n
  Simplex vertex(const Simplex& s, int v) const;

 private:
  Simplex face_of_nondegenerate(int n, std::size_t k, int i) const;
  std::vector<std::vector<std::string>> labels_;
  std::vector<std::vector<std::vector<Simplex>>> faces_;
  std::vector<std::map<std::string, std::size_t>> index_;
};

// Vertex-ordered complex; every listed simplex is closed under faces.
FiniteSimplicialSet from_ordered_complex(const std::vector<std::string>& vertices,
                                         const std::vector<std::vector<std::size_t>>& simplices);
FiniteSimplicialSet standard_simplex(int n);
FiniteSimplicialSet simplex_boundary(int n);
FiniteSimplicialSet circle(int vertices);
FiniteSimplicialSet torus7();

// Finite category: arrows with source and target, identities, and a composition
// table comp[(f, g)] = g∘f for composable f: a -> b, g: b -> c.
struct FiniteCategory {
  std::vector<std::string> objects;
  struct Arrow {
    std::string label;
    std::size_t src, dst;
  };
  std::vector<Arrow> arrows;
  std::vector<std::size_t> identity;  // per object
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> comp;

  // exactly one arrow between any ordered pair of objects
  static FiniteCategory indiscrete(const std::vector<std::string>& objects);
  static FiniteCategory single_arrow();  // O -> O'
  static FiniteCategory trivial();
  std::size_t compose(std::size_t f, std::size_t g) const;  // g∘f
};

// Nondegenerate n-simplices are composable n-tuples without identities, n <= cap.
FiniteSimplicialSet nerve(const FiniteCategory& c, int cap);

// X × Y up to dimension cap (default: everything). Nondegenerate simplices are
// staircase paths: pairs of surjections onto nondegenerate simplices of X and Y
// that are jointly injective.
struct ProductSimplex {
  int p, q;
  std::size_t x, y;
  std::vector<int> alpha, beta;
};
struct SimplicialProduct {
  FiniteSimplicialSet set;
  std::vector<std::vector<ProductSimplex>> cells;  // by dimension, in set order
};
SimplicialProduct product(const FiniteSimplicialSet& x, const FiniteSimplicialSet& y, int cap = -1);

// Normalized cochains with Alexander-Whitney product, degrees 0..max_degree
// (default: dim X). Basis: duals of nondegenerate simplices, dimension-major.
DgAlgebra cochain_algebra(const FiniteSimplicialSet& x, const Ring& ring, int max_degree = -1);
std::size_t cochain_index(const FiniteSimplicialSet& x, int n, std::size_t k);

// Dual of the shuffle map: C*(X×Y) -> C*(X)⊗C*(Y), as a matrix from the basis of
// cochain_algebra(product) to that of tensor_dga(C*(X), C*(Y)).
Matrix ez_algebra_map(const FiniteSimplicialSet& x, const FiniteSimplicialSet& y, const SimplicialProduct& xy,
                      const Ring& ring);

}  // namespace infloc

#pragma once

#include <memory>

#include "infloc/dg/algebra.hpp"
#include "infloc/linalg/cohomology.hpp"

namespace infloc {

// Right dg module with finite basis m_i. act[i] lists m_i * b_alg = c * m_result.
class DgModule {
 public:
  struct Action {
    std::size_t alg, result;
    Scalar c;
  };

  DgModule() = default;
  DgModule(std::shared_ptr<const DgAlgebra> alg, GradedModule basis, std::vector<Sparse> diff,
           std::vector<std::vector<Action>> act);

  // A acting on itself by right multiplication.
  static DgModule regular(std::shared_ptr<const DgAlgebra> alg);

  const DgAlgebra& algebra() const { return *alg_; }
  const std::shared_ptr<const DgAlgebra>& algebra_ptr() const { return alg_; }
  const GradedModule& basis() const { return basis_; }
  const Ring& ring() const { return basis_.ring(); }
  std::size_t dim() const { return basis_.size(); }
  int degree(std::size_t i) const { return basis_.degree(i); }
  const Sparse& diff(std::size_t i) const { return diff_.at(i); }
  const std::vector<Action>& act(std::size_t i) const { return act_.at(i); }
  Sparse act(std::size_t i, std::size_t a) const;

  Vec zero() const { return zero_vec(ring(), dim()); }
  Vec D(const Vec& m) const;
  Vec act(const Vec& m, const Vec& a) const;

  // Underlying complex over the ground ring, one block per degree in index order.
  CochainComplex complex() const;
  // position of basis element i inside its degree block
  std::size_t position(std::size_t i) const;

 private:
  std::shared_ptr<const DgAlgebra> alg_;
  GradedModule basis_;
  std::vector<Sparse> diff_;
  std::vector<std::vector<Action>> act_;
};

// D^2, Leibniz, associativity and unit of the action.
DgaReport check_dg_module(const DgModule& m, std::size_t keep = 20);
CohomologyReport cohomology(const DgModule& m);

// M[k]: degrees drop by k, D becomes (-1)^k D, the right action is unchanged.
DgModule shift(const DgModule& m, int k);

// Complex of right-module homomorphisms M -> N over the ground ring, with
// d(f) = D_N f - (-1)^{|f|} f D_M. Generators are lattice (over Z) or vector
// space bases of the homomorphisms in each degree.
class HomComplex {
 public:
  HomComplex(const DgModule& m, const DgModule& n);

  const DgModule& complex() const { return complex_; }
  // matrix (dim N x dim M) of the combination with the given coordinates
  Matrix map(const Vec& coords) const;
  // coordinates of a homogeneous homomorphism; throws InvalidInput otherwise
  Vec coordinates(const Matrix& f) const;
  int degree_of_generator(std::size_t g) const { return complex_.degree(g); }
  std::size_t dim() const { return complex_.dim(); }

 private:
  std::size_t msize_ = 0, nsize_ = 0;
  std::vector<int> mdeg_, ndeg_;
  std::vector<Matrix> gens_;
  DgModule complex_;
};

// g∘f at chain level: coordinates in hom(M,P) of the composite.
Vec compose(const HomComplex& gp, const Vec& g, const HomComplex& fp, const Vec& f, const HomComplex& target);

// G(L) for a right module L over the underlying graded algebra (L's own
// differential is ignored): symbols x + dy with d(x + dy) = dx and
// (x + dy)a = xa + d(ya) - (-1)^{|y|} y da. Basis: L then the symbols d(l).
DgModule free_hull(const DgModule& l);

}  // namespace infloc

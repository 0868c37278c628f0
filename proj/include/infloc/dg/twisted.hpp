#pragma once

#include <memory>

#include "infloc/dg/module.hpp"

namespace infloc {

using AlgebraPtr = std::shared_ptr<const DgAlgebra>;

// Right A-linear map V⊗A -> W⊗A of degree n, as an A-valued matrix:
// f(v_j⊗1) = Σ_i w_i⊗f_ij, with deg f_ij = n + |v_j| - |w_i|.
// Composition of such maps is the plain matrix product.
class AMatrix {
 public:
  AMatrix() = default;
  AMatrix(AlgebraPtr alg, GradedModule src, GradedModule dst);
  static AMatrix identity(AlgebraPtr alg, const GradedModule& v);

  const DgAlgebra& algebra() const { return *alg_; }
  const AlgebraPtr& algebra_ptr() const { return alg_; }
  const GradedModule& src() const { return src_; }
  const GradedModule& dst() const { return dst_; }
  std::size_t rows() const { return dst_.size(); }
  std::size_t cols() const { return src_.size(); }
  Vec& at(std::size_t i, std::size_t j) { return e_.at(i * cols() + j); }
  const Vec& at(std::size_t i, std::size_t j) const { return e_.at(i * cols() + j); }

  AMatrix operator*(const AMatrix& o) const;
  AMatrix operator+(const AMatrix& o) const;
  AMatrix operator-(const AMatrix& o) const;
  AMatrix scaled(const Scalar& c) const;
  bool is_zero() const;
  bool operator==(const AMatrix& o) const;
  // entrywise (dX)_ij = (-1)^{|w_i|} d(X_ij): the commutator with the untwisted D
  AMatrix d() const;
  bool has_degree(int n) const;
  std::optional<int> degree() const;  // nullopt for zero
  // Apply to an element of V⊗A (index j*dim A + a).
  Vec apply(const Vec& m) const;
  std::string str() const;

 private:
  AlgebraPtr alg_;
  GradedModule src_, dst_;
  std::vector<Vec> e_;
};

// End(V)⊗A: basis E(i,j)|a (index (i*n+j)*dim A + a) of degree
// deg a + |v_i| - |v_j|; E(i,j) sends v_j to v_i.
DgAlgebra endomorphism_dga(const DgAlgebra& a, const GradedModule& v);
Vec to_end_element(const AMatrix& x);
AMatrix from_end_element(AlgebraPtr alg, const GradedModule& v, const Vec& e);

// V⊗A with D(v_j⊗a) = (-1)^{|v_j|} v_j⊗da + Σ_i v_i⊗X_ij a.
struct TwistedModule {
  AlgebraPtr alg;
  GradedModule v;
  AMatrix x;

  TwistedModule() = default;
  // throws InvalidInput unless x is a degree-1 MC matrix (see residual)
  TwistedModule(AlgebraPtr alg, GradedModule v, AMatrix x);
  static TwistedModule unchecked(AlgebraPtr alg, GradedModule v, AMatrix x);
  static TwistedModule trivial(AlgebraPtr alg, GradedModule v);

  // (-1)^{|v_i|} dX_ij + (X X)_ij; zero iff D^2 = 0
  AMatrix residual() const;
  DgModule module() const;
};

// Differential of a degree-n map f: M -> N in the hom complex:
// (df)_ij = (-1)^{|w_i|} d f_ij + (Y f)_ij - (-1)^n (f X)_ij.
AMatrix hom_d(const TwistedModule& m, const TwistedModule& n, const AMatrix& f);
CohomologyReport cohomology(const TwistedModule& m);

// V[k]: degrees drop by k, X becomes (-1)^k X.
TwistedModule shift(const TwistedModule& m, int k);
// cone(f: M -> N) = N ⊕ M[1] with X = [[Y, f], [0, -X]]; f closed of degree 0.
TwistedModule cone(const TwistedModule& m, const TwistedModule& n, const AMatrix& f);

}  // namespace infloc

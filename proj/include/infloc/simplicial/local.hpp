#pragma once

#include <cstdint>
#include <map>
#include <memory>

#include "infloc/dg/twisted.hpp"
#include "infloc/simplicial/sset.hpp"

namespace infloc {

// Representation of the fundamental groupoid on a free rank-r module in degree 0.
// F([σ]) for an edge σ transports from vertex 1 to vertex 0, so the functor
// condition on a 2-simplex τ reads F(τ01) F(τ12) = F(τ02).
struct LocalSystem {
  std::shared_ptr<const FiniteSimplicialSet> base;
  Ring ring;
  std::size_t rank = 0;
  std::map<std::size_t, Matrix> monodromy;  // nondegenerate edge -> matrix; missing = identity

  static LocalSystem trivial(std::shared_ptr<const FiniteSimplicialSet> base, const Ring& ring, std::size_t rank);
  Matrix at(const Simplex& edge) const;  // identity on degenerate edges
  GradedModule fibre() const;
  // Throws InvalidInput naming the offending edge or 2-simplex.
  void check() const;
  bool operator==(const LocalSystem& o) const;
};

// Seeded random system: F(σ) = g_{σ0} D^{c(σ)} g_{σ1}^{-1} with random vertex
// gauges g, a random diagonal D and c a random integral 1-cocycle (one per
// diagonal entry). Over Z the gauges are products of elementary matrices.
LocalSystem random_local_system(std::shared_ptr<const FiniteSimplicialSet> base, const Ring& ring, std::size_t rank,
                                std::uint64_t seed);

// Ψ: the degree-1 twisting x with x(σ) = F([σ]) - 1 on edges, over C*(base).
TwistedModule rep_to_mc(const LocalSystem& ls);
// Φ: F([σ]) = 1 + x(σ). x must be supported on edges with every 1 + x(σ) invertible.
LocalSystem mc_to_rep(std::shared_ptr<const FiniteSimplicialSet> base, const TwistedModule& m);

DgModule twisted_cochains(const LocalSystem& ls);
CohomologyReport local_system_cohomology(const LocalSystem& ls);

// Hom(V, W)-valued cochains with
// (Df)(σ) = Y(σ01) f(∂0σ) + Σ_{0<i<n} (-1)^i f(∂iσ) + (-1)^n f(∂nσ) X(σ_{n-1,n}),
// Y the monodromy of `left` (on W) and X that of `right` (on V). Basis element
// (σ, a, b) is the matrix unit e_ab on σ, ordered by simplex then row then column.
DgModule two_sided_twisted(const LocalSystem& left, const LocalSystem& right);

}  // namespace infloc

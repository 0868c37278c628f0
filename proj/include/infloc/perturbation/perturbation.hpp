#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <vector>

#include "infloc/dg/twisted.hpp"
#include "infloc/simplicial/local.hpp"

namespace infloc {

// Scalar matrix c_ij as the map v_j -> Σ v_i ⊗ c_ij 1.
AMatrix scalar_amatrix(AlgebraPtr alg, const GradedModule& src, const GradedModule& dst, const Matrix& c);
// Entries restricted to algebra degree k.
AMatrix algebra_degree_part(const AMatrix& m, int k);

// The A^0 component of the twisting as a scalar matrix, when every entry is a
// multiple of the unit.
std::optional<Matrix> reduced_part(const TwistedModule& m);
bool is_reduced(const TwistedModule& m);
bool is_minimal(const TwistedModule& m);

struct ReducedTwistedModule {
  TwistedModule module;
  Matrix d0;  // v_j -> Σ d0_ij v_i
  // throws InvalidInput unless m is reduced
  static ReducedTwistedModule make(TwistedModule m);
};

// V = H ⊕ d0(V) ⊕ U with d0 s + s d0 = 1 - t, t = iota pi, s^2 = st = ts = 0.
struct HodgeData {
  Matrix s, t;
  GradedModule harmonic;
  Matrix iota;  // dim V x dim H
  Matrix pi;    // dim H x dim V
};

// Over a field. A nonzero seed picks random harmonic representatives and a
// random complement U; seed 0 takes standard basis vectors greedily.
HodgeData hodge_data(const GradedModule& v, const Matrix& d0, std::uint64_t seed = 0);

struct MinimalModel {
  TwistedModule minimal;
  AMatrix i, p;  // degree 0, closed: minimal -> input and input -> minimal
  AMatrix h;     // degree -1 on the input: hom_d(h) = 1 - i p
  HodgeData hodge;
};

// Homological perturbation of the Hodge retraction; fields only.
MinimalModel minimal_model(const TwistedModule& m, std::uint64_t seed = 0);

// Strict inverse of a closed degree-0 map, found from the inverse of its
// algebra-degree-0 part and a terminating geometric series.
struct IsoCheck {
  bool invertible = false;
  std::optional<AMatrix> inverse;
  std::string reason;
};
IsoCheck minimal_iso_check(const TwistedModule& m, const TwistedModule& n, const AMatrix& f);

// A finitely generated module V over Z given by a finite free resolution
// W -> V (degrees <= 0, H(W) = V in degree 0) and a local system on V given
// by lifts to W^0 of its edge transports.
struct ResolutionInput {
  std::shared_ptr<const FiniteSimplicialSet> base;
  GradedModule w;
  Matrix dw;                               // v_j -> Σ dw_ij v_i, degree +1
  std::map<std::size_t, Matrix> monodromy;  // edge index -> matrix on W^0; missing = identity
};

struct ResolutionLift {
  TwistedModule module;       // W ⊗ C*(X) with D_W = Σ w_k
  std::vector<AMatrix> parts;  // w_0 = dw, w_1, ... by algebra degree
};

// Throws InvalidInput naming the stage if an obstruction does not vanish.
ResolutionLift lift_to_free_resolution(const ResolutionInput& in);

// V = Z/m (m prime) with edge transports given by integers; resolution Z -m-> Z.
ResolutionInput cyclic_resolution_input(std::shared_ptr<const FiniteSimplicialSet> base, long m,
                                        const std::map<std::size_t, long>& transports);
// H(X; Z/m) computed directly over F_m, reported as a Z-module.
CohomologyReport cyclic_local_cohomology(std::shared_ptr<const FiniteSimplicialSet> base, long m,
                                         const std::map<std::size_t, long>& transports);

// Canonical truncation tau_{<= i}: the sub-twisted module on V^{<i} ⊕ ker(d0 on V^i),
// with the inclusion. The kernel of a map of free modules is free, so no
// further resolution is needed.
struct Truncated {
  TwistedModule module;
  AMatrix inclusion;  // degree 0, closed
};
Truncated truncate_below(const TwistedModule& m, int i);
// tau_{>= i} as the cone of tau_{<= i-1} -> M.
TwistedModule truncate_above(const TwistedModule& m, int i);

// Seeded reduced module over alg: V of rank 1..max_rank in degrees [-3, 3], a
// random fibre differential, a cocycle twist on fibre-harmonic directions when
// it stays Maurer-Cartan, then a random unipotent gauge 1 + N with N in
// positive algebra degree and a random scalar change of basis.
TwistedModule random_reduced_module(AlgebraPtr alg, std::uint64_t seed, std::size_t max_rank = 6);

// Fibre complex (V, d0) of a reduced module.
CohomologyReport fibre_cohomology(const ReducedTwistedModule& m);

}  // namespace infloc

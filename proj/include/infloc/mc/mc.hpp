#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "infloc/dg/twisted.hpp"

namespace infloc {

struct McCheck {
  bool ok = false;
  Vec residual;  // d(x) + x^2
};

// Throws InvalidInput unless x is homogeneous of degree 1.
McCheck is_mc(const DgAlgebra& a, const Vec& x);

struct MCElement {
  AlgebraPtr alg;
  Vec value;
  // throws InvalidInput if value is not MC
  static MCElement make(AlgebraPtr alg, Vec value);
  static MCElement unchecked(AlgebraPtr alg, Vec value);
};

// A^[x]: A as a right module with d^[x](a) = d(a) + xa. Refused for non-MC x
// and for truncated algebras.
DgModule twist_module(AlgebraPtr a, const Vec& x);
// A^x: same algebra, d^x(a) = d(a) + [x, a].
DgAlgebra twist_algebra(const DgAlgebra& a, const Vec& x);
Vec twisted_d(const DgAlgebra& a, const Vec& x, const Vec& y, const Vec& e);  // d^[x,y](e)
// A^[y,z] ⊗ A^[x,y] -> A^[x,z], b ⊗ a -> ba: a chain map for the twisted differentials.
Vec hom_compose(const DgAlgebra& a, const Vec& b, const Vec& f);

// A^[x,y] with d(a) = d(a) + ya - (-1)^{|a|} ax, as a complex over the ground
// ring. On a truncated algebra only degrees -1, 0, 1 are kept, restricted to
// weight <= h - (1 - n) r with r = max(raise, weight of x, weight of y), so
// every differential is computed without loss.
DgModule hom_twist(const DgAlgebra& a, const Vec& x, const Vec& y);
// index in A of each basis element of hom_twist(a, x, y)
std::vector<std::size_t> hom_twist_support(const DgAlgebra& a, const Vec& x, const Vec& y);

// Two-sided inverse of a degree-0 element, by a linear solve.
std::optional<Vec> invert(const DgAlgebra& a, const Vec& g);
// g·x = g x g^{-1} - d(g) g^{-1}; throws InvalidInput if g is not invertible.
Vec gauge_act(const DgAlgebra& a, const Vec& g, const Vec& x);
bool is_gauge_pair(const DgAlgebra& a, const Vec& g, const Vec& x, const Vec& y);

struct HomotopyGaugeCertificate {
  Vec g, h, wx, wy;
};

struct HomotopyGaugeCheck {
  bool ok = false;
  int failed = 0;  // first failing condition, 1..4 (0 when ok)
  std::string detail;
};

// (1) dg + yg - gx = 0, (2) dh + xh - hy = 0, (3) hg - 1 = d^x(wx), (4) gh - 1 = d^y(wy)
HomotopyGaugeCheck verify_homotopy_gauge(const DgAlgebra& a, const Vec& x, const Vec& y,
                                         const HomotopyGaugeCertificate& c);

struct SearchResult {
  enum class Kind { Equivalent, Distinguished, Unknown };
  Kind kind = Kind::Unknown;
  std::optional<HomotopyGaugeCertificate> cert;
  bool strict_gauge = false;   // the certificate has h = g^{-1} and zero homotopies
  std::string invariant;       // what differs, for Distinguished
  std::string note;
  std::size_t samples = 0;
  double miss_bound = 1.0;     // Schwartz-Zippel bound on missing an invertible element per sample
};

std::string to_string(SearchResult::Kind k);

// Equivalent results always carry a verified certificate; budget counts samples.
SearchResult search_homotopy_gauge(const DgAlgebra& a, const Vec& x, const Vec& y, std::size_t budget,
                                   std::uint64_t seed);

// H^0 of A^[x_i, x_j] for all pairs, with the induced composition.
struct H0Table {
  struct Entry {
    GroupSummary group;
    std::vector<Vec> reps;  // basis representatives in A (fields only)
  };
  AlgebraPtr alg;
  bool field = false;
  std::vector<std::vector<Entry>> hom;                     // hom[i][j]: from x_i to x_j
  std::vector<std::optional<Vec>> identity;               // coordinates of [1] in hom[i][i]
  std::vector<std::vector<bool>> iso_found;               // an inverse pair of classes was found
  // coordinates in hom[i][j] of a cocycle of A^[x_i, x_j] (fields only);
  // nullopt when it is not a cocycle or falls outside a truncated range
  std::function<std::optional<Vec>(std::size_t, std::size_t, const Vec&)> classify;
  // [b][a] for a = reps of hom[i][j] #p, b = reps of hom[j][k] #q
  std::optional<Vec> compose(std::size_t i, std::size_t j, std::size_t k, std::size_t p, std::size_t q) const;
  // class of the element with the given coordinates
  Vec represent(std::size_t i, std::size_t j, const Vec& coords) const;
};

H0Table mc_category_h0(const DgAlgebra& a, const std::vector<Vec>& xs, std::uint64_t seed = 0);

}  // namespace infloc

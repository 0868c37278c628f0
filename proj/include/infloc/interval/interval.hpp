#pragma once

#include <string>
#include <vector>

#include "infloc/mc/mc.hpp"

namespace infloc {

constexpr int kIntervalMax = 8;

// Normalized cochains on the level-n interval K_n. For n >= 1, K_n is the
// n-skeleton of the nerve of the category with two objects 0, 1 and unique
// arrows; K_0 is the single edge from 1 to 0. Basis labels: e, f for the
// vertices 0 and 1, and alternating words in s (edge 1 -> 0) and t (edge
// 0 -> 1), so that st is the 2-simplex 1 -> 0 -> 1.
struct IntervalAlgebra {
  int n = 0;
  DgAlgebra dga;
  Matrix ev0, ev1;  // 1 x dim: coefficients at e and f

  std::size_t e() const { return dga.basis().index("e"); }
  std::size_t f() const { return dga.basis().index("f"); }
  // alternating word of the given length starting with 's' or 't'
  std::optional<std::size_t> word(char first, int length) const;
};

std::string alternating_word(char first, int length);
IntervalAlgebra build_interval_algebra(int n, const Ring& ring);
// K_m -> K_n for m >= n: words longer than n go to zero.
Matrix interval_quotient(const IntervalAlgebra& from, const IntervalAlgebra& to);

// The printed presentation (e^2 = e, ..., d(e) = t - s, ...) checked relation by relation.
struct PresentationCheck {
  std::string relation;
  bool holds = false;
  std::string derived;  // what the relation's left side actually is
};
std::vector<PresentationCheck> check_printed_presentation(const IntervalAlgebra& k);

// A ⊗ K_n with coefficient access.
struct PathObject {
  AlgebraPtr a;
  IntervalAlgebra k;
  DgAlgebra ak;

  PathObject(AlgebraPtr a, int n);
  Vec coefficient(const Vec& X, std::size_t kbasis) const;
  Vec embed(const Vec& c, std::size_t kbasis) const;  // c ⊗ k_i
  Vec ev0(const Vec& X) const { return coefficient(X, k.e()); }
  Vec ev1(const Vec& X) const { return coefficient(X, k.f()); }
  // x ⊗ (e + f)
  Vec constant(const Vec& x) const;
};

// X = x e + x' f + y s + y' t + z ts + z' st over A ⊗ K_2.
struct K2Homotopy {
  Vec x, xp;
  HomotopyGaugeCertificate cert;  // (y + 1, y' + 1, -z, -z')
};
K2Homotopy certificate_from_k2_homotopy(const PathObject& p, const Vec& X);
Vec k2_homotopy_from_certificate(const PathObject& p, const Vec& x, const Vec& xp, const HomotopyGaugeCertificate& c);

// Free dg category on objects O1, O2 with generators x_n (source O1) and
// y_n (source O2) of degree -n; x_n ends at O2 for even n and at O1 for odd n,
// y_n the other way round. Generator x_n corresponds to the alternating word of
// length n + 1 ending in s, y_n to the one ending in t.
struct KInftyCategoryTrunc {
  struct Generator {
    char kind;  // 'x' or 'y'
    int n;
    std::string word;
    int src, dst;  // 0 = O1, 1 = O2
    int sigma;     // F(g) = sigma * (coefficient of X + 1⊗(s + t) at word)
    std::string name() const { return std::string(1, kind) + "_" + std::to_string(n); }
  };
  struct Term {
    long c;
    std::size_t left, right;  // composite left ∘ right
  };
  int N = 0;
  std::vector<Generator> gens;  // x_0, y_0, x_1, y_1, ...
  std::vector<std::vector<Term>> d;
  std::vector<long> constant;   // coefficient of the identity in d(g)
  std::vector<std::string> ledger;  // differences from the printed table

  std::size_t index(char kind, int n) const { return static_cast<std::size_t>(2 * n + (kind == 'y')); }
  std::string format_d(std::size_t g) const;
};

// Throws InvariantViolation if the derived differential fails d^2 = 0.
KInftyCategoryTrunc k_infty_category(int N);

// F(x_n), F(y_n) for n < size, with objects x (O1) and xp (O2).
struct FunctorData {
  Vec x, xp;
  std::vector<Vec> fx, fy;
};

struct FunctorCheck {
  bool ok = true;
  std::string failure;
};
// d F(g) = F(d g) for every generator with data, twisted differentials on the targets.
FunctorCheck check_functor(const DgAlgebra& a, const KInftyCategoryTrunc& k, const FunctorData& F);

FunctorData homotopy_to_functor(const PathObject& p, const Vec& X);
struct FunctorHomotopy {
  Vec X;
  Vec residual;  // d X + X^2
};
// Needs data for generators of index < level.
FunctorHomotopy functor_to_homotopy(const PathObject& p, const FunctorData& F);

}  // namespace infloc

#include <doctest.h>

#include <memory>
#include <random>

#include "infloc/interval/interval.hpp"
#include "infloc/perturbation/perturbation.hpp"

using namespace infloc;

namespace {

using BasePtr = std::shared_ptr<const FiniteSimplicialSet>;

BasePtr make_base(FiniteSimplicialSet x) { return std::make_shared<const FiniteSimplicialSet>(std::move(x)); }

AlgebraPtr cochains(const BasePtr& b, const Ring& R) { return std::make_shared<const DgAlgebra>(cochain_algebra(*b, R)); }

CohomologyReport report(int lo, std::vector<GroupSummary> h) { return CohomologyReport{lo, std::move(h)}; }
GroupSummary free_rank(std::size_t r) { return GroupSummary{r, {}}; }
GroupSummary cyclic(long m) { return GroupSummary{0, {mpz_class(m)}}; }

void check_hodge(const GradedModule& v, const Matrix& d0, const HodgeData& h) {
  const Ring& R = v.ring();
  const std::size_t n = v.size();
  Matrix one = Matrix::identity(R, n);
  Matrix zero(R, n, n);
  CHECK(d0 * h.s + h.s * d0 == one - h.t);
  CHECK(h.s * h.s == zero);
  CHECK(h.s * h.t == zero);
  CHECK(h.t * h.s == zero);
  CHECK(h.iota * h.pi == h.t);
  CHECK(h.pi * h.iota == Matrix::identity(R, h.harmonic.size()));
  CHECK((d0 * h.iota).is_zero());
  CHECK((h.pi * d0).is_zero());
  h.s.for_each_nonzero([&](std::size_t i, std::size_t j, const Scalar&) { CHECK(v.degree(i) + 1 == v.degree(j)); });
}

// a, u in degree 0 and b in degree 1 with d0(u) = b, twisted on a by c on edge 0
// and from u to a on edge 1.
TwistedModule rank3_circle(const BasePtr& base, AlgebraPtr alg, long c) {
  const Ring& R = alg->ring();
  GradedModule v(R, {"a", "u", "b"}, {0, 0, 1});
  Matrix d0(R, 3, 3);
  d0.set(2, 1, R.one());
  AMatrix x = scalar_amatrix(alg, v, v, d0);
  x.at(0, 0)[cochain_index(*base, 1, 0)] = R.make(c);
  x.at(0, 1)[cochain_index(*base, 1, 1)] = R.one();
  return TwistedModule(alg, v, x);
}

std::vector<AlgebraPtr> property_bases(const Ring& R) {
  return {cochains(make_base(circle(3)), R), cochains(make_base(standard_simplex(2)), R),
          std::make_shared<const DgAlgebra>(build_interval_algebra(2, R).dga)};
}

}  // namespace

TEST_CASE("hodge data") {
  Ring Q = Ring::Q();
  SUBCASE("zero differential") {
    GradedModule v(Q, {"a", "b", "c"}, {0, 0, 2});
    Matrix d0(Q, 3, 3);
    HodgeData h = hodge_data(v, d0);
    CHECK(h.s.is_zero());
    CHECK(h.t == Matrix::identity(Q, 3));
    CHECK(h.harmonic.size() == 3);
    CHECK(h.harmonic.label(0) == "[a]");
    check_hodge(v, d0, h);
  }
  SUBCASE("acyclic pair") {
    GradedModule v(Q, {"u", "b"}, {0, 1});
    Matrix d0(Q, 2, 2);
    d0.set(1, 0, Q.make(3));
    HodgeData h = hodge_data(v, d0);
    CHECK(h.t.is_zero());
    CHECK(h.harmonic.size() == 0);
    CHECK(h.s.at(0, 1) == Q.make(1) / Q.make(3));
    check_hodge(v, d0, h);
  }
  SUBCASE("random complexes over F5 and Q, several seeds") {
    for (Ring R : {Ring::F(5), Ring::Q()})
      for (std::uint64_t trial = 0; trial < 20; ++trial) {
        std::mt19937_64 rng(trial);
        std::uniform_int_distribution<int> u(-2, 2);
        // d0 = a product of two random maps through a middle degree so that d0^2 = 0
        std::vector<std::string> labels;
        std::vector<int> degs;
        for (int i = 0; i < 6; ++i) {
          labels.push_back("v" + std::to_string(i));
          degs.push_back(i / 2);
        }
        GradedModule v(R, labels, degs);
        Matrix d0(R, 6, 6);
        for (std::size_t i = 0; i < 6; ++i)
          for (std::size_t j = 0; j < 6; ++j)
            if (degs[i] == degs[j] + 1 && degs[j] == 0) d0.set(i, j, R.make(u(rng)));
        for (std::uint64_t seed : {0, 1, 7}) check_hodge(v, d0, hodge_data(v, d0, seed));
        HodgeData h0 = hodge_data(v, d0, 0), h1 = hodge_data(v, d0, 3);
        CHECK(h0.harmonic.size() == h1.harmonic.size());
      }
  }
  SUBCASE("refusals") {
    Ring Z = Ring::Z();
    GradedModule v(Z, {"a"}, {0});
    CHECK_THROWS_AS(hodge_data(v, Matrix(Z, 1, 1)), InvalidInput);
    GradedModule w(Q, {"a", "b"}, {0, 0});
    Matrix bad(Q, 2, 2);
    bad.set(1, 0, Q.one());
    CHECK_THROWS_AS(hodge_data(w, bad), InvalidInput);
  }
}

TEST_CASE("reduced and minimal predicates") {
  Ring Q = Ring::Q();
  auto base = make_base(standard_simplex(1));
  auto alg = cochains(base, Q);
  GradedModule v(Q, {"u", "b"}, {0, 1});
  Matrix d0(Q, 2, 2);
  d0.set(1, 0, Q.make(2));
  TwistedModule m(alg, v, scalar_amatrix(alg, v, v, d0));
  CHECK(is_reduced(m));
  CHECK_FALSE(is_minimal(m));
  CHECK(*reduced_part(m) == d0);
  CHECK(is_minimal(TwistedModule::trivial(alg, v)));
  // a vertex cochain alone in A^0 is not a multiple of the unit
  AMatrix x(alg, v, v);
  x.at(1, 0)[cochain_index(*base, 0, 0)] = Q.one();
  TwistedModule odd = TwistedModule::unchecked(alg, v, x);
  CHECK_FALSE(is_reduced(odd));
  CHECK_FALSE(is_minimal(odd));
  CHECK_THROWS_AS(ReducedTwistedModule::make(odd), InvalidInput);
  CHECK(ReducedTwistedModule::make(m).d0 == d0);
  CHECK(fibre_cohomology(ReducedTwistedModule::make(m)).at(0).is_zero());
}

TEST_CASE("minimal models of fixtures") {
  for (Ring R : {Ring::Q(), Ring::F(5)}) {
    CAPTURE(R.name());
    SUBCASE("already minimal") {
      auto base = make_base(circle(3));
      auto alg = cochains(base, R);
      LocalSystem ls = LocalSystem::trivial(base, R, 2);
      ls.monodromy[0] = Matrix::from_rows(R, {{2, 1}, {0, 2}});
      TwistedModule m = rep_to_mc(ls);
      MinimalModel mm = minimal_model(m);
      for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j) CHECK(mm.minimal.x.at(i, j) == m.x.at(i, j));
      CHECK(mm.minimal.v.size() == 2);
      CHECK(mm.h.is_zero());
      CHECK(is_minimal(mm.minimal));
      CHECK(cohomology(mm.minimal) == cohomology(m));
      CHECK(mm.p * mm.i == AMatrix::identity(alg, mm.minimal.v));
    }
    SUBCASE("contractible fibre") {
      auto alg = cochains(make_base(standard_simplex(1)), R);
      GradedModule v(R, {"u", "b"}, {0, 1});
      Matrix d0(R, 2, 2);
      d0.set(1, 0, R.one());
      TwistedModule m(alg, v, scalar_amatrix(alg, v, v, d0));
      MinimalModel mm = minimal_model(m);
      CHECK(mm.minimal.v.size() == 0);
      CHECK(cohomology(m) == report(0, {}));
      CHECK(hom_d(m, m, mm.h) == AMatrix::identity(alg, v));
    }
    SUBCASE("rank three on the circle") {
      auto base = make_base(circle(3));
      auto alg = cochains(base, R);
      for (long c : {0L, 1L, -2L}) {
        CAPTURE(c);
        TwistedModule m = rank3_circle(base, alg, c);
        MinimalModel mm = minimal_model(m);
        REQUIRE(mm.minimal.v.size() == 1);
        CHECK(mm.minimal.v.label(0) == "[a]");
        CHECK(is_minimal(mm.minimal));
        CHECK(cohomology(mm.minimal) == cohomology(m));
        // the minimal twisting is c on edge 0: monodromy 1 + c
        LocalSystem ls = LocalSystem::trivial(base, R, 1);
        ls.monodromy[0] = Matrix::from_rows(R, {{1 + c}});
        CHECK(cohomology(m) == local_system_cohomology(ls));
        CHECK(mm.minimal.x.at(0, 0) == alg->element({{base->label(1, 0), R.make(c)}}));
      }
    }
  }
  SUBCASE("rings without division") {
    auto alg = cochains(make_base(standard_simplex(1)), Ring::Z());
    GradedModule v(Ring::Z(), {"a"}, {0});
    CHECK_THROWS_AS(minimal_model(TwistedModule::trivial(alg, v)), InvalidInput);
  }
}

TEST_CASE("minimal models of seeded random reduced modules") {
  int nontrivial = 0;
  for (Ring R : {Ring::F(5), Ring::Q()})
    for (const auto& alg : property_bases(R))
      for (std::uint64_t seed = 0; seed < 12; ++seed) {
        CAPTURE(R.name());
        CAPTURE(seed);
        TwistedModule m = random_reduced_module(alg, 1000 + seed);
        REQUIRE(is_reduced(m));
        MinimalModel a = minimal_model(m, 1), b = minimal_model(m, 2);
        CHECK(is_minimal(a.minimal));
        CHECK(is_minimal(b.minimal));
        CHECK(cohomology(a.minimal) == cohomology(m));
        CHECK(a.minimal.v.size() == b.minimal.v.size());
        CHECK(fibre_cohomology(ReducedTwistedModule::make(a.minimal)) == fibre_cohomology(ReducedTwistedModule::make(m)));
        CHECK(hom_d(m, m, a.h) == AMatrix::identity(alg, m.v) - a.i * a.p);
        CHECK(a.p * a.i == AMatrix::identity(alg, a.minimal.v));
        AMatrix f = b.p * a.i;
        CHECK(hom_d(a.minimal, b.minimal, f).is_zero());
        IsoCheck iso = minimal_iso_check(a.minimal, b.minimal, f);
        CHECK(iso.invertible);
        if (iso.inverse) {
          CHECK(f * *iso.inverse == AMatrix::identity(alg, b.minimal.v));
          CHECK(*iso.inverse * f == AMatrix::identity(alg, a.minimal.v));
        }
        if (!(a.minimal.x.is_zero())) ++nontrivial;
      }
  CHECK(nontrivial > 0);
}

TEST_CASE("random reduced modules are reproducible") {
  Ring Q = Ring::Q();
  auto alg = cochains(make_base(circle(3)), Q);
  TwistedModule a = random_reduced_module(alg, 5), b = random_reduced_module(alg, 5);
  CHECK(a.x == b.x);
  CHECK_THROWS_AS(random_reduced_module(alg, 5, 0), InvalidInput);
}

TEST_CASE("minimal_iso_check") {
  for (Ring R : {Ring::Q(), Ring::F(7), Ring::Z()}) {
    CAPTURE(R.name());
    auto base = make_base(circle(3));
    auto alg = cochains(base, R);
    GradedModule v(R, {"a", "b"}, {0, 1});
    TwistedModule m = TwistedModule::trivial(alg, v);
    AMatrix one = AMatrix::identity(alg, v);
    IsoCheck id = minimal_iso_check(m, m, one);
    CHECK(id.invertible);
    CHECK(*id.inverse == one);
    // 1 + N with N = E(a, b) ⊗ (edge 0)
    AMatrix N(alg, v, v);
    N.at(0, 1)[cochain_index(*base, 1, 0)] = R.one();
    IsoCheck uni = minimal_iso_check(m, m, one + N);
    CHECK(uni.invertible);
    CHECK(*uni.inverse == one - N);
    IsoCheck zero = minimal_iso_check(m, m, AMatrix(alg, v, v));
    CHECK_FALSE(zero.invertible);
    CHECK_FALSE(zero.reason.empty());
    IsoCheck two = minimal_iso_check(m, m, one.scaled(R.make(2)));
    CHECK(two.invertible == R.is_field());
    GradedModule w(R, {"a"}, {0});
    CHECK_FALSE(minimal_iso_check(m, TwistedModule::trivial(alg, w), AMatrix(alg, v, w)).invertible);
  }
}

TEST_CASE("lift to a free resolution") {
  Ring Z = Ring::Z();
  auto c3 = make_base(circle(3));
  auto c4 = make_base(circle(4));
  SUBCASE("free module: the sign system") {
    ResolutionInput in;
    in.base = c3;
    in.w = GradedModule(Z, {"g"}, {0});
    in.dw = Matrix(Z, 1, 1);
    in.monodromy[0] = Matrix::from_rows(Z, {{-1}});
    ResolutionLift lift = lift_to_free_resolution(in);
    CHECK(lift.module.residual().is_zero());
    LocalSystem ls = LocalSystem::trivial(c3, Z, 1);
    ls.monodromy[0] = in.monodromy[0];
    CHECK(lift.module.x == rep_to_mc(ls).x);
    CHECK(cohomology(lift.module) == report(0, {free_rank(0), cyclic(2)}));
  }
  SUBCASE("Z/2 trivial on the circle") {
    ResolutionLift lift = lift_to_free_resolution(cyclic_resolution_input(c3, 2, {}));
    CHECK(lift.module.residual().is_zero());
    CohomologyReport want = cyclic_local_cohomology(c3, 2, {});
    CHECK(want == report(0, {cyclic(2), cyclic(2)}));
    CHECK(cohomology(lift.module) == want);
  }
  SUBCASE("Z/3 with transport 2") {
    std::map<std::size_t, long> one_edge{{0, 2}};
    ResolutionLift lift = lift_to_free_resolution(cyclic_resolution_input(c3, 3, one_edge));
    CHECK(lift.module.residual().is_zero());
    CHECK(lift.parts.size() == 2);
    CohomologyReport want = cyclic_local_cohomology(c3, 3, one_edge);
    CHECK(want == report(0, {}));
    CHECK(cohomology(lift.module) == want);
    // two transports of 2 compose to the identity around the loop
    std::map<std::size_t, long> two_edges{{0, 2}, {1, 2}};
    ResolutionLift lift4 = lift_to_free_resolution(cyclic_resolution_input(c4, 3, two_edges));
    CohomologyReport want4 = cyclic_local_cohomology(c4, 3, two_edges);
    CHECK(want4 == report(0, {cyclic(3), cyclic(3)}));
    CHECK(cohomology(lift4.module) == want4);
  }
  SUBCASE("a simplex base") {
    auto d2 = make_base(standard_simplex(2));
    ResolutionLift lift = lift_to_free_resolution(cyclic_resolution_input(d2, 5, {}));
    CHECK(cohomology(lift.module) == report(0, {cyclic(5)}));
    CHECK(cyclic_local_cohomology(d2, 5, {}) == report(0, {cyclic(5)}));
  }
  SUBCASE("refusals") {
    ResolutionInput bad;
    bad.base = c3;
    bad.w = GradedModule(Z, {"r", "g", "h"}, {-1, 0, 0});
    bad.dw = Matrix(Z, 3, 3);
    bad.dw.set(1, 0, Z.make(2));
    bad.monodromy[0] = Matrix::from_rows(Z, {{1, 0}, {1, 1}});
    CHECK_THROWS_AS(lift_to_free_resolution(bad), InvalidInput);
    bad.monodromy[0] = Matrix::from_rows(Z, {{1, 1}, {0, 1}});
    CHECK_NOTHROW(lift_to_free_resolution(bad));
    ResolutionInput notres = cyclic_resolution_input(c3, 2, {});
    notres.dw = Matrix(Z, 2, 2);
    CHECK_THROWS_AS(lift_to_free_resolution(notres), InvalidInput);
    CHECK_THROWS_AS(cyclic_resolution_input(c3, 1, {}), InvalidInput);
    ResolutionInput noedge = cyclic_resolution_input(c3, 2, {{9, 1}});
    CHECK_THROWS_AS(lift_to_free_resolution(noedge), InvalidInput);
  }
}

TEST_CASE("canonical truncations") {
  Ring Z = Ring::Z();
  auto base = make_base(circle(3));
  auto alg = cochains(base, Z);
  SUBCASE("two trivial stages") {
    GradedModule v(Z, {"a", "b"}, {0, 1});
    TwistedModule m = TwistedModule::trivial(alg, v);
    CHECK(cohomology(m) == report(0, {free_rank(1), free_rank(2), free_rank(1)}));
    Truncated low = truncate_below(m, 0);
    CHECK(low.module.v.size() == 1);
    CHECK(cohomology(low.module) == report(0, {free_rank(1), free_rank(1)}));
    CHECK(cohomology(truncate_above(m, 1)) == report(1, {free_rank(1), free_rank(1)}));
    Truncated top = truncate_below(m, 5);
    CHECK(top.inclusion == AMatrix::identity(alg, v));
    CHECK(truncate_below(m, -1).module.v.size() == 0);
  }
  SUBCASE("a kernel that is not spanned by basis vectors") {
    // d0(a) = d0(u) = b, all of V twisted by the sign on edge 0
    GradedModule v(Z, {"a", "u", "b"}, {0, 0, 1});
    Matrix d0(Z, 3, 3);
    d0.set(2, 0, Z.one());
    d0.set(2, 1, Z.one());
    AMatrix x = scalar_amatrix(alg, v, v, d0);
    std::size_t e = cochain_index(*base, 1, 0);
    x.at(0, 0)[e] = Z.make(-2);
    x.at(1, 1)[e] = Z.make(-2);
    x.at(2, 2)[e] = Z.make(2);
    TwistedModule m(alg, v, x);
    Truncated low = truncate_below(m, 0);
    REQUIRE(low.module.v.size() == 1);
    CHECK(hom_d(low.module, m, low.inclusion).is_zero());
    CHECK(cohomology(low.module) == report(0, {free_rank(0), cyclic(2)}));
    CHECK(cohomology(m) == cohomology(low.module));
  }
  SUBCASE("fibre cohomology is cut at the truncation degree") {
    Ring Q = Ring::Q();
    for (const auto& a : property_bases(Q))
      for (std::uint64_t seed = 0; seed < 8; ++seed) {
        TwistedModule m = random_reduced_module(a, 2000 + seed);
        CohomologyReport full = fibre_cohomology(ReducedTwistedModule::make(m));
        for (int i = -4; i <= 4; ++i) {
          CAPTURE(i);
          Truncated t = truncate_below(m, i);
          CohomologyReport cut = fibre_cohomology(ReducedTwistedModule::make(t.module));
          for (int k = -4; k <= 4; ++k) CHECK(cut.at(k) == (k <= i ? full.at(k) : GroupSummary{}));
        }
      }
  }
  SUBCASE("refusal") {
    auto b1 = make_base(standard_simplex(1));
    auto a1 = cochains(b1, Z);
    GradedModule v(Z, {"u", "b"}, {0, 1});
    AMatrix x(a1, v, v);
    x.at(1, 0)[cochain_index(*b1, 0, 0)] = Z.one();
    CHECK_THROWS_AS(truncate_below(TwistedModule::unchecked(a1, v, x), 0), InvalidInput);
  }
}

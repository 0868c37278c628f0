#include <doctest.h>

#include <memory>

#include "infloc/dg/module.hpp"
#include "infloc/simplicial/local.hpp"

using namespace infloc;

namespace {

CohomologyReport cochain_cohomology(const FiniteSimplicialSet& x, const Ring& R) {
  auto a = std::make_shared<const DgAlgebra>(cochain_algebra(x, R));
  return cohomology(DgModule::regular(a));
}

CohomologyReport report(int lo, std::vector<GroupSummary> h) { return CohomologyReport{lo, std::move(h)}; }

std::shared_ptr<const FiniteSimplicialSet> share(FiniteSimplicialSet x) {
  return std::make_shared<const FiniteSimplicialSet>(std::move(x));
}

}  // namespace

TEST_CASE("ordered complexes") {
  FiniteSimplicialSet d2 = standard_simplex(2);
  CHECK(d2.f_vector() == std::vector<std::size_t>{3, 3, 1});
  CHECK(circle(3).f_vector() == std::vector<std::size_t>{3, 3});
  CHECK(circle(5).f_vector() == std::vector<std::size_t>{5, 5});
  FiniteSimplicialSet t = torus7();
  CHECK(t.f_vector() == std::vector<std::size_t>{7, 21, 14});
  CHECK(t.euler_characteristic() == 0);
  CHECK(simplex_boundary(3).f_vector() == std::vector<std::size_t>{4, 6, 4});

  CHECK_THROWS_AS(from_ordered_complex({"a", "b"}, {{1, 0}}), InvalidInput);
  CHECK_THROWS_AS(from_ordered_complex({"a", "b"}, {{0, 0}}), InvalidInput);
  CHECK_THROWS_AS(from_ordered_complex({"a", "b"}, {{0, 2}}), InvalidInput);

  Simplex top = nondegenerate(2, 0);
  CHECK(d2.label(d2.face(top, 0)) == "12");
  CHECK(d2.label(d2.face(top, 1)) == "02");
  CHECK(d2.label(d2.front(top, 1)) == "01");
  CHECK(d2.label(d2.back(top, 1)) == "12");
  // degenerate simplices: s_0 of the edge 01 has faces 01, 01, 00
  Simplex s0{2, 1, *d2.find(1, "01"), {0, 0, 1}};
  CHECK(d2.face(s0, 0) == nondegenerate(1, *d2.find(1, "01")));
  CHECK(d2.face(s0, 1) == nondegenerate(1, *d2.find(1, "01")));
  CHECK(d2.face(s0, 2).degenerate());
}

TEST_CASE("nerves of small categories") {
  FiniteSimplicialSet k = nerve(FiniteCategory::indiscrete({"0", "1"}), 4);
  CHECK(k.f_vector() == std::vector<std::size_t>{2, 2, 2, 2, 2});
  CHECK(k.find(2, "010").has_value());
  CHECK(k.find(3, "1010").has_value());
  // ∂_1 of 010 composes to the identity at 0: a degenerate 1-simplex
  Simplex s = nondegenerate(2, *k.find(2, "010"));
  CHECK(k.face(s, 1).degenerate());
  CHECK(k.label(k.face(s, 0)) == "10");
  CHECK(k.label(k.face(s, 2)) == "01");

  FiniteSimplicialSet a = nerve(FiniteCategory::single_arrow(), 4);
  CHECK(a.f_vector() == std::vector<std::size_t>{2, 1, 0, 0, 0});
  FiniteSimplicialSet p = nerve(FiniteCategory::trivial(), 3);
  CHECK(p.f_vector() == std::vector<std::size_t>{1, 0, 0, 0});

  FiniteCategory broken = FiniteCategory::indiscrete({"0", "1"});
  broken.comp.erase({2, 1});
  CHECK_THROWS_AS(nerve(broken, 2), InvalidInput);
}

TEST_CASE("cochain algebras satisfy the axioms and compute cohomology") {
  Ring Z = Ring::Z();
  std::vector<std::pair<std::string, FiniteSimplicialSet>> fixtures = {
      {"point", standard_simplex(0)}, {"D1", standard_simplex(1)},   {"D2", standard_simplex(2)},
      {"D3", standard_simplex(3)},    {"dD3", simplex_boundary(3)},  {"C3", circle(3)},
      {"C4", circle(4)},              {"C5", circle(5)},             {"T7", torus7()}};
  for (int n = 0; n <= 6; ++n) fixtures.emplace_back("K" + std::to_string(n), nerve(FiniteCategory::indiscrete({"0", "1"}), n));
  for (Ring R : {Z, Ring::Q(), Ring::F(2), Ring::F(5)})
    for (const auto& [name, x] : fixtures) {
      CAPTURE(name);
      CHECK(check_dga(cochain_algebra(x, R)).ok());
    }
  CHECK(cochain_cohomology(simplex_boundary(3), Z) == report(0, {{1, {}}, {0, {}}, {1, {}}}));
  CHECK(cochain_cohomology(circle(4), Z) == report(0, {{1, {}}, {1, {}}}));
  CHECK(cochain_cohomology(standard_simplex(3), Z) == report(0, {{1, {}}}));
  CHECK(cochain_cohomology(torus7(), Z) == report(0, {{1, {}}, {2, {}}, {1, {}}}));
  for (int n = 1; n <= 6; ++n) {
    CohomologyReport h = cochain_cohomology(nerve(FiniteCategory::indiscrete({"0", "1"}), n), Z);
    CHECK(h.at(0) == GroupSummary{1, {}});
    CHECK(h.at(n) == GroupSummary{1, {}});
    for (int i = 1; i < n; ++i) CHECK(h.at(i).is_zero());
  }

  DgAlgebra d1 = cochain_algebra(standard_simplex(1), Z);
  Vec v0 = d1.element({{"0", Z.one()}}), v1 = d1.element({{"1", Z.one()}}), e = d1.element({{"01", Z.one()}});
  CHECK(d1.mul(v0, v0) == v0);
  CHECK(d1.mul(v0, e) == e);
  CHECK(d1.mul(e, v1) == e);
  CHECK(is_zero_vec(d1.mul(e, v0)));
  CHECK(d1.d(v0) == -e);
  CHECK(d1.d(v1) == e);
  CHECK(cochain_algebra(standard_simplex(0), Z).dim() == 1);
}

TEST_CASE("products and the Eilenberg-Zilber map") {
  Ring Z = Ring::Z();
  FiniteSimplicialSet d1 = standard_simplex(1), pt = standard_simplex(0);
  SimplicialProduct sq = product(d1, d1);
  CHECK(sq.set.f_vector() == std::vector<std::size_t>{4, 5, 2});
  SimplicialProduct xp = product(circle(3), pt);
  CHECK(xp.set.f_vector() == circle(3).f_vector());
  Matrix ez = ez_algebra_map(circle(3), pt, xp, Z);
  CHECK(ez == Matrix::identity(Z, ez.rows()));

  FiniteSimplicialSet k1 = nerve(FiniteCategory::indiscrete({"0", "1"}), 1);
  std::vector<std::pair<FiniteSimplicialSet, FiniteSimplicialSet>> pairs = {
      {d1, d1}, {d1, k1}, {standard_simplex(2), d1}, {circle(3), d1}, {d1, standard_simplex(2)}};
  for (Ring R : {Z, Ring::F(5)})
    for (const auto& [x, y] : pairs) {
      SimplicialProduct p = product(x, y);
      DgAlgebra c = cochain_algebra(p.set, R);
      CHECK(check_dga(c).ok());
      DgAlgebra t = tensor_dga(cochain_algebra(x, R), cochain_algebra(y, R));
      DgaReport r = check_dga_map(c, t, ez_algebra_map(x, y, p, R));
      CHECK_MESSAGE(r.ok(), r.str());
      // EZ is a quasi-isomorphism
      CHECK(cohomology(DgModule::regular(std::make_shared<const DgAlgebra>(c))) ==
            cohomology(DgModule::regular(std::make_shared<const DgAlgebra>(t))));
    }
}

TEST_CASE("local systems and the fundamental groupoid dictionary") {
  Ring Z = Ring::Z();
  auto c3 = share(circle(3));
  LocalSystem triv = LocalSystem::trivial(c3, Z, 1);
  CHECK(rep_to_mc(triv).x.is_zero());
  CHECK(local_system_cohomology(triv) == report(0, {{1, {}}, {1, {}}}));

  LocalSystem sign = triv;
  sign.monodromy[0] = Matrix::from_rows(Z, {{-1}});
  TwistedModule xs = rep_to_mc(sign);
  CHECK(xs.x.at(0, 0)[cochain_index(*c3, 1, 0)] == Z.make(-2));
  CHECK(local_system_cohomology(sign) == report(0, {{0, {}}, {0, {2}}}));
  CHECK(mc_to_rep(c3, xs) == sign);

  // the same on the 4-vertex circle
  auto c4 = share(circle(4));
  LocalSystem sign4 = LocalSystem::trivial(c4, Z, 1);
  sign4.monodromy[2] = Matrix::from_rows(Z, {{-1}});
  CHECK(local_system_cohomology(sign4) == local_system_cohomology(sign));
  CHECK(local_system_cohomology(LocalSystem::trivial(c4, Z, 1)) == local_system_cohomology(triv));

  auto d2 = share(standard_simplex(2));
  CHECK(local_system_cohomology(LocalSystem::trivial(d2, Z, 1)) == report(0, {{1, {}}, {0, {}}, {0, {}}}));

  LocalSystem unip = LocalSystem::trivial(c3, Z, 2);
  unip.monodromy[1] = Matrix::from_rows(Z, {{1, 1}, {0, 1}});
  TwistedModule xu = rep_to_mc(unip);
  CHECK(xu.residual().is_zero());
  CHECK(mc_to_rep(c3, xu) == unip);

  // functor condition failure on a 2-simplex
  LocalSystem bad = LocalSystem::trivial(d2, Z, 1);
  bad.monodromy[0] = Matrix::from_rows(Z, {{-1}});
  CHECK_THROWS_AS(bad.check(), InvalidInput);

  // 1 + x(σ) = 0 on an edge: a twisting but not a local system
  Ring Q = Ring::Q();
  auto a = std::make_shared<const DgAlgebra>(cochain_algebra(*c3, Q));
  GradedModule v(Q, {"v"}, {0});
  AMatrix x(a, v, v);
  x.at(0, 0)[cochain_index(*c3, 1, 0)] = Q.make(-1);
  TwistedModule m(a, v, x);
  CHECK_THROWS_AS(mc_to_rep(c3, m), InvalidInput);
}

TEST_CASE("roundtrips on random local systems") {
  for (Ring R : {Ring::Q(), Ring::F(7), Ring::Z()})
    for (auto base : {share(circle(3)), share(circle(5)), share(torus7()), share(standard_simplex(3))})
      for (std::uint64_t seed = 0; seed < 10; ++seed) {
        LocalSystem ls = random_local_system(base, R, 2, seed);
        TwistedModule x = rep_to_mc(ls);
        CHECK(x.residual().is_zero());
        LocalSystem back = mc_to_rep(base, x);
        CHECK(back == ls);
        CHECK(rep_to_mc(back).x == x.x);
      }
}

TEST_CASE("two-sided twisted complexes") {
  Ring Z = Ring::Z();
  auto c3 = share(circle(3));
  LocalSystem triv = LocalSystem::trivial(c3, Z, 1), sign = triv;
  sign.monodromy[0] = Matrix::from_rows(Z, {{-1}});
  DgModule plain = two_sided_twisted(triv, triv);
  CHECK(check_dg_module(plain).ok());
  CHECK(cohomology(plain) == report(0, {{1, {}}, {1, {}}}));
  DgModule ss = two_sided_twisted(sign, sign);
  CHECK(check_dg_module(ss).ok());
  CHECK(cohomology(ss).at(0) == GroupSummary{1, {}});

  // right side trivial: the one-sided twisted cochains of the left system
  auto t7 = share(torus7());
  for (std::uint64_t seed = 0; seed < 3; ++seed) {
    LocalSystem ls = random_local_system(t7, Ring::Q(), 2, seed);
    DgModule two = two_sided_twisted(ls, LocalSystem::trivial(t7, Ring::Q(), 1));
    DgModule one = twisted_cochains(ls);
    CHECK(check_dg_module(two).ok());
    const std::size_t na = one.dim() / 2;
    REQUIRE(two.dim() == one.dim());
    for (std::size_t j = 0; j < 2; ++j)
      for (std::size_t c = 0; c < na; ++c) {
        Sparse d1 = one.diff(j * na + c);
        SparseAcc mapped;
        for (const auto& [k, v] : d1) mapped.add((k % na) * 2 + k / na, v);
        CHECK(two.diff(c * 2 + j) == mapped.take());
      }
    CHECK(cohomology(two) == cohomology(one));
  }
}

#include <random>
#include <sstream>

#include "doctest.h"
#include "infloc/linalg/cohomology.hpp"
#include "infloc/linalg/solve.hpp"

using namespace infloc;

namespace {

// determinant by rational elimination, independent of the Smith code
mpq_class det_q(const Matrix& m) {
  std::size_t n = m.rows();
  std::vector<std::vector<mpq_class>> a(n, std::vector<mpq_class>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a[i][j] = m.at(i, j).value();
  mpq_class det = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && a[p][c] == 0) ++p;
    if (p == n) return 0;
    if (p != c) {
      std::swap(a[p], a[c]);
      det = -det;
    }
    det *= a[c][c];
    for (std::size_t r = c + 1; r < n; ++r) {
      mpq_class f = a[r][c] / a[c][c];
      for (std::size_t j = c; j < n; ++j) a[r][j] -= f * a[c][j];
    }
  }
  return det;
}

Matrix random_int(std::mt19937_64& rng, std::size_t r, std::size_t c, long lo, long hi) {
  std::uniform_int_distribution<long> dist(lo, hi);
  Matrix m(Ring::Z(), r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m.set(i, j, Scalar(dist(rng)));
  return m;
}

Vec vec(const Ring& r, std::vector<long> xs) {
  Vec v;
  for (long x : xs) v.push_back(r.make(x));
  return v;
}

}  // namespace

TEST_CASE("ring parsing and field arithmetic") {
  CHECK(Ring::parse("Z") == Ring::Z());
  CHECK(Ring::parse("F5").modulus() == 5);
  CHECK_THROWS_AS(Ring::parse("F6"), InvalidInput);
  CHECK_THROWS_AS(Ring::parse("R"), InvalidInput);
  Ring f7 = Ring::F(7);
  Scalar three = f7.make(3);
  CHECK((three * three.inverse()).is_one());
  CHECK(f7.parse_scalar("1/2") == f7.make(4));
  CHECK_THROWS_AS(Ring::Z().parse_scalar("1/2"), InvalidInput);
  CHECK(Ring::Q().parse_scalar("-6/4").value() == mpq_class(-3, 2));
}

TEST_CASE("smith normal form on the worked examples") {
  Ring z = Ring::Z();
  SmithForm a = smith_normal_form(Matrix::from_rows(z, {{2}}));
  CHECK(a.D == Matrix::from_rows(z, {{2}}));
  CHECK(a.U == Matrix::identity(z, 1));
  CHECK(a.V == Matrix::identity(z, 1));
  SmithForm b = smith_normal_form(Matrix::from_rows(z, {{0}}));
  CHECK(b.D == Matrix::from_rows(z, {{0}}));
  Matrix m = Matrix::from_rows(z, {{2, 4}, {6, 8}});
  SmithForm c = smith_normal_form(m);
  REQUIRE(c.invariant_factors().size() == 2);
  CHECK(c.invariant_factors()[0] == 2);
  CHECK(c.invariant_factors()[1] == 4);
  CHECK(c.U * m * c.V == c.D);
  CHECK_THROWS_AS(smith_normal_form(Matrix::from_rows(Ring::Q(), {{1}})), InvalidInput);
}

TEST_CASE("smith normal form on random integer matrices") {
  std::mt19937_64 rng(20240611);
  std::uniform_int_distribution<int> dim(1, 12);
  for (int trial = 0; trial < 60; ++trial) {
    std::size_t r = dim(rng), c = dim(rng);
    Matrix m = random_int(rng, r, c, -20, 20);
    if (trial % 5 == 0) m = random_int(rng, r, 2, -3, 3).operator*(random_int(rng, 2, c, -3, 3));
    SmithForm s = smith_normal_form(m);
    CHECK(s.U * m * s.V == s.D);
    mpq_class du = det_q(s.U), dv = det_q(s.V);
    CHECK((du == 1 || du == -1));
    CHECK((dv == 1 || dv == -1));
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < c; ++j)
        if (i != j) CHECK(s.D.at(i, j).is_zero());
    auto f = s.invariant_factors();
    CHECK(f.size() == rank(m));
    for (std::size_t i = 0; i < f.size(); ++i) {
      CHECK(f[i] > 0);
      if (i + 1 < f.size()) CHECK(mpz_divisible_p(f[i + 1].get_mpz_t(), f[i].get_mpz_t()));
    }
    CHECK(f == invariant_factors(m));
  }
}

TEST_CASE("solve_linear examples") {
  for (Ring r : {Ring::Z(), Ring::Q(), Ring::F(5)}) {
    Matrix id = Matrix::identity(r, 3);
    auto s = solve_linear(id, vec(r, {4, -1, 2}));
    REQUIRE(s);
    CHECK(s->particular == vec(r, {4, -1, 2}));
    CHECK(s->kernel.empty());
  }
  CHECK_FALSE(solve_linear(Matrix::from_rows(Ring::Z(), {{2}}), vec(Ring::Z(), {1})));
  auto q = solve_linear(Matrix::from_rows(Ring::Q(), {{2}}), vec(Ring::Q(), {1}));
  REQUIRE(q);
  CHECK(q->particular[0].value() == mpq_class(1, 2));
  auto k = solve_linear(Matrix::from_rows(Ring::Q(), {{1, 1}}), vec(Ring::Q(), {0}));
  REQUIRE(k);
  REQUIRE(k->kernel.size() == 1);
  Vec kv = k->kernel[0];
  CHECK(kv[0] == -kv[1]);
  CHECK(!kv[0].is_zero());
  CHECK_THROWS_AS(solve_linear(Matrix::identity(Ring::Q(), 2), vec(Ring::Q(), {1})), InvalidInput);
}

TEST_CASE("solve_linear solutions and kernels are exact") {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> dim(1, 7);
  for (Ring ring : {Ring::Z(), Ring::Q(), Ring::F(7)}) {
    for (int trial = 0; trial < 40; ++trial) {
      std::size_t r = dim(rng), c = dim(rng);
      Matrix mz = random_int(rng, r, c, -4, 4);
      Matrix m(ring, r, c);
      mz.for_each_nonzero([&](std::size_t i, std::size_t j, const Scalar& v) { m.set(i, j, ring.make(v.value())); });
      Vec x0(c, ring.zero());
      for (auto& x : x0) x = ring.make(static_cast<long>(rng() % 7) - 3);
      Vec b = m.apply(x0);
      auto s = solve_linear(m, b);
      REQUIRE(s);
      CHECK(m.apply(s->particular) == b);
      Vec shifted = s->particular;
      for (const auto& kv : s->kernel) {
        CHECK(is_zero_vec(m.apply(kv)));
        for (std::size_t i = 0; i < c; ++i) shifted[i] += ring.make(2) * kv[i];
      }
      CHECK(m.apply(shifted) == b);
      CHECK(s->kernel.size() == c - rank(m));
    }
  }
}

TEST_CASE("cohomology of small complexes") {
  Ring z = Ring::Z();
  CohomologyReport h = cohomology({Matrix::from_rows(z, {{2}})});
  CHECK(h.at(0).is_zero());
  CHECK(h.at(1).rank == 0);
  REQUIRE(h.at(1).torsion.size() == 1);
  CHECK(h.at(1).torsion[0] == 2);

  CochainComplex zero;
  zero.ring = z;
  zero.dims = {2, 3};
  zero.d = {Matrix(z, 3, 2)};
  CohomologyReport hz = cohomology(zero);
  CHECK(hz.at(0).rank == 2);
  CHECK(hz.at(1).rank == 3);

  CHECK_THROWS_AS(cohomology({Matrix::from_rows(z, {{1}}), Matrix::from_rows(z, {{1}})}), NotAComplex);
  try {
    cohomology({Matrix::from_rows(z, {{0}, {1}}), Matrix::from_rows(z, {{0, 0}, {0, 3}})}, 2);
  } catch (const NotAComplex& e) {
    CHECK(e.degree == 2);
    CHECK(e.row == 1);
    CHECK(e.col == 0);
  }
}

TEST_CASE("boundary of the tetrahedron over Z") {
  // coboundaries built directly from vertex subsets
  std::vector<std::vector<int>> v = {{0}, {1}, {2}, {3}};
  std::vector<std::vector<int>> e = {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}};
  std::vector<std::vector<int>> t = {{0, 1, 2}, {0, 1, 3}, {0, 2, 3}, {1, 2, 3}};
  auto cob = [](const std::vector<std::vector<int>>& lo, const std::vector<std::vector<int>>& hi, Ring r) {
    Matrix m(r, hi.size(), lo.size());
    for (std::size_t i = 0; i < hi.size(); ++i)
      for (std::size_t k = 0; k < hi[i].size(); ++k) {
        auto face = hi[i];
        face.erase(face.begin() + static_cast<long>(k));
        for (std::size_t j = 0; j < lo.size(); ++j)
          if (lo[j] == face) m.set(i, j, r.make(k % 2 ? -1 : 1));
      }
    return m;
  };
  Ring z = Ring::Z();
  CohomologyReport h = cohomology({cob(v, e, z), cob(e, t, z)});
  CHECK(h.at(0) == GroupSummary{1, {}});
  CHECK(h.at(1).is_zero());
  CHECK(h.at(2) == GroupSummary{1, {}});
  // same free ranks over Q and F_p
  for (Ring r : {Ring::Q(), Ring::F(2), Ring::F(5)}) {
    CohomologyReport hr = cohomology({cob(v, e, r), cob(e, t, r)});
    for (int d = 0; d <= 2; ++d) CHECK(hr.at(d).rank == h.at(d).rank);
  }
}

TEST_CASE("field ranks agree with integral free ranks away from torsion") {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 20; ++trial) {
    // d1 * d0 = 0 by construction: d0 = A * B with A's columns spanning ker d1
    Matrix a = random_int(rng, 4, 2, -3, 3);
    Matrix d0 = a * random_int(rng, 2, 3, -3, 3);
    auto k = solve_linear(a.transpose(), Vec(2, Ring::Z().zero()));
    std::vector<Vec> rows = k->kernel;
    Matrix d1 = Matrix::from_columns(Ring::Z(), 4, rows).transpose();
    if (d1.rows() == 0) continue;
    CohomologyReport hz = cohomology({d0, d1});
    std::vector<unsigned long> primes;
    for (unsigned long p : {2ul, 3ul, 5ul, 7ul, 11ul, 13ul}) {
      bool divides = false;
      for (int deg = 0; deg <= 2; ++deg)
        for (const auto& t : hz.at(deg).torsion)
          if (mpz_divisible_ui_p(t.get_mpz_t(), p)) divides = true;
      if (!divides) primes.push_back(p);
    }
    for (unsigned long p : primes) {
      Ring f = Ring::F(p);
      auto conv = [&](const Matrix& m) {
        Matrix out(f, m.rows(), m.cols());
        m.for_each_nonzero([&](std::size_t i, std::size_t j, const Scalar& v) { out.set(i, j, f.make(v.value())); });
        return out;
      };
      CohomologyReport hp = cohomology({conv(d0), conv(d1)});
      for (int deg = 0; deg <= 2; ++deg) CHECK(hp.at(deg).rank == hz.at(deg).rank);
    }
  }
}

TEST_CASE("matrix text format roundtrip") {
  std::istringstream in("2 3 Q\n1 -2 3/4\n0 0 5\n1 1 Z\n7\n");
  auto ms = read_matrices(in);
  REQUIRE(ms.size() == 2);
  CHECK(ms[0].at(0, 2).value() == mpq_class(3, 4));
  CHECK(ms[1].ring() == Ring::Z());
  std::ostringstream out;
  write_matrix(out, ms[0]);
  std::istringstream again(out.str());
  CHECK(read_matrix(again) == ms[0]);
  std::istringstream bad("1 1 Z\n1/2\n");
  CHECK_THROWS_AS(read_matrix(bad), InvalidInput);
}

TEST_CASE("large matrices switch to sparse storage") {
  Ring q = Ring::Q();
  Matrix big(q, 600, 600);
  CHECK(big.is_sparse());
  for (std::size_t i = 0; i < 600; ++i) big.set(i, i, q.make(static_cast<long>(i % 3) + 1));
  CHECK(rank(big) == 600);
  Matrix sq = big * big;
  CHECK(sq.at(5, 5) == q.make(9));
  CHECK(Matrix(q, 512, 512).is_sparse() == false);
}

TEST_CASE("cohomology with Z/m coefficients") {
  Ring z = Ring::Z();
  // 3-vertex circle, trivial coefficients Z/2 and Z/3
  Matrix d0 = Matrix::from_rows(z, {{-1, 1, 0}, {-1, 0, 1}, {0, -1, 1}});
  CochainComplex c = CochainComplex::from_differentials({d0});
  for (unsigned long m : {2ul, 3ul}) {
    CohomologyReport h = cohomology_mod(c, m);
    CHECK(h.at(0) == GroupSummary{0, {mpz_class(m)}});
    CHECK(h.at(1) == GroupSummary{0, {mpz_class(m)}});
  }
}

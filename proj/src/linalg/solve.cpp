#include "infloc/linalg/solve.hpp"

#include <algorithm>
#include <map>

namespace infloc {

namespace {

struct SnfWork {
  std::size_t n = 0, k = 0;
  bool track = false;
  std::vector<std::vector<mpz_class>> a, u, v;

  void swap_rows(std::size_t i, std::size_t j) {
    if (i == j) return;
    std::swap(a[i], a[j]);
    if (track) std::swap(u[i], u[j]);
  }
  void swap_cols(std::size_t i, std::size_t j) {
    if (i == j) return;
    for (auto& row : a) std::swap(row[i], row[j]);
    if (track)
      for (auto& row : v) std::swap(row[i], row[j]);
  }
  // row t += q * row s
  void addmul_row(std::size_t t, std::size_t s, const mpz_class& q) {
    for (std::size_t c = 0; c < k; ++c)
      if (sgn(a[s][c]) != 0) a[t][c] += q * a[s][c];
    if (track)
      for (std::size_t c = 0; c < n; ++c)
        if (sgn(u[s][c]) != 0) u[t][c] += q * u[s][c];
  }
  // col t += q * col s
  void addmul_col(std::size_t t, std::size_t s, const mpz_class& q) {
    for (std::size_t r = 0; r < n; ++r)
      if (sgn(a[r][s]) != 0) a[r][t] += q * a[r][s];
    if (track)
      for (std::size_t r = 0; r < k; ++r)
        if (sgn(v[r][s]) != 0) v[r][t] += q * v[r][s];
  }
  void negate_row(std::size_t t) {
    for (auto& x : a[t]) x = -x;
    if (track)
      for (auto& x : u[t]) x = -x;
  }

  // Minimal |entry| in the active block, first in row-major order.
  bool pick(std::size_t t) {
    std::size_t bi = n, bj = k;
    for (std::size_t i = t; i < n; ++i)
      for (std::size_t j = t; j < k; ++j) {
        if (sgn(a[i][j]) == 0) continue;
        if (bi == n || mpz_cmpabs(a[i][j].get_mpz_t(), a[bi][bj].get_mpz_t()) < 0) {
          bi = i;
          bj = j;
        }
      }
    if (bi == n) return false;
    swap_rows(t, bi);
    swap_cols(t, bj);
    return true;
  }

  std::size_t run() {
    std::size_t t = 0, lim = std::min(n, k);
    while (t < lim) {
      if (!pick(t)) break;
      for (;;) {
        bool clean = true;
        for (std::size_t i = t + 1; i < n; ++i) {
          if (sgn(a[i][t]) == 0) continue;
          mpz_class q;
          mpz_tdiv_q(q.get_mpz_t(), a[i][t].get_mpz_t(), a[t][t].get_mpz_t());
          addmul_row(i, t, -q);
          if (sgn(a[i][t]) != 0) clean = false;
        }
        for (std::size_t j = t + 1; j < k; ++j) {
          if (sgn(a[t][j]) == 0) continue;
          mpz_class q;
          mpz_tdiv_q(q.get_mpz_t(), a[t][j].get_mpz_t(), a[t][t].get_mpz_t());
          addmul_col(j, t, -q);
          if (sgn(a[t][j]) != 0) clean = false;
        }
        if (!clean) {
          pick(t);
          continue;
        }
        bool fixed = false;
        for (std::size_t i = t + 1; i < n && !fixed; ++i)
          for (std::size_t j = t + 1; j < k; ++j)
            if (!mpz_divisible_p(a[i][j].get_mpz_t(), a[t][t].get_mpz_t())) {
              addmul_row(t, i, 1);
              fixed = true;
              break;
            }
        if (!fixed) break;
      }
      if (sgn(a[t][t]) < 0) negate_row(t);
      ++t;
    }
    return t;
  }
};

SnfWork load(const Matrix& m, bool track) {
  if (m.ring().kind() != Ring::Kind::Integers)
    throw InvalidInput("Smith normal form needs a matrix over Z, got " + m.ring().name());
  SnfWork w;
  w.n = m.rows();
  w.k = m.cols();
  w.track = track;
  w.a.assign(w.n, std::vector<mpz_class>(w.k, 0));
  m.for_each_nonzero([&](std::size_t i, std::size_t j, const Scalar& x) { w.a[i][j] = x.value().get_num(); });
  if (track) {
    w.u.assign(w.n, std::vector<mpz_class>(w.n, 0));
    w.v.assign(w.k, std::vector<mpz_class>(w.k, 0));
    for (std::size_t i = 0; i < w.n; ++i) w.u[i][i] = 1;
    for (std::size_t i = 0; i < w.k; ++i) w.v[i][i] = 1;
  }
  return w;
}

Matrix dump(const std::vector<std::vector<mpz_class>>& a, std::size_t r, std::size_t c) {
  Matrix m(Ring::Z(), r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j)
      if (sgn(a[i][j]) != 0) m.set(i, j, Scalar(a[i][j]));
  return m;
}

using Row = std::map<std::size_t, Scalar>;

Echelon rref_rows(std::vector<Row> input) {
  // pivot column -> normalized row
  std::map<std::size_t, Row> piv;
  for (auto& r : input) {
    auto it = r.begin();
    while (it != r.end()) {
      std::size_t c = it->first;
      auto p = piv.find(c);
      if (p == piv.end() || it->second.is_zero()) {
        ++it;
        continue;
      }
      Scalar f = it->second;
      for (const auto& [j, x] : p->second) {
        Scalar& y = r[j];
        y -= f * x;
      }
      r.erase(c);
      for (auto z = r.begin(); z != r.end();)
        z = z->second.is_zero() ? r.erase(z) : std::next(z);
      it = r.upper_bound(c);
    }
    for (auto z = r.begin(); z != r.end();)
      z = z->second.is_zero() ? r.erase(z) : std::next(z);
    if (r.empty()) continue;
    std::size_t lead = r.begin()->first;
    Scalar inv = r.begin()->second.inverse();
    for (auto& [j, x] : r) x *= inv;
    // clear the new pivot column from the existing rows
    for (auto& [pc, prow] : piv) {
      auto hit = prow.find(lead);
      if (hit == prow.end()) continue;
      Scalar f = hit->second;
      for (const auto& [j, x] : r) prow[j] -= f * x;
      for (auto z = prow.begin(); z != prow.end();)
        z = z->second.is_zero() ? prow.erase(z) : std::next(z);
    }
    piv.emplace(lead, std::move(r));
  }
  Echelon e;
  for (auto& [pc, prow] : piv) {
    e.pivots.push_back(pc);
    std::vector<std::pair<std::size_t, Scalar>> row(prow.begin(), prow.end());
    e.rows.push_back(std::move(row));
  }
  return e;
}

std::vector<Row> rows_of(const Matrix& m) {
  std::vector<Row> rows(m.rows());
  m.for_each_nonzero([&](std::size_t i, std::size_t j, const Scalar& v) { rows[i][j] = v; });
  return rows;
}

}  // namespace

std::vector<mpz_class> SmithForm::invariant_factors() const {
  std::vector<mpz_class> out;
  for (std::size_t i = 0; i < rank; ++i) out.push_back(D.at(i, i).value().get_num());
  return out;
}

SmithForm smith_normal_form(const Matrix& m) {
  SnfWork w = load(m, true);
  std::size_t r = w.run();
  SmithForm s;
  s.rank = r;
  s.D = dump(w.a, w.n, w.k);
  s.U = dump(w.u, w.n, w.n);
  s.V = dump(w.v, w.k, w.k);
  return s;
}

std::vector<mpz_class> invariant_factors(const Matrix& m) {
  SnfWork w = load(m, false);
  std::size_t r = w.run();
  std::vector<mpz_class> out;
  for (std::size_t i = 0; i < r; ++i) out.push_back(w.a[i][i]);
  return out;
}

Echelon row_echelon(const Matrix& m) { return rref_rows(rows_of(m)); }

// over Z this is the rank over Q; elimination on the rational values is exact
std::size_t rank(const Matrix& m) { return row_echelon(m).pivots.size(); }

std::optional<LinearSolution> solve_linear(const Matrix& a, const Vec& b) {
  const Ring& ring = a.ring();
  if (b.size() != a.rows()) throw InvalidInput("solve_linear: right-hand side has wrong length");
  std::size_t n = a.rows(), k = a.cols();
  if (ring.kind() == Ring::Kind::Integers) {
    for (const auto& x : b)
      if (!x.is_integer()) throw InvalidInput("solve_linear: non-integral right-hand side over Z");
    SmithForm s = smith_normal_form(a);
    Vec c = s.U.apply(b);
    Vec y(k, ring.zero());
    for (std::size_t i = 0; i < n; ++i) {
      if (i < s.rank) {
        mpz_class d = s.D.at(i, i).value().get_num();
        mpz_class ci = c[i].value().get_num();
        if (!mpz_divisible_p(ci.get_mpz_t(), d.get_mpz_t())) return std::nullopt;
        y[i] = Scalar(mpz_class(ci / d));
      } else if (!c[i].is_zero()) {
        return std::nullopt;
      }
    }
    LinearSolution sol;
    sol.particular = s.V.apply(y);
    for (std::size_t i = s.rank; i < k; ++i) sol.kernel.push_back(s.V.column(i));
    return sol;
  }
  auto rows = rows_of(a);
  for (std::size_t i = 0; i < n; ++i)
    if (!b[i].is_zero()) rows[i][k] = b[i];
  Echelon e = rref_rows(std::move(rows));
  LinearSolution sol;
  sol.particular = Vec(k, ring.zero());
  std::vector<bool> is_pivot(k, false);
  for (std::size_t r = 0; r < e.rows.size(); ++r) {
    if (e.pivots[r] == k) return std::nullopt;
    is_pivot[e.pivots[r]] = true;
    for (const auto& [j, x] : e.rows[r])
      if (j == k) sol.particular[e.pivots[r]] = x;
  }
  for (std::size_t f = 0; f < k; ++f) {
    if (is_pivot[f]) continue;
    Vec v(k, ring.zero());
    v[f] = ring.one();
    for (std::size_t r = 0; r < e.rows.size(); ++r)
      for (const auto& [j, x] : e.rows[r])
        if (j == f) v[e.pivots[r]] = -x;
    sol.kernel.push_back(std::move(v));
  }
  return sol;
}

std::vector<Vec> kernel_basis(const Matrix& a) {
  auto s = solve_linear(a, Vec(a.rows(), a.ring().zero()));
  return s->kernel;
}

std::optional<Matrix> inverse(const Matrix& a) {
  if (a.rows() != a.cols()) return std::nullopt;
  std::size_t n = a.rows();
  const Ring& ring = a.ring();
  if (ring.kind() == Ring::Kind::Integers) {
    SmithForm s = smith_normal_form(a);
    if (s.rank != n) return std::nullopt;
    for (std::size_t i = 0; i < n; ++i)
      if (!s.D.at(i, i).is_one()) return std::nullopt;
    return s.V * s.U;
  }
  auto rows = rows_of(a);
  for (std::size_t i = 0; i < n; ++i) rows[i][n + i] = ring.one();
  Echelon e = rref_rows(std::move(rows));
  if (e.rows.size() < n) return std::nullopt;
  Matrix inv(ring, n, n);
  for (std::size_t r = 0; r < n; ++r) {
    if (e.pivots[r] != r) return std::nullopt;
    for (const auto& [j, x] : e.rows[r])
      if (j >= n) inv.set(r, j - n, x);
  }
  return inv;
}

std::vector<Vec> complete_basis(const Ring& ring, std::size_t n, const std::vector<Vec>& independent) {
  std::vector<Row> rows;
  for (const auto& v : independent) {
    Row r;
    for (std::size_t j = 0; j < n; ++j)
      if (!v[j].is_zero()) r[j] = v[j];
    rows.push_back(std::move(r));
  }
  Echelon e = rref_rows(std::move(rows));
  if (e.pivots.size() != independent.size()) throw InvariantViolation("complete_basis: dependent input");
  std::vector<bool> used(n, false);
  for (auto p : e.pivots) used[p] = true;
  std::vector<Vec> out;
  for (std::size_t j = 0; j < n; ++j) {
    if (used[j]) continue;
    Vec v(n, ring.zero());
    v[j] = ring.one();
    out.push_back(std::move(v));
  }
  return out;
}

}  // namespace infloc

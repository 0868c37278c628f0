#include "infloc/linalg/cohomology.hpp"

#include <algorithm>
#include <sstream>

#include "infloc/linalg/solve.hpp"

namespace infloc {

NotAComplex::NotAComplex(int degree, std::size_t row, std::size_t col)
    : InvalidInput("d^2 != 0 at degree " + std::to_string(degree) + ", entry (" + std::to_string(row) +
                   ", " + std::to_string(col) + ")"),
      degree(degree),
      row(row),
      col(col) {}

CochainComplex CochainComplex::from_differentials(const std::vector<Matrix>& ds, int lo) {
  if (ds.empty()) throw InvalidInput("empty list of differentials");
  CochainComplex c;
  c.ring = ds[0].ring();
  c.lo = lo;
  c.dims.push_back(ds[0].cols());
  for (const auto& d : ds) {
    if (d.cols() != c.dims.back()) throw InvalidInput("differentials are not composable");
    if (d.ring() != c.ring) throw InvalidInput("differentials over different rings");
    c.dims.push_back(d.rows());
  }
  c.d = ds;
  return c;
}

void check_complex(const CochainComplex& c) {
  if (!c.dims.empty() && c.d.size() + 1 != c.dims.size())
    throw InvalidInput("complex needs one differential between consecutive degrees");
  for (std::size_t k = 0; k < c.d.size(); ++k)
    if (c.d[k].cols() != c.dims[k] || c.d[k].rows() != c.dims[k + 1])
      throw InvalidInput("differential " + std::to_string(k) + " has the wrong shape");
  for (std::size_t k = 0; k + 1 < c.d.size(); ++k) {
    Matrix sq = c.d[k + 1] * c.d[k];
    bool bad = false;
    std::size_t bi = 0, bj = 0;
    sq.for_each_nonzero([&](std::size_t i, std::size_t j, const Scalar&) {
      if (!bad) {
        bad = true;
        bi = i;
        bj = j;
      }
    });
    if (bad) throw NotAComplex(c.lo + static_cast<int>(k), bi, bj);
  }
}

CohomologyReport cohomology(const CochainComplex& c) {
  check_complex(c);
  CohomologyReport rep;
  rep.lo = c.lo;
  std::size_t n = c.dims.size();
  std::vector<std::size_t> rk(c.d.size(), 0);
  std::vector<std::vector<mpz_class>> factors(c.d.size());
  bool over_z = c.ring.kind() == Ring::Kind::Integers;
  for (std::size_t k = 0; k < c.d.size(); ++k) {
    if (over_z) {
      factors[k] = invariant_factors(c.d[k]);
      rk[k] = factors[k].size();
    } else {
      rk[k] = rank(c.d[k]);
    }
  }
  for (std::size_t k = 0; k < n; ++k) {
    GroupSummary g;
    std::size_t out = k < rk.size() ? rk[k] : 0;
    std::size_t in = k > 0 ? rk[k - 1] : 0;
    g.rank = c.dims[k] - out - in;
    if (over_z && k > 0)
      for (const auto& f : factors[k - 1])
        if (f > 1) g.torsion.push_back(f);
    rep.H.push_back(std::move(g));
  }
  return rep;
}

CohomologyReport cohomology(const std::vector<Matrix>& ds, int lo) {
  return cohomology(CochainComplex::from_differentials(ds, lo));
}

GroupSummary CohomologyReport::at(int degree) const {
  int k = degree - lo;
  if (k < 0 || k >= static_cast<int>(H.size())) return {};
  return H[k];
}

bool CohomologyReport::operator==(const CohomologyReport& o) const {
  int a = std::min(lo, o.lo);
  int b = std::max(lo + static_cast<int>(H.size()), o.lo + static_cast<int>(o.H.size()));
  for (int i = a; i < b; ++i)
    if (at(i) != o.at(i)) return false;
  return true;
}

std::string CohomologyReport::str() const {
  std::ostringstream out;
  for (std::size_t k = 0; k < H.size(); ++k) {
    if (k) out << ", ";
    out << "H^" << lo + static_cast<int>(k) << " = ";
    const auto& g = H[k];
    bool any = false;
    if (g.rank) {
      out << "Z^" << g.rank;
      any = true;
    }
    for (const auto& t : g.torsion) {
      out << (any ? " + " : "") << "Z/" << t.get_str();
      any = true;
    }
    if (!any) out << "0";
  }
  return out.str();
}

GroupSummary lattice_quotient(std::size_t n, const std::vector<Vec>& lattice, const std::vector<Vec>& sub) {
  Ring z = Ring::Z();
  Matrix L = Matrix::from_columns(z, n, lattice);
  std::size_t l = lattice.size();
  Matrix C(z, l, sub.size());
  for (std::size_t j = 0; j < sub.size(); ++j) {
    auto s = solve_linear(L, sub[j]);
    if (!s) throw InvariantViolation("lattice_quotient: generator outside the lattice");
    for (std::size_t i = 0; i < l; ++i)
      if (!s->particular[i].is_zero()) C.set(i, j, s->particular[i]);
  }
  GroupSummary g;
  auto f = invariant_factors(C);
  g.rank = l - f.size();
  for (const auto& x : f)
    if (x > 1) g.torsion.push_back(x);
  return g;
}

namespace {

// basis of the lattice spanned by integer generators (columns)
std::vector<Vec> lattice_basis(std::size_t n, const std::vector<Vec>& gens) {
  Ring z = Ring::Z();
  if (gens.empty()) return {};
  Matrix G = Matrix::from_columns(z, n, gens);
  SmithForm s = smith_normal_form(G);
  Matrix Uinv = *inverse(s.U);
  std::vector<Vec> out;
  for (std::size_t i = 0; i < s.rank; ++i) {
    Vec col = Uinv.column(i);
    for (auto& x : col) x *= s.D.at(i, i);
    out.push_back(std::move(col));
  }
  return out;
}

}  // namespace

CohomologyReport cohomology_mod(const CochainComplex& c, unsigned long m) {
  if (c.ring.kind() != Ring::Kind::Integers) throw InvalidInput("cohomology_mod expects integer matrices");
  Ring z = Ring::Z();
  CohomologyReport rep;
  rep.lo = c.lo;
  Scalar mm(static_cast<long>(m));
  for (std::size_t k = 0; k < c.dims.size(); ++k) {
    std::size_t nk = c.dims[k];
    // cycles: x with d_k x = m y
    std::vector<Vec> cyc;
    if (k < c.d.size()) {
      std::size_t nn = c.dims[k + 1];
      Matrix big(z, nn, nk + nn);
      c.d[k].for_each_nonzero([&](std::size_t i, std::size_t j, const Scalar& v) { big.set(i, j, v); });
      for (std::size_t i = 0; i < nn; ++i) big.set(i, nk + i, -mm);
      for (const auto& v : kernel_basis(big)) cyc.emplace_back(v.begin(), v.begin() + static_cast<long>(nk));
    } else {
      for (std::size_t i = 0; i < nk; ++i) {
        Vec e(nk, z.zero());
        e[i] = z.one();
        cyc.push_back(e);
      }
    }
    std::vector<Vec> L = lattice_basis(nk, cyc);
    std::vector<Vec> B;
    for (std::size_t i = 0; i < nk; ++i) {
      Vec e(nk, z.zero());
      e[i] = mm;
      B.push_back(e);
    }
    if (k > 0)
      for (std::size_t j = 0; j < c.dims[k - 1]; ++j) B.push_back(c.d[k - 1].column(j));
    rep.H.push_back(L.empty() ? GroupSummary{} : lattice_quotient(nk, L, B));
  }
  return rep;
}

}  // namespace infloc

#include "infloc/mc/mc.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <sstream>

#include "infloc/linalg/solve.hpp"

namespace infloc {

namespace {

void require_degree(const DgAlgebra& a, const Vec& v, int deg, const char* what) {
  if (v.size() != a.dim()) throw InvalidInput(std::string(what) + " has the wrong length");
  if (!a.is_homogeneous(v, deg))
    throw InvalidInput(std::string(what) + " is not homogeneous of degree " + std::to_string(deg));
}

void require_mc(const DgAlgebra& a, const Vec& x, const char* what) {
  if (!is_mc(a, x).ok) throw InvalidInput(std::string(what) + " is not a Maurer-Cartan element");
}

// (-1)^{|b_i|} applied componentwise
Vec parity_twist(const DgAlgebra& a, Vec v) {
  for (std::size_t i = 0; i < v.size(); ++i)
    if ((a.degree(i) & 1) && !v[i].is_zero()) v[i] = -v[i];
  return v;
}

int weight_of(const Truncation& t, const Vec& v) {
  int w = 0;
  for (std::size_t i = 0; i < v.size(); ++i)
    if (!v[i].is_zero()) w = std::max(w, t.weight.at(i));
  return w;
}

std::shared_ptr<const DgAlgebra> ground_ptr(const Ring& R) {
  return std::make_shared<const DgAlgebra>(DgAlgebra::ground(R));
}

// A complex over the ground ring with the given basis and differential rows.
DgModule ground_complex(const Ring& R, GradedModule basis, std::vector<Sparse> diff) {
  std::vector<std::vector<DgModule::Action>> act(basis.size());
  for (std::size_t i = 0; i < basis.size(); ++i) act[i].push_back({0, i, R.one()});
  return DgModule(ground_ptr(R), std::move(basis), std::move(diff), std::move(act));
}

// Degree -1, 0, 1 pieces of A^[x,y], truncated as in hom_twist.
struct Layout {
  std::vector<std::size_t> deg[3];
  std::map<std::size_t, std::size_t> pos[3];
};

Layout layout(const DgAlgebra& a, const Vec& x, const Vec& y) {
  Layout l;
  const auto& t = a.truncation();
  int r = 0;
  if (t) r = std::max({t->raise, weight_of(*t, x), weight_of(*t, y)});
  for (int n = -1; n <= 1; ++n) {
    for (std::size_t i : a.basis().in_degree(n)) {
      if (t && t->weight.at(i) > t->horizon - (1 - n) * r) continue;
      l.pos[n + 1][i] = l.deg[n + 1].size();
      l.deg[n + 1].push_back(i);
    }
  }
  return l;
}

// Matrix of d^[x,y] from the degree-n piece to the degree-(n+1) piece.
Matrix layout_d(const DgAlgebra& a, const Vec& x, const Vec& y, const Layout& l, int n) {
  const auto& src = l.deg[n + 1];
  const auto& dst = l.deg[n + 2];
  const auto& dpos = l.pos[n + 2];
  Matrix M(a.ring(), dst.size(), src.size());
  for (std::size_t c = 0; c < src.size(); ++c) {
    Vec v = twisted_d(a, x, y, a.basis_vec(src[c]));
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (v[i].is_zero()) continue;
      auto it = dpos.find(i);
      if (it == dpos.end()) throw InvariantViolation("twisted differential leaves the truncated range");
      M.set(it->second, c, v[i]);
    }
  }
  return M;
}

// H^0 of A^[x,y] with enough structure to classify cocycles.
struct H0Data {
  Ring ring;
  Layout lay;
  Matrix dm1, d0;        // degree -1 -> 0 and 0 -> 1
  std::vector<Vec> Z;    // cocycles, in degree-0 layout coordinates
  GroupSummary group;
  std::vector<Vec> reps; // layout coordinates (fields)
  Matrix BR;             // boundaries then reps, as columns (fields)

  Vec lift(const DgAlgebra& a, const Vec& local) const {
    Vec v = a.zero();
    for (std::size_t k = 0; k < local.size(); ++k) v[lay.deg[1][k]] = local[k];
    return v;
  }
  std::optional<Vec> local(const Vec& v) const {
    Vec out = zero_vec(ring, lay.deg[1].size());
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (v[i].is_zero()) continue;
      auto it = lay.pos[1].find(i);
      if (it == lay.pos[1].end()) return std::nullopt;
      out[it->second] = v[i];
    }
    return out;
  }
  std::optional<Vec> classify(const Vec& v) const {
    auto z = local(v);
    if (!z) return std::nullopt;
    if (!is_zero_vec(d0.apply(*z))) return std::nullopt;
    if (reps.empty()) return Vec{};
    auto sol = solve_linear(BR, *z);
    if (!sol) return std::nullopt;
    std::size_t nb = dm1.cols();
    return Vec(sol->particular.begin() + static_cast<long>(nb), sol->particular.end());
  }
};

H0Data h0_data(const DgAlgebra& a, const Vec& x, const Vec& y) {
  H0Data h;
  h.ring = a.ring();
  h.lay = layout(a, x, y);
  h.dm1 = layout_d(a, x, y, h.lay, -1);
  h.d0 = layout_d(a, x, y, h.lay, 0);
  std::size_t n0 = h.lay.deg[1].size();
  h.Z = kernel_basis(h.d0);
  std::vector<Vec> B;
  for (std::size_t j = 0; j < h.dm1.cols(); ++j) B.push_back(h.dm1.column(j));
  if (!h.ring.is_field()) {
    h.group = lattice_quotient(n0, h.Z, B);
    return h;
  }
  std::vector<Vec> cols = B;
  std::size_t r = B.empty() ? 0 : rank(Matrix::from_columns(h.ring, n0, B));
  for (const Vec& z : h.Z) {
    cols.push_back(z);
    std::size_t r2 = rank(Matrix::from_columns(h.ring, n0, cols));
    if (r2 > r) {
      r = r2;
      h.reps.push_back(z);
    } else {
      cols.pop_back();
    }
  }
  h.group.rank = h.reps.size();
  h.BR = Matrix::from_columns(h.ring, n0, cols);
  return h;
}

Vec combination(const Ring& R, std::size_t n, const std::vector<Vec>& basis, const std::vector<long>& c) {
  Vec v = zero_vec(R, n);
  for (std::size_t k = 0; k < basis.size(); ++k)
    if (c[k] != 0) axpy(v, R.make(c[k]), basis[k]);
  return v;
}

std::vector<long> random_coeffs(std::mt19937_64& rng, std::size_t n, long bound) {
  std::uniform_int_distribution<long> u(-bound, bound);
  std::vector<long> c(n);
  for (auto& v : c) v = u(rng);
  return c;
}

}  // namespace

McCheck is_mc(const DgAlgebra& a, const Vec& x) {
  require_degree(a, x, 1, "MC candidate");
  McCheck r;
  r.residual = a.d(x) + a.mul(x, x);
  r.ok = is_zero_vec(r.residual);
  return r;
}

MCElement MCElement::make(AlgebraPtr alg, Vec value) {
  require_mc(*alg, value, "value");
  return {std::move(alg), std::move(value)};
}

MCElement MCElement::unchecked(AlgebraPtr alg, Vec value) {
  require_degree(*alg, value, 1, "value");
  return {std::move(alg), std::move(value)};
}

DgModule twist_module(AlgebraPtr alg, const Vec& x) {
  const DgAlgebra& a = *alg;
  if (a.truncation()) throw InvalidInput("cannot twist a truncated algebra");
  require_mc(a, x, "twisting element");
  std::vector<Sparse> diff;
  std::vector<std::vector<DgModule::Action>> act(a.dim());
  for (std::size_t i = 0; i < a.dim(); ++i) {
    Vec e = a.basis_vec(i);
    diff.push_back(to_sparse(a.d(e) + a.mul(x, e)));
    for (const auto& p : a.left(i)) act[i].push_back({p.other, p.result, p.c});
  }
  GradedModule b = a.basis();
  return DgModule(std::move(alg), b, diff, act);
}

DgAlgebra twist_algebra(const DgAlgebra& a, const Vec& x) {
  if (a.truncation()) throw InvalidInput("cannot twist a truncated algebra");
  require_mc(a, x, "twisting element");
  std::vector<Sparse> diff;
  for (std::size_t i = 0; i < a.dim(); ++i) diff.push_back(to_sparse(twisted_d(a, x, x, a.basis_vec(i))));
  return a.with_diff(diff);
}

Vec twisted_d(const DgAlgebra& a, const Vec& x, const Vec& y, const Vec& e) {
  return a.d(e) + a.mul(y, e) - a.mul(parity_twist(a, e), x);
}

Vec hom_compose(const DgAlgebra& a, const Vec& b, const Vec& f) { return a.mul(b, f); }

std::vector<std::size_t> hom_twist_support(const DgAlgebra& a, const Vec& x, const Vec& y) {
  if (!a.truncation()) {
    std::vector<std::size_t> all(a.dim());
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
    return all;
  }
  Layout l = layout(a, x, y);
  std::vector<std::size_t> out;
  for (auto& d : l.deg) out.insert(out.end(), d.begin(), d.end());
  return out;
}

DgModule hom_twist(const DgAlgebra& a, const Vec& x, const Vec& y) {
  require_mc(a, x, "source");
  require_mc(a, y, "target");
  const Ring& R = a.ring();
  std::vector<std::size_t> sup = hom_twist_support(a, x, y);
  std::map<std::size_t, std::size_t> pos;
  for (std::size_t k = 0; k < sup.size(); ++k) pos[sup[k]] = k;
  std::vector<std::string> labels;
  std::vector<int> degs;
  std::vector<Sparse> diff;
  const bool cut = a.truncation().has_value();
  for (std::size_t i : sup) {
    labels.push_back(a.basis().label(i));
    degs.push_back(a.degree(i));
    Sparse row;
    if (!cut || a.degree(i) < 1) {
      Vec v = twisted_d(a, x, y, a.basis_vec(i));
      for (std::size_t j = 0; j < v.size(); ++j) {
        if (v[j].is_zero()) continue;
        auto it = pos.find(j);
        if (it == pos.end()) throw InvariantViolation("twisted differential leaves the truncated range");
        row.push_back({it->second, v[j]});
      }
      std::sort(row.begin(), row.end(), [](const auto& p, const auto& q) { return p.first < q.first; });
    }
    diff.push_back(row);
  }
  return ground_complex(R, GradedModule(R, labels, degs), diff);
}

std::optional<Vec> invert(const DgAlgebra& a, const Vec& g) {
  require_degree(a, g, 0, "element to invert");
  auto I = a.basis().in_degree(0);
  Matrix L(a.ring(), I.size(), I.size());
  std::map<std::size_t, std::size_t> pos;
  for (std::size_t k = 0; k < I.size(); ++k) pos[I[k]] = k;
  for (std::size_t c = 0; c < I.size(); ++c) {
    Vec v = a.mul(g, a.basis_vec(I[c]));
    for (std::size_t i = 0; i < v.size(); ++i)
      if (!v[i].is_zero()) L.set(pos.at(i), c, v[i]);
  }
  Vec one = a.one();
  Vec rhs = zero_vec(a.ring(), I.size());
  for (std::size_t k = 0; k < I.size(); ++k) rhs[k] = one[I[k]];
  auto sol = solve_linear(L, rhs);
  if (!sol) return std::nullopt;
  Vec h = a.zero();
  for (std::size_t k = 0; k < I.size(); ++k) h[I[k]] = sol->particular[k];
  if (a.mul(g, h) != one || a.mul(h, g) != one) return std::nullopt;
  return h;
}

Vec gauge_act(const DgAlgebra& a, const Vec& g, const Vec& x) {
  require_mc(a, x, "gauge target");
  auto gi = invert(a, g);
  if (!gi) throw InvalidInput("gauge element is not invertible");
  return a.mul(a.mul(g, x), *gi) - a.mul(a.d(g), *gi);
}

bool is_gauge_pair(const DgAlgebra& a, const Vec& g, const Vec& x, const Vec& y) {
  if (g.size() != a.dim() || !a.is_homogeneous(g, 0)) return false;
  if (!is_zero_vec(a.d(g) + a.mul(y, g) - a.mul(g, x))) return false;
  return invert(a, g).has_value();
}

HomotopyGaugeCheck verify_homotopy_gauge(const DgAlgebra& a, const Vec& x, const Vec& y,
                                         const HomotopyGaugeCertificate& c) {
  HomotopyGaugeCheck r;
  auto fail = [&](int k, std::string why) {
    r.ok = false;
    r.failed = k;
    r.detail = std::move(why);
    return r;
  };
  auto shaped = [&](const Vec& v, int deg) { return v.size() == a.dim() && a.is_homogeneous(v, deg); };
  if (!shaped(x, 1) || !shaped(y, 1)) throw InvalidInput("MC elements must have degree 1");
  Vec one = a.one();
  if (!shaped(c.g, 0)) return fail(1, "g is not of degree 0");
  Vec r1 = a.d(c.g) + a.mul(y, c.g) - a.mul(c.g, x);
  if (!is_zero_vec(r1)) return fail(1, "dg + yg - gx = " + a.format(r1));
  if (!shaped(c.h, 0)) return fail(2, "h is not of degree 0");
  Vec r2 = a.d(c.h) + a.mul(x, c.h) - a.mul(c.h, y);
  if (!is_zero_vec(r2)) return fail(2, "dh + xh - hy = " + a.format(r2));
  if (!shaped(c.wx, -1)) return fail(3, "wx is not of degree -1");
  Vec r3 = a.mul(c.h, c.g) - one - twisted_d(a, x, x, c.wx);
  if (!is_zero_vec(r3)) return fail(3, "hg - 1 - d^x(wx) = " + a.format(r3));
  if (!shaped(c.wy, -1)) return fail(4, "wy is not of degree -1");
  Vec r4 = a.mul(c.g, c.h) - one - twisted_d(a, y, y, c.wy);
  if (!is_zero_vec(r4)) return fail(4, "gh - 1 - d^y(wy) = " + a.format(r4));
  r.ok = true;
  return r;
}

std::string to_string(SearchResult::Kind k) {
  switch (k) {
    case SearchResult::Kind::Equivalent: return "Equivalent";
    case SearchResult::Kind::Distinguished: return "Distinguished";
    case SearchResult::Kind::Unknown: break;
  }
  return "Unknown";
}

SearchResult search_homotopy_gauge(const DgAlgebra& a, const Vec& x, const Vec& y, std::size_t budget,
                                   std::uint64_t seed) {
  require_mc(a, x, "x");
  require_mc(a, y, "y");
  const Ring& R = a.ring();
  SearchResult res;
  auto finish = [&](HomotopyGaugeCertificate c, bool strict) {
    auto v = verify_homotopy_gauge(a, x, y, c);
    if (!v.ok)
      throw InvariantViolation("search produced a certificate failing condition " + std::to_string(v.failed) + ": " +
                               v.detail);
    res.kind = SearchResult::Kind::Equivalent;
    res.cert = std::move(c);
    res.strict_gauge = strict;
    return res;
  };

  if (!a.truncation()) {
    auto alg = std::make_shared<const DgAlgebra>(a);
    CohomologyReport mx = cohomology(twist_module(alg, x)), my = cohomology(twist_module(alg, y));
    if (mx != my) {
      res.kind = SearchResult::Kind::Distinguished;
      res.invariant = "H(A^[x]) = " + mx.str() + " but H(A^[y]) = " + my.str();
      return res;
    }
    CohomologyReport ax = cohomology(hom_twist(a, x, x)), ay = cohomology(hom_twist(a, y, y));
    if (ax != ay) {
      res.kind = SearchResult::Kind::Distinguished;
      res.invariant = "H(A^x) = " + ax.str() + " but H(A^y) = " + ay.str();
      return res;
    }
  }

  std::mt19937_64 rng(seed);
  H0Data xy = h0_data(a, x, y), yx = h0_data(a, y, x);
  const std::size_t n0 = xy.lay.deg[1].size();
  const std::size_t dim0 = a.basis().in_degree(0).size();
  std::size_t gauge_budget = (budget + 1) / 2;

  // strict gauges: invertible solutions of dg + yg - gx = 0
  long bound = 1;
  for (std::size_t t = 0; t < gauge_budget && !xy.Z.empty(); ++t, ++res.samples) {
    Vec g = xy.lift(a, combination(R, n0, xy.Z, random_coeffs(rng, xy.Z.size(), bound)));
    double support = R.modulus() ? std::min<double>(2.0 * bound + 1, R.modulus()) : 2.0 * bound + 1;
    res.miss_bound = std::min(1.0, static_cast<double>(dim0) / support);
    if (bound < (1L << 30)) bound *= 2;
    if (is_zero_vec(g)) continue;
    // on a truncated algebra the inverse must stay where d is exact
    if (auto gi = invert(a, g); gi && yx.local(*gi)) return finish({g, *gi, a.zero(), a.zero()}, true);
  }
  if (!R.is_field()) res.note = "over Z the gauge search samples small combinations only; ";

  // homotopy gauges: closed g, then solve the linear system for h, wx, wy
  Layout lx = layout(a, x, x), ly = layout(a, y, y);
  auto I = a.basis().in_degree(0);
  std::map<std::size_t, std::size_t> row;
  for (std::size_t k = 0; k < I.size(); ++k) row[I[k]] = k;
  const std::size_t nh = yx.Z.size(), nwx = lx.deg[0].size(), nwy = ly.deg[0].size();
  const std::vector<Vec>& pool = R.is_field() ? xy.reps : xy.Z;
  Vec one = a.one();
  Vec rhs = zero_vec(R, 2 * I.size());
  for (std::size_t k = 0; k < I.size(); ++k) rhs[k] = rhs[I.size() + k] = one[I[k]];
  std::vector<Vec> hs, dwx, dwy;
  for (const Vec& z : yx.Z) hs.push_back(yx.lift(a, z));
  for (std::size_t i : lx.deg[0]) dwx.push_back(twisted_d(a, x, x, a.basis_vec(i)));
  for (std::size_t i : ly.deg[0]) dwy.push_back(twisted_d(a, y, y, a.basis_vec(i)));

  auto put = [&](Matrix& M, std::size_t off, std::size_t col, const Vec& v, bool neg) {
    for (std::size_t i = 0; i < v.size(); ++i)
      if (!v[i].is_zero()) M.set(off + row.at(i), col, neg ? -v[i] : v[i]);
  };
  bound = 1;
  for (std::size_t t = 0; res.samples < budget && !pool.empty(); ++t, ++res.samples) {
    std::vector<long> c(pool.size(), 0);
    if (t < pool.size()) {
      c[t] = 1;
    } else {
      c = random_coeffs(rng, pool.size(), bound);
      if (bound < (1L << 30)) bound *= 2;
    }
    Vec g = xy.lift(a, combination(R, n0, pool, c));
    if (is_zero_vec(g)) continue;
    Matrix M(R, 2 * I.size(), nh + nwx + nwy);
    for (std::size_t k = 0; k < nh; ++k) {
      put(M, 0, k, a.mul(hs[k], g), false);
      put(M, I.size(), k, a.mul(g, hs[k]), false);
    }
    for (std::size_t k = 0; k < nwx; ++k) put(M, 0, nh + k, dwx[k], true);
    for (std::size_t k = 0; k < nwy; ++k) put(M, I.size(), nh + nwx + k, dwy[k], true);
    auto sol = solve_linear(M, rhs);
    if (!sol) continue;
    HomotopyGaugeCertificate cert{g, a.zero(), a.zero(), a.zero()};
    for (std::size_t k = 0; k < nh; ++k) axpy(cert.h, sol->particular[k], hs[k]);
    for (std::size_t k = 0; k < nwx; ++k) cert.wx[lx.deg[0][k]] = sol->particular[nh + k];
    for (std::size_t k = 0; k < nwy; ++k) cert.wy[ly.deg[0][k]] = sol->particular[nh + nwx + k];
    return finish(std::move(cert), false);
  }
  res.note += "budget exhausted after " + std::to_string(res.samples) + " samples";
  return res;
}

std::optional<Vec> H0Table::compose(std::size_t i, std::size_t j, std::size_t k, std::size_t p,
                                    std::size_t q) const {
  if (!classify) return std::nullopt;
  return classify(i, k, alg->mul(hom.at(j).at(k).reps.at(q), hom.at(i).at(j).reps.at(p)));
}

Vec H0Table::represent(std::size_t i, std::size_t j, const Vec& coords) const {
  const auto& reps = hom.at(i).at(j).reps;
  if (coords.size() != reps.size()) throw InvalidInput("class coordinates have the wrong length");
  Vec v = alg->zero();
  for (std::size_t k = 0; k < reps.size(); ++k) axpy(v, coords[k], reps[k]);
  return v;
}

H0Table mc_category_h0(const DgAlgebra& a, const std::vector<Vec>& xs, std::uint64_t seed) {
  for (const Vec& x : xs) require_mc(a, x, "object");
  const Ring& R = a.ring();
  const std::size_t n = xs.size();
  H0Table t;
  t.alg = std::make_shared<const DgAlgebra>(a);
  t.field = R.is_field();
  auto data = std::make_shared<std::vector<std::vector<H0Data>>>(n);
  t.hom.assign(n, std::vector<H0Table::Entry>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      (*data)[i].push_back(h0_data(a, xs[i], xs[j]));
      const H0Data& h = (*data)[i][j];
      t.hom[i][j].group = h.group;
      for (const Vec& r : h.reps) t.hom[i][j].reps.push_back(h.lift(a, r));
    }
  if (t.field)
    t.classify = [data](std::size_t i, std::size_t j, const Vec& v) { return (*data).at(i).at(j).classify(v); };

  t.identity.resize(n);
  for (std::size_t i = 0; i < n; ++i)
    if (t.field) t.identity[i] = t.classify(i, i, a.one());

  std::mt19937_64 rng(seed);
  t.iso_found.assign(n, std::vector<bool>(n, false));
  for (std::size_t i = 0; i < n; ++i) t.iso_found[i][i] = true;
  if (!t.field) return t;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j || !t.identity[i] || !t.identity[j]) continue;
      const std::size_t m = t.hom[i][j].reps.size(), k = t.hom[j][i].reps.size();
      if (m == 0 || k == 0) {
        // both objects are zero in the homotopy category
        t.iso_found[i][j] = t.hom[i][i].reps.empty() && t.hom[j][j].reps.empty();
        continue;
      }
      // C1[p][q] = [b_q][a_p] in hom[i][i], C2[q][p] = [a_p][b_q] in hom[j][j]
      std::vector<std::vector<Vec>> C1(m, std::vector<Vec>(k)), C2(k, std::vector<Vec>(m));
      bool ok = true;
      for (std::size_t p = 0; p < m && ok; ++p)
        for (std::size_t q = 0; q < k && ok; ++q) {
          auto c1 = t.compose(i, j, i, p, q), c2 = t.compose(j, i, j, q, p);
          if (!c1 || !c2) ok = false;
          else C1[p][q] = *c1, C2[q][p] = *c2;
        }
      if (!ok) continue;
      const std::size_t di = t.identity[i]->size(), dj = t.identity[j]->size();
      Vec rhs = *t.identity[i];
      rhs.insert(rhs.end(), t.identity[j]->begin(), t.identity[j]->end());
      for (std::size_t trial = 0; trial < m + 16 && !t.iso_found[i][j]; ++trial) {
        std::vector<long> c(m, 0);
        if (trial < m) c[trial] = 1;
        else c = random_coeffs(rng, m, 1L << std::min<std::size_t>(trial - m, 20));
        Matrix M(R, di + dj, k);
        for (std::size_t q = 0; q < k; ++q)
          for (std::size_t p = 0; p < m; ++p) {
            if (c[p] == 0) continue;
            Scalar s = R.make(c[p]);
            for (std::size_t r = 0; r < di; ++r) M.add(r, q, s * C1[p][q][r]);
            for (std::size_t r = 0; r < dj; ++r) M.add(di + r, q, s * C2[q][p][r]);
          }
        if (solve_linear(M, rhs)) t.iso_found[i][j] = true;
      }
    }
  return t;
}

}  // namespace infloc

#include "infloc/perturbation/perturbation.hpp"

#include <random>

#include "infloc/linalg/solve.hpp"

namespace infloc {

namespace {

// the unit's first coordinate, to read off scalar multiples
std::pair<std::size_t, Scalar> unit_pivot(const DgAlgebra& a) {
  if (a.unit().empty()) throw InvalidInput("algebra without a unit");
  return a.unit().front();
}

int max_algebra_degree(const DgAlgebra& a) { return a.dim() ? a.basis().max_degree() : 0; }

// (V, d0) as a cochain complex, one block per degree
CochainComplex fibre_complex(const GradedModule& v, const Matrix& d0) {
  CochainComplex c;
  c.ring = v.ring();
  if (v.size() == 0) {
    c.dims = {0};
    return c;
  }
  c.lo = v.min_degree();
  for (int k = c.lo; k <= v.max_degree(); ++k) c.dims.push_back(v.in_degree(k).size());
  for (int k = c.lo; k < v.max_degree(); ++k) {
    auto src = v.in_degree(k), dst = v.in_degree(k + 1);
    Matrix m(v.ring(), dst.size(), src.size());
    for (std::size_t j = 0; j < src.size(); ++j)
      for (std::size_t i = 0; i < dst.size(); ++i) m.set(i, j, d0.at(dst[i], src[j]));
    c.d.push_back(m);
  }
  return c;
}

void check_fibre_differential(const GradedModule& v, const Matrix& d0) {
  if (d0.rows() != v.size() || d0.cols() != v.size()) throw InvalidInput("fibre differential has the wrong shape");
  bool ok = true;
  d0.for_each_nonzero([&](std::size_t i, std::size_t j, const Scalar&) { ok = ok && v.degree(i) == v.degree(j) + 1; });
  if (!ok) throw InvalidInput("fibre differential is not of degree 1");
  if (!(d0 * d0).is_zero()) throw InvalidInput("fibre differential does not square to zero");
}

std::size_t rank_of(const Ring& R, std::size_t n, const std::vector<Vec>& cols) {
  if (cols.empty()) return 0;
  return rank(Matrix::from_columns(R, n, cols));
}

Vec unit_vec(const Ring& R, std::size_t n, std::size_t i) {
  Vec v = zero_vec(R, n);
  v[i] = R.one();
  return v;
}

// Σ_k (-a)^k b until the terms vanish
AMatrix geometric_series(const AMatrix& a, const AMatrix& b, int bound, const char* what) {
  AMatrix sum = b, term = b;
  Scalar minus = a.algebra().ring().make(-1);
  for (int k = 0; k <= bound + 1; ++k) {
    term = (a * term).scaled(minus);
    if (term.is_zero()) return sum;
    sum = sum + term;
  }
  throw InvariantViolation(std::string(what) + ": series does not terminate within the filtration bound");
}

}  // namespace

AMatrix scalar_amatrix(AlgebraPtr alg, const GradedModule& src, const GradedModule& dst, const Matrix& c) {
  if (c.rows() != dst.size() || c.cols() != src.size()) throw InvalidInput("scalar_amatrix: wrong shape");
  AMatrix m(alg, src, dst);
  Vec one = alg->one();
  c.for_each_nonzero([&](std::size_t i, std::size_t j, const Scalar& v) { m.at(i, j) = v * one; });
  return m;
}

AMatrix algebra_degree_part(const AMatrix& m, int k) {
  AMatrix out = m;
  const DgAlgebra& a = m.algebra();
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) {
      Vec& e = out.at(i, j);
      for (std::size_t t = 0; t < e.size(); ++t)
        if (a.degree(t) != k) e[t] = a.ring().zero();
    }
  return out;
}

std::optional<Matrix> reduced_part(const TwistedModule& m) {
  const DgAlgebra& a = *m.alg;
  const Ring& R = a.ring();
  auto [u0, c0] = unit_pivot(a);
  Vec one = a.one();
  Matrix d0(R, m.v.size(), m.v.size());
  AMatrix x0 = algebra_degree_part(m.x, 0);
  for (std::size_t i = 0; i < m.v.size(); ++i)
    for (std::size_t j = 0; j < m.v.size(); ++j) {
      const Vec& e = x0.at(i, j);
      if (is_zero_vec(e)) continue;
      Scalar c = e[u0] / c0;
      if (!R.contains(c) || e != c * one) return std::nullopt;
      d0.set(i, j, c);
    }
  return d0;
}

bool is_reduced(const TwistedModule& m) { return reduced_part(m).has_value(); }

bool is_minimal(const TwistedModule& m) {
  auto d0 = reduced_part(m);
  return d0 && d0->is_zero();
}

ReducedTwistedModule ReducedTwistedModule::make(TwistedModule m) {
  auto d0 = reduced_part(m);
  if (!d0) throw InvalidInput("twisted module is not reduced: its A^0 component is not a scalar matrix");
  return {std::move(m), *d0};
}

HodgeData hodge_data(const GradedModule& v, const Matrix& d0, std::uint64_t seed) {
  const Ring& R = v.ring();
  if (!R.is_field()) throw InvalidInput("hodge_data needs a field");
  check_fibre_differential(v, d0);
  const std::size_t n = v.size();
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> coef(-2, 2);
  auto jiggle = [&](Vec w, const std::vector<Vec>& by) {
    if (seed == 0) return w;
    for (const auto& b : by) axpy(w, R.make(coef(rng)), b);
    return w;
  };

  enum Kind { B, H, U };
  std::vector<Vec> cols;
  std::vector<Kind> kinds;
  std::vector<std::size_t> partner;  // for B: the position of its U preimage
  std::vector<Vec> next_b;           // d0(U) of the previous degree
  std::vector<std::size_t> next_u;   // positions of those U vectors
  if (n > 0)
    for (int k = v.min_degree(); k <= v.max_degree(); ++k) {
      auto idx = v.in_degree(k);
      std::vector<Vec> bk = next_b;
      std::vector<std::size_t> uk_pos = next_u;
      next_b.clear();
      next_u.clear();
      // kernel of d0 on V^k
      Matrix dk(R, n, idx.size());
      for (std::size_t j = 0; j < idx.size(); ++j)
        for (std::size_t i = 0; i < n; ++i) dk.set(i, j, d0.at(i, idx[j]));
      std::vector<Vec> z;
      for (const auto& kv : kernel_basis(dk)) {
        Vec w = zero_vec(R, n);
        for (std::size_t j = 0; j < idx.size(); ++j) w[idx[j]] = kv[j];
        z.push_back(w);
      }
      // harmonic: complement of B^k inside Z^k
      std::vector<Vec> span = bk;
      for (std::size_t m = 0; m < bk.size(); ++m) {
        cols.push_back(bk[m]);
        kinds.push_back(B);
        partner.push_back(uk_pos[m]);
      }
      for (const auto& zv : z) {
        auto cand = span;
        cand.push_back(zv);
        if (rank_of(R, n, cand) > span.size()) {
          span.push_back(zv);
          cols.push_back(jiggle(zv, bk));
          kinds.push_back(H);
          partner.push_back(0);
        }
      }
      // U: complement of Z^k in V^k, with B^{k+1} = d0(U)
      std::vector<Vec> zs = z;
      for (std::size_t j : idx) {
        auto cand = zs;
        cand.push_back(unit_vec(R, n, j));
        if (rank_of(R, n, cand) > zs.size()) {
          zs.push_back(unit_vec(R, n, j));
          Vec u = jiggle(unit_vec(R, n, j), z);
          next_u.push_back(cols.size());
          cols.push_back(u);
          kinds.push_back(U);
          partner.push_back(0);
          next_b.push_back(d0.apply(u));
        }
      }
    }
  if (cols.size() != n) throw InvariantViolation("hodge_data: decomposition has the wrong dimension");

  HodgeData out;
  out.s = Matrix(R, n, n);
  out.t = Matrix(R, n, n);
  if (n == 0) {
    out.harmonic = GradedModule(R, {}, {});
    out.iota = Matrix(R, 0, 0);
    out.pi = Matrix(R, 0, 0);
    return out;
  }
  Matrix P = Matrix::from_columns(R, n, cols);
  auto Pinv = inverse(P);
  if (!Pinv) throw InvariantViolation("hodge_data: decomposition is not a basis");
  Matrix s1(R, n, n), t1(R, n, n);
  std::vector<std::size_t> hpos;
  for (std::size_t c = 0; c < n; ++c) {
    if (kinds[c] == B) s1.set(partner[c], c, R.one());
    if (kinds[c] == H) {
      t1.set(c, c, R.one());
      hpos.push_back(c);
    }
  }
  out.s = P * s1 * *Pinv;
  out.t = P * t1 * *Pinv;
  std::vector<std::string> labels;
  std::vector<int> degs;
  std::vector<Vec> hcols;
  out.pi = Matrix(R, hpos.size(), n);
  for (std::size_t m = 0; m < hpos.size(); ++m) {
    const Vec& h = cols[hpos[m]];
    std::size_t lead = 0;
    while (h[lead].is_zero()) ++lead;
    labels.push_back("[" + v.label(lead) + "]");
    degs.push_back(v.degree(lead));
    hcols.push_back(h);
    for (std::size_t j = 0; j < n; ++j) out.pi.set(m, j, Pinv->at(hpos[m], j));
  }
  // labels must be unique
  for (std::size_t m = 0; m < labels.size(); ++m)
    for (std::size_t l = 0; l < m; ++l)
      if (labels[l] == labels[m]) labels[m] += "'" + std::to_string(m);
  out.harmonic = GradedModule(R, labels, degs);
  out.iota = Matrix::from_columns(R, n, hcols);

  Matrix id = Matrix::identity(R, n);
  if (d0 * out.s + out.s * d0 != id - out.t || !(out.s * out.s).is_zero() || out.t * out.t != out.t ||
      !(out.s * out.t).is_zero() || !(out.t * out.s).is_zero() || out.iota * out.pi != out.t ||
      out.pi * out.iota != Matrix::identity(R, hpos.size()))
    throw InvariantViolation("hodge_data: decomposition identities fail");
  return out;
}

MinimalModel minimal_model(const TwistedModule& m, std::uint64_t seed) {
  const Ring& R = m.alg->ring();
  if (!R.is_field()) throw InvalidInput("minimal_model needs a field");
  auto d0 = reduced_part(m);
  if (!d0) throw InvalidInput("minimal_model: twisted module is not reduced");
  if (!m.residual().is_zero()) throw InvalidInput("minimal_model: twisting is not Maurer-Cartan");
  MinimalModel out;
  out.hodge = hodge_data(m.v, *d0, seed);
  const HodgeData& hd = out.hodge;
  const GradedModule& H = hd.harmonic;
  AMatrix S = scalar_amatrix(m.alg, m.v, m.v, hd.s);
  AMatrix I = scalar_amatrix(m.alg, H, m.v, hd.iota);
  AMatrix P = scalar_amatrix(m.alg, m.v, H, hd.pi);
  AMatrix delta = m.x - scalar_amatrix(m.alg, m.v, m.v, *d0);
  int bound = max_algebra_degree(*m.alg);
  // (1 + delta S)^{-1} delta
  AMatrix A = geometric_series(delta * S, delta, bound, "minimal_model");
  AMatrix xh = P * A * I;
  out.i = I - S * A * I;
  out.p = P - P * A * S;
  out.h = S - S * A * S;
  try {
    out.minimal = TwistedModule(m.alg, H, xh);
  } catch (const InvalidInput& e) {
    throw InvariantViolation(std::string("minimal_model: transferred twisting fails: ") + e.what());
  }
  if (!is_minimal(out.minimal)) throw InvariantViolation("minimal_model: result is not minimal");
  if (!hom_d(out.minimal, m, out.i).is_zero() || !hom_d(m, out.minimal, out.p).is_zero())
    throw InvariantViolation("minimal_model: comparison maps are not closed");
  if (out.p * out.i != AMatrix::identity(m.alg, H))
    throw InvariantViolation("minimal_model: p i is not the identity");
  if (hom_d(m, m, out.h) != AMatrix::identity(m.alg, m.v) - out.i * out.p)
    throw InvariantViolation("minimal_model: homotopy equation fails");
  return out;
}

IsoCheck minimal_iso_check(const TwistedModule& m, const TwistedModule& n, const AMatrix& f) {
  IsoCheck out;
  if (f.cols() != m.v.size() || f.rows() != n.v.size()) throw InvalidInput("minimal_iso_check: map has the wrong shape");
  if (!f.has_degree(0)) throw InvalidInput("minimal_iso_check: map is not of degree 0");
  if (!hom_d(m, n, f).is_zero()) throw InvalidInput("minimal_iso_check: map is not closed");
  if (m.v.size() != n.v.size()) {
    out.reason = "ranks differ";
    return out;
  }
  const DgAlgebra& a = *m.alg;
  const Ring& R = a.ring();
  const std::size_t r = m.v.size(), na = a.dim();
  if (r == 0) {
    out.invertible = true;
    out.inverse = AMatrix(m.alg, n.v, m.v);
    return out;
  }
  AMatrix f0 = algebra_degree_part(f, 0);
  // unknown g0: n -> m with entries in A^0, f0 g0 = 1 and g0 f0 = 1
  auto a0 = a.basis().in_degree(0);
  struct Unknown {
    std::size_t i, j, t;
  };
  std::vector<Unknown> unk;
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j)
      if (m.v.degree(i) == n.v.degree(j))
        for (std::size_t t : a0) unk.push_back({i, j, t});
  const std::size_t rows = 2 * r * r * na;
  auto flatten = [&](const AMatrix& left, const AMatrix& right, Vec& into) {
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < r; ++j)
        for (std::size_t t = 0; t < na; ++t) into.push_back(left.at(i, j)[t]);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < r; ++j)
        for (std::size_t t = 0; t < na; ++t) into.push_back(right.at(i, j)[t]);
  };
  std::vector<Vec> cols;
  for (const auto& u : unk) {
    AMatrix e(m.alg, n.v, m.v);
    e.at(u.i, u.j)[u.t] = R.one();
    Vec c;
    flatten(f0 * e, e * f0, c);
    cols.push_back(std::move(c));
  }
  Vec rhs;
  flatten(AMatrix::identity(m.alg, n.v), AMatrix::identity(m.alg, m.v), rhs);
  std::optional<LinearSolution> sol;
  if (!cols.empty()) sol = solve_linear(Matrix::from_columns(R, rows, cols), rhs);
  if (!sol) {
    out.reason = "the algebra-degree-0 part is not invertible";
    return out;
  }
  AMatrix g0(m.alg, n.v, m.v);
  for (std::size_t k = 0; k < unk.size(); ++k) g0.at(unk[k].i, unk[k].j)[unk[k].t] = sol->particular[k];
  AMatrix fplus = f - f0;
  AMatrix g = geometric_series(g0 * fplus, g0, max_algebra_degree(a), "minimal_iso_check");
  if (f * g != AMatrix::identity(m.alg, n.v) || g * f != AMatrix::identity(m.alg, m.v))
    throw InvariantViolation("minimal_iso_check: computed inverse fails");
  out.invertible = true;
  out.inverse = g;
  return out;
}

ResolutionLift lift_to_free_resolution(const ResolutionInput& in) {
  if (!in.base) throw InvalidInput("lift_to_free_resolution: no base");
  const Ring& R = in.w.ring();
  check_fibre_differential(in.w, in.dw);
  if (in.w.size() == 0) throw InvalidInput("lift_to_free_resolution: empty resolution");
  if (in.w.max_degree() != 0) throw InvalidInput("lift_to_free_resolution: resolution must end in degree 0");
  CohomologyReport hw = cohomology(fibre_complex(in.w, in.dw));
  for (int k = hw.lo; k < 0; ++k)
    if (!hw.at(k).is_zero()) throw InvalidInput("lift_to_free_resolution: W is not a resolution (H^" + std::to_string(k) + " != 0)");
  auto w0 = in.w.in_degree(0);
  auto wm1 = in.w.in_degree(-1);
  for (const auto& [edge, f] : in.monodromy) {
    if (edge >= in.base->count(1)) throw InvalidInput("lift_to_free_resolution: no edge " + std::to_string(edge));
    if (f.rows() != w0.size() || f.cols() != w0.size())
      throw InvalidInput("lift_to_free_resolution: transport on edge " + std::to_string(edge) + " has the wrong shape");
    // must preserve the relations d(W^{-1}) ⊂ W^0
    if (!wm1.empty()) {
      Matrix rel(R, w0.size(), wm1.size()), img(R, w0.size(), wm1.size());
      for (std::size_t i = 0; i < w0.size(); ++i)
        for (std::size_t j = 0; j < wm1.size(); ++j) rel.set(i, j, in.dw.at(w0[i], wm1[j]));
      img = f * rel;
      for (std::size_t j = 0; j < wm1.size(); ++j)
        if (!solve_linear(rel, img.column(j)))
          throw InvalidInput("lift_to_free_resolution: transport on edge " + std::to_string(edge) +
                             " does not descend to H^0(W)");
    }
  }

  auto alg = std::make_shared<const DgAlgebra>(cochain_algebra(*in.base, R));
  const DgAlgebra& A = *alg;
  const std::size_t n = in.w.size(), na = A.dim();
  AMatrix dws = scalar_amatrix(alg, in.w, in.w, in.dw);
  ResolutionLift out;
  out.parts.push_back(dws);

  AMatrix fixed(alg, in.w, in.w);
  for (const auto& [edge, f] : in.monodromy) {
    std::size_t idx = cochain_index(*in.base, 1, edge);
    for (std::size_t i = 0; i < w0.size(); ++i)
      for (std::size_t j = 0; j < w0.size(); ++j) {
        Scalar c = f.at(i, j) - (i == j ? R.one() : R.zero());
        if (!c.is_zero()) fixed.at(w0[i], w0[j])[idx] = c;
      }
  }
  auto flat = [&](const AMatrix& m) {
    Vec v;
    v.reserve(n * n * na);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        for (std::size_t t = 0; t < na; ++t) v.push_back(m.at(i, j)[t]);
    return v;
  };
  AMatrix total = dws;
  int top = in.base->dim();
  for (int k = 1; k <= top; ++k) {
    AMatrix base_part = k == 1 ? fixed : AMatrix(alg, in.w, in.w);
    AMatrix trial = total + base_part;
    AMatrix res = algebra_degree_part(TwistedModule::unchecked(alg, in.w, trial).residual(), k);
    AMatrix wk = base_part;
    if (!res.is_zero()) {
      // unknown entries of algebra degree k and total degree 1, off the fixed block at stage 1
      struct Unknown {
        std::size_t i, j, t;
      };
      std::vector<Unknown> unk;
      std::vector<Vec> cols;
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
          if (in.w.degree(i) - in.w.degree(j) != 1 - k) continue;
          if (k == 1 && in.w.degree(i) == 0 && in.w.degree(j) == 0) continue;
          for (std::size_t t : A.basis().in_degree(k)) {
            AMatrix e(alg, in.w, in.w);
            e.at(i, j)[t] = R.one();
            unk.push_back({i, j, t});
            cols.push_back(flat(dws * e + e * dws));
          }
        }
      std::optional<LinearSolution> sol;
      if (!cols.empty()) sol = solve_linear(Matrix::from_columns(R, n * n * na, cols), -flat(res));
      if (!sol)
        throw InvalidInput("lift_to_free_resolution: obstruction does not vanish at stage " + std::to_string(k));
      for (std::size_t u = 0; u < unk.size(); ++u) wk.at(unk[u].i, unk[u].j)[unk[u].t] += sol->particular[u];
    }
    out.parts.push_back(wk);
    total = total + wk;
  }
  try {
    out.module = TwistedModule(alg, in.w, total);
  } catch (const InvalidInput& e) {
    throw InvariantViolation(std::string("lift_to_free_resolution: lifted differential fails: ") + e.what());
  }
  return out;
}

ResolutionInput cyclic_resolution_input(std::shared_ptr<const FiniteSimplicialSet> base, long m,
                                        const std::map<std::size_t, long>& transports) {
  if (m < 2) throw InvalidInput("cyclic_resolution_input: modulus must be at least 2");
  Ring Z = Ring::Z();
  ResolutionInput in;
  in.base = std::move(base);
  in.w = GradedModule(Z, {"r", "g"}, {-1, 0});
  in.dw = Matrix(Z, 2, 2);
  in.dw.set(1, 0, Z.make(m));
  for (const auto& [e, a] : transports) in.monodromy[e] = Matrix::from_rows(Z, {{a}});
  return in;
}

CohomologyReport cyclic_local_cohomology(std::shared_ptr<const FiniteSimplicialSet> base, long m,
                                         const std::map<std::size_t, long>& transports) {
  if (m < 2 || !is_prime(static_cast<unsigned long>(m)))
    throw InvalidInput("cyclic_local_cohomology: modulus must be prime");
  Ring F = Ring::F(static_cast<unsigned long>(m));
  LocalSystem ls = LocalSystem::trivial(base, F, 1);
  for (const auto& [e, a] : transports) ls.monodromy[e] = Matrix::from_rows(F, {{a}});
  CohomologyReport over_f = local_system_cohomology(ls);
  CohomologyReport out;
  out.lo = over_f.lo;
  for (const auto& g : over_f.H) {
    GroupSummary s;
    s.torsion.assign(g.rank, mpz_class(m));
    out.H.push_back(s);
  }
  return out;
}

Truncated truncate_below(const TwistedModule& m, int i) {
  auto d0 = reduced_part(m);
  if (!d0) throw InvalidInput("truncate_below: twisted module is not reduced");
  const Ring& R = m.alg->ring();
  const std::size_t n = m.v.size();
  std::vector<std::string> labels;
  std::vector<int> degs;
  std::vector<Vec> cols;
  for (std::size_t j = 0; j < n; ++j)
    if (m.v.degree(j) < i) {
      labels.push_back(m.v.label(j));
      degs.push_back(m.v.degree(j));
      cols.push_back(unit_vec(R, n, j));
    }
  auto idx = m.v.in_degree(i);
  if (!idx.empty()) {
    Matrix dk(R, n, idx.size());
    for (std::size_t j = 0; j < idx.size(); ++j)
      for (std::size_t r = 0; r < n; ++r) dk.set(r, j, d0->at(r, idx[j]));
    auto ker = kernel_basis(dk);
    for (std::size_t k = 0; k < ker.size(); ++k) {
      Vec w = zero_vec(R, n);
      for (std::size_t j = 0; j < idx.size(); ++j) w[idx[j]] = ker[k][j];
      // a kernel vector that is a basis vector keeps its label
      std::optional<std::size_t> single;
      std::size_t nz = 0;
      for (std::size_t r = 0; r < n; ++r)
        if (!w[r].is_zero()) {
          ++nz;
          single = r;
        }
      labels.push_back(nz == 1 && w[*single].is_one() ? m.v.label(*single) : "z" + std::to_string(i) + "_" + std::to_string(k));
      degs.push_back(i);
      cols.push_back(w);
    }
  }
  GradedModule vt(R, labels, degs);
  const std::size_t nt = vt.size();
  Matrix J = nt ? Matrix::from_columns(R, n, cols) : Matrix(R, n, 0);
  AMatrix inc = scalar_amatrix(m.alg, vt, m.v, J);
  AMatrix xj = m.x * inc;
  AMatrix xt(m.alg, vt, vt);
  const std::size_t na = m.alg->dim();
  for (std::size_t j = 0; j < nt; ++j)
    for (std::size_t t = 0; t < na; ++t) {
      Vec col = zero_vec(R, n);
      bool any = false;
      for (std::size_t r = 0; r < n; ++r) {
        col[r] = xj.at(r, j)[t];
        any = any || !col[r].is_zero();
      }
      if (!any) continue;
      auto sol = solve_linear(J, col);
      if (!sol) throw InvariantViolation("truncate_below: the twisting leaves the truncated submodule");
      for (std::size_t r = 0; r < nt; ++r) xt.at(r, j)[t] = sol->particular[r];
    }
  Truncated out{TwistedModule(m.alg, vt, xt), inc};
  if (!hom_d(out.module, m, inc).is_zero()) throw InvariantViolation("truncate_below: inclusion is not closed");
  return out;
}

TwistedModule truncate_above(const TwistedModule& m, int i) {
  Truncated t = truncate_below(m, i - 1);
  return cone(t.module, m, t.inclusion);
}

CohomologyReport fibre_cohomology(const ReducedTwistedModule& m) {
  if (m.module.v.size() == 0) return {};
  return cohomology(fibre_complex(m.module.v, m.d0));
}

}  // namespace infloc

namespace infloc {

TwistedModule random_reduced_module(AlgebraPtr alg, std::uint64_t seed, std::size_t max_rank) {
  if (max_rank == 0) throw InvalidInput("random_reduced_module: rank bound must be positive");
  const DgAlgebra& A = *alg;
  const Ring& R = A.ring();
  std::mt19937_64 rng(seed);
  auto uni = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
  const std::size_t n = static_cast<std::size_t>(uni(1, static_cast<int>(max_rank)));
  std::vector<std::string> labels;
  std::vector<int> degs;
  for (std::size_t i = 0; i < n; ++i) {
    labels.push_back("v" + std::to_string(i));
    degs.push_back(uni(-3, 3));
  }
  GradedModule v(R, labels, degs);

  // fibre differential in a standard form
  Matrix d0(R, n, n);
  std::vector<bool> used(n, false);
  for (std::size_t j = 0; j < n; ++j) {
    if (used[j] || uni(0, 1) == 0) continue;
    for (std::size_t i = 0; i < n; ++i)
      if (!used[i] && i != j && degs[i] == degs[j] + 1) {
        d0.set(i, j, R.one());
        used[i] = used[j] = true;
        break;
      }
  }
  AMatrix x = scalar_amatrix(alg, v, v, d0);

  // cocycle twist between unpaired vectors of equal degree
  auto a1 = A.basis().in_degree(1);
  if (!a1.empty()) {
    Matrix d1(R, A.dim(), a1.size());
    for (std::size_t j = 0; j < a1.size(); ++j) {
      Vec img = A.d(A.basis_vec(a1[j]));
      for (std::size_t r = 0; r < A.dim(); ++r) d1.set(r, j, img[r]);
    }
    auto z1 = kernel_basis(d1);
    if (!z1.empty())
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
          if (used[i] || used[j] || degs[i] != degs[j] || uni(0, 2) != 0) continue;
          AMatrix trial = x;
          for (const auto& z : z1) {
            Scalar c = R.make(uni(-2, 2));
            for (std::size_t k = 0; k < a1.size(); ++k) trial.at(i, j)[a1[k]] += c * z[k];
          }
          if (TwistedModule::unchecked(alg, v, trial).residual().is_zero()) x = trial;
        }
  }

  // unipotent gauge 1 + N
  AMatrix N(alg, v, v);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      int d = degs[j] - degs[i];
      if (d < 1 || uni(0, 1) == 0) continue;
      for (std::size_t t : A.basis().in_degree(d)) N.at(i, j)[t] = R.make(uni(-2, 2));
    }
  AMatrix one = AMatrix::identity(alg, v);
  AMatrix G = one + N;
  AMatrix Ginv = geometric_series(N, one, A.dim() ? A.basis().max_degree() : 0, "random_reduced_module");
  x = G * x * Ginv - G.d() * Ginv;

  // scalar change of basis within each degree
  Matrix g(R, n, n);
  for (;;) {
    g = Matrix(R, n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (degs[i] == degs[j]) g.set(i, j, R.make(uni(-2, 2) + (i == j ? 3 : 0)));
    if (inverse(g)) break;
  }
  AMatrix gs = scalar_amatrix(alg, v, v, g), gi = scalar_amatrix(alg, v, v, *inverse(g));
  x = gs * x * gi;
  return TwistedModule(alg, v, x);
}

}  // namespace infloc

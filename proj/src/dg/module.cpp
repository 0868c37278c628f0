#include "infloc/dg/module.hpp"

#include <algorithm>
#include <set>
#include <tuple>

#include "infloc/linalg/solve.hpp"

namespace infloc {

DgModule::DgModule(std::shared_ptr<const DgAlgebra> alg, GradedModule basis, std::vector<Sparse> diff,
                   std::vector<std::vector<Action>> act)
    : alg_(std::move(alg)), basis_(std::move(basis)), diff_(std::move(diff)), act_(std::move(act)) {
  const std::size_t n = basis_.size();
  if (!alg_) throw InvalidInput("module without an algebra");
  if (diff_.size() != n || act_.size() != n) throw InvalidInput("module structure does not match the basis");
  for (auto& d : diff_) {
    SparseAcc acc;
    for (const auto& [j, c] : d) {
      if (j >= n) throw InvalidInput("module differential refers to a missing basis element");
      acc.add(j, c + ring().zero());
    }
    d = acc.take();
  }
  for (auto& row : act_) {
    std::map<std::pair<std::size_t, std::size_t>, Scalar> m;
    for (const auto& a : row) {
      if (a.alg >= alg_->dim() || a.result >= n) throw InvalidInput("module action refers to a missing element");
      auto [it, fresh] = m.emplace(std::make_pair(a.alg, a.result), a.c + ring().zero());
      if (!fresh) it->second += a.c;
    }
    row.clear();
    for (const auto& [k, c] : m)
      if (!c.is_zero()) row.push_back({k.first, k.second, c});
  }
}

DgModule DgModule::regular(std::shared_ptr<const DgAlgebra> alg) {
  const DgAlgebra& a = *alg;
  std::vector<Sparse> diff;
  std::vector<std::vector<Action>> act(a.dim());
  for (std::size_t i = 0; i < a.dim(); ++i) {
    diff.push_back(a.diff(i));
    for (const auto& p : a.left(i)) act[i].push_back({p.other, p.result, p.c});
  }
  GradedModule b = a.basis();
  return DgModule(std::move(alg), b, diff, act);
}

Sparse DgModule::act(std::size_t i, std::size_t a) const {
  const auto& row = act_.at(i);
  auto it = std::lower_bound(row.begin(), row.end(), a, [](const Action& x, std::size_t v) { return x.alg < v; });
  Sparse out;
  for (; it != row.end() && it->alg == a; ++it) out.emplace_back(it->result, it->c);
  return out;
}

Vec DgModule::D(const Vec& m) const {
  Vec out = zero();
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (m[i].is_zero()) continue;
    for (const auto& [j, c] : diff_[i]) out[j] += m[i] * c;
  }
  return out;
}

Vec DgModule::act(const Vec& m, const Vec& a) const {
  Vec out = zero();
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (m[i].is_zero()) continue;
    for (const auto& x : act_[i])
      if (!a[x.alg].is_zero()) out[x.result] += m[i] * a[x.alg] * x.c;
  }
  return out;
}

std::size_t DgModule::position(std::size_t i) const {
  std::size_t p = 0;
  for (std::size_t j = 0; j < i; ++j)
    if (degree(j) == degree(i)) ++p;
  return p;
}

CochainComplex DgModule::complex() const {
  CochainComplex c;
  c.ring = ring();
  if (dim() == 0) {
    c.dims = {0};
    return c;
  }
  c.lo = basis_.min_degree();
  int hi = basis_.max_degree();
  std::vector<std::size_t> pos(dim());
  c.dims.assign(static_cast<std::size_t>(hi - c.lo + 1), 0);
  for (std::size_t i = 0; i < dim(); ++i) pos[i] = c.dims[static_cast<std::size_t>(degree(i) - c.lo)]++;
  for (int k = c.lo; k < hi; ++k) {
    std::size_t b = static_cast<std::size_t>(k - c.lo);
    c.d.emplace_back(ring(), c.dims[b + 1], c.dims[b]);
  }
  for (std::size_t i = 0; i < dim(); ++i)
    for (const auto& [j, x] : diff_[i]) {
      if (degree(j) != degree(i) + 1) throw InvariantViolation("module differential is not of degree +1");
      c.d[static_cast<std::size_t>(degree(i) - c.lo)].add(pos[j], pos[i], x);
    }
  return c;
}

DgaReport check_dg_module(const DgModule& m, std::size_t keep) {
  DgaReport rep;
  const DgAlgebra& A = m.algebra();
  const std::size_t n = m.dim();
  auto fail = [&](const char* axiom, std::vector<std::string> w, const Sparse& res) {
    ++rep.count;
    if (rep.violations.size() >= keep) return;
    Violation v{axiom, std::move(w), ""};
    for (const auto& [i, c] : res) v.residual += (v.residual.empty() ? "" : " + ") + c.str() + "*" + m.basis().label(i);
    rep.violations.push_back(std::move(v));
  };
  auto lab = [&](std::size_t i) { return m.basis().label(i); };
  auto alab = [&](std::size_t a) { return A.basis().label(a); };
  auto act_sparse = [&](const Sparse& x, std::size_t a) {
    SparseAcc acc;
    for (const auto& [i, c] : x) acc.add(m.act(i, a), c);
    return acc.take();
  };
  auto D_sparse = [&](const Sparse& x) {
    SparseAcc acc;
    for (const auto& [i, c] : x) acc.add(m.diff(i), c);
    return acc.take();
  };

  for (std::size_t i = 0; i < n; ++i) {
    for (const auto& [j, c] : m.diff(i))
      if (m.degree(j) != m.degree(i) + 1) fail("degree", {lab(i), lab(j)}, m.diff(i));
    for (const auto& x : m.act(i))
      if (m.degree(x.result) != m.degree(i) + A.degree(x.alg)) fail("degree", {lab(i), alab(x.alg)}, {{x.result, x.c}});
    Sparse dd = D_sparse(m.diff(i));
    if (!dd.empty()) fail("d^2", {lab(i)}, dd);
    SparseAcc u;
    u.add(i, -m.ring().one());
    for (const auto& [a, c] : A.unit()) u.add(m.act(i, a), c);
    if (!u.empty()) fail("unit", {lab(i)}, u.take());
  }

  std::vector<Sparse> rev_d(A.dim());
  for (std::size_t a = 0; a < A.dim(); ++a)
    for (const auto& [t, e] : A.diff(a)) rev_d[t].emplace_back(a, e);
  std::set<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i < n; ++i) {
    for (const auto& x : m.act(i)) {
      pairs.emplace(i, x.alg);
      for (const auto& [a, e] : rev_d[x.alg]) pairs.emplace(i, a);
    }
    for (const auto& [k, c] : m.diff(i))
      for (const auto& x : m.act(k)) pairs.emplace(i, x.alg);
  }
  for (const auto& [i, a] : pairs) {
    SparseAcc acc;
    acc.add(D_sparse(m.act(i, a)), m.ring().one());
    acc.add(act_sparse(m.diff(i), a), -m.ring().one());
    Scalar s = m.ring().make((m.degree(i) & 1) ? 1 : -1);
    for (const auto& [t, e] : A.diff(a)) acc.add(m.act(i, t), s * e);
    if (!acc.empty()) fail("leibniz", {lab(i), alab(a)}, acc.take());
  }

  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> rev_prod(A.dim());
  for (std::size_t a = 0; a < A.dim(); ++a)
    for (const auto& p : A.left(a)) rev_prod[p.result].emplace_back(a, p.other);
  std::set<std::tuple<std::size_t, std::size_t, std::size_t>> triples;
  for (std::size_t i = 0; i < n; ++i)
    for (const auto& x : m.act(i)) {
      for (const auto& y : m.act(x.result)) triples.emplace(i, x.alg, y.alg);
      for (const auto& [a, b] : rev_prod[x.alg]) triples.emplace(i, a, b);
    }
  for (const auto& [i, a, b] : triples) {
    SparseAcc acc;
    for (const auto& [k, c] : m.act(i, a)) acc.add(m.act(k, b), c);
    for (const auto& [t, c] : A.product(a, b)) acc.add(m.act(i, t), -c);
    if (!acc.empty()) fail("associativity", {lab(i), alab(a), alab(b)}, acc.take());
  }
  return rep;
}

CohomologyReport cohomology(const DgModule& m) { return cohomology(m.complex()); }

DgModule shift(const DgModule& m, int k) {
  std::vector<Sparse> diff;
  std::vector<std::vector<DgModule::Action>> act;
  Scalar s = m.ring().make((k & 1) ? -1 : 1);
  for (std::size_t i = 0; i < m.dim(); ++i) {
    Sparse d = m.diff(i);
    for (auto& t : d) t.second *= s;
    diff.push_back(d);
    act.push_back(m.act(i));
  }
  return DgModule(m.algebra_ptr(), m.basis().shifted(k), diff, act);
}

namespace {

Matrix structure_matrix(const DgModule& m) {
  Matrix d(m.ring(), m.dim(), m.dim());
  for (std::size_t i = 0; i < m.dim(); ++i)
    for (const auto& [j, c] : m.diff(i)) d.add(j, i, c);
  return d;
}

}  // namespace

HomComplex::HomComplex(const DgModule& m, const DgModule& n) : msize_(m.dim()), nsize_(n.dim()) {
  if (m.algebra_ptr() != n.algebra_ptr() && m.algebra().basis().labels() != n.algebra().basis().labels())
    throw InvalidInput("hom_complex: modules over different algebras");
  const Ring R = m.ring();
  mdeg_ = m.basis().degrees();
  ndeg_ = n.basis().degrees();
  std::vector<std::string> labels;
  std::vector<int> degs;
  if (msize_ && nsize_) {
    int lo = n.basis().min_degree() - m.basis().max_degree();
    int hi = n.basis().max_degree() - m.basis().min_degree();
    for (int p = lo; p <= hi; ++p) {
      // unknown F_{j i}: coefficient of n_j in f(m_i)
      std::map<std::pair<std::size_t, std::size_t>, std::size_t> col;
      for (std::size_t i = 0; i < msize_; ++i)
        for (std::size_t j = 0; j < nsize_; ++j)
          if (ndeg_[j] == mdeg_[i] + p) col.emplace(std::make_pair(j, i), col.size());
      if (col.empty()) continue;
      // f(m_i a) - f(m_i) a = 0, one equation per (i, a, n_k)
      std::map<std::tuple<std::size_t, std::size_t, std::size_t>, SparseAcc> eq;
      for (std::size_t i = 0; i < msize_; ++i) {
        for (const auto& x : m.act(i))
          for (std::size_t k = 0; k < nsize_; ++k) {
            auto it = col.find({k, x.result});
            if (it != col.end()) eq[{i, x.alg, k}].add(it->second, x.c);
          }
        for (std::size_t j = 0; j < nsize_; ++j) {
          auto it = col.find({j, i});
          if (it == col.end()) continue;
          for (const auto& y : n.act(j)) eq[{i, y.alg, y.result}].add(it->second, -y.c);
        }
      }
      Matrix E(R, std::max<std::size_t>(eq.size(), 1), col.size());
      std::size_t r = 0;
      for (const auto& [key, acc] : eq) {
        for (const auto& [c, v] : acc.map()) E.set(r, c, v);
        ++r;
      }
      for (const auto& v : kernel_basis(E)) {
        Matrix F(R, nsize_, msize_);
        for (const auto& [ji, c] : col)
          if (!v[c].is_zero()) F.set(ji.first, ji.second, v[c]);
        labels.push_back("f" + std::to_string(gens_.size()));
        degs.push_back(p);
        gens_.push_back(std::move(F));
      }
    }
  }
  auto ground = std::make_shared<const DgAlgebra>(DgAlgebra::ground(R));
  std::vector<std::vector<DgModule::Action>> act;
  for (std::size_t g = 0; g < gens_.size(); ++g) act.push_back({{0, g, R.one()}});
  // provisional module so that coordinates() knows the degrees
  complex_ = DgModule(ground, GradedModule(R, labels, degs), std::vector<Sparse>(gens_.size()), act);
  Matrix DM = structure_matrix(m), DN = structure_matrix(n);
  std::vector<Sparse> diff;
  for (std::size_t g = 0; g < gens_.size(); ++g) {
    Scalar s = R.make((degs[g] & 1) ? -1 : 1);
    Matrix dF = DN * gens_[g] - (gens_[g] * DM).scaled(s);
    diff.push_back(dF.is_zero() ? Sparse{} : to_sparse(coordinates(dF)));
  }
  complex_ = DgModule(ground, GradedModule(R, labels, degs), diff, act);
}

Matrix HomComplex::map(const Vec& coords) const {
  if (coords.size() != gens_.size()) throw InvalidInput("hom coordinates have the wrong length");
  Matrix F(complex_.ring(), nsize_, msize_);
  for (std::size_t g = 0; g < gens_.size(); ++g)
    if (!coords[g].is_zero()) F = F + gens_[g].scaled(coords[g]);
  return F;
}

Vec HomComplex::coordinates(const Matrix& f) const {
  const Ring R = complex_.ring();
  Vec out = zero_vec(R, gens_.size());
  if (f.is_zero()) return out;
  std::optional<int> p;
  f.for_each_nonzero([&](std::size_t j, std::size_t i, const Scalar&) {
    int q = ndeg_[j] - mdeg_[i];
    if (p && *p != q) throw InvalidInput("map is not homogeneous");
    p = q;
  });
  std::vector<std::size_t> g_in;
  for (std::size_t g = 0; g < gens_.size(); ++g)
    if (complex_.degree(g) == *p) g_in.push_back(g);
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> row;
  for (std::size_t i = 0; i < msize_; ++i)
    for (std::size_t j = 0; j < nsize_; ++j)
      if (ndeg_[j] == mdeg_[i] + *p) row.emplace(std::make_pair(j, i), row.size());
  Matrix K(R, row.size(), g_in.size());
  for (std::size_t c = 0; c < g_in.size(); ++c)
    gens_[g_in[c]].for_each_nonzero([&](std::size_t j, std::size_t i, const Scalar& v) { K.set(row.at({j, i}), c, v); });
  Vec b = zero_vec(R, row.size());
  f.for_each_nonzero([&](std::size_t j, std::size_t i, const Scalar& v) { b[row.at({j, i})] = v; });
  auto s = solve_linear(K, b);
  if (!s) throw InvalidInput("map is not a module homomorphism");
  for (std::size_t c = 0; c < g_in.size(); ++c) out[g_in[c]] = s->particular[c];
  return out;
}

Vec compose(const HomComplex& gp, const Vec& g, const HomComplex& fp, const Vec& f, const HomComplex& target) {
  return target.coordinates(gp.map(g) * fp.map(f));
}

DgModule free_hull(const DgModule& l) {
  const DgAlgebra& A = l.algebra();
  const std::size_t n = l.dim();
  const Ring R = l.ring();
  std::vector<std::string> labels = l.basis().labels();
  std::vector<int> degs = l.basis().degrees();
  for (std::size_t i = 0; i < n; ++i) {
    labels.push_back("d(" + l.basis().label(i) + ")");
    degs.push_back(l.degree(i) + 1);
  }
  std::vector<Sparse> diff(2 * n);
  for (std::size_t i = 0; i < n; ++i) diff[i] = {{n + i, R.one()}};
  std::vector<Sparse> rev_d(A.dim());
  for (std::size_t a = 0; a < A.dim(); ++a)
    for (const auto& [t, e] : A.diff(a)) rev_d[t].emplace_back(a, e);
  std::vector<std::vector<DgModule::Action>> act(2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    Scalar s = R.make((l.degree(i) & 1) ? 1 : -1);
    for (const auto& x : l.act(i)) {
      act[i].push_back(x);
      act[n + i].push_back({x.alg, n + x.result, x.c});
      // - (-1)^{|y|} y da, collected over every a whose differential hits x.alg
      for (const auto& [a, e] : rev_d[x.alg]) act[n + i].push_back({a, x.result, s * e * x.c});
    }
  }
  return DgModule(l.algebra_ptr(), GradedModule(R, labels, degs), diff, act);
}

}  // namespace infloc

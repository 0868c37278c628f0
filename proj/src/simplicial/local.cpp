#include "infloc/simplicial/local.hpp"

#include <random>

#include "infloc/linalg/solve.hpp"

namespace infloc {

LocalSystem LocalSystem::trivial(std::shared_ptr<const FiniteSimplicialSet> base, const Ring& ring, std::size_t rank) {
  LocalSystem ls;
  ls.base = std::move(base);
  ls.ring = ring;
  ls.rank = rank;
  return ls;
}

Matrix LocalSystem::at(const Simplex& edge) const {
  if (edge.dim != 1) throw InvalidInput("monodromy is defined on 1-simplices");
  if (!edge.degenerate()) {
    auto it = monodromy.find(edge.base);
    if (it != monodromy.end()) return it->second;
  }
  return Matrix::identity(ring, rank);
}

GradedModule LocalSystem::fibre() const {
  std::vector<std::string> l;
  for (std::size_t i = 0; i < rank; ++i) l.push_back("v" + std::to_string(i));
  return GradedModule(ring, l, std::vector<int>(rank, 0));
}

void LocalSystem::check() const {
  if (!base) throw InvalidInput("local system without a base");
  for (const auto& [e, m] : monodromy) {
    if (e >= base->count(1)) throw InvalidInput("monodromy on a missing edge");
    if (m.rows() != rank || m.cols() != rank) throw InvalidInput("monodromy matrix has the wrong size");
    if (!inverse(m)) throw InvalidInput("monodromy on edge " + base->label(1, e) + " is not invertible");
  }
  for (std::size_t k = 0; k < base->count(2); ++k) {
    Simplex t = nondegenerate(2, k);
    Matrix lhs = at(base->restrict(t, {0, 1})) * at(base->restrict(t, {1, 2}));
    if (lhs != at(base->restrict(t, {0, 2})))
      throw InvalidInput("functor condition fails on 2-simplex " + base->label(2, k));
  }
}

bool LocalSystem::operator==(const LocalSystem& o) const {
  if (rank != o.rank || !base || base->count(1) != o.base->count(1)) return false;
  for (std::size_t e = 0; e < base->count(1); ++e)
    if (at(nondegenerate(1, e)) != o.at(nondegenerate(1, e))) return false;
  return true;
}

LocalSystem random_local_system(std::shared_ptr<const FiniteSimplicialSet> base, const Ring& ring, std::size_t rank,
                                std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const FiniteSimplicialSet& X = *base;
  LocalSystem ls = LocalSystem::trivial(base, ring, rank);
  Ring Z = Ring::Z();
  std::uniform_int_distribution<long> small(-3, 3);
  auto random_unit = [&]() -> Scalar {
    if (ring.kind() == Ring::Kind::Integers) return ring.make(rng() % 2 ? 1 : -1);
    for (;;) {
      Scalar s = ring.make(small(rng));
      if (!s.is_zero()) return s;
    }
  };
  auto random_invertible = [&]() {
    if (ring.kind() != Ring::Kind::Integers) {
      for (;;) {
        Matrix g(ring, rank, rank);
        for (std::size_t i = 0; i < rank; ++i)
          for (std::size_t j = 0; j < rank; ++j) g.set(i, j, ring.make(small(rng)));
        if (inverse(g)) return g;
      }
    }
    Matrix g = Matrix::identity(ring, rank);
    for (int t = 0; t < 4 && rank > 1; ++t) {
      Matrix e = Matrix::identity(ring, rank);
      std::size_t i = rng() % rank, j = rng() % rank;
      if (i == j) continue;
      e.set(i, j, ring.make(small(rng)));
      g = g * e;
    }
    for (std::size_t i = 0; i < rank; ++i)
      if (rng() % 2) {
        Matrix e = Matrix::identity(ring, rank);
        e.set(i, i, ring.make(-1));
        g = g * e;
      }
    return g;
  };
  // integral 1-cocycles: kernel of C^1 -> C^2
  std::vector<Vec> cocycles;
  if (X.count(1)) {
    Matrix d1(Z, std::max<std::size_t>(X.count(2), 1), X.count(1));
    for (std::size_t k = 0; k < X.count(2); ++k)
      for (int i = 0; i <= 2; ++i) {
        Simplex f = X.face(nondegenerate(2, k), i);
        if (!f.degenerate()) d1.add(k, f.base, Z.make(i % 2 ? -1 : 1));
      }
    cocycles = kernel_basis(d1);
  }
  std::vector<Matrix> gauge;
  for (std::size_t v = 0; v < X.count(0); ++v) gauge.push_back(random_invertible());
  std::vector<Scalar> diag;
  for (std::size_t i = 0; i < rank; ++i) diag.push_back(random_unit());
  std::vector<std::vector<long>> c(rank, std::vector<long>(X.count(1), 0));
  for (std::size_t i = 0; i < rank; ++i)
    for (const auto& z : cocycles) {
      long m = small(rng);
      for (std::size_t e = 0; e < X.count(1); ++e) c[i][e] += m * z[e].value().get_num().get_si();
    }
  for (std::size_t e = 0; e < X.count(1); ++e) {
    Simplex s = nondegenerate(1, e);
    Matrix D(ring, rank, rank);
    for (std::size_t i = 0; i < rank; ++i) {
      Scalar x = ring.one(), b = c[i][e] >= 0 ? diag[i] : ring.inverse(diag[i]);
      for (long t = 0; t < std::labs(c[i][e]); ++t) x *= b;
      D.set(i, i, x);
    }
    std::size_t v0 = X.vertex(s, 0).base, v1 = X.vertex(s, 1).base;
    Matrix f = gauge[v0] * D * *inverse(gauge[v1]);
    if (f != Matrix::identity(ring, rank)) ls.monodromy[e] = f;
  }
  ls.check();
  return ls;
}

TwistedModule rep_to_mc(const LocalSystem& ls) {
  ls.check();
  auto a = std::make_shared<const DgAlgebra>(cochain_algebra(*ls.base, ls.ring));
  GradedModule v = ls.fibre();
  AMatrix x(a, v, v);
  Matrix id = Matrix::identity(ls.ring, ls.rank);
  for (std::size_t e = 0; e < ls.base->count(1); ++e) {
    Matrix f = ls.at(nondegenerate(1, e)) - id;
    std::size_t idx = cochain_index(*ls.base, 1, e);
    f.for_each_nonzero([&](std::size_t i, std::size_t j, const Scalar& c) { x.at(i, j)[idx] = c; });
  }
  return TwistedModule(a, v, x);
}

LocalSystem mc_to_rep(std::shared_ptr<const FiniteSimplicialSet> base, const TwistedModule& m) {
  LocalSystem ls = LocalSystem::trivial(base, m.alg->ring(), m.v.size());
  for (std::size_t i = 0; i < m.v.size(); ++i)
    if (m.v.degree(i) != 0) throw InvalidInput("local systems live in degree 0");
  const std::size_t lo = cochain_index(*base, 1, 0), hi = lo + base->count(1);
  if (m.alg->dim() != cochain_index(*base, base->dim(), base->count(base->dim())))
    throw InvalidInput("twisting is not over the cochains of this base");
  for (std::size_t i = 0; i < m.v.size(); ++i)
    for (std::size_t j = 0; j < m.v.size(); ++j)
      for (std::size_t k = 0; k < m.alg->dim(); ++k)
        if (!m.x.at(i, j)[k].is_zero() && (k < lo || k >= hi))
          throw InvalidInput("twisting is not supported on edges");
  if (!m.residual().is_zero()) throw InvalidInput("twisting is not Maurer-Cartan");
  for (std::size_t e = 0; e < base->count(1); ++e) {
    Matrix f = Matrix::identity(ls.ring, ls.rank);
    for (std::size_t i = 0; i < ls.rank; ++i)
      for (std::size_t j = 0; j < ls.rank; ++j) f.add(i, j, m.x.at(i, j)[lo + e]);
    if (!inverse(f)) throw InvalidInput("1 + x is not invertible on edge " + base->label(1, e));
    if (f != Matrix::identity(ls.ring, ls.rank)) ls.monodromy[e] = f;
  }
  ls.check();
  return ls;
}

DgModule twisted_cochains(const LocalSystem& ls) { return rep_to_mc(ls).module(); }

CohomologyReport local_system_cohomology(const LocalSystem& ls) { return cohomology(twisted_cochains(ls)); }

DgModule two_sided_twisted(const LocalSystem& left, const LocalSystem& right) {
  left.check();
  right.check();
  if (left.base != right.base && left.base->f_vector() != right.base->f_vector())
    throw InvalidInput("two-sided complex needs a common base");
  if (left.ring != right.ring) throw InvalidInput("two-sided complex needs a common ring");
  const FiniteSimplicialSet& X = *left.base;
  const Ring R = left.ring;
  const std::size_t w = left.rank, v = right.rank;
  auto index = [&](int n, std::size_t k, std::size_t a, std::size_t b) {
    return (cochain_index(X, n, k) * w + a) * v + b;
  };
  std::vector<std::string> labels;
  std::vector<int> degs;
  for (int n = 0; n <= X.dim(); ++n)
    for (std::size_t k = 0; k < X.count(n); ++k)
      for (std::size_t a = 0; a < w; ++a)
        for (std::size_t b = 0; b < v; ++b) {
          labels.push_back(X.label(n, k) + ":" + std::to_string(a) + "," + std::to_string(b));
          degs.push_back(n);
        }
  std::vector<Sparse> diff(labels.size());
  // D is assembled column by column: for each target σ, gather contributions of f(face)
  for (int n = 1; n <= X.dim(); ++n)
    for (std::size_t k = 0; k < X.count(n); ++k) {
      Simplex s = nondegenerate(n, k);
      Matrix Y = left.at(X.restrict(s, {0, 1}));
      Matrix Xm = right.at(X.restrict(s, {n - 1, n}));
      for (int i = 0; i <= n; ++i) {
        Simplex f = X.face(s, i);
        if (f.degenerate()) continue;
        Scalar sg = R.make(i % 2 ? -1 : 1);
        for (std::size_t a = 0; a < w; ++a)
          for (std::size_t b = 0; b < v; ++b) {
            std::size_t src = index(n - 1, f.base, a, b);
            // value of e_ab placed on f, seen on σ
            if (i == 0) {
              for (std::size_t r = 0; r < w; ++r)
                if (!Y.at(r, a).is_zero()) diff[src].emplace_back(index(n, k, r, b), Y.at(r, a));
            } else if (i == n) {
              for (std::size_t c = 0; c < v; ++c)
                if (!Xm.at(b, c).is_zero()) diff[src].emplace_back(index(n, k, a, c), sg * Xm.at(b, c));
            } else {
              diff[src].emplace_back(index(n, k, a, b), sg);
            }
          }
      }
    }
  auto ground = std::make_shared<const DgAlgebra>(DgAlgebra::ground(R));
  std::vector<std::vector<DgModule::Action>> act;
  for (std::size_t i = 0; i < labels.size(); ++i) act.push_back({{0, i, R.one()}});
  return DgModule(ground, GradedModule(R, labels, degs), diff, act);
}

}  // namespace infloc

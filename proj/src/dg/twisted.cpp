#include "infloc/dg/twisted.hpp"

#include <sstream>

namespace infloc {

AMatrix::AMatrix(AlgebraPtr alg, GradedModule src, GradedModule dst)
    : alg_(std::move(alg)), src_(std::move(src)), dst_(std::move(dst)) {
  if (!alg_) throw InvalidInput("AMatrix without an algebra");
  e_.assign(rows() * cols(), alg_->zero());
}

AMatrix AMatrix::identity(AlgebraPtr alg, const GradedModule& v) {
  AMatrix m(alg, v, v);
  for (std::size_t i = 0; i < v.size(); ++i) m.at(i, i) = alg->one();
  return m;
}

AMatrix AMatrix::operator*(const AMatrix& o) const {
  if (cols() != o.rows()) throw InvalidInput("AMatrix shapes do not compose");
  AMatrix out(alg_, o.src_, dst_);
  for (std::size_t i = 0; i < rows(); ++i)
    for (std::size_t k = 0; k < cols(); ++k) {
      const Vec& a = at(i, k);
      if (is_zero_vec(a)) continue;
      for (std::size_t j = 0; j < o.cols(); ++j) {
        const Vec& b = o.at(k, j);
        if (is_zero_vec(b)) continue;
        out.at(i, j) = out.at(i, j) + alg_->mul(a, b);
      }
    }
  return out;
}

AMatrix AMatrix::operator+(const AMatrix& o) const {
  if (rows() != o.rows() || cols() != o.cols()) throw InvalidInput("AMatrix shapes differ");
  AMatrix out = *this;
  for (std::size_t k = 0; k < e_.size(); ++k) out.e_[k] = out.e_[k] + o.e_[k];
  return out;
}

AMatrix AMatrix::operator-(const AMatrix& o) const { return *this + o.scaled(alg_->ring().make(-1)); }

AMatrix AMatrix::scaled(const Scalar& c) const {
  AMatrix out = *this;
  for (auto& v : out.e_) v = c * v;
  return out;
}

bool AMatrix::is_zero() const {
  for (const auto& v : e_)
    if (!is_zero_vec(v)) return false;
  return true;
}

bool AMatrix::operator==(const AMatrix& o) const {
  return rows() == o.rows() && cols() == o.cols() && (*this - o).is_zero();
}

AMatrix AMatrix::d() const {
  AMatrix out(alg_, src_, dst_);
  for (std::size_t i = 0; i < rows(); ++i) {
    Scalar s = alg_->ring().make((dst_.degree(i) & 1) ? -1 : 1);
    for (std::size_t j = 0; j < cols(); ++j)
      if (!is_zero_vec(at(i, j))) out.at(i, j) = s * alg_->d(at(i, j));
  }
  return out;
}

bool AMatrix::has_degree(int n) const {
  for (std::size_t i = 0; i < rows(); ++i)
    for (std::size_t j = 0; j < cols(); ++j)
      if (!alg_->is_homogeneous(at(i, j), n + src_.degree(j) - dst_.degree(i))) return false;
  return true;
}

std::optional<int> AMatrix::degree() const {
  std::optional<int> n;
  for (std::size_t i = 0; i < rows(); ++i)
    for (std::size_t j = 0; j < cols(); ++j) {
      auto d = alg_->degree_of(at(i, j));
      if (!d) continue;
      int m = *d - src_.degree(j) + dst_.degree(i);
      if (n && *n != m) throw InvalidInput("A-valued matrix is not homogeneous");
      n = m;
    }
  return n;
}

Vec AMatrix::apply(const Vec& m) const {
  const std::size_t na = alg_->dim();
  if (m.size() != cols() * na) throw InvalidInput("element has the wrong length");
  Vec out = zero_vec(alg_->ring(), rows() * na);
  for (std::size_t j = 0; j < cols(); ++j) {
    Vec a(m.begin() + static_cast<long>(j * na), m.begin() + static_cast<long>((j + 1) * na));
    if (is_zero_vec(a)) continue;
    for (std::size_t i = 0; i < rows(); ++i) {
      if (is_zero_vec(at(i, j))) continue;
      Vec p = alg_->mul(at(i, j), a);
      for (std::size_t k = 0; k < na; ++k)
        if (!p[k].is_zero()) out[i * na + k] += p[k];
    }
  }
  return out;
}

std::string AMatrix::str() const {
  std::ostringstream out;
  for (std::size_t i = 0; i < rows(); ++i) {
    out << "[";
    for (std::size_t j = 0; j < cols(); ++j) out << (j ? ", " : "") << alg_->format(at(i, j));
    out << "]\n";
  }
  return out.str();
}

DgAlgebra endomorphism_dga(const DgAlgebra& a, const GradedModule& v) {
  const std::size_t n = v.size(), na = a.dim();
  auto idx = [&](std::size_t i, std::size_t j, std::size_t k) { return (i * n + j) * na + k; };
  const Ring& R = a.ring();
  std::vector<std::string> labels;
  std::vector<int> degs;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < na; ++k) {
        labels.push_back("E(" + std::to_string(i) + "," + std::to_string(j) + ")|" + a.basis().label(k));
        degs.push_back(a.degree(k) + v.degree(i) - v.degree(j));
      }
  Sparse unit;
  for (std::size_t i = 0; i < n; ++i)
    for (const auto& [k, c] : a.unit()) unit.emplace_back(idx(i, i, k), c);
  std::vector<Sparse> diff(n * n * na);
  for (std::size_t i = 0; i < n; ++i) {
    Scalar s = R.make((v.degree(i) & 1) ? -1 : 1);
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < na; ++k)
        for (const auto& [l, c] : a.diff(k)) diff[idx(i, j, k)].emplace_back(idx(i, j, l), s * c);
  }
  std::vector<std::vector<DgAlgebra::Product>> left(n * n * na);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < na; ++k)
        for (const auto& p : a.left(k))
          for (std::size_t l = 0; l < n; ++l) left[idx(i, j, k)].push_back({idx(j, l, p.other), idx(i, l, p.result), p.c});
  std::optional<Truncation> tr;
  if (a.truncation()) {
    Truncation t{{}, a.truncation()->horizon, a.truncation()->raise};
    for (std::size_t ij = 0; ij < n * n; ++ij)
      for (std::size_t k = 0; k < na; ++k) t.weight.push_back(a.truncation()->weight[k]);
    tr = t;
  }
  return DgAlgebra(GradedModule(R, labels, degs), unit, diff, left, tr);
}

Vec to_end_element(const AMatrix& x) {
  if (x.rows() != x.cols()) throw InvalidInput("not an endomorphism");
  const std::size_t n = x.rows(), na = x.algebra().dim();
  Vec out = zero_vec(x.algebra().ring(), n * n * na);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < na; ++k) out[(i * n + j) * na + k] = x.at(i, j)[k];
  return out;
}

AMatrix from_end_element(AlgebraPtr alg, const GradedModule& v, const Vec& e) {
  const std::size_t n = v.size(), na = alg->dim();
  if (e.size() != n * n * na) throw InvalidInput("element of End(V)⊗A has the wrong length");
  AMatrix x(alg, v, v);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < na; ++k) x.at(i, j)[k] = e[(i * n + j) * na + k];
  return x;
}

TwistedModule TwistedModule::unchecked(AlgebraPtr alg, GradedModule v, AMatrix x) {
  TwistedModule m;
  m.alg = std::move(alg);
  m.v = std::move(v);
  m.x = std::move(x);
  if (m.x.rows() != m.v.size() || m.x.cols() != m.v.size()) throw InvalidInput("twisting matrix has the wrong shape");
  return m;
}

TwistedModule::TwistedModule(AlgebraPtr a, GradedModule vv, AMatrix xx) {
  *this = unchecked(std::move(a), std::move(vv), std::move(xx));
  if (!x.has_degree(1)) throw InvalidInput("twisting matrix is not of degree 1");
  if (!residual().is_zero()) throw InvalidInput("twisting matrix is not Maurer-Cartan: D^2 != 0");
}

TwistedModule TwistedModule::trivial(AlgebraPtr alg, GradedModule v) {
  AMatrix x(alg, v, v);
  return unchecked(alg, v, x);
}

AMatrix TwistedModule::residual() const { return x.d() + x * x; }

DgModule TwistedModule::module() const {
  const DgAlgebra& A = *alg;
  const std::size_t n = v.size(), na = A.dim();
  const Ring& R = A.ring();
  std::vector<std::string> labels;
  std::vector<int> degs;
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t k = 0; k < na; ++k) {
      labels.push_back(v.label(j) + "⊗" + A.basis().label(k));
      degs.push_back(v.degree(j) + A.degree(k));
    }
  std::vector<Sparse> diff(n * na);
  std::vector<std::vector<DgModule::Action>> act(n * na);
  for (std::size_t j = 0; j < n; ++j) {
    Scalar s = R.make((v.degree(j) & 1) ? -1 : 1);
    for (std::size_t k = 0; k < na; ++k) {
      SparseAcc acc;
      for (const auto& [l, c] : A.diff(k)) acc.add(j * na + l, s * c);
      for (std::size_t i = 0; i < n; ++i) {
        const Vec& xij = x.at(i, j);
        for (std::size_t t = 0; t < na; ++t) {
          if (xij[t].is_zero()) continue;
          for (const auto& [r, c] : A.product(t, k)) acc.add(i * na + r, xij[t] * c);
        }
      }
      diff[j * na + k] = acc.take();
      for (const auto& p : A.left(k)) act[j * na + k].push_back({p.other, j * na + p.result, p.c});
    }
  }
  return DgModule(alg, GradedModule(R, labels, degs), diff, act);
}

AMatrix hom_d(const TwistedModule& m, const TwistedModule& n, const AMatrix& f) {
  auto deg = f.degree();
  if (!deg) return f;
  Scalar s = m.alg->ring().make((*deg & 1) ? -1 : 1);
  return f.d() + n.x * f - (f * m.x).scaled(s);
}

CohomologyReport cohomology(const TwistedModule& m) { return cohomology(m.module()); }

TwistedModule shift(const TwistedModule& m, int k) {
  GradedModule v = m.v.shifted(k);
  AMatrix x(m.alg, v, v);
  Scalar s = m.alg->ring().make((k & 1) ? -1 : 1);
  for (std::size_t i = 0; i < v.size(); ++i)
    for (std::size_t j = 0; j < v.size(); ++j) x.at(i, j) = s * m.x.at(i, j);
  return TwistedModule::unchecked(m.alg, v, x);
}

TwistedModule cone(const TwistedModule& m, const TwistedModule& n, const AMatrix& f) {
  if (f.cols() != m.v.size() || f.rows() != n.v.size()) throw InvalidInput("cone: map has the wrong shape");
  if (!f.has_degree(0)) throw InvalidInput("cone: map is not of degree 0");
  if (!hom_d(m, n, f).is_zero()) throw InvalidInput("cone: map is not closed");
  GradedModule u = n.v.direct_sum(m.v.shifted(1));
  const std::size_t a = n.v.size(), b = m.v.size();
  AMatrix x(m.alg, u, u);
  Scalar minus = m.alg->ring().make(-1);
  for (std::size_t i = 0; i < a; ++i) {
    for (std::size_t j = 0; j < a; ++j) x.at(i, j) = n.x.at(i, j);
    for (std::size_t j = 0; j < b; ++j) x.at(i, a + j) = f.at(i, j);
  }
  for (std::size_t i = 0; i < b; ++i)
    for (std::size_t j = 0; j < b; ++j) x.at(a + i, a + j) = minus * m.x.at(i, j);
  return TwistedModule(m.alg, u, x);
}

}  // namespace infloc

#include "infloc/dg/algebra.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <tuple>

namespace infloc {

void SparseAcc::add(std::size_t i, const Scalar& c) {
  if (c.is_zero()) return;
  auto it = m_.find(i);
  if (it == m_.end()) {
    m_.emplace(i, c);
    return;
  }
  it->second += c;
  if (it->second.is_zero()) m_.erase(it);
}

void SparseAcc::add(const Sparse& s, const Scalar& c) {
  if (c.is_zero()) return;
  for (const auto& [i, x] : s) add(i, c * x);
}

Sparse SparseAcc::take() const { return Sparse(m_.begin(), m_.end()); }

Sparse to_sparse(const Vec& v) {
  Sparse s;
  for (std::size_t i = 0; i < v.size(); ++i)
    if (!v[i].is_zero()) s.emplace_back(i, v[i]);
  return s;
}

Vec to_dense(const Ring& ring, std::size_t n, const Sparse& s) {
  Vec v = zero_vec(ring, n);
  for (const auto& [i, c] : s) v.at(i) += c;
  return v;
}

GradedModule::GradedModule(Ring ring, std::vector<std::string> labels, std::vector<int> degrees)
    : ring_(ring), labels_(std::move(labels)), degrees_(std::move(degrees)) {
  if (labels_.size() != degrees_.size()) throw InvalidInput("labels and degrees differ in length");
  for (std::size_t i = 0; i < labels_.size(); ++i)
    if (!index_.emplace(labels_[i], i).second) throw InvalidInput("duplicate basis label '" + labels_[i] + "'");
}

std::optional<std::size_t> GradedModule::find(const std::string& label) const {
  auto it = index_.find(label);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::size_t GradedModule::index(const std::string& label) const {
  auto i = find(label);
  if (!i) throw InvalidInput("unknown basis label '" + label + "'");
  return *i;
}

std::vector<std::size_t> GradedModule::in_degree(int d) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < size(); ++i)
    if (degrees_[i] == d) out.push_back(i);
  return out;
}

int GradedModule::min_degree() const {
  return degrees_.empty() ? 0 : *std::min_element(degrees_.begin(), degrees_.end());
}

int GradedModule::max_degree() const {
  return degrees_.empty() ? 0 : *std::max_element(degrees_.begin(), degrees_.end());
}

GradedModule GradedModule::shifted(int k) const {
  auto d = degrees_;
  for (auto& x : d) x -= k;
  return GradedModule(ring_, labels_, d);
}

GradedModule GradedModule::direct_sum(const GradedModule& o) const {
  auto l = labels_;
  auto d = degrees_;
  for (std::size_t i = 0; i < o.size(); ++i) {
    std::string lab = o.label(i);
    while (index_.count(lab)) lab += "'";
    l.push_back(lab);
    d.push_back(o.degree(i));
  }
  return GradedModule(ring_, l, d);
}

namespace {

void normalize(std::vector<DgAlgebra::Product>& ps) {
  std::sort(ps.begin(), ps.end(), [](const auto& a, const auto& b) {
    return std::tie(a.other, a.result) < std::tie(b.other, b.result);
  });
  std::vector<DgAlgebra::Product> out;
  for (auto& p : ps) {
    if (!out.empty() && out.back().other == p.other && out.back().result == p.result)
      out.back().c += p.c;
    else
      out.push_back(p);
  }
  out.erase(std::remove_if(out.begin(), out.end(), [](const auto& p) { return p.c.is_zero(); }), out.end());
  ps = std::move(out);
}

Sparse normalize(const Sparse& s) {
  SparseAcc acc;
  for (const auto& [i, c] : s) acc.add(i, c);
  return acc.take();
}

}  // namespace

DgAlgebra::DgAlgebra(GradedModule basis, Sparse unit, std::vector<Sparse> diff,
                     std::vector<std::vector<Product>> left, std::optional<Truncation> trunc)
    : basis_(std::move(basis)), diff_(std::move(diff)), left_(std::move(left)), trunc_(std::move(trunc)) {
  std::size_t n = basis_.size();
  if (diff_.size() != n || left_.size() != n) throw InvalidInput("structure constants do not match the basis");
  unit_ = normalize(unit);
  const Ring& r = basis_.ring();
  auto fix = [&](Scalar& c) { c = c + r.zero(); };
  for (auto& [i, c] : unit_) {
    if (i >= n) throw InvalidInput("unit refers to a missing basis element");
    fix(c);
  }
  for (auto& d : diff_) {
    d = normalize(d);
    for (auto& [i, c] : d) {
      if (i >= n) throw InvalidInput("differential refers to a missing basis element");
      fix(c);
    }
  }
  right_.assign(n, {});
  for (std::size_t i = 0; i < n; ++i) {
    for (auto& p : left_[i]) {
      if (p.other >= n || p.result >= n) throw InvalidInput("product refers to a missing basis element");
      fix(p.c);
    }
    normalize(left_[i]);
    for (const auto& p : left_[i]) right_[p.other].push_back({i, p.result, p.c});
  }
  for (auto& r : right_) normalize(r);
  if (trunc_ && trunc_->weight.size() != n) throw InvalidInput("truncation weights do not match the basis");
}

DgAlgebra DgAlgebra::ground(const Ring& ring) {
  GradedModule b(ring, {"1"}, {0});
  return DgAlgebra(b, {{0, ring.one()}}, {Sparse{}}, {{{0, 0, ring.one()}}});
}

Sparse DgAlgebra::product(std::size_t i, std::size_t j) const {
  const auto& l = left_.at(i);
  auto it = std::lower_bound(l.begin(), l.end(), j, [](const Product& p, std::size_t v) { return p.other < v; });
  Sparse out;
  for (; it != l.end() && it->other == j; ++it) out.emplace_back(it->result, it->c);
  return out;
}

std::size_t DgAlgebra::product_count() const {
  std::size_t n = 0;
  for (const auto& l : left_) n += l.size();
  return n;
}

Vec DgAlgebra::basis_vec(std::size_t i) const {
  Vec v = zero();
  v.at(i) = ring().one();
  return v;
}

Vec DgAlgebra::element(const std::vector<std::pair<std::string, Scalar>>& terms) const {
  Vec v = zero();
  for (const auto& [l, c] : terms) v[basis_.index(l)] += c;
  return v;
}

Vec DgAlgebra::d(const Vec& a) const {
  if (a.size() != dim()) throw InvalidInput("element has the wrong length");
  Vec out = zero();
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].is_zero()) continue;
    for (const auto& [j, c] : diff_[i]) out[j] += a[i] * c;
  }
  return out;
}

Vec DgAlgebra::mul(const Vec& a, const Vec& b) const {
  if (a.size() != dim() || b.size() != dim()) throw InvalidInput("element has the wrong length");
  Vec out = zero();
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].is_zero()) continue;
    for (const auto& p : left_[i])
      if (!b[p.other].is_zero()) out[p.result] += a[i] * b[p.other] * p.c;
  }
  return out;
}

Vec DgAlgebra::commutator(const Vec& a, const Vec& b) const {
  auto da = degree_of(a), db = degree_of(b);
  Vec ab = mul(a, b), ba = mul(b, a);
  if (da && db && ((*da * *db) & 1)) return ab + ba;
  return ab - ba;
}

bool DgAlgebra::is_homogeneous(const Vec& a, int deg) const {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!a[i].is_zero() && degree(i) != deg) return false;
  return true;
}

std::optional<int> DgAlgebra::degree_of(const Vec& a) const {
  std::optional<int> d;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].is_zero()) continue;
    if (d && *d != degree(i)) throw InvalidInput("element is not homogeneous");
    d = degree(i);
  }
  return d;
}

std::string DgAlgebra::format(const Vec& a) const {
  std::ostringstream out;
  bool first = true;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].is_zero()) continue;
    if (!first) out << " + ";
    first = false;
    if (!a[i].is_one()) out << a[i].str() << "*";
    out << basis_.label(i);
  }
  if (first) out << "0";
  return out.str();
}

DgAlgebra DgAlgebra::with_diff(std::vector<Sparse> diff) const {
  return DgAlgebra(basis_, unit_, std::move(diff), left_, trunc_);
}

DgAlgebra DgAlgebra::relabeled(std::vector<std::string> labels) const {
  if (labels.size() != dim()) throw InvalidInput("relabeled: wrong number of labels");
  return DgAlgebra(GradedModule(ring(), std::move(labels), basis_.degrees()), unit_, diff_, left_, trunc_);
}

bool DgaReport::has(const std::string& axiom) const {
  for (const auto& v : violations)
    if (v.axiom == axiom) return true;
  return false;
}

std::string DgaReport::str() const {
  if (ok()) return "ok";
  std::ostringstream out;
  out << count << " violation(s)";
  for (const auto& v : violations) {
    out << "\n  " << v.axiom << " at (";
    for (std::size_t i = 0; i < v.witness.size(); ++i) out << (i ? ", " : "") << v.witness[i];
    out << ")";
    if (!v.residual.empty()) out << ": " << v.residual;
  }
  return out.str();
}

namespace {

struct Checker {
  const DgAlgebra& a;
  DgaReport& rep;
  std::size_t keep;

  void fail(const char* axiom, std::vector<std::size_t> idx, const Sparse& residual) {
    ++rep.count;
    if (rep.violations.size() >= keep) return;
    Violation v;
    v.axiom = axiom;
    for (auto i : idx) v.witness.push_back(a.basis().label(i));
    v.residual = a.format(to_dense(a.ring(), a.dim(), residual));
    rep.violations.push_back(std::move(v));
  }

  // x * b_j for sparse x
  Sparse mul_right(const Sparse& x, std::size_t j) const {
    SparseAcc acc;
    for (const auto& [i, c] : x) acc.add(a.product(i, j), c);
    return acc.take();
  }
  Sparse mul_left(std::size_t i, const Sparse& y) const {
    SparseAcc acc;
    for (const auto& [j, c] : y) acc.add(a.product(i, j), c);
    return acc.take();
  }
  Sparse diff(const Sparse& x) const {
    SparseAcc acc;
    for (const auto& [i, c] : x) acc.add(a.diff(i), c);
    return acc.take();
  }
};

}  // namespace

DgaReport check_dga(const DgAlgebra& a, std::size_t keep) {
  DgaReport rep;
  Checker ck{a, rep, keep};
  const std::size_t n = a.dim();
  const auto& tr = a.truncation();
  auto w = [&](std::size_t i) { return tr ? tr->weight[i] : 0; };
  const int h = tr ? tr->horizon : 0, r = tr ? tr->raise : 0;

  // degrees and weights
  for (const auto& [i, c] : a.unit())
    if (a.degree(i) != 0) ck.fail("degree", {i}, a.unit());
  for (std::size_t i = 0; i < n; ++i) {
    if (tr && w(i) > h) ck.fail("truncation", {i}, {});
    for (const auto& [j, c] : a.diff(i)) {
      if (a.degree(j) != a.degree(i) + 1) ck.fail("degree", {i, j}, a.diff(i));
      if (tr && w(j) > w(i) + r) ck.fail("truncation", {i, j}, a.diff(i));
    }
    for (const auto& p : a.left(i)) {
      if (a.degree(p.result) != a.degree(i) + a.degree(p.other)) ck.fail("degree", {i, p.other}, {{p.result, p.c}});
      if (tr && w(p.result) != w(i) + w(p.other)) ck.fail("truncation", {i, p.other}, {{p.result, p.c}});
    }
  }

  // d^2
  for (std::size_t i = 0; i < n; ++i) {
    if (tr && w(i) > h - r) continue;
    Sparse dd = ck.diff(a.diff(i));
    if (!dd.empty()) ck.fail("d^2", {i}, dd);
  }

  // unit laws
  for (std::size_t j = 0; j < n; ++j) {
    Sparse e{{j, a.ring().one()}};
    SparseAcc l, rr;
    l.add(e, -a.ring().one());
    rr.add(e, -a.ring().one());
    for (const auto& [u, c] : a.unit()) {
      l.add(a.product(u, j), c);
      rr.add(a.product(j, u), c);
    }
    if (!l.empty()) ck.fail("unit", {j}, l.take());
    if (!rr.empty()) ck.fail("unit", {j}, rr.take());
  }

  // Leibniz on every pair where some term can be nonzero
  std::set<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i < n; ++i) {
    for (const auto& p : a.left(i)) pairs.emplace(i, p.other);
    for (const auto& [k, c] : a.diff(i)) {
      for (const auto& p : a.left(k)) pairs.emplace(i, p.other);
      for (const auto& p : a.right(k)) pairs.emplace(p.other, i);
    }
  }
  for (const auto& [i, j] : pairs) {
    if (tr && w(i) + w(j) > h) continue;
    SparseAcc acc;
    for (const auto& [k, c] : a.product(i, j)) acc.add(a.diff(k), c);
    Scalar sign = a.ring().make((a.degree(i) & 1) ? 1 : -1);
    acc.add(ck.mul_right(a.diff(i), j), -a.ring().one());
    acc.add(ck.mul_left(i, a.diff(j)), sign);
    if (!acc.empty()) ck.fail("leibniz", {i, j}, acc.take());
  }

  // associativity on triples reachable through a nonzero product on either side
  std::set<std::tuple<std::size_t, std::size_t, std::size_t>> triples;
  for (std::size_t i = 0; i < n; ++i)
    for (const auto& p : a.left(i)) {
      for (const auto& q : a.left(p.result)) triples.emplace(i, p.other, q.other);
      for (const auto& q : a.right(p.result)) triples.emplace(q.other, i, p.other);
    }
  for (const auto& [i, j, k] : triples) {
    SparseAcc acc;
    for (const auto& [m, c] : a.product(i, j)) acc.add(a.product(m, k), c);
    for (const auto& [m, c] : a.product(j, k)) acc.add(a.product(i, m), -c);
    if (!acc.empty()) ck.fail("associativity", {i, j, k}, acc.take());
  }
  return rep;
}

DgaReport check_dga_map(const DgAlgebra& src, const DgAlgebra& dst, const Matrix& f, std::size_t keep) {
  if (f.rows() != dst.dim() || f.cols() != src.dim()) throw InvalidInput("algebra map has the wrong shape");
  DgaReport rep;
  auto fail = [&](const char* axiom, std::vector<std::string> w, const Sparse& res) {
    ++rep.count;
    if (rep.violations.size() < keep)
      rep.violations.push_back({axiom, std::move(w), dst.format(to_dense(dst.ring(), dst.dim(), res))});
  };
  const std::size_t n = src.dim();
  std::vector<Sparse> img(n);
  f.for_each_nonzero([&](std::size_t i, std::size_t j, const Scalar& c) { img[j].emplace_back(i, c); });
  auto apply = [&](const Sparse& x) {
    SparseAcc acc;
    for (const auto& [j, c] : x) acc.add(img[j], c);
    return acc.take();
  };
  auto times = [&](const Sparse& x, const Sparse& y) {
    SparseAcc acc;
    for (const auto& [i, a] : x)
      for (const auto& [j, b] : y) acc.add(dst.product(i, j), a * b);
    return acc;
  };
  SparseAcc u;
  u.add(apply(src.unit()), dst.ring().one());
  u.add(dst.unit(), -dst.ring().one());
  if (!u.empty()) fail("unit", {}, u.take());
  for (std::size_t i = 0; i < n; ++i) {
    SparseAcc acc;
    acc.add(apply(src.diff(i)), dst.ring().one());
    for (const auto& [k, c] : img[i]) acc.add(dst.diff(k), -c);
    if (!acc.empty()) fail("d", {src.basis().label(i)}, acc.take());
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      SparseAcc acc = times(img[i], img[j]);
      acc.add(apply(src.product(i, j)), -dst.ring().one());
      if (!acc.empty()) fail("product", {src.basis().label(i), src.basis().label(j)}, acc.take());
    }
  return rep;
}

DgAlgebra tensor_dga(const DgAlgebra& a, const DgAlgebra& b) {
  if (a.ring() != b.ring()) throw InvalidInput("tensor_dga: algebras over different rings");
  if (a.truncation() && b.truncation()) throw InvalidInput("tensor_dga: both factors are truncated");
  const std::size_t na = a.dim(), nb = b.dim();
  auto idx = [nb](std::size_t i, std::size_t k) { return i * nb + k; };
  std::vector<std::string> labels;
  std::vector<int> degs;
  for (std::size_t i = 0; i < na; ++i)
    for (std::size_t k = 0; k < nb; ++k) {
      labels.push_back(a.basis().label(i) + "|" + b.basis().label(k));
      degs.push_back(a.degree(i) + b.degree(k));
    }
  const Ring& R = a.ring();
  Sparse unit;
  for (const auto& [i, c] : a.unit())
    for (const auto& [k, e] : b.unit()) unit.emplace_back(idx(i, k), c * e);
  std::vector<Sparse> diff(na * nb);
  for (std::size_t i = 0; i < na; ++i)
    for (std::size_t k = 0; k < nb; ++k) {
      SparseAcc acc;
      for (const auto& [j, c] : a.diff(i)) acc.add(idx(j, k), c);
      Scalar s = R.make((a.degree(i) & 1) ? -1 : 1);
      for (const auto& [l, c] : b.diff(k)) acc.add(idx(i, l), s * c);
      diff[idx(i, k)] = acc.take();
    }
  std::vector<std::vector<DgAlgebra::Product>> left(na * nb);
  for (std::size_t i = 0; i < na; ++i)
    for (const auto& p : a.left(i))
      for (std::size_t k = 0; k < nb; ++k)
        for (const auto& q : b.left(k)) {
          // (a_i ⊗ b_k)(a_other ⊗ b_q.other)
          Scalar s = R.make(((b.degree(k) * a.degree(p.other)) & 1) ? -1 : 1);
          left[idx(i, k)].push_back({idx(p.other, q.other), idx(p.result, q.result), s * p.c * q.c});
        }
  std::optional<Truncation> tr;
  const auto& ta = a.truncation() ? a.truncation() : b.truncation();
  if (ta) {
    Truncation t{{}, ta->horizon, ta->raise};
    for (std::size_t i = 0; i < na; ++i)
      for (std::size_t k = 0; k < nb; ++k)
        t.weight.push_back(a.truncation() ? a.truncation()->weight[i] : b.truncation()->weight[k]);
    tr = t;
  }
  return DgAlgebra(GradedModule(R, labels, degs), unit, diff, left, tr);
}

DgAlgebra free_algebra(const Ring& ring, const std::vector<FreeGenerator>& gens, int max_len) {
  if (max_len < 0) throw InvalidInput("free_algebra: negative word length");
  bool short_labels = true;
  for (const auto& g : gens) short_labels = short_labels && g.label.size() == 1;
  std::vector<std::vector<std::size_t>> words{{}};
  std::map<std::vector<std::size_t>, std::size_t> index{{{}, 0}};
  for (std::size_t start = 0; start < words.size(); ++start) {
    if (static_cast<int>(words[start].size()) >= max_len) continue;
    for (std::size_t g = 0; g < gens.size(); ++g) {
      auto w = words[start];
      w.push_back(g);
      index.emplace(w, words.size());
      words.push_back(w);
    }
  }
  std::vector<std::string> labels;
  std::vector<int> degs;
  Truncation tr;
  tr.horizon = max_len;
  for (const auto& w : words) {
    std::string l;
    int d = 0;
    for (std::size_t k = 0; k < w.size(); ++k) {
      if (k && !short_labels) l += "*";
      l += gens[w[k]].label;
      d += gens[w[k]].degree;
    }
    labels.push_back(w.empty() ? "1" : l);
    degs.push_back(d);
    tr.weight.push_back(static_cast<int>(w.size()));
  }
  for (const auto& g : gens)
    for (const auto& [c, w] : g.diff) {
      for (auto x : w)
        if (x >= gens.size()) throw InvalidInput("free_algebra: differential uses an unknown generator");
      tr.raise = std::max(tr.raise, static_cast<int>(w.size()) - 1);
    }
  const std::size_t n = words.size();
  std::vector<std::vector<DgAlgebra::Product>> left(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (static_cast<int>(words[i].size() + words[j].size()) > max_len) continue;
      auto w = words[i];
      w.insert(w.end(), words[j].begin(), words[j].end());
      left[i].push_back({j, index.at(w), ring.one()});
    }
  std::vector<Sparse> diff(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto& w = words[i];
    SparseAcc acc;
    int before = 0;
    for (std::size_t k = 0; k < w.size(); ++k) {
      Scalar s = ring.make((before & 1) ? -1 : 1);
      for (const auto& [c, v] : gens[w[k]].diff) {
        std::vector<std::size_t> t(w.begin(), w.begin() + static_cast<long>(k));
        t.insert(t.end(), v.begin(), v.end());
        t.insert(t.end(), w.begin() + static_cast<long>(k) + 1, w.end());
        if (static_cast<int>(t.size()) > max_len) continue;
        acc.add(index.at(t), s * c);
      }
      before += gens[w[k]].degree;
    }
    diff[i] = acc.take();
  }
  return DgAlgebra(GradedModule(ring, labels, degs), {{0, ring.one()}}, diff, left, tr);
}

}  // namespace infloc

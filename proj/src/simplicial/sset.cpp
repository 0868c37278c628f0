#include "infloc/simplicial/sset.hpp"

#include <algorithm>
#include <functional>
#include <set>

namespace infloc {

Simplex nondegenerate(int n, std::size_t k) {
  Simplex s{n, n, k, {}};
  for (int i = 0; i <= n; ++i) s.surj.push_back(i);
  return s;
}

FiniteSimplicialSet::FiniteSimplicialSet(std::vector<std::vector<std::string>> labels,
                                         std::vector<std::vector<std::vector<Simplex>>> faces)
    : labels_(std::move(labels)), faces_(std::move(faces)) {
  if (labels_.size() != faces_.size()) throw InvalidInput("simplicial set: labels and faces differ in length");
  index_.resize(labels_.size());
  for (std::size_t n = 0; n < labels_.size(); ++n) {
    if (faces_[n].size() != labels_[n].size()) throw InvalidInput("simplicial set: missing faces");
    for (std::size_t k = 0; k < labels_[n].size(); ++k) {
      if (!index_[n].emplace(labels_[n][k], k).second)
        throw InvalidInput("simplicial set: duplicate label '" + labels_[n][k] + "'");
      const auto& f = faces_[n][k];
      if (n == 0 ? !f.empty() : f.size() != n + 1) throw InvalidInput("simplicial set: wrong number of faces");
      for (const auto& s : f) {
        if (s.dim != static_cast<int>(n) - 1 || s.base_dim > s.dim || s.base_dim < 0 ||
            s.base >= count(s.base_dim) || s.surj.size() != static_cast<std::size_t>(s.dim + 1))
          throw InvalidInput("simplicial set: malformed face of '" + labels_[n][k] + "'");
      }
    }
  }
  for (int n = 2; n <= dim(); ++n)
    for (std::size_t k = 0; k < count(n); ++k) {
      Simplex x = nondegenerate(n, k);
      for (int j = 1; j <= n; ++j)
        for (int i = 0; i < j; ++i)
          if (!(face(face(x, j), i) == face(face(x, i), j - 1)))
            throw InvariantViolation("simplicial identity fails on '" + labels_[n][k] + "' at (" + std::to_string(i) +
                                     ", " + std::to_string(j) + ")");
    }
}

std::size_t FiniteSimplicialSet::count(int n) const {
  if (n < 0 || n > dim()) return 0;
  return labels_[static_cast<std::size_t>(n)].size();
}

std::string FiniteSimplicialSet::label(const Simplex& s) const {
  std::string l = label(s.base_dim, s.base);
  if (!s.degenerate()) return l;
  l += "[";
  for (std::size_t i = 0; i < s.surj.size(); ++i) l += (i && s.base_dim >= 10 ? "," : "") + std::to_string(s.surj[i]);
  return l + "]";
}

std::optional<std::size_t> FiniteSimplicialSet::find(int n, const std::string& label) const {
  if (n < 0 || n > dim()) return std::nullopt;
  auto it = index_[static_cast<std::size_t>(n)].find(label);
  if (it == index_[static_cast<std::size_t>(n)].end()) return std::nullopt;
  return it->second;
}

std::vector<std::size_t> FiniteSimplicialSet::f_vector() const {
  std::vector<std::size_t> f;
  for (const auto& l : labels_) f.push_back(l.size());
  return f;
}

long FiniteSimplicialSet::euler_characteristic() const {
  long e = 0;
  for (int n = 0; n <= dim(); ++n) e += (n % 2 ? -1 : 1) * static_cast<long>(count(n));
  return e;
}

Simplex FiniteSimplicialSet::face_of_nondegenerate(int n, std::size_t k, int i) const {
  return faces_.at(static_cast<std::size_t>(n)).at(k).at(static_cast<std::size_t>(i));
}

Simplex FiniteSimplicialSet::face(const Simplex& s, int i) const {
  if (s.dim == 0) throw InvalidInput("vertices have no faces");
  if (!s.degenerate()) return face_of_nondegenerate(s.dim, s.base, i);
  std::vector<int> theta;
  for (int k = 0; k <= s.dim; ++k)
    if (k != i) theta.push_back(k);
  return restrict(s, theta);
}

Simplex FiniteSimplicialSet::restrict(const Simplex& s, const std::vector<int>& theta) const {
  std::vector<int> c;
  for (int t : theta) c.push_back(s.surj.at(static_cast<std::size_t>(t)));
  std::vector<int> image(c.begin(), c.end());
  image.erase(std::unique(image.begin(), image.end()), image.end());
  Simplex y = nondegenerate(s.base_dim, s.base);
  for (int j = s.base_dim; j >= 0; --j)
    if (!std::binary_search(image.begin(), image.end(), j)) y = face(y, j);
  Simplex out{static_cast<int>(theta.size()) - 1, y.base_dim, y.base, {}};
  for (int v : c) {
    int r = static_cast<int>(std::lower_bound(image.begin(), image.end(), v) - image.begin());
    out.surj.push_back(y.surj[static_cast<std::size_t>(r)]);
  }
  return out;
}

Simplex FiniteSimplicialSet::front(const Simplex& s, int p) const {
  std::vector<int> t;
  for (int i = 0; i <= p; ++i) t.push_back(i);
  return restrict(s, t);
}

Simplex FiniteSimplicialSet::back(const Simplex& s, int q) const {
  std::vector<int> t;
  for (int i = s.dim - q; i <= s.dim; ++i) t.push_back(i);
  return restrict(s, t);
}

Simplex FiniteSimplicialSet::vertex(const Simplex& s, int v) const { return restrict(s, {v}); }

FiniteSimplicialSet from_ordered_complex(const std::vector<std::string>& vertices,
                                         const std::vector<std::vector<std::size_t>>& simplices) {
  std::set<std::vector<std::size_t>> all;
  for (const auto& s : simplices) {
    if (s.empty()) throw InvalidInput("empty simplex");
    for (std::size_t i = 0; i < s.size(); ++i) {
      if (s[i] >= vertices.size()) throw InvalidInput("simplex uses an unknown vertex");
      if (i && s[i] <= s[i - 1]) throw InvalidInput("simplex vertices must be strictly increasing");
    }
    // every nonempty subset
    std::size_t n = s.size();
    if (n > 20) throw InvalidInput("simplex too large");
    for (unsigned long mask = 1; mask < (1UL << n); ++mask) {
      std::vector<std::size_t> t;
      for (std::size_t i = 0; i < n; ++i)
        if (mask & (1UL << i)) t.push_back(s[i]);
      all.insert(t);
    }
  }
  for (std::size_t v = 0; v < vertices.size(); ++v) all.insert({v});
  std::size_t top = 0;
  for (const auto& s : all) top = std::max(top, s.size());
  std::vector<std::vector<std::vector<std::size_t>>> by_dim(top);
  for (const auto& s : all) by_dim[s.size() - 1].push_back(s);
  bool short_labels = true;
  for (const auto& v : vertices) short_labels = short_labels && v.size() == 1;
  std::vector<std::vector<std::string>> labels(top);
  std::vector<std::vector<std::vector<Simplex>>> faces(top);
  std::vector<std::map<std::vector<std::size_t>, std::size_t>> idx(top);
  for (std::size_t n = 0; n < top; ++n)
    for (const auto& s : by_dim[n]) {
      idx[n].emplace(s, labels[n].size());
      std::string l;
      for (std::size_t i = 0; i < s.size(); ++i) l += (i && !short_labels ? "," : "") + vertices[s[i]];
      labels[n].push_back(l);
      std::vector<Simplex> f;
      if (n > 0)
        for (std::size_t i = 0; i <= n; ++i) {
          auto t = s;
          t.erase(t.begin() + static_cast<long>(i));
          f.push_back(nondegenerate(static_cast<int>(n) - 1, idx[n - 1].at(t)));
        }
      faces[n].push_back(f);
    }
  return FiniteSimplicialSet(labels, faces);
}

namespace {

std::vector<std::string> digit_labels(std::size_t n) {
  std::vector<std::string> v;
  for (std::size_t i = 0; i < n; ++i) v.push_back(std::to_string(i));
  return v;
}

}  // namespace

FiniteSimplicialSet standard_simplex(int n) {
  std::vector<std::size_t> s;
  for (int i = 0; i <= n; ++i) s.push_back(static_cast<std::size_t>(i));
  return from_ordered_complex(digit_labels(s.size()), {s});
}

FiniteSimplicialSet simplex_boundary(int n) {
  std::vector<std::vector<std::size_t>> ss;
  for (int skip = 0; skip <= n; ++skip) {
    std::vector<std::size_t> s;
    for (int i = 0; i <= n; ++i)
      if (i != skip) s.push_back(static_cast<std::size_t>(i));
    ss.push_back(s);
  }
  return from_ordered_complex(digit_labels(static_cast<std::size_t>(n + 1)), ss);
}

FiniteSimplicialSet circle(int vertices) {
  if (vertices < 3) throw InvalidInput("a simplicial circle needs at least 3 vertices");
  std::vector<std::vector<std::size_t>> ss;
  for (int i = 0; i + 1 < vertices; ++i) ss.push_back({static_cast<std::size_t>(i), static_cast<std::size_t>(i + 1)});
  ss.push_back({0, static_cast<std::size_t>(vertices - 1)});
  return from_ordered_complex(digit_labels(static_cast<std::size_t>(vertices)), ss);
}

FiniteSimplicialSet torus7() {
  std::vector<std::vector<std::size_t>> ss;
  for (std::size_t i = 0; i < 7; ++i)
    for (std::size_t off : {1u, 2u}) {
      std::vector<std::size_t> t{i, (i + off) % 7, (i + 3) % 7};
      std::sort(t.begin(), t.end());
      ss.push_back(t);
    }
  return from_ordered_complex(digit_labels(7), ss);
}

FiniteCategory FiniteCategory::indiscrete(const std::vector<std::string>& objects) {
  FiniteCategory c;
  c.objects = objects;
  const std::size_t n = objects.size();
  std::vector<std::vector<std::size_t>> arrow(n, std::vector<std::size_t>(n));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      arrow[a][b] = c.arrows.size();
      c.arrows.push_back({a == b ? "id" + objects[a] : objects[a] + "->" + objects[b], a, b});
    }
  for (std::size_t a = 0; a < n; ++a) c.identity.push_back(arrow[a][a]);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t d = 0; d < n; ++d) c.comp[{arrow[a][b], arrow[b][d]}] = arrow[a][d];
  return c;
}

FiniteCategory FiniteCategory::single_arrow() {
  FiniteCategory c;
  c.objects = {"0", "1"};
  c.arrows = {{"id0", 0, 0}, {"id1", 1, 1}, {"0->1", 0, 1}};
  c.identity = {0, 1};
  c.comp[{0, 0}] = 0;
  c.comp[{1, 1}] = 1;
  c.comp[{0, 2}] = 2;
  c.comp[{2, 1}] = 2;
  return c;
}

FiniteCategory FiniteCategory::trivial() { return indiscrete({"0"}); }

std::size_t FiniteCategory::compose(std::size_t f, std::size_t g) const {
  auto it = comp.find({f, g});
  if (it == comp.end())
    throw InvalidInput("composition of '" + arrows.at(f).label + "' and '" + arrows.at(g).label +
                       "' is not in the table");
  return it->second;
}

FiniteSimplicialSet nerve(const FiniteCategory& c, int cap) {
  if (cap < 0) throw InvalidInput("nerve: negative dimension cap");
  std::set<std::size_t> ids(c.identity.begin(), c.identity.end());
  if (ids.size() != c.objects.size()) throw InvalidInput("nerve: every object needs an identity");
  bool by_objects = true;
  std::set<std::pair<std::size_t, std::size_t>> seen;
  for (const auto& a : c.arrows) by_objects = by_objects && seen.emplace(a.src, a.dst).second;
  bool short_labels = true;
  for (const auto& o : c.objects) short_labels = short_labels && o.size() == 1;

  // simplices: tuples of non-identity arrows (vertices: object index encoded as {obj})
  std::vector<std::vector<std::vector<std::size_t>>> cells(static_cast<std::size_t>(cap) + 1);
  for (std::size_t o = 0; o < c.objects.size(); ++o) cells[0].push_back({o});
  for (int n = 1; n <= cap; ++n)
    for (std::size_t a = 0; a < c.arrows.size(); ++a) {
      if (ids.count(a)) continue;
      if (n == 1) {
        cells[1].push_back({a});
        continue;
      }
      for (const auto& t : cells[static_cast<std::size_t>(n - 1)])
        if (c.arrows[t.back()].dst == c.arrows[a].src) {
          auto u = t;
          u.push_back(a);
          cells[static_cast<std::size_t>(n)].push_back(u);
        }
    }
  std::vector<std::map<std::vector<std::size_t>, std::size_t>> idx(cells.size());
  for (std::size_t n = 0; n < cells.size(); ++n) {
    std::sort(cells[n].begin(), cells[n].end());
    for (std::size_t k = 0; k < cells[n].size(); ++k) idx[n][cells[n][k]] = k;
  }
  auto label = [&](std::size_t n, const std::vector<std::size_t>& t) {
    if (n == 0) return c.objects[t[0]];
    std::string l;
    if (by_objects) {
      l = c.objects[c.arrows[t[0]].src];
      for (auto a : t) l += (short_labels ? "" : ",") + c.objects[c.arrows[a].dst];
    } else {
      for (std::size_t i = 0; i < t.size(); ++i) l += (i ? "|" : "") + c.arrows[t[i]].label;
    }
    return l;
  };
  // general simplex from a tuple that may contain identities
  auto general = [&](const std::vector<std::size_t>& t, std::size_t first_obj) {
    std::vector<std::size_t> keep;
    Simplex s;
    s.dim = static_cast<int>(t.size());
    s.surj.push_back(0);
    for (auto a : t) {
      bool id = ids.count(a) > 0;
      if (!id) keep.push_back(a);
      s.surj.push_back(s.surj.back() + (id ? 0 : 1));
    }
    s.base_dim = static_cast<int>(keep.size());
    s.base = keep.empty() ? idx[0].at({t.empty() ? first_obj : c.arrows[t[0]].src}) : idx[keep.size()].at(keep);
    return s;
  };
  std::vector<std::vector<std::string>> labels(cells.size());
  std::vector<std::vector<std::vector<Simplex>>> faces(cells.size());
  for (std::size_t n = 0; n < cells.size(); ++n)
    for (const auto& t : cells[n]) {
      labels[n].push_back(label(n, t));
      std::vector<Simplex> f;
      if (n == 1) {
        f.push_back(nondegenerate(0, idx[0].at({c.arrows[t[0]].dst})));
        f.push_back(nondegenerate(0, idx[0].at({c.arrows[t[0]].src})));
      } else if (n > 1) {
        for (std::size_t i = 0; i <= n; ++i) {
          std::vector<std::size_t> u;
          if (i == 0) {
            u.assign(t.begin() + 1, t.end());
          } else if (i == n) {
            u.assign(t.begin(), t.end() - 1);
          } else {
            u.assign(t.begin(), t.begin() + static_cast<long>(i) - 1);
            u.push_back(c.compose(t[i - 1], t[i]));
            u.insert(u.end(), t.begin() + static_cast<long>(i) + 1, t.end());
          }
          f.push_back(general(u, 0));
        }
      }
      faces[n].push_back(f);
    }
  return FiniteSimplicialSet(labels, faces);
}

SimplicialProduct product(const FiniteSimplicialSet& x, const FiniteSimplicialSet& y, int cap) {
  if (cap < 0) cap = x.dim() + y.dim();
  SimplicialProduct out;
  out.cells.resize(static_cast<std::size_t>(cap) + 1);
  using Key = std::tuple<int, std::size_t, int, std::size_t, std::vector<int>, std::vector<int>>;
  std::vector<std::map<Key, std::size_t>> idx(out.cells.size());
  for (int n = 0; n <= cap; ++n)
    for (int p = 0; p <= std::min(n, x.dim()); ++p)
      for (int q = 0; q <= std::min(n, y.dim()); ++q) {
        if (p + q < n || p > n || q > n) continue;
        // staircase paths (0,0) -> (p,q) with n steps
        std::vector<std::pair<std::vector<int>, std::vector<int>>> paths;
        std::function<void(std::vector<int>&, std::vector<int>&)> walk = [&](std::vector<int>& a, std::vector<int>& b) {
          int steps = static_cast<int>(a.size()) - 1;
          if (steps == n) {
            if (a.back() == p && b.back() == q) paths.emplace_back(a, b);
            return;
          }
          for (auto [da, db] : {std::pair{1, 0}, std::pair{0, 1}, std::pair{1, 1}}) {
            int na = a.back() + da, nb = b.back() + db;
            if (na > p || nb > q) continue;
            a.push_back(na);
            b.push_back(nb);
            walk(a, b);
            a.pop_back();
            b.pop_back();
          }
        };
        std::vector<int> a{0}, b{0};
        walk(a, b);
        std::sort(paths.begin(), paths.end());
        for (std::size_t i = 0; i < x.count(p); ++i)
          for (std::size_t j = 0; j < y.count(q); ++j)
            for (const auto& [al, be] : paths) {
              auto& cells = out.cells[static_cast<std::size_t>(n)];
              idx[static_cast<std::size_t>(n)][Key{p, i, q, j, al, be}] = cells.size();
              cells.push_back({p, q, i, j, al, be});
            }
      }
  auto label = [&](const ProductSimplex& c) {
    Simplex a{static_cast<int>(c.alpha.size()) - 1, c.p, c.x, c.alpha};
    Simplex b{static_cast<int>(c.beta.size()) - 1, c.q, c.y, c.beta};
    return "(" + x.label(a) + "," + y.label(b) + ")";
  };
  std::vector<std::vector<std::string>> labels(out.cells.size());
  std::vector<std::vector<std::vector<Simplex>>> faces(out.cells.size());
  for (std::size_t n = 0; n < out.cells.size(); ++n)
    for (const auto& c : out.cells[n]) {
      labels[n].push_back(label(c));
      std::vector<Simplex> f;
      for (int i = 0; n > 0 && i <= static_cast<int>(n); ++i) {
        Simplex a = x.face(Simplex{static_cast<int>(n), c.p, c.x, c.alpha}, i);
        Simplex b = y.face(Simplex{static_cast<int>(n), c.q, c.y, c.beta}, i);
        // collapse repeats common to both sides
        Simplex s;
        s.dim = static_cast<int>(n) - 1;
        std::vector<int> al{a.surj[0]}, be{b.surj[0]};
        s.surj.push_back(0);
        for (std::size_t k = 1; k < a.surj.size(); ++k) {
          bool rep = a.surj[k] == a.surj[k - 1] && b.surj[k] == b.surj[k - 1];
          if (!rep) {
            al.push_back(a.surj[k]);
            be.push_back(b.surj[k]);
          }
          s.surj.push_back(s.surj.back() + (rep ? 0 : 1));
        }
        s.base_dim = static_cast<int>(al.size()) - 1;
        s.base = idx[static_cast<std::size_t>(s.base_dim)].at(Key{a.base_dim, a.base, b.base_dim, b.base, al, be});
        f.push_back(s);
      }
      faces[n].push_back(f);
    }
  out.set = FiniteSimplicialSet(labels, faces);
  return out;
}

std::size_t cochain_index(const FiniteSimplicialSet& x, int n, std::size_t k) {
  std::size_t off = 0;
  for (int m = 0; m < n; ++m) off += x.count(m);
  return off + k;
}

DgAlgebra cochain_algebra(const FiniteSimplicialSet& x, const Ring& ring, int max_degree) {
  if (max_degree < 0 || max_degree > x.dim()) max_degree = x.dim();
  std::vector<std::string> labels;
  std::vector<int> degs;
  for (int n = 0; n <= max_degree; ++n)
    for (std::size_t k = 0; k < x.count(n); ++k) {
      labels.push_back(x.label(n, k));
      degs.push_back(n);
    }
  const std::size_t N = labels.size();
  std::vector<Sparse> diff(N);
  std::vector<std::vector<DgAlgebra::Product>> left(N);
  Sparse unit;
  for (std::size_t k = 0; k < x.count(0); ++k) unit.emplace_back(cochain_index(x, 0, k), ring.one());
  for (int n = 0; n <= max_degree; ++n)
    for (std::size_t k = 0; k < x.count(n); ++k) {
      Simplex s = nondegenerate(n, k);
      std::size_t me = cochain_index(x, n, k);
      for (int i = 0; n > 0 && i <= n; ++i) {
        Simplex f = x.face(s, i);
        if (!f.degenerate()) diff[cochain_index(x, n - 1, f.base)].emplace_back(me, ring.make(i % 2 ? -1 : 1));
      }
      for (int p = 0; p <= n; ++p) {
        Simplex a = x.front(s, p), b = x.back(s, n - p);
        if (a.degenerate() || b.degenerate()) continue;
        left[cochain_index(x, p, a.base)].push_back({cochain_index(x, n - p, b.base), me, ring.one()});
      }
    }
  return DgAlgebra(GradedModule(ring, labels, degs), unit, diff, left);
}

namespace {

// sign of the shuffle permutation read off a staircase without diagonal steps
int shuffle_sign(const std::vector<int>& alpha, const std::vector<int>& beta) {
  long inv = 0, ysteps = 0;
  for (std::size_t k = 1; k < alpha.size(); ++k) {
    if (beta[k] != beta[k - 1])
      ++ysteps;
    else
      inv += ysteps;  // an x-step after ysteps y-steps
  }
  return inv % 2 ? -1 : 1;
}

}  // namespace

Matrix ez_algebra_map(const FiniteSimplicialSet& x, const FiniteSimplicialSet& y, const SimplicialProduct& xy,
                      const Ring& ring) {
  const std::size_t nx = cochain_algebra(x, ring).dim(), ny = cochain_algebra(y, ring).dim();
  const std::size_t src = cochain_algebra(xy.set, ring).dim();
  Matrix m(ring, nx * ny, src);
  for (int n = 0; n <= xy.set.dim(); ++n)
    for (std::size_t k = 0; k < xy.set.count(n); ++k) {
      const ProductSimplex& c = xy.cells[static_cast<std::size_t>(n)][k];
      if (c.p + c.q != n) continue;
      int s = shuffle_sign(c.alpha, c.beta);
      std::size_t row = cochain_index(x, c.p, c.x) * ny + cochain_index(y, c.q, c.y);
      m.set(row, cochain_index(xy.set, n, k), ring.make(s));
    }
  return m;
}

}  // namespace infloc

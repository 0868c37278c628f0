#include "infloc/interval/interval.hpp"

#include <map>
#include <sstream>

#include "infloc/simplicial/sset.hpp"

namespace infloc {

namespace {

// vertex sequence "1010" -> word "sts"
std::string word_of_sequence(const std::string& seq) {
  if (seq.size() == 1) return seq == "0" ? "e" : "f";
  std::string w;
  for (std::size_t i = 0; i + 1 < seq.size(); ++i) w += seq[i] == '1' ? 's' : 't';
  return w;
}

Vec element_if_present(const DgAlgebra& a, const std::vector<std::pair<std::string, long>>& terms) {
  Vec v = a.zero();
  for (const auto& [l, c] : terms)
    if (auto i = a.basis().find(l)) v[*i] += a.ring().make(c);
  return v;
}

int sign_pow(long k) { return (k % 2 == 0) ? 1 : -1; }

}  // namespace

std::string alternating_word(char first, int length) {
  std::string w;
  char c = first;
  for (int i = 0; i < length; ++i) {
    w += c;
    c = c == 's' ? 't' : 's';
  }
  return w;
}

std::optional<std::size_t> IntervalAlgebra::word(char first, int length) const {
  return dga.basis().find(alternating_word(first, length));
}

IntervalAlgebra build_interval_algebra(int n, const Ring& ring) {
  if (n < 0 || n > kIntervalMax)
    throw InvalidInput("build_interval_algebra: level must lie in 0.." + std::to_string(kIntervalMax));
  IntervalAlgebra k;
  k.n = n;
  if (n == 0) {
    // vertex 0 of the edge is the target of s
    k.dga = cochain_algebra(standard_simplex(1), ring).relabeled({"f", "e", "s"});
  } else {
    FiniteSimplicialSet nv = nerve(FiniteCategory::indiscrete({"0", "1"}), n);
    DgAlgebra c = cochain_algebra(nv, ring);
    std::vector<std::string> labels;
    for (const auto& l : c.basis().labels()) labels.push_back(word_of_sequence(l));
    k.dga = c.relabeled(std::move(labels));
  }
  k.ev0 = Matrix(ring, 1, k.dga.dim());
  k.ev1 = Matrix(ring, 1, k.dga.dim());
  k.ev0.set(0, k.e(), ring.one());
  k.ev1.set(0, k.f(), ring.one());
  return k;
}

Matrix interval_quotient(const IntervalAlgebra& from, const IntervalAlgebra& to) {
  if (from.n < to.n) throw InvalidInput("interval_quotient: target level exceeds source level");
  if (from.dga.ring() != to.dga.ring()) throw InvalidInput("interval_quotient: different rings");
  Matrix q(to.dga.ring(), to.dga.dim(), from.dga.dim());
  for (std::size_t j = 0; j < from.dga.dim(); ++j)
    if (auto i = to.dga.basis().find(from.dga.basis().label(j))) q.set(*i, j, to.dga.ring().one());
  return q;
}

std::vector<PresentationCheck> check_printed_presentation(const IntervalAlgebra& k) {
  const DgAlgebra& a = k.dga;
  auto g = [&](const std::string& l) { return element_if_present(a, {{l, 1}}); };
  std::vector<PresentationCheck> out;
  auto rel = [&](const std::string& text, const Vec& lhs, const std::vector<std::pair<std::string, long>>& rhs) {
    Vec r = element_if_present(a, rhs);
    out.push_back({text, lhs == r, a.format(lhs)});
  };
  auto m = [&](const std::string& x, const std::string& y) { return a.mul(g(x), g(y)); };
  rel("e^2 = e", m("e", "e"), {{"e", 1}});
  rel("f^2 = f", m("f", "f"), {{"f", 1}});
  rel("ef = 0", m("e", "f"), {});
  rel("fe = 0", m("f", "e"), {});
  rel("fs = s", m("f", "s"), {{"s", 1}});
  rel("se = s", m("s", "e"), {{"s", 1}});
  rel("sf = 0", m("s", "f"), {});
  rel("es = 0", m("e", "s"), {});
  rel("tf = t", m("t", "f"), {{"t", 1}});
  rel("et = t", m("e", "t"), {{"t", 1}});
  rel("ft = 0", m("f", "t"), {});
  rel("te = 0", m("t", "e"), {});
  rel("t^2 = 0", m("t", "t"), {});
  rel("s^2 = 0", m("s", "s"), {});
  rel("d(e) = t - s", a.d(g("e")), {{"t", 1}, {"s", -1}});
  rel("d(t) = s - t", a.d(g("t")), {{"s", 1}, {"t", -1}});
  rel("d(f) = s - t (first d(t) read as d(f))", a.d(g("f")), {{"s", 1}, {"t", -1}});
  rel("d(s) = ts + st", a.d(g("s")), {{"ts", 1}, {"st", 1}});
  rel("d(t) = st + ts", a.d(g("t")), {{"st", 1}, {"ts", 1}});
  return out;
}

PathObject::PathObject(AlgebraPtr alg, int n)
    : a(std::move(alg)), k(build_interval_algebra(n, a->ring())), ak(tensor_dga(*a, k.dga)) {}

Vec PathObject::coefficient(const Vec& X, std::size_t kb) const {
  if (X.size() != ak.dim()) throw InvalidInput("PathObject: element has the wrong size");
  const std::size_t nk = k.dga.dim();
  Vec c = a->zero();
  for (std::size_t i = 0; i < a->dim(); ++i) c[i] = X[i * nk + kb];
  return c;
}

Vec PathObject::embed(const Vec& c, std::size_t kb) const {
  if (c.size() != a->dim()) throw InvalidInput("PathObject: coefficient has the wrong size");
  const std::size_t nk = k.dga.dim();
  Vec X = ak.zero();
  for (std::size_t i = 0; i < a->dim(); ++i) X[i * nk + kb] = c[i];
  return X;
}

Vec PathObject::constant(const Vec& x) const { return embed(x, k.e()) + embed(x, k.f()); }

K2Homotopy certificate_from_k2_homotopy(const PathObject& p, const Vec& X) {
  if (p.k.n != 2) throw InvalidInput("certificate_from_k2_homotopy: needs the level-2 interval");
  if (!is_mc(p.ak, X).ok) throw InvalidInput("certificate_from_k2_homotopy: X is not MC");
  const IntervalAlgebra& k = p.k;
  K2Homotopy out;
  out.x = p.ev0(X);
  out.xp = p.ev1(X);
  Vec one = p.a->one();
  out.cert.g = p.coefficient(X, k.dga.basis().index("s")) + one;
  out.cert.h = p.coefficient(X, k.dga.basis().index("t")) + one;
  out.cert.wx = -p.coefficient(X, k.dga.basis().index("ts"));
  out.cert.wy = -p.coefficient(X, k.dga.basis().index("st"));
  auto chk = verify_homotopy_gauge(*p.a, out.x, out.xp, out.cert);
  if (!chk.ok) throw InvariantViolation("certificate_from_k2_homotopy: extracted certificate fails: " + chk.detail);
  return out;
}

Vec k2_homotopy_from_certificate(const PathObject& p, const Vec& x, const Vec& xp, const HomotopyGaugeCertificate& c) {
  if (p.k.n != 2) throw InvalidInput("k2_homotopy_from_certificate: needs the level-2 interval");
  auto chk = verify_homotopy_gauge(*p.a, x, xp, c);
  if (!chk.ok) throw InvalidInput("k2_homotopy_from_certificate: certificate fails: " + chk.detail);
  const auto& b = p.k.dga.basis();
  Vec one = p.a->one();
  Vec X = p.embed(x, b.index("e")) + p.embed(xp, b.index("f")) + p.embed(c.g - one, b.index("s")) +
          p.embed(c.h - one, b.index("t")) + p.embed(-c.wx, b.index("ts")) + p.embed(-c.wy, b.index("st"));
  auto mc = is_mc(p.ak, X);
  if (!mc.ok) throw InvariantViolation("k2_homotopy_from_certificate: assembled element is not MC");
  return X;
}

// ---- the free dg category

namespace {

using KGen = KInftyCategoryTrunc::Generator;

// composite of generators, outermost first; empty = identity
using Path = std::vector<std::size_t>;
using PathSum = std::map<Path, long>;

void add_to(PathSum& s, const Path& p, long c) {
  if (c == 0) return;
  auto& v = s[p];
  v += c;
  if (v == 0) s.erase(p);
}

PathSum d_path(const KInftyCategoryTrunc& k, const Path& p) {
  PathSum out;
  long deg = 0;  // degree of the prefix
  for (std::size_t i = 0; i < p.size(); ++i) {
    long sgn = sign_pow(deg);
    for (const auto& t : k.d[p[i]]) {
      Path q(p.begin(), p.begin() + static_cast<long>(i));
      q.push_back(t.left);
      q.push_back(t.right);
      q.insert(q.end(), p.begin() + static_cast<long>(i) + 1, p.end());
      add_to(out, q, sgn * t.c);
    }
    if (k.constant[p[i]] != 0) {
      Path q(p.begin(), p.begin() + static_cast<long>(i));
      q.insert(q.end(), p.begin() + static_cast<long>(i) + 1, p.end());
      add_to(out, q, sgn * k.constant[p[i]]);
    }
    deg += -k.gens[p[i]].n;
  }
  return out;
}

struct PrintedTerm {
  long c;
  char lk;
  int ln;
  char rk;
  int rn;
};

std::string term_name(char kind, int n) { return std::string(1, kind) + "_{" + std::to_string(n) + "}"; }

// The printed table, read literally with the stray index m taken to be n.
std::vector<PrintedTerm> printed_d(char kind, int n, long& constant) {
  std::vector<PrintedTerm> t;
  constant = 0;
  if (n == 0) return t;
  char o = kind == 'x' ? 'y' : 'x';
  if (n == 1) {
    constant = -1;
    t.push_back({1, o, 0, kind, 0});
    return t;
  }
  if (n % 2 == 0) {
    int h = n / 2;
    for (int i = 0; i < h; ++i) {
      if (kind == 'x') {
        t.push_back({1, 'x', 2 * i, 'x', 2 * (h - i) - 1});
        t.push_back({-1, 'y', 2 * (h - i) - 1, 'y', 2 * i});
      } else {
        t.push_back({1, 'y', 2 * i, 'y', 2 * (h - i) - 1});
        t.push_back({-1, 'x', 2 * (h - i) - 1, 'y', 2 * i});
      }
    }
  } else {
    int h = (n - 1) / 2;
    for (int i = 0; i <= h; ++i) t.push_back({1, o, 2 * i, kind, 2 * (h - i)});
    for (int i = 0; i < h; ++i) {
      if (kind == 'x')
        t.push_back({-1, 'x', 2 * i - 1, 'x', 2 * (h - i) - 1});
      else
        t.push_back({-1, 'y', 2 * i + 1, 'y', 2 * (h - i) - 1});
    }
  }
  return t;
}

}  // namespace

std::string KInftyCategoryTrunc::format_d(std::size_t g) const {
  std::ostringstream os;
  os << "d(" << gens.at(g).name() << ") = ";
  bool first = true;
  for (const auto& t : d.at(g)) {
    long c = t.c;
    if (!first) os << (c < 0 ? " - " : " + ");
    else if (c < 0) os << "-";
    long a = c < 0 ? -c : c;
    if (a != 1) os << a << " ";
    os << gens[t.left].name() << " " << gens[t.right].name();
    first = false;
  }
  if (constant.at(g) != 0) {
    long c = constant[g];
    if (!first) os << (c < 0 ? " - " : " + ");
    else if (c < 0) os << "-";
    os << (c < 0 ? -c : c);
    first = false;
  }
  if (first) os << "0";
  return os.str();
}

KInftyCategoryTrunc k_infty_category(int N) {
  if (N < 0 || N > kIntervalMax) throw InvalidInput("k_infty_category: N must lie in 0.." + std::to_string(kIntervalMax));
  KInftyCategoryTrunc k;
  k.N = N;
  std::map<std::string, std::size_t> by_word;
  for (int n = 0; n <= N; ++n)
    for (char kind : {'x', 'y'}) {
      KGen g;
      g.kind = kind;
      g.n = n;
      char last = kind == 'x' ? 's' : 't';
      char first = (n % 2 == 0) ? last : (last == 's' ? 't' : 's');
      g.word = alternating_word(first, n + 1);
      // source: right idempotent (e after s, f after t); target: left idempotent
      g.src = last == 's' ? 0 : 1;
      g.dst = first == 's' ? 1 : 0;
      g.sigma = 1;
      if (n > 0) {
        const KGen& rest = k.gens[by_word.at(g.word.substr(1))];
        long eps = sign_pow(1L * (1 - n));  // (-1)^{|l|(1 - |rest|)}, |l| = 1, |rest| = n
        g.sigma = static_cast<int>(-eps * rest.sigma);
      }
      by_word[g.word] = k.gens.size();
      k.gens.push_back(g);
    }
  k.d.resize(k.gens.size());
  k.constant.assign(k.gens.size(), 0);
  for (std::size_t gi = 0; gi < k.gens.size(); ++gi) {
    const KGen& g = k.gens[gi];
    const std::string& w = g.word;
    for (std::size_t cut = 1; cut < w.size(); ++cut) {
      std::size_t l = by_word.at(w.substr(0, cut)), r = by_word.at(w.substr(cut));
      long len1 = static_cast<long>(cut), len2 = static_cast<long>(w.size() - cut);
      long eps = sign_pow(len1 * (1 - len2));
      long c = -g.sigma * eps * k.gens[l].sigma * k.gens[r].sigma;
      if (k.gens[l].src != k.gens[r].dst || k.gens[r].src != g.src || k.gens[l].dst != g.dst)
        throw InvariantViolation("k_infty_category: ill-typed term in d(" + g.name() + ")");
      k.d[gi].push_back({c, l, r});
    }
    if (w == "st" || w == "ts") k.constant[gi] = g.sigma;
  }
  for (std::size_t gi = 0; gi < k.gens.size(); ++gi) {
    PathSum dd;
    for (const auto& t : k.d[gi]) {
      Path p{t.left, t.right};
      for (const auto& [q, c] : d_path(k, p)) add_to(dd, q, c * t.c);
    }
    if (!dd.empty()) throw InvariantViolation("k_infty_category: d^2 != 0 on " + k.gens[gi].name());
  }

  // compare with the printed table
  for (std::size_t gi = 0; gi < k.gens.size(); ++gi) {
    const KGen& g = k.gens[gi];
    long pconst = 0;
    auto printed = printed_d(g.kind, g.n, pconst);
    std::map<std::pair<std::size_t, std::size_t>, long> pm, dm;
    std::vector<std::string> issues;
    for (const auto& t : printed) {
      if (t.ln < 0 || t.rn < 0 || t.ln > N || t.rn > N) {
        issues.push_back("uses undefined generator " + term_name(t.ln < 0 || t.ln > N ? t.lk : t.rk,
                                                                 t.ln < 0 || t.ln > N ? t.ln : t.rn));
        continue;
      }
      std::size_t l = k.index(t.lk, t.ln), r = k.index(t.rk, t.rn);
      if (k.gens[l].src != k.gens[r].dst || k.gens[r].src != g.src || k.gens[l].dst != g.dst)
        issues.push_back("term " + term_name(t.lk, t.ln) + term_name(t.rk, t.rn) + " is ill-typed");
      pm[{l, r}] += t.c;
    }
    for (const auto& t : k.d[gi]) dm[{t.left, t.right}] += t.c;
    for (auto it = pm.begin(); it != pm.end();) it = it->second == 0 ? pm.erase(it) : std::next(it);
    if (pm != dm || pconst != k.constant[gi] || !issues.empty()) {
      std::string line = "printed d(" + g.name() + ") differs from the derived " + k.format_d(gi);
      for (const auto& s : issues) line += "; " + s;
      if (pconst != k.constant[gi]) line += "; constant term differs";
      k.ledger.push_back(line);
    }
  }
  return k;
}

FunctorCheck check_functor(const DgAlgebra& a, const KInftyCategoryTrunc& k, const FunctorData& F) {
  FunctorCheck out;
  auto fail = [&](const std::string& s) {
    out.ok = false;
    out.failure = s;
    return out;
  };
  if (F.fx.size() != F.fy.size()) return fail("unequal numbers of x and y images");
  if (F.fx.size() > static_cast<std::size_t>(k.N) + 1) return fail("more data than generators");
  if (!is_mc(a, F.x).ok) return fail("object O1 is not sent to an MC element");
  if (!is_mc(a, F.xp).ok) return fail("object O2 is not sent to an MC element");
  const std::size_t count = 2 * F.fx.size();
  auto image = [&](std::size_t g) -> const Vec& { return g % 2 == 0 ? F.fx[g / 2] : F.fy[g / 2]; };
  auto obj = [&](int o) -> const Vec& { return o == 0 ? F.x : F.xp; };
  for (std::size_t gi = 0; gi < count; ++gi) {
    const KGen& g = k.gens[gi];
    const Vec& fg = image(gi);
    if (fg.size() != a.dim()) return fail("F(" + g.name() + ") has the wrong size");
    if (!a.is_homogeneous(fg, -g.n)) return fail("F(" + g.name() + ") has the wrong degree");
    Vec lhs = twisted_d(a, obj(g.src), obj(g.dst), fg);
    Vec rhs = a.zero();
    for (const auto& t : k.d[gi]) axpy(rhs, a.ring().make(t.c), a.mul(image(t.left), image(t.right)));
    if (k.constant[gi] != 0) axpy(rhs, a.ring().make(k.constant[gi]), a.one());
    if (lhs != rhs) return fail("d F(" + g.name() + ") != F(d " + g.name() + ")");
  }
  return out;
}

FunctorData homotopy_to_functor(const PathObject& p, const Vec& X) {
  if (!is_mc(p.ak, X).ok) throw InvalidInput("homotopy_to_functor: X is not MC");
  FunctorData F;
  F.x = p.ev0(X);
  F.xp = p.ev1(X);
  KInftyCategoryTrunc k = k_infty_category(p.k.n);
  Vec one = p.a->one();
  for (int n = 0; n < p.k.n; ++n)
    for (char kind : {'x', 'y'}) {
      const KGen& g = k.gens[k.index(kind, n)];
      Vec y = p.coefficient(X, p.k.dga.basis().index(g.word));
      if (n == 0) y = y + one;
      Vec img = p.a->ring().make(g.sigma) * y;
      (kind == 'x' ? F.fx : F.fy).push_back(std::move(img));
    }
  return F;
}

FunctorHomotopy functor_to_homotopy(const PathObject& p, const FunctorData& F) {
  if (F.fx.size() > static_cast<std::size_t>(p.k.n))
    throw InvalidInput("functor_to_homotopy: more data than the interval level supports");
  KInftyCategoryTrunc k = k_infty_category(p.k.n);
  auto chk = check_functor(*p.a, k, F);
  if (!chk.ok) throw InvalidInput("functor_to_homotopy: " + chk.failure);
  const auto& b = p.k.dga.basis();
  Vec one = p.a->one();
  FunctorHomotopy out;
  out.X = p.embed(F.x, b.index("e")) + p.embed(F.xp, b.index("f"));
  for (std::size_t n = 0; n < F.fx.size(); ++n)
    for (char kind : {'x', 'y'}) {
      const KGen& g = k.gens[k.index(kind, static_cast<int>(n))];
      Vec y = p.a->ring().make(g.sigma) * (kind == 'x' ? F.fx[n] : F.fy[n]);
      if (n == 0) y = y - one;
      out.X = out.X + p.embed(y, b.index(g.word));
    }
  out.residual = is_mc(p.ak, out.X).residual;
  return out;
}

}  // namespace infloc

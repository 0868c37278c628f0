#include "infloc/mc/fixtures.hpp"

#include "infloc/simplicial/sset.hpp"

namespace infloc {

DgAlgebra polynomial_mc_algebra(const Ring& ring, int n) {
  // (x^{n+1}) is closed under d, so the quotient is an honest dg algebra
  FreeGenerator x{"x", 1, {{ring.make(-1), {0, 0}}}};
  DgAlgebra f = free_algebra(ring, {x}, n);
  std::vector<Sparse> diff;
  std::vector<std::vector<DgAlgebra::Product>> left;
  for (std::size_t i = 0; i < f.dim(); ++i) {
    diff.push_back(f.diff(i));
    left.push_back(f.left(i));
  }
  return DgAlgebra(f.basis(), f.unit(), diff, left);
}

DgAlgebra gauge_example_algebra(const Ring& ring, int max_len, GaugeExampleVariant v) {
  enum { X, Y, G, H, S, T };
  auto c = [&](long k) { return ring.make(k); };
  std::vector<FreeGenerator> gens = {
      {"x", 1, {{c(-1), {X, X}}}},
      {"y", 1, {{c(-1), {Y, Y}}}},
      {"g", 0, {{c(1), {G, X}}, {c(-1), {Y, G}}}},
      {"h", 0, {{c(1), {H, Y}}, {c(-1), {X, H}}}},
      {"s", -1, {{c(-1), {Y, S}}, {c(-1), {S, Y}}, {c(1), {G, H}}, {c(-1), {}}}},
      {"t", -1, {{c(-1), {X, T}}, {c(-1), {T, X}}, {c(1), {H, G}}, {c(-1), {}}}},
  };
  if (v == GaugeExampleVariant::Printed) {
    gens[S].diff = {{c(-1), {X, S}}, {c(1), {G, H}}, {c(-1), {}}};
    gens[T].diff = {{c(-1), {Y, T}}, {c(1), {H, G}}, {c(-1), {}}};
  } else if (v == GaugeExampleVariant::FlippedProduct) {
    gens[S].diff[2].first = c(-1);
    gens[T].diff[2].first = c(-1);
  }
  return free_algebra(ring, gens, max_len);
}

GaugeExample gauge_example_elements(const DgAlgebra& a) {
  const Ring& R = a.ring();
  auto e = [&](const char* l) { return a.element({{l, R.one()}}); };
  return {e("x"), e("y"), {e("g"), e("h"), e("t"), e("s")}};
}

DgAlgebra polynomial_de_rham(const Ring& ring, int horizon) {
  if (horizon < 1) throw InvalidInput("de Rham fixture needs horizon >= 1");
  // z^k at index k (0..horizon), z^k dz at horizon + 1 + k (0..horizon-1)
  const int n = horizon;
  auto zi = [&](int k) { return static_cast<std::size_t>(k); };
  auto wi = [&](int k) { return static_cast<std::size_t>(n + 1 + k); };
  std::vector<std::string> labels;
  std::vector<int> degs;
  Truncation tr;
  tr.horizon = n;
  tr.raise = 0;
  auto pw = [](int k) { return k == 0 ? std::string() : k == 1 ? std::string("z") : "z^" + std::to_string(k); };
  for (int k = 0; k <= n; ++k) {
    labels.push_back(k == 0 ? "1" : pw(k));
    degs.push_back(0);
    tr.weight.push_back(k);
  }
  for (int k = 0; k < n; ++k) {
    labels.push_back(k == 0 ? "dz" : pw(k) + " dz");
    degs.push_back(1);
    tr.weight.push_back(k + 1);
  }
  std::vector<Sparse> diff(labels.size());
  for (int k = 1; k <= n; ++k) diff[zi(k)] = {{wi(k - 1), ring.make(k)}};
  std::vector<std::vector<DgAlgebra::Product>> left(labels.size());
  for (int a = 0; a <= n; ++a) {
    for (int b = 0; a + b <= n; ++b) left[zi(a)].push_back({zi(b), zi(a + b), ring.one()});
    for (int b = 0; a + b + 1 <= n; ++b) left[zi(a)].push_back({wi(b), wi(a + b), ring.one()});
  }
  for (int a = 0; a < n; ++a)
    for (int b = 0; a + b + 1 <= n; ++b) left[wi(a)].push_back({zi(b), wi(a + b), ring.one()});
  return DgAlgebra(GradedModule(ring, labels, degs), {{0, ring.one()}}, diff, left, tr);
}

DgAlgebra matrix_simplex_algebra(const Ring& ring, std::size_t rank) {
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < rank; ++i) labels.push_back("v" + std::to_string(i));
  GradedModule v(ring, labels, std::vector<int>(rank, 0));
  return endomorphism_dga(cochain_algebra(standard_simplex(2), ring), v);
}

}  // namespace infloc

#include "infloc/holonomy/holonomy.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace infloc {

namespace {

constexpr double kMaxCondition = 1e12;

double condition_number(const RMat& m) {
  if (m.size() == 0) return 1;
  Eigen::JacobiSVD<RMat> svd(m);
  const auto& s = svd.singularValues();
  double lo = s(s.size() - 1);
  return lo == 0 ? std::numeric_limits<double>::infinity() : s(0) / lo;
}

RMat checked_inverse(const RMat& m, const std::string& where) {
  if (!m.allFinite()) throw InvalidInput(where + ": non-finite matrix");
  double c = condition_number(m);
  if (!(c < kMaxCondition)) throw InvalidInput(where + ": singular gauge (condition number " + std::to_string(c) + ")");
  return m.inverse();
}

void check_samples(const std::vector<RMat>& v, const char* what) {
  Eigen::Index n = v.front().rows();
  for (std::size_t k = 0; k < v.size(); ++k) {
    if (v[k].rows() != n || v[k].cols() != n)
      throw InvalidInput(std::string(what) + ": sample " + std::to_string(k) + " is not " + std::to_string(n) + "x" +
                         std::to_string(n));
    if (!v[k].allFinite()) throw InvalidInput(std::string(what) + ": sample " + std::to_string(k) + " is not finite");
  }
}

// weights of the cubic through nodes k0..k0+3 at u (in node units)
std::array<double, 4> lagrange(double u, int k0) {
  std::array<double, 4> w{};
  for (int i = 0; i < 4; ++i) {
    double p = 1;
    for (int j = 0; j < 4; ++j)
      if (j != i) p *= (u - (k0 + j)) / static_cast<double>(i - j);
    w[i] = p;
  }
  return w;
}

RMat rk4(const MatrixFunction& y, double a, double b, int steps, RMat g) {
  if (steps < 1) throw InvalidInput("pexp: step count must be positive");
  const double h = (b - a) / steps;
  for (int k = 0; k < steps; ++k) {
    double t = a + k * h;
    RMat ym = y(t + h / 2);
    RMat k1 = y(t) * g;
    RMat k2 = ym * (g + h / 2 * k1);
    RMat k3 = ym * (g + h / 2 * k2);
    RMat k4 = y(t + h) * (g + h * k3);
    g += h / 6 * (k1 + 2 * k2 + 2 * k3 + k4);
  }
  if (!g.allFinite()) throw InvalidInput("pexp: integration produced non-finite values");
  return g;
}

// fourth-order derivative along a uniform grid (one-sided stencils at the ends)
std::vector<RMat> grid_derivative(const std::vector<RMat>& f, double h) {
  const int m = static_cast<int>(f.size()) - 1;
  if (m < 4) throw InvalidInput("grid derivative needs at least 5 nodes");
  std::vector<RMat> d(f.size());
  // written in differences so that constant data differentiates to exactly zero
  for (int i = 2; i <= m - 2; ++i) d[i] = ((f[i - 2] - f[i + 2]) + 8 * (f[i + 1] - f[i - 1])) / (12 * h);
  auto one_sided = [&](int a, int s) {
    auto D = [&](int j) -> RMat { return f[a + s * j] - f[a]; };
    return RMat(s * (48 * D(1) - 36 * D(2) + 16 * D(3) - 3 * D(4)) / (12 * h));
  };
  auto next_to_end = [&](int a, int s) {
    auto D = [&](int j) -> RMat { return f[a + s * j] - f[a]; };
    return RMat(s * (-3 * D(-1) + 18 * D(1) - 6 * D(2) + D(3)) / (12 * h));
  };
  d[0] = one_sided(0, 1);
  d[1] = next_to_end(1, 1);
  d[m] = one_sided(m, -1);
  d[m - 1] = next_to_end(m - 1, -1);
  return d;
}

}  // namespace

SampledMatrixPath::SampledMatrixPath(std::vector<RMat> s, Kind k) : samples(std::move(s)), kind(k) {
  if (samples.size() < 3) throw InvalidInput("sampled path needs m >= 2 (at least 3 samples)");
  check_samples(samples, "sampled path");
}

SampledMatrixPath SampledMatrixPath::sample(const MatrixFunction& f, int m, Kind kind) {
  if (m < 2) throw InvalidInput("sampled path needs m >= 2");
  std::vector<RMat> s;
  for (int k = 0; k <= m; ++k) s.push_back(f(static_cast<double>(k) / m));
  return SampledMatrixPath(std::move(s), kind);
}

RMat SampledMatrixPath::at(double t) const {
  const int m = steps();
  double u = t * m;
  if (u < -1e-9 || u > m + 1e-9) throw InvalidInput("sampled path evaluated outside [0, 1]");
  int k0 = std::clamp(static_cast<int>(std::floor(u)) - 1, 0, std::max(0, m - 3));
  if (m < 3) {
    // quadratic through the three nodes
    RMat r = RMat::Zero(dim(), dim());
    for (int i = 0; i <= 2; ++i) {
      double p = 1;
      for (int j = 0; j <= 2; ++j)
        if (j != i) p *= (u - j) / static_cast<double>(i - j);
      r += p * samples[i];
    }
    return r;
  }
  auto w = lagrange(u, k0);
  RMat r = w[0] * samples[k0];
  for (int i = 1; i < 4; ++i) r += w[i] * samples[k0 + i];
  return r;
}

MatrixFunction SampledMatrixPath::function() const {
  return [self = *this](double t) { return self.at(t); };
}

Pexp pexp(const MatrixFunction& y, double a, double b, int steps) {
  RMat g0 = y(a);
  RMat g = rk4(y, a, b, steps, RMat::Identity(g0.rows(), g0.cols()));
  return {g, condition_number(g)};
}

Pexp pexp(const SampledMatrixPath& y, double z, int steps) {
  if (z < 0 || z > 1) throw InvalidInput("pexp: z must lie in [0, 1]");
  if (z == 0) return {RMat::Identity(y.dim(), y.dim()), 1};
  if (steps == 0) {
    double u = z * y.steps();
    long k = std::lround(u);
    steps = std::abs(u - k) < 1e-9 && k % 2 == 0 ? static_cast<int>(k / 2) : std::max(1, static_cast<int>(std::ceil(u)));
  }
  return pexp(y.function(), 0, z, steps);
}

Transport solve_transport(const SampledMatrixPath& y, const RMat& g0, double tol) {
  if (g0.rows() != y.dim() || g0.cols() != y.dim()) throw InvalidInput("solve_transport: initial value has the wrong shape");
  const int m = y.steps();
  const double h = 1.0 / m;
  MatrixFunction f = y.function();
  std::vector<RMat> g{g0};
  for (int k = 0; k < m; ++k) g.push_back(rk4(f, y.node(k), y.node(k + 1), 1, g.back()));
  Transport out;
  out.g = SampledMatrixPath(g, SampledMatrixPath::Kind::Function);
  if (m >= 4) {
    auto dg = grid_derivative(g, h);
    for (int k = 1; k < m; ++k) out.residual = std::max(out.residual, (dg[k] - y.samples[k] * g[k]).norm());
  } else {
    for (int k = 1; k < m; ++k)
      out.residual = std::max(out.residual, ((g[k + 1] - g[k - 1]) / (2 * h) - y.samples[k] * g[k]).norm());
  }
  out.flagged = !(out.residual <= tol);
  return out;
}

StepHalving step_halving(const MatrixFunction& y, double z, int steps) {
  RMat ref = pexp(y, 0, z, 16 * steps).value;
  StepHalving s;
  s.coarse_error = (pexp(y, 0, z, steps).value - ref).norm();
  s.fine_error = (pexp(y, 0, z, 2 * steps).value - ref).norm();
  s.ratio = s.fine_error > 0 ? s.coarse_error / s.fine_error : std::numeric_limits<double>::infinity();
  s.order = std::log2(s.ratio);
  return s;
}

CircleForm::CircleForm(std::vector<RMat> s) : a(std::move(s)) {
  if (a.size() < 8) throw InvalidInput("circle form needs p >= 8 points");
  check_samples(a, "circle form");
}

CircleForm CircleForm::sample(const MatrixFunction& f, int p) {
  if (p < 8) throw InvalidInput("circle form needs p >= 8 points");
  std::vector<RMat> s;
  for (int k = 0; k < p; ++k) s.push_back(f(2 * std::numbers::pi * k / p));
  return CircleForm(std::move(s));
}

double CircleForm::spacing() const { return 2 * std::numbers::pi / static_cast<double>(a.size()); }

CircleFunction circle_derivative(const CircleFunction& f) {
  const std::size_t p = f.size();
  if (p < 3) throw InvalidInput("circle derivative needs at least 3 points");
  const double h = 2 * std::numbers::pi / static_cast<double>(p);
  CircleFunction d(p);
  for (std::size_t k = 0; k < p; ++k) d[k] = (f[(k + 1) % p] - f[(k + p - 1) % p]) / (2 * h);
  return d;
}

CircleForm gauge_act(const CircleFunction& g, const CircleForm& x) {
  if (g.size() != x.points()) throw InvalidInput("gauge_act: gauge and form sampled on different grids");
  CircleFunction dg = circle_derivative(g);
  std::vector<RMat> out;
  for (std::size_t k = 0; k < g.size(); ++k) {
    RMat gi = checked_inverse(g[k], "gauge_act at point " + std::to_string(k));
    out.push_back(g[k] * x.a[k] * gi - dg[k] * gi);
  }
  return CircleForm(std::move(out));
}

RMat circle_monodromy(const CircleForm& x, int steps_per_cell) {
  const int p = static_cast<int>(x.points());
  const double h = x.spacing();
  MatrixFunction minus_a = [&](double theta) {
    double u = theta / h;
    int k0 = static_cast<int>(std::floor(u)) - 1;
    auto w = lagrange(u, k0);
    RMat r = RMat::Zero(x.a[0].rows(), x.a[0].cols());
    for (int i = 0; i < 4; ++i) r -= w[i] * x.a[((k0 + i) % p + p) % p];
    return r;
  };
  return rk4(minus_a, 0, 2 * std::numbers::pi, p * steps_per_cell, RMat::Identity(x.a[0].rows(), x.a[0].cols()));
}

namespace {

void check_homotopy(const CircleHomotopy& h) {
  if (h.m < 4) throw InvalidInput("circle homotopy needs m >= 4");
  if (h.x.size() != static_cast<std::size_t>(h.m + 1) || h.y.size() != h.x.size())
    throw InvalidInput("circle homotopy: expected m + 1 rows of x and y");
  for (int i = 0; i <= h.m; ++i) {
    if (h.x[i].size() != h.x[0].size() || h.y[i].size() != h.x[0].size())
      throw InvalidInput("circle homotopy: row " + std::to_string(i) + " has the wrong number of points");
    check_samples(h.x[i], "circle homotopy x");
    check_samples(h.y[i], "circle homotopy y");
  }
  if (h.x[0].size() < 8) throw InvalidInput("circle homotopy needs p >= 8 points");
}

}  // namespace

double homotopy_residual(const CircleHomotopy& h) {
  check_homotopy(h);
  const std::size_t p = h.x[0].size();
  const double dz = 1.0 / h.m;
  std::vector<std::vector<RMat>> dx(p);
  for (std::size_t k = 0; k < p; ++k) {
    std::vector<RMat> col;
    for (int i = 0; i <= h.m; ++i) col.push_back(h.x[i][k]);
    dx[k] = grid_derivative(col, dz);
  }
  double r = 0;
  for (int i = 1; i < h.m; ++i) {
    CircleFunction dy = circle_derivative(h.y[i]);
    for (std::size_t k = 0; k < p; ++k) {
      const RMat& x = h.x[i][k];
      const RMat& y = h.y[i][k];
      r = std::max(r, (dx[k][i] + dy[k] - (y * x - x * y)).norm());
    }
  }
  return r;
}

GaugePathHomotopy homotopy_from_gauge_path(const CircleForm& x0, const std::function<RMat(double, double)>& g, int m) {
  if (m < 4) throw InvalidInput("homotopy_from_gauge_path needs m >= 4");
  const std::size_t p = x0.points();
  const Eigen::Index n = x0.a[0].rows();
  std::vector<CircleFunction> G(m + 1);
  for (int i = 0; i <= m; ++i)
    for (std::size_t k = 0; k < p; ++k) {
      RMat v = g(static_cast<double>(i) / m, x0.spacing() * static_cast<double>(k));
      if (v.rows() != n || v.cols() != n) throw InvalidInput("homotopy_from_gauge_path: gauge has the wrong shape");
      G[i].push_back(v);
    }
  for (std::size_t k = 0; k < p; ++k)
    if ((G[0][k] - RMat::Identity(n, n)).norm() > 1e-9)
      throw InvalidInput("homotopy_from_gauge_path: the gauge path must start at 1 (point " + std::to_string(k) + ")");
  GaugePathHomotopy out;
  out.h.m = m;
  out.h.x.resize(m + 1);
  out.h.y.resize(m + 1);
  for (std::size_t k = 0; k < p; ++k) {
    std::vector<RMat> col;
    for (int i = 0; i <= m; ++i) col.push_back(G[i][k]);
    auto dcol = grid_derivative(col, 1.0 / m);
    for (int i = 0; i <= m; ++i)
      out.h.y[i].push_back(dcol[i] *
                           checked_inverse(G[i][k], "homotopy_from_gauge_path at z node " + std::to_string(i) +
                                                        ", point " + std::to_string(k)));
  }
  for (int i = 0; i <= m; ++i) out.h.x[i] = gauge_act(G[i], x0).a;
  out.residual = homotopy_residual(out.h);
  for (std::size_t k = 0; k < p; ++k) out.start_error = std::max(out.start_error, (out.h.x[0][k] - x0.a[k]).norm());
  return out;
}

GaugeRecovery gauge_from_homotopy(const CircleHomotopy& h, double tol) {
  check_homotopy(h);
  const std::size_t p = h.x[0].size();
  GaugeRecovery out;
  for (std::size_t k = 0; k < p; ++k) {
    std::vector<RMat> col;
    for (int i = 0; i <= h.m; ++i) col.push_back(h.y[i][k]);
    out.g.push_back(pexp(SampledMatrixPath(col, SampledMatrixPath::Kind::Form), 1.0).value);
  }
  CircleForm moved = gauge_act(out.g, CircleForm(h.x[0]));
  for (std::size_t k = 0; k < p; ++k)
    out.endpoint_error = std::max(out.endpoint_error, (h.x[h.m][k] - moved.a[k]).norm());
  out.residual = homotopy_residual(h);
  out.consistent = out.endpoint_error <= tol;
  return out;
}

}  // namespace infloc

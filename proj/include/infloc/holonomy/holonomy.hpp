#pragma once

#include <Eigen/Dense>
#include <functional>
#include <vector>

#include "infloc/linalg/scalar.hpp"

namespace infloc {

using RMat = Eigen::MatrixXd;
using MatrixFunction = std::function<RMat(double)>;

// n x n real matrices at the m + 1 points k/m of [0, 1]. Between nodes the
// path is read by cubic Lagrange interpolation on the four nearest nodes.
struct SampledMatrixPath {
  enum class Kind { Function, Form };  // g(z) or the coefficient y(z) of dz

  std::vector<RMat> samples;
  Kind kind = Kind::Function;

  SampledMatrixPath() = default;
  // throws InvalidInput: m < 2, non-square or mismatched shapes, non-finite entries
  explicit SampledMatrixPath(std::vector<RMat> samples, Kind kind = Kind::Function);
  static SampledMatrixPath sample(const MatrixFunction& f, int m, Kind kind = Kind::Function);

  int steps() const { return static_cast<int>(samples.size()) - 1; }
  Eigen::Index dim() const { return samples.front().rows(); }
  double node(int k) const { return static_cast<double>(k) / steps(); }
  RMat at(double t) const;
  MatrixFunction function() const;
};

struct Pexp {
  RMat value;
  double condition = 0;  // 2-norm condition number of the result
};

// g' = y g, g(a) = 1, integrated to b by classical RK4 with the given number of steps.
Pexp pexp(const MatrixFunction& y, double a, double b, int steps);
// From 0 to z. steps = 0 uses one step per two grid cells, so that every
// evaluation lands on a node, when z sits on an even node; otherwise one step per cell.
Pexp pexp(const SampledMatrixPath& y, double z, int steps = 0);

struct Transport {
  SampledMatrixPath g;
  double residual = 0;  // max over interior nodes of ||g' - y g||_F, g' by finite differences
  bool flagged = false;  // residual above tolerance
};
// g' = y g with g(0) = g0, one RK4 step per grid cell of y.
Transport solve_transport(const SampledMatrixPath& y, const RMat& g0, double tol = 1e-6);

// ||P(steps) - P(ref)|| against ||P(2 steps) - P(ref)|| with ref = P(16 steps).
struct StepHalving {
  double coarse_error = 0, fine_error = 0, ratio = 0, order = 0;
};
StepHalving step_halving(const MatrixFunction& y, double z, int steps);

// Matrix-valued functions and 1-form coefficients on S^1 = R / 2πZ at the
// p points 2πk/p.
using CircleFunction = std::vector<RMat>;
struct CircleForm {
  std::vector<RMat> a;  // x = a(θ) dθ

  CircleForm() = default;
  // throws InvalidInput: p < 8, mismatched shapes, non-finite entries
  explicit CircleForm(std::vector<RMat> a);
  static CircleForm sample(const MatrixFunction& f, int p);
  std::size_t points() const { return a.size(); }
  double spacing() const;
};

// periodic central difference, O(h^2)
CircleFunction circle_derivative(const CircleFunction& f);
// g x g^{-1} - dg g^{-1}
CircleForm gauge_act(const CircleFunction& g, const CircleForm& x);
// Transport of flat sections ds + x s = 0 once around the circle.
RMat circle_monodromy(const CircleForm& x, int steps_per_cell = 4);

// x(z) = a(z, θ) dθ and y(z) = b(z, θ) on an (m + 1) x p grid.
struct CircleHomotopy {
  int m = 0;
  std::vector<std::vector<RMat>> x, y;  // [z node][θ point]
};
// max over interior z nodes and all θ of ||∂_z x + ∂_θ y - [y, x]||_F; the
// equation dx + x^2 = 0 holds identically on S^1.
double homotopy_residual(const CircleHomotopy& h);

struct GaugePathHomotopy {
  CircleHomotopy h;
  double residual = 0;
  double start_error = 0;  // max ||x(0) - x0||
};
// x(z) = g(z) x0 g(z)^{-1} - dg g^{-1}, y(z) = ∂_z g g^{-1}; ∂_z by five-point
// differences on the z grid. Throws InvalidInput if g(0) != 1 or some g(z, θ)
// is singular.
GaugePathHomotopy homotopy_from_gauge_path(const CircleForm& x0, const std::function<RMat(double, double)>& g, int m);

struct GaugeRecovery {
  CircleFunction g;           // transport to z = 1 at each θ
  double endpoint_error = 0;  // max ||x(1) - g x(0)||
  double residual = 0;        // of the homotopy system on the input
  bool consistent = false;    // endpoint_error <= tol
};
GaugeRecovery gauge_from_homotopy(const CircleHomotopy& h, double tol = 1e-5);

}  // namespace infloc

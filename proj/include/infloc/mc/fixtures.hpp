#pragma once

#include "infloc/mc/mc.hpp"

namespace infloc {

// k[x]/(x^{n+1}) with |x| = 1, d(x) = -x^2.
DgAlgebra polynomial_mc_algebra(const Ring& ring, int n);

// Free algebra on x, y (degree 1), g, h (degree 0), s, t (degree -1) with
//   d(x) = -x^2, d(y) = -y^2, d(g) = gx - yg, d(h) = hy - xh,
//   d(s) = -ys - sy + gh - 1, d(t) = -xt - tx + hg - 1,
// cut off at word length max_len. x and y are homotopy gauge equivalent with
// certificate (g, h, t, s).
//   Printed: d(s) = -xs + gh - 1, d(t) = -yt + hg - 1 (d^2 != 0)
//   FlippedProduct: gh and hg enter with a minus sign (still d^2 = 0, but the
//   certificate fails)
enum class GaugeExampleVariant { Corrected, Printed, FlippedProduct };
DgAlgebra gauge_example_algebra(const Ring& ring, int max_len,
                                GaugeExampleVariant v = GaugeExampleVariant::Corrected);
struct GaugeExample {
  Vec x, y;
  HomotopyGaugeCertificate cert;
};
GaugeExample gauge_example_elements(const DgAlgebra& a);

// Q[z, dz] with z^k of weight k and z^k dz of weight k + 1, cut off above `horizon`.
DgAlgebra polynomial_de_rham(const Ring& ring, int horizon);

// End(k^rank) ⊗ C*(Δ^2), fibre in degree 0.
DgAlgebra matrix_simplex_algebra(const Ring& ring, std::size_t rank = 2);

}  // namespace infloc

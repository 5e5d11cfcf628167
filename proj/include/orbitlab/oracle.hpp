#ifndef ORBITLAB_ORACLE_HPP
#define ORBITLAB_ORACLE_HPP

#include "orbitlab/roots.hpp"

#include <vector>

namespace orbitlab::oracle {

/// Independent cross-checks for the closed-form pipeline.  Every routine in
/// this namespace recomputes its target quantity from first principles
/// (eigenspace intersections, determinant scans, numerical integration,
/// finite differences) without calling the production decomposition or
/// spectrum code, so agreement is meaningful evidence.

struct BruteRoot {
  CVec values;   ///< alpha(a_i) on the Cartan basis, canonical sign
  int mult_q = 0;
  CMat q_space;  ///< dim x mult_q, coordinates in g^c
};

struct BruteRootResult {
  std::vector<BruteRoot> roots;  ///< sorted by (Re values, Im values)
  int zero_dim_q = 0;            ///< dim_C of the joint kernel in q^c
};

/// Restricted roots by per-operator eigenspace intersection: diagonalize each
/// ad(a_i)^2 on q^c separately, intersect eigenspaces across i, split residual
/// degeneracies with pairwise sum operators ad(a_i + a_j)^2, and read the
/// relative signs of alpha(a_i) from those sums.  Guarded to algebras of
/// dimension at most 40 (DimensionGuard): the dense cross-check is meant for
/// small instances.
BruteRootResult brute_force_roots(const SymmetricPair& pair,
                                  const CartanSubspace& cartan);

struct FocalScanResult {
  std::vector<double> radii;          ///< t > 0 with det D(t) = 0, ascending
  std::vector<int> multiplicities;    ///< dim ker D(t) for each radius
};

/// Real focal radii along a geodesic direction by scanning
/// det( D^co(t) - t * D^si(t) * S ) on a grid and polishing sign changes /
/// log-derivative poles with bisection + Newton.  Kernels are evaluated with
/// a scaling-and-squaring power series, independent of the eigendecomposition
/// route used by the production code.
FocalScanResult determinant_focal_scan(const Mat& ad_v2, const Mat& shape_op,
                                       double t_max, int grid = 4000);

/// One polished zero of the complex focal determinant.
struct ScanZero {
  cplx z{0.0, 0.0};
  int mult = 0;  ///< kernel dimension at the zero
};

struct ScanReport {
  std::vector<ScanZero> zeros_found;  ///< |z| <= window, sorted by (|z|, arg)
  double grid_resolution = 0.0;       ///< grid spacing actually used
  int newton_iterations = 0;          ///< total Newton steps across all seeds
  int diverged_seeds = 0;             ///< seeds Newton failed on (non-fatal)
  double max_residual = 0.0;          ///< max |det| over the reported zeros
};

/// Complex-window scan of the same determinant family: sample |det| on a
/// square grid covering |z| <= window, seed Newton's method (derivative by
/// central difference, step 1e-6) at every local minimum, deduplicate the
/// polished zeros, and count kernel dimensions by singular values.  The
/// target is holomorphic in z, which the caller can (and the tests do) check
/// through Cauchy-Riemann residuals.
ScanReport complex_focal_scan(const Mat& ad_v2, const Mat& shape_op,
                              double window, double resolution = 0.05);

/// Integrate the Jacobi-type system Y'' = ad_v2 * Y with RK4 from Y(0) = y0,
/// Y'(0) = yp0 and return Y(t).
Vec jacobi_integrate(const Mat& ad_v2, const Vec& y0, const Vec& yp0, double t,
                     int steps = 2000);

struct VariationEstimate {
  Vec velocity;    ///< X = pr_q(Ad(g^{-1}) Z): initial curve velocity in the chart
  double pairing;  ///< B( d²/du² log-chart, normal ) = <II(X,X), normal>
};

/// Second-fundamental-form estimate along the group curve
/// u -> exp(u Z) Exp(w): express the curve in normal coordinates at Exp(w)
/// through the polar chart m sigma(m)^{-1} = exp(2 xi) and second-difference
/// xi.  Pairing the acceleration with a normal direction isolates
/// <shape(normal) X, X> for any submanifold containing the curve — take
/// Z in the Lie algebra of the acting subgroup (h for isotropy orbits, h'
/// for a second involution).  All quantities are g-coordinates; entirely
/// finite-difference based.
VariationEstimate variation_shape_estimate(const SymmetricPair& pair,
                                           const Vec& w, const Vec& driver,
                                           const Vec& normal,
                                           double step = 1e-3);

} // namespace orbitlab::oracle

#endif // ORBITLAB_ORACLE_HPP

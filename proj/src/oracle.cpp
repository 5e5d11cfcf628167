#include "orbitlab/oracle.hpp"

#include <Eigen/Eigenvalues>
#include <unsupported/Eigen/MatrixFunctions>

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

namespace orbitlab::oracle {
namespace {

double op_scale(const CMat& m) { return std::max(1.0, m.norm()); }

/// Orthonormal eigenspace bases of `op` with clustered eigenvalues.
std::vector<std::pair<cplx, CMat>> eigen_spaces(const CMat& op) {
  Eigen::ComplexEigenSolver<CMat> es(op);
  if (es.info() != Eigen::Success)
    throw ClusteringAmbiguous("oracle eigensolver did not converge");
  const CVec& vals = es.eigenvalues();
  double vmax = vals.size() ? vals.cwiseAbs().maxCoeff() : 0.0;
  std::vector<std::pair<cplx, CMat>> out;
  for (const auto& cluster : la::cluster_values(vals, 1e-8 * std::max(1.0, vmax))) {
    CMat cols(op.rows(), static_cast<int>(cluster.size()));
    cplx mean = 0.0;
    for (std::size_t j = 0; j < cluster.size(); ++j) {
      cols.col(static_cast<int>(j)) = es.eigenvectors().col(cluster[j]);
      mean += vals(cluster[j]);
    }
    mean /= static_cast<double>(cluster.size());
    CMat w = la::column_space(cols);
    if (w.cols() != cols.cols()) {
      // The dense solver can hand back nearly dependent vectors inside a
      // degenerate cluster.  The operators here are semisimple, so the
      // eigenspace is recoverable as a kernel instead.
      CMat shifted = op - mean * CMat::Identity(op.rows(), op.cols());
      w = la::nullspace(shifted, 1e-8);
      if (w.cols() != cols.cols())
        throw ClusteringAmbiguous(
            "oracle eigenvectors of one cluster are dependent");
    }
    out.emplace_back(mean, std::move(w));
  }
  return out;
}

/// Restriction of op to the span of orthonormal w, with invariance check.
CMat restrict_to(const CMat& op, const CMat& w) {
  CMat m = w.adjoint() * (op * w);
  if ((op * w - w * m).norm() > 1e-7 * op_scale(op))
    throw ClusteringAmbiguous("oracle block is not invariant");
  return m;
}

bool tuple_less(const CVec& a, const CVec& b) {
  for (int pass = 0; pass < 2; ++pass)
    for (int i = 0; i < a.size(); ++i) {
      double x = pass == 0 ? a(i).real() : a(i).imag();
      double y = pass == 0 ? b(i).real() : b(i).imag();
      if (std::abs(x - y) > 1e-9) return x < y;
    }
  return false;
}

} // namespace

BruteRootResult brute_force_roots(const SymmetricPair& pair,
                                  const CartanSubspace& cartan) {
  const LieAlgebra& g = pair.algebra();
  if (g.dim() > 40)
    throw DimensionGuard("brute-force root oracle is limited to dim <= 40, got " +
                         std::to_string(g.dim()));
  const Subspace& q = pair.q();
  const int r = cartan.rank();
  if (r <= 0) throw InvalidParams("brute_force_roots needs a Cartan subspace");
  const int kq = q.dim();

  std::vector<Mat> ad_i(r);
  std::vector<CMat> sq(r);
  for (int i = 0; i < r; ++i) {
    ad_i[i] = g.ad(cartan.basis.col(i));
    double resid = 0;
    Mat sq_i = ad_i[i] * ad_i[i];
    Mat s = q.restrict_op(sq_i, &resid);
    if (resid > 1e-8)
      throw InvalidParams("Cartan candidate does not stabilize q");
    sq[i] = s.cast<cplx>();
  }

  // Stage 1: intersect the eigenspaces of every squared operator separately.
  struct Piece {
    CMat w;
    CVec lambda;  // squared values collected so far
  };
  std::vector<Piece> pieces;
  {
    Piece whole;
    whole.w = CMat::Identity(kq, kq);
    whole.lambda = CVec(0);
    pieces.push_back(std::move(whole));
  }
  for (int i = 0; i < r; ++i) {
    std::vector<Piece> next;
    int total = 0;
    for (const auto& [val, espace] : eigen_spaces(sq[i])) {
      for (const Piece& piece : pieces) {
        CMat inter = la::intersect_columns(piece.w, espace);
        if (inter.cols() == 0) continue;
        Piece p;
        p.w = inter;
        p.lambda.resize(i + 1);
        p.lambda.head(i) = piece.lambda;
        p.lambda(i) = val;
        total += static_cast<int>(inter.cols());
        next.push_back(std::move(p));
      }
    }
    if (total != kq)
      throw ClusteringAmbiguous("oracle eigenspace intersections lost dimensions");
    pieces.swap(next);
  }

  // Stage 2: separate conjugate roots and read the relative signs from the
  // pairwise sum operators, whose block scalars are
  //   ad(a_i0 + a_j)^2 = lambda_i0 + lambda_j + 2 alpha_i0 alpha_j.
  BruteRootResult out;
  std::vector<BruteRoot> roots;
  double zero_tol = 0.0;
  for (int i = 0; i < r; ++i)
    zero_tol = std::max(zero_tol, 1e-8 * op_scale(sq[i]));
  for (const Piece& piece : pieces) {
    double lmax = piece.lambda.cwiseAbs().maxCoeff();
    if (lmax <= zero_tol) {
      out.zero_dim_q += static_cast<int>(piece.w.cols());
      continue;
    }
    int pivot = 0;
    piece.lambda.cwiseAbs().maxCoeff(&pivot);
    cplx alpha_pivot = std::sqrt(piece.lambda(pivot));

    struct SubPiece {
      CMat w;
      CVec prod;  // products alpha_pivot * alpha_j
    };
    std::vector<SubPiece> subs;
    {
      SubPiece s0;
      s0.w = la::column_space(piece.w);
      s0.prod = CVec::Zero(r);
      s0.prod(pivot) = piece.lambda(pivot);
      subs.push_back(std::move(s0));
    }
    for (int j = 0; j < r; ++j) {
      if (j == pivot) continue;
      Mat ad_sum = ad_i[pivot] + ad_i[j];
      double resid = 0;
      Mat sum_sq = ad_sum * ad_sum;
      CMat sum_op = q.restrict_op(sum_sq, &resid).cast<cplx>();
      if (resid > 1e-8)
        throw ClusteringAmbiguous("oracle sum operator does not stabilize q");
      std::vector<SubPiece> next;
      for (const SubPiece& s : subs) {
        CMat restr = restrict_to(sum_op, s.w);
        for (const auto& [sval, espace] : eigen_spaces(restr)) {
          SubPiece ns;
          ns.w = s.w * espace;
          ns.prod = s.prod;
          ns.prod(j) = (sval - piece.lambda(pivot) - piece.lambda(j)) / 2.0;
          next.push_back(std::move(ns));
        }
      }
      subs.swap(next);
    }

    for (const SubPiece& s : subs) {
      BruteRoot root;
      root.values.resize(r);
      for (int j = 0; j < r; ++j) {
        root.values(j) = s.prod(j) / alpha_pivot;
        double lam_scale = std::max(1.0, std::abs(piece.lambda(j)));
        if (std::abs(root.values(j) * root.values(j) - piece.lambda(j)) >
            1e-6 * lam_scale)
          throw ClusteringAmbiguous("oracle signed values disagree with squares");
      }
      // canonical sign: first nonzero of (Re..., Im...) positive
      double vmax = root.values.cwiseAbs().maxCoeff();
      for (int pass = 0, done = 0; pass < 2 && !done; ++pass)
        for (int i = 0; i < r && !done; ++i) {
          double x = pass == 0 ? root.values(i).real() : root.values(i).imag();
          if (std::abs(x) > 1e-9 * vmax) {
            if (x < 0) root.values = -root.values;
            done = 1;
          }
        }
      root.mult_q = static_cast<int>(s.w.cols());
      root.q_space = q.basis.cast<cplx>() * s.w;
      roots.push_back(std::move(root));
    }
  }

  std::sort(roots.begin(), roots.end(), [](const BruteRoot& a, const BruteRoot& b) {
    return tuple_less(a.values, b.values);
  });
  out.roots = std::move(roots);
  return out;
}

// ---------------------------------------------------------------------------
// determinant focal scan
// ---------------------------------------------------------------------------

namespace {

/// The two even kernels as truncated series plus argument doubling:
///   F_co(A) = sum_k A^k / (2k)!        (cosh of a square root)
///   F_si(A) = sum_k A^k / (2k+1)!      (sinh of a square root over it)
/// Scaling A by 1/4 halves the underlying scalar variable, and
///   C(4u) = 2 C(u)^2 - 1,   S(4u) = S(u) C(u).
void kernel_series(const Mat& a, Mat* f_co, Mat* f_si) {
  const int n = static_cast<int>(a.rows());
  Mat scaled = a;
  int doublings = 0;
  while (scaled.norm() > 0.25 && doublings < 64) {
    scaled /= 4.0;
    ++doublings;
  }
  Mat c = Mat::Identity(n, n);
  Mat s = Mat::Identity(n, n);
  Mat tc = Mat::Identity(n, n);  // A^k / (2k)!
  Mat ts = Mat::Identity(n, n);  // A^k / (2k+1)!
  for (int k = 1; k <= 24; ++k) {
    double two_k = 2.0 * k;
    tc = (tc * scaled).eval() / ((two_k - 1.0) * two_k);
    ts = (ts * scaled).eval() / (two_k * (two_k + 1.0));
    c += tc;
    s += ts;
  }
  for (int d = 0; d < doublings; ++d) {
    s = (s * c).eval();
    c = (2.0 * (c * c) - Mat::Identity(n, n)).eval();
  }
  *f_co = c;
  *f_si = s;
}

/// The same scaled series in complex arithmetic, for arguments z^2 * ad_v2
/// with z off the real axis.
void kernel_series_c(const CMat& a, CMat* f_co, CMat* f_si) {
  const int n = static_cast<int>(a.rows());
  CMat scaled = a;
  int doublings = 0;
  while (scaled.norm() > 0.25 && doublings < 64) {
    scaled /= 4.0;
    ++doublings;
  }
  CMat c = CMat::Identity(n, n);
  CMat s = CMat::Identity(n, n);
  CMat tc = CMat::Identity(n, n);
  CMat ts = CMat::Identity(n, n);
  for (int k = 1; k <= 24; ++k) {
    double two_k = 2.0 * k;
    tc = (tc * scaled).eval() / ((two_k - 1.0) * two_k);
    ts = (ts * scaled).eval() / (two_k * (two_k + 1.0));
    c += tc;
    s += ts;
  }
  for (int d = 0; d < doublings; ++d) {
    s = (s * c).eval();
    c = (2.0 * (c * c) - CMat::Identity(n, n)).eval();
  }
  *f_co = c;
  *f_si = s;
}

} // namespace

FocalScanResult determinant_focal_scan(const Mat& ad_v2, const Mat& shape_op,
                                       double t_max, int grid) {
  const int n = static_cast<int>(ad_v2.rows());
  if (!(t_max > 0.0) || grid < 16)
    throw InvalidParams("focal scan needs t_max > 0 and at least 16 grid points");
  FocalScanResult out;
  if (n == 0) return out;
  if (shape_op.rows() != n || shape_op.cols() != n || ad_v2.cols() != n)
    throw InvalidParams("focal scan operators must be square and same size");

  auto assemble = [&](double t) {
    Mat f_co, f_si;
    kernel_series((t * t) * ad_v2, &f_co, &f_si);
    return (f_co - t * (f_si * shape_op)).eval();
  };
  auto det_info = [&](double t) -> std::pair<double, double> {
    Eigen::PartialPivLU<Mat> lu(assemble(t));
    double sign = static_cast<double>(lu.permutationP().determinant());
    double logdet = 0.0;
    for (int i = 0; i < n; ++i) {
      double u = lu.matrixLU()(i, i);
      if (u == 0.0) return {0.0, -std::numeric_limits<double>::infinity()};
      if (u < 0.0) sign = -sign;
      logdet += std::log(std::abs(u));
    }
    return {sign, logdet};
  };

  std::vector<double> ts(grid), signs(grid), logs(grid);
  for (int k = 0; k < grid; ++k) {
    ts[k] = t_max * (k + 1) / grid;
    auto [s, l] = det_info(ts[k]);
    signs[k] = s;
    logs[k] = l;
  }

  std::vector<double> found;
  // odd-multiplicity zeros: sign changes, polished by bisection
  for (int k = 0; k + 1 < grid; ++k) {
    if (signs[k] == 0.0) {
      found.push_back(ts[k]);
      continue;
    }
    if (signs[k] * signs[k + 1] < 0.0) {
      double lo = ts[k], hi = ts[k + 1], slo = signs[k];
      for (int it = 0; it < 80; ++it) {
        double mid = 0.5 * (lo + hi);
        double sm = det_info(mid).first;
        if (sm == 0.0) {
          lo = hi = mid;
          break;
        }
        (sm == slo ? lo : hi) = mid;
      }
      found.push_back(0.5 * (lo + hi));
    }
  }
  // even-multiplicity zeros: local minima of log|det| without a sign change,
  // polished by golden-section and accepted only when the matrix is singular
  // there (a zero can sit anywhere between grid points, so no depth cutoff)
  const double golden = 0.5 * (std::sqrt(5.0) - 1.0);
  for (int k = 1; k + 1 < grid; ++k) {
    if (!(logs[k] <= logs[k - 1] && logs[k] < logs[k + 1])) continue;
    if (signs[k - 1] * signs[k + 1] < 0.0) continue;  // handled by bisection
    double a = ts[k - 1], b = ts[k + 1];
    double x1 = b - golden * (b - a), x2 = a + golden * (b - a);
    double f1 = det_info(x1).second, f2 = det_info(x2).second;
    for (int it = 0; it < 160; ++it) {
      if (f1 < f2) {
        b = x2;
        x2 = x1;
        f2 = f1;
        x1 = b - golden * (b - a);
        f1 = det_info(x1).second;
      } else {
        a = x1;
        x1 = x2;
        f1 = f2;
        x2 = a + golden * (b - a);
        f2 = det_info(x2).second;
      }
    }
    double t_star = 0.5 * (a + b);
    Eigen::JacobiSVD<Mat> svd(assemble(t_star));
    const Vec& sv = svd.singularValues();
    if (sv(sv.size() - 1) <= 1e-6 * std::max(1.0, sv(0)))
      found.push_back(t_star);
  }

  std::sort(found.begin(), found.end());
  for (double t : found) {
    if (!out.radii.empty() && t - out.radii.back() <= 1e-7 * (1.0 + t)) continue;
    Eigen::JacobiSVD<Mat> svd(assemble(t));
    const Vec& sv = svd.singularValues();
    int mult = 0;
    for (int i = 0; i < sv.size(); ++i)
      if (sv(i) <= 1e-6 * std::max(1.0, sv(0))) ++mult;
    if (mult == 0) mult = 1;  // bisection landed within roundoff of the zero
    out.radii.push_back(t);
    out.multiplicities.push_back(mult);
  }
  return out;
}

ScanReport complex_focal_scan(const Mat& ad_v2, const Mat& shape_op,
                              double window, double resolution) {
  const int n = static_cast<int>(ad_v2.rows());
  if (!(window > 0.0) || !(resolution > 0.0) || resolution > 0.1)
    throw InvalidParams(
        "complex scan needs window > 0 and resolution in (0, 0.1]");
  if (shape_op.rows() != n || shape_op.cols() != n || ad_v2.cols() != n)
    throw InvalidParams("focal scan operators must be square and same size");

  ScanReport rep;
  rep.grid_resolution = resolution;
  if (n == 0) return rep;

  const CMat m = ad_v2.cast<cplx>();
  const CMat s = shape_op.cast<cplx>();
  auto assemble = [&](cplx z) {
    CMat co, si;
    kernel_series_c((z * z) * m, &co, &si);
    return CMat(co - z * (si * s)).eval();
  };
  auto det_at = [&](cplx z) { return assemble(z).determinant(); };

  // det on a square grid covering the disk.
  const int half = static_cast<int>(std::ceil(window / resolution));
  const int nx = 2 * half + 1;
  std::vector<cplx> dets(static_cast<std::size_t>(nx) * nx);
  auto det_g = [&](int ix, int iy) -> cplx& {
    return dets[static_cast<std::size_t>(iy) * nx + ix];
  };
  auto mag = [&](int ix, int iy) { return std::abs(det_g(ix, iy)); };
  for (int iy = 0; iy < nx; ++iy)
    for (int ix = 0; ix < nx; ++ix)
      det_g(ix, iy) =
          det_at(cplx((ix - half) * resolution, (iy - half) * resolution));

  // Newton polish of a seed; local_scale anchors the residual thresholds.
  std::vector<ScanZero> zeros;
  auto polish = [&](cplx z, double local_scale) {
    const double dstep = 1e-6;
    cplx f = det_at(z);
    bool converged = false;
    for (int it = 0; it < 50; ++it) {
      if (std::abs(f) <= 1e-10 * local_scale) {
        converged = true;
        break;
      }
      // Central-difference complex derivative (step 1e-6).
      cplx fp = (det_at(z + dstep) - det_at(z - dstep)) / (2.0 * dstep);
      if (std::abs(fp) == 0.0) break;
      z -= f / fp;
      ++rep.newton_iterations;
      if (std::abs(z) > window + 1.0) break;
      f = det_at(z);
    }
    // At a multiple zero plain Newton converges only linearly and stalls with
    // |z - z0| ~ |f_stop|^(1/m), scattering duplicate reports.  Estimate the
    // multiplicity from m = 1/(1 - f f''/f'^2) and take m-fold steps, which
    // restore quadratic convergence and pin the zero to full precision.
    if (converged) {
      for (int it = 0; it < 8 && std::abs(f) > 0.0; ++it) {
        cplx fplus = det_at(z + dstep), fminus = det_at(z - dstep);
        cplx fp = (fplus - fminus) / (2.0 * dstep);
        if (std::abs(fp) == 0.0) break;
        cplx fpp = (fplus - 2.0 * f + fminus) / (dstep * dstep);
        double m_est = 1.0;
        cplx ratio = f * fpp / (fp * fp);
        if (std::abs(ratio) > 0.2 && std::abs(ratio - 1.0) > 1e-3)
          m_est = std::clamp(std::round((1.0 / (1.0 - ratio)).real()), 1.0,
                             static_cast<double>(n));
        cplx z_next = z - m_est * f / fp;
        cplx f_next = det_at(z_next);
        if (!(std::abs(f_next) < std::abs(f))) break;  // noise floor reached
        z = z_next;
        f = f_next;
        ++rep.newton_iterations;
      }
    }
    if (!converged || std::abs(f) > 1e-8 * local_scale ||
        std::abs(z) > window) {
      if (!converged) ++rep.diverged_seeds;
      return;
    }

    for (const ScanZero& known : zeros)
      if (std::abs(known.z - z) <= 1e-6 * (1.0 + std::abs(z))) return;

    Eigen::JacobiSVD<CMat> svd(assemble(z));
    const Vec& sv = svd.singularValues();
    int mult = 0;
    for (int i = 0; i < sv.size(); ++i)
      if (sv(i) <= 1e-8 * std::max(1.0, sv(0))) ++mult;
    if (mult == 0) mult = 1;
    zeros.push_back({z, mult});
    rep.max_residual = std::max(rep.max_residual, std::abs(f));
  };

  // Seed at every grid-local minimum of |det| inside the window; in
  // particular this catches zeros landing on or next to a grid point, where
  // the cell winding below is unreliable.
  for (int iy = 1; iy + 1 < nx; ++iy) {
    for (int ix = 1; ix + 1 < nx; ++ix) {
      double v = mag(ix, iy);
      if (v > mag(ix - 1, iy) || v > mag(ix + 1, iy) || v > mag(ix, iy - 1) ||
          v > mag(ix, iy + 1))
        continue;
      cplx z((ix - half) * resolution, (iy - half) * resolution);
      if (std::abs(z) > window + resolution) continue;
      polish(z, std::max({1.0, mag(ix - 1, iy), mag(ix + 1, iy),
                          mag(ix, iy - 1), mag(ix, iy + 1)}));
    }
  }

  // Argument-principle seeding: the determinant is holomorphic, so its phase
  // winds by 2 pi around every enclosed zero.  A zero whose conical basin is
  // narrower than the grid spacing need not produce a grid-local minimum
  // (magnitudes can descend monotonically into a neighbouring basin), but the
  // winding over the cell still detects it.
  for (int iy = 0; iy + 1 < nx; ++iy) {
    for (int ix = 0; ix + 1 < nx; ++ix) {
      cplx c[4] = {det_g(ix, iy), det_g(ix + 1, iy), det_g(ix + 1, iy + 1),
                   det_g(ix, iy + 1)};
      bool usable = true;
      for (const cplx& corner : c)
        if (!(std::abs(corner) > 0.0) || !std::isfinite(std::abs(corner)))
          usable = false;
      if (!usable) continue;  // a vanishing corner is a local-minimum seed
      double winding = 0.0;
      for (int e = 0; e < 4; ++e) winding += std::arg(c[(e + 1) % 4] / c[e]);
      if (std::abs(winding) < std::numbers::pi) continue;
      cplx z((ix + 0.5 - half) * resolution, (iy + 0.5 - half) * resolution);
      if (std::abs(z) > window + resolution) continue;
      polish(z, std::max({1.0, std::abs(c[0]), std::abs(c[1]),
                          std::abs(c[2]), std::abs(c[3])}));
    }
  }

  std::sort(zeros.begin(), zeros.end(), [](const ScanZero& a, const ScanZero& b) {
    double ma = std::abs(a.z), mb = std::abs(b.z);
    if (std::abs(ma - mb) > 1e-12 * (1.0 + ma)) return ma < mb;
    return std::arg(a.z) < std::arg(b.z);
  });
  rep.zeros_found = std::move(zeros);
  return rep;
}

// ---------------------------------------------------------------------------
// Jacobi integration
// ---------------------------------------------------------------------------

Vec jacobi_integrate(const Mat& ad_v2, const Vec& y0, const Vec& yp0, double t,
                     int steps) {
  if (ad_v2.rows() != ad_v2.cols() || ad_v2.rows() != y0.size() ||
      y0.size() != yp0.size())
    throw InvalidParams("jacobi_integrate dimensions disagree");
  steps = std::max(1, steps);
  const double h = t / steps;
  Vec y = y0, v = yp0;
  for (int k = 0; k < steps; ++k) {
    Vec k1y = v, k1v = ad_v2 * y;
    Vec k2y = v + 0.5 * h * k1v, k2v = ad_v2 * (y + 0.5 * h * k1y);
    Vec k3y = v + 0.5 * h * k2v, k3v = ad_v2 * (y + 0.5 * h * k2y);
    Vec k4y = v + h * k3v, k4v = ad_v2 * (y + h * k3y);
    y += (h / 6.0) * (k1y + 2.0 * k2y + 2.0 * k3y + k4y);
    v += (h / 6.0) * (k1v + 2.0 * k2v + 2.0 * k3v + k4v);
  }
  return y;
}

// ---------------------------------------------------------------------------
// finite-difference shape estimate
// ---------------------------------------------------------------------------

VariationEstimate variation_shape_estimate(const SymmetricPair& pair,
                                           const Vec& w, const Vec& driver,
                                           const Vec& normal, double step) {
  const LieAlgebra& g = pair.algebra();
  if (!(step > 0) || step > 0.1)
    throw StepTooLarge("variation step must lie in (0, 0.1]");
  if (!pair.q().contains(w) || !pair.q().contains(normal))
    throw InvalidParams("w and normal must lie in q");

  Mat w_amb = g.realize(w);
  Mat z_amb = g.realize(driver);
  Mat grp = w_amb.exp();
  Mat grp_inv = (-w_amb).exp();

  // chart: exp(u Z) Exp(w) = g exp(xi(u)) H with
  //        m(u) sigma(m(u))^{-1} = exp(2 xi(u)),  m(u) = g^{-1} exp(u Z) g
  auto xi = [&](double u) -> Vec {
    Mat m = grp_inv * (u * z_amb).exp() * grp;
    Mat c = m * pair.sigma().apply_group(m).inverse();
    Mat l = c.log();
    return g.coordinates(0.5 * l, 1e-5);
  };

  VariationEstimate est;
  // velocity of the curve at u = 0 in the same chart
  est.velocity = pair.q().project(g.coordinates(grp_inv * z_amb * grp, 1e-6));

  // Richardson-extrapolated central second difference (xi(0) = 0)
  auto second = [&](double h) { return ((xi(h) + xi(-h)) / (h * h)).eval(); };
  Vec d1 = second(step);
  Vec d2 = second(0.5 * step);
  Vec acc = (4.0 * d2 - d1) / 3.0;
  est.pairing = g.killing_form(acc, normal);
  return est;
}

} // namespace orbitlab::oracle

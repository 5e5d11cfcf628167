#include "orbitlab/orbits.hpp"

#include "orbitlab/errors.hpp"
#include "orbitlab/linalg.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/QR>

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

namespace orbitlab {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kLatticeTol = 1e-9;   ///< distance to i*pi*Z deciding "singular"
constexpr double kSeriesBranch = 1e-4; ///< removable-singularity series branch
constexpr double kResidTol = 1e-7;     ///< assembly / containment residuals

bool contains_c(const Subspace& sub, const CVec& x, double tol = 1e-8) {
  CMat proj = sub.projector.cast<cplx>();
  return (proj * x - x).norm() <= tol * std::max(1.0, x.norm());
}

/// Lattice classification of one root value on w.
struct RootClass {
  cplx val_w{0.0, 0.0};
  bool on_lattice = false;
  long k = 0;
};

RootClass classify_root(const RestrictedRoot& root, const Vec& w_coeffs) {
  RootClass rc;
  rc.val_w = root.value_at(w_coeffs);
  LatticePoint lp = nearest_lattice_point(rc.val_w);
  rc.on_lattice = lp.distance <= kLatticeTol;
  rc.k = lp.k;
  return rc;
}

/// Tangent-root indices of the orbit through exp(w); lattice hits with k != 0
/// raise SingularDirection, k == 0 hits land in `annihilated`.
std::vector<int> tangent_root_indices(const RestrictedRootSystem& sys,
                                      const Vec& w_coeffs,
                                      std::vector<int>* annihilated) {
  std::vector<int> tangent;
  for (int i = 0; i < static_cast<int>(sys.roots.size()); ++i) {
    RootClass rc = classify_root(sys.roots[i], w_coeffs);
    if (!rc.on_lattice) {
      tangent.push_back(i);
    } else if (rc.k == 0) {
      if (annihilated) annihilated->push_back(i);
    } else {
      throw SingularDirection("root " + std::to_string(i) +
                              " meets the lattice i*pi*Z at k = " +
                              std::to_string(rc.k) +
                              "; the closed-form spectrum degenerates there");
    }
  }
  return tangent;
}

CMat hstack(const std::vector<const CMat*>& blocks, int rows) {
  int cols = 0;
  for (const CMat* b : blocks) cols += static_cast<int>(b->cols());
  CMat out(rows, cols);
  int at = 0;
  for (const CMat* b : blocks) {
    out.middleCols(at, static_cast<int>(b->cols())) = *b;
    at += static_cast<int>(b->cols());
  }
  return out;
}

/// Shared functional calculus: eigendecomposition when the operator is
/// semisimple (verified by reconstruction residual), caller-supplied series
/// fallback otherwise.
class MatrixCalculus {
public:
  explicit MatrixCalculus(CMat op) : op_(std::move(op)) {
    const int n = static_cast<int>(op_.rows());
    if (n == 0) {
      eigen_ok_ = true;
      return;
    }
    Eigen::ComplexEigenSolver<CMat> ces(op_);
    if (ces.info() != Eigen::Success) return;
    CMat v = ces.eigenvectors();
    Eigen::FullPivLU<CMat> lu(v);
    lu.setThreshold(1e-10);
    if (lu.rank() < n) return;
    CMat v_inv = lu.inverse();
    double scale = std::max(1.0, op_.norm());
    if ((v * ces.eigenvalues().asDiagonal() * v_inv - op_).norm() > 1e-8 * scale)
      return;
    eigen_ok_ = true;
    v_ = std::move(v);
    v_inv_ = std::move(v_inv);
    evals_ = ces.eigenvalues();
  }

  bool semisimple() const { return eigen_ok_; }

  CMat apply(const std::function<cplx(cplx)>& f,
             const std::function<CMat()>& series_fallback) const {
    const int n = static_cast<int>(op_.rows());
    if (n == 0) return CMat::Zero(0, 0);
    if (!eigen_ok_) return series_fallback();
    CVec fd(n);
    for (int i = 0; i < n; ++i) fd(i) = f(evals_(i));
    return v_ * fd.asDiagonal() * v_inv_;
  }

private:
  CMat op_;
  bool eigen_ok_ = false;
  CMat v_, v_inv_;
  CVec evals_;
};

/// Sum of an even power series  a0 * (I + sum_{j>=1} prod_{i<=j} ratio(i) M^j)
/// evaluated with adaptive degree; `ratio(j)` is coefficient(j)/coefficient(j-1).
CMat even_series(const CMat& m, double a0,
                 const std::function<double(int)>& ratio) {
  const int n = static_cast<int>(m.rows());
  CMat term = a0 * CMat::Identity(n, n);
  CMat sum = term;
  double prev = term.norm();
  for (int j = 1; j <= 256; ++j) {
    term = (term * m).eval() * ratio(j);
    sum += term;
    double tn = term.norm();
    if (tn <= 1e-12 * std::max(1.0, sum.norm()) &&
        prev <= 1e-12 * std::max(1.0, sum.norm()))
      return sum;
    prev = tn;
  }
  throw InvalidParams("matrix power series did not converge within 256 terms");
}

double si_ratio(int j) { return 1.0 / (2.0 * j * (2.0 * j + 1.0)); }
double co_ratio(int j) { return 1.0 / ((2.0 * j - 1.0) * 2.0 * j); }

} // namespace

int OrbitSpectrum::covered_dim() const {
  int total = 0;
  for (const SpectrumEntry& e : entries)
    if (!e.annihilates_w) total += e.mult;
  return total;
}

OrbitPoint make_orbit_point(const SymmetricPair& pair, const Vec& w) {
  if (w.size() != pair.algebra().dim())
    throw InvalidParams("orbit point: coordinate size does not match algebra");
  if (!pair.q().contains(w))
    throw InvalidParams("orbit point: w is not in q");
  if (!pair.algebra().is_semisimple_element(w))
    throw NonSemisimpleW("orbit point: ad(w) has a nilpotent part");
  return OrbitPoint{pair.algebra_ptr(), w};
}

Vec cartan_coefficients(const CartanSubspace& cartan, const Vec& element) {
  if (cartan.rank() == 0)
    throw WNotInCartan("element of an empty Cartan subspace requested");
  if (element.size() != cartan.basis.rows())
    throw WNotInCartan("coordinate size does not match the Cartan subspace");
  Mat gram = cartan.basis.transpose() * cartan.basis;
  Vec c = gram.ldlt().solve(cartan.basis.transpose() * element);
  double resid = (cartan.basis * c - element).norm();
  if (resid > 1e-8 * std::max(1.0, element.norm()))
    throw WNotInCartan("element is not in the span of the Cartan subspace");
  return c;
}

LatticePoint nearest_lattice_point(cplx value) {
  LatticePoint lp;
  lp.k = std::lround(value.imag() / kPi);
  lp.distance = std::hypot(value.real(), value.imag() - static_cast<double>(lp.k) * kPi);
  return lp;
}

TangentSplit isotropy_tangent_split(const OrbitPoint& point,
                                    const RestrictedRootSystem& system) {
  if (point.algebra.get() != system.pair.algebra_ptr().get())
    throw AlgebraMismatch("orbit point and root system use different algebras");
  Vec wc = cartan_coefficients(system.cartan, point.w);

  TangentSplit split;
  const int n = system.pair.algebra().dim();
  std::vector<const CMat*> tangent_blocks;
  std::vector<const CMat*> normal_blocks;
  normal_blocks.push_back(&system.zero_q);
  for (int i = 0; i < static_cast<int>(system.roots.size()); ++i) {
    RootClass rc = classify_root(system.roots[i], wc);
    if (rc.on_lattice) {
      split.excluded_roots.push_back(i);
      normal_blocks.push_back(&system.roots[i].q_space);
    } else {
      split.tangent_roots.push_back(i);
      tangent_blocks.push_back(&system.roots[i].q_space);
    }
  }
  split.tangent = hstack(tangent_blocks, n);
  split.normal = hstack(normal_blocks, n);
  return split;
}

OrbitSpectrum isotropy_shape_spectrum(const OrbitPoint& point, const Vec& a,
                                      const RestrictedRootSystem& system) {
  if (point.algebra.get() != system.pair.algebra_ptr().get())
    throw AlgebraMismatch("orbit point and root system use different algebras");
  Vec wc = cartan_coefficients(system.cartan, point.w);
  Vec ac;
  try {
    ac = cartan_coefficients(system.cartan, a);
  } catch (const WNotInCartan&) {
    throw InvalidParams("shape direction is not in the Cartan subspace");
  }

  OrbitSpectrum spec;
  for (int i = 0; i < static_cast<int>(system.roots.size()); ++i) {
    const RestrictedRoot& root = system.roots[i];
    RootClass rc = classify_root(root, wc);
    SpectrumEntry entry;
    entry.root_index = i;
    entry.mult = root.mult_q;
    entry.part = SpectrumPart::QPart;
    if (rc.on_lattice) {
      if (rc.k != 0)
        throw SingularDirection(
            "root " + std::to_string(i) + " meets the lattice i*pi*Z at k = " +
            std::to_string(rc.k) + "; shape operator undefined there");
      entry.annihilates_w = true;
      entry.eigenvalue = cplx(0.0, 0.0);
    } else {
      // -sqrt(-1) alpha(a) / tan(sqrt(-1) alpha(w)) == -alpha(a)/tanh(alpha(w))
      entry.eigenvalue = -root.value_at(ac) / std::tanh(rc.val_w);
    }
    spec.entries.push_back(entry);
  }
  spec.space_dim = spec.covered_dim();
  return spec;
}

OrbitSpectrum jacobi_spectrum(const OrbitPoint& point, const Vec& v,
                              const RestrictedRootSystem& system) {
  if (point.algebra.get() != system.pair.algebra_ptr().get())
    throw AlgebraMismatch("orbit point and root system use different algebras");
  cartan_coefficients(system.cartan, point.w); // validates the point
  Vec vc;
  try {
    vc = cartan_coefficients(system.cartan, v);
  } catch (const WNotInCartan&) {
    throw InvalidParams("jacobi direction is not in the Cartan subspace");
  }

  OrbitSpectrum spec;
  for (int i = 0; i < static_cast<int>(system.roots.size()); ++i) {
    const RestrictedRoot& root = system.roots[i];
    SpectrumEntry entry;
    entry.root_index = i;
    entry.mult = root.mult_q;
    entry.part = SpectrumPart::QPart;
    cplx val = root.value_at(vc);
    entry.eigenvalue = val * val;
    spec.entries.push_back(entry);
  }
  SpectrumEntry zero;
  zero.root_index = -1;
  zero.eigenvalue = cplx(0.0, 0.0);
  zero.mult = static_cast<int>(system.zero_q.cols());
  zero.part = SpectrumPart::ZeroPart;
  spec.entries.push_back(zero);
  spec.space_dim = spec.covered_dim();
  return spec;
}

DcoDsi dco_dsi(const SymmetricPair& pair, const Vec& v, cplx z) {
  const LieAlgebra& g = pair.algebra();
  if (v.size() != g.dim() || !pair.q().contains(v))
    throw InvalidParams("dco_dsi: direction is not in q");
  Mat adv = g.ad(v);
  Mat adv2 = adv * adv;
  double resid = 0.0;
  Mat kq = pair.q().restrict_op(adv2, &resid);
  if (resid > 1e-8)
    throw InvalidParams("dco_dsi: ad(v)^2 does not preserve q");
  CMat az = (z * z) * kq.cast<cplx>();

  MatrixCalculus calc(az);
  auto f_co = [](cplx lam) { return std::cosh(std::sqrt(lam)); };
  auto f_si = [](cplx lam) {
    cplx u = std::sqrt(lam);
    if (std::abs(u) < kSeriesBranch)
      return cplx(1.0, 0.0) + lam / 6.0 + lam * lam / 120.0;
    return std::sinh(u) / u;
  };
  DcoDsi out;
  out.dco = calc.apply(f_co, [&] { return even_series(az, 1.0, co_ratio); });
  out.dsi = calc.apply(f_si, [&] { return even_series(az, 1.0, si_ratio); });
  return out;
}

CVec strong_jacobi_field(const SymmetricPair& pair, const Vec& v, const CVec& x,
                         const CVec& ax, double s) {
  if (x.size() != pair.algebra().dim() || ax.size() != x.size())
    throw InvalidParams("jacobi field: coordinate sizes do not match");
  if (!contains_c(pair.q(), x) || !contains_c(pair.q(), ax))
    throw InvalidParams("jacobi field: initial data must lie in q^c");
  DcoDsi d = dco_dsi(pair, v, cplx(s, 0.0));
  CVec xq = pair.q().drop(x);
  CVec axq = pair.q().drop(ax);
  CVec yq = d.dco * xq - s * (d.dsi * axq);
  return pair.q().lift(yq);
}

FocalSet complex_focal_radii(const OrbitPoint& point, const Vec& a,
                             const RestrictedRootSystem& system,
                             double window_radius) {
  if (window_radius < 0.0)
    throw InvalidParams("focal radii: window radius must be nonnegative");
  Vec wc = cartan_coefficients(system.cartan, point.w);
  Vec ac;
  try {
    ac = cartan_coefficients(system.cartan, a);
  } catch (const WNotInCartan&) {
    throw InvalidParams("focal radii: direction is not in the Cartan subspace");
  }

  FocalSet out;
  std::vector<int> tangent = tangent_root_indices(system, wc, nullptr);
  double a_scale = std::max(1.0, ac.norm());
  for (int i : tangent) {
    const RestrictedRoot& root = system.roots[i];
    cplx val_a = root.value_at(ac);
    cplx val_w = root.value_at(wc);
    if (std::abs(val_a) <= kLatticeTol * a_scale * std::max(1.0, root.values.norm()))
      continue; // the root sees no motion along a: no kernel condition
    FocalFamily fam;
    fam.root_index = i;
    fam.mult = root.mult_q;
    fam.offset = -val_w / val_a;
    fam.step = kPi / (cplx(0.0, 1.0) * val_a);
    out.families.push_back(fam);

    // |offset + k step|^2 <= R^2 is a real quadratic in k.
    double qa = std::norm(fam.step);
    double qb = 2.0 * (std::conj(fam.offset) * fam.step).real();
    double qc = std::norm(fam.offset) - window_radius * window_radius;
    double disc = qb * qb - 4.0 * qa * qc;
    if (disc < 0.0) continue;
    double lo = (-qb - std::sqrt(disc)) / (2.0 * qa);
    double hi = (-qb + std::sqrt(disc)) / (2.0 * qa);
    for (long k = std::lround(std::ceil(lo - 1e-9));
         k <= std::lround(std::floor(hi + 1e-9)); ++k) {
      cplx zv = fam.offset + static_cast<double>(k) * fam.step;
      if (std::abs(zv) > window_radius * (1.0 + 1e-12) + 1e-12) continue;
      FocalWindowEntry e;
      e.z = zv;
      e.k = static_cast<int>(k);
      e.root_index = i;
      e.mult = fam.mult;
      out.window.push_back(e);
    }
  }
  std::sort(out.window.begin(), out.window.end(),
            [](const FocalWindowEntry& l, const FocalWindowEntry& r) {
              double ln = std::abs(l.z), rn = std::abs(r.z);
              if (std::abs(ln - rn) > 1e-12) return ln < rn;
              if (std::abs(l.z.real() - r.z.real()) > 1e-12)
                return l.z.real() < r.z.real();
              if (std::abs(l.z.imag() - r.z.imag()) > 1e-12)
                return l.z.imag() < r.z.imag();
              if (l.root_index != r.root_index) return l.root_index < r.root_index;
              return l.k < r.k;
            });
  return out;
}

CVec partial_tube_shape(const SymmetricPair& pair, const Vec& v,
                        const Vec& w_dir, const CVec& x, const CVec& av_x,
                        const CVec& aw_x) {
  const LieAlgebra& g = pair.algebra();
  const int n = g.dim();
  if (v.size() != n || w_dir.size() != n || x.size() != n ||
      av_x.size() != n || aw_x.size() != n)
    throw InvalidParams("partial tube: coordinate sizes do not match");
  if (!pair.q().contains(v) || !pair.q().contains(w_dir))
    throw InvalidParams("partial tube: v and w must lie in q");
  if (!contains_c(pair.q(), x) || !contains_c(pair.q(), av_x) ||
      !contains_c(pair.q(), aw_x))
    throw InvalidParams("partial tube: tangent data must lie in q^c");
  double span_scale = std::max(1.0, v.norm() * w_dir.norm());
  if (g.bracket(v, w_dir).norm() > 1e-8 * span_scale)
    throw NonAbelianSpan("partial tube: Span{v, w} is not abelian");

  CMat adv = g.ad(v).cast<cplx>();
  CMat adw = g.ad(w_dir).cast<cplx>();
  CMat adv_sq = adv * adv;
  MatrixCalculus calc(adv);

  // sqrt(-1) sin(sqrt(-1) x) = -sinh(x)
  auto k1 = [](cplx mu) { return -std::sinh(mu); };
  // sqrt(-1) sin(sqrt(-1) x)/x = -sinh(x)/x
  auto k2 = [](cplx mu) {
    if (std::abs(mu) < kSeriesBranch) {
      cplx m2 = mu * mu;
      return -(cplx(1.0, 0.0) + m2 / 6.0 + m2 * m2 / 120.0);
    }
    return -std::sinh(mu) / mu;
  };
  // (cos(sqrt(-1) x) - 1)/x + (sqrt(-1) sin(sqrt(-1) x) + x)/x^2
  //   = (cosh(x) - 1)/x + (x - sinh(x))/x^2
  auto k3 = [](cplx mu) {
    if (std::abs(mu) < kSeriesBranch) {
      cplx m2 = mu * mu;
      return mu / 3.0 + mu * m2 / 30.0 + mu * m2 * m2 / 840.0;
    }
    return (std::cosh(mu) - 1.0) / mu + (mu - std::sinh(mu)) / (mu * mu);
  };

  CMat m1 = calc.apply(k1, [&] { return CMat(adv * even_series(adv_sq, -1.0, si_ratio)); });
  CMat m2 = calc.apply(k2, [&] { return even_series(adv_sq, -1.0, si_ratio); });
  CMat m3 = calc.apply(k3, [&] {
    auto ratio = [](int j) {
      double m = j;
      return (m + 1.0) / (m * (2.0 * m + 2.0) * (2.0 * m + 3.0));
    };
    return CMat(adv * even_series(adv_sq, 1.0 / 3.0, ratio));
  });

  return adw * (m1 * x) - m2 * aw_x + m3 * (adw * av_x);
}

AssembledOperator assemble_real_operator(const RestrictedRootSystem& system,
                                         const std::vector<int>& root_indices,
                                         const std::vector<cplx>& scalars) {
  if (root_indices.size() != scalars.size())
    throw InvalidParams("assemble: one scalar per root required");
  const int n = system.pair.algebra().dim();
  const int count = static_cast<int>(root_indices.size());
  for (int i : root_indices)
    if (i < 0 || i >= static_cast<int>(system.roots.size()))
      throw InvalidParams("assemble: root index out of range");

  // Conjugation closure: conj(q_alpha^c) is the root space of the root whose
  // value vector is ±conj(values) (the sign is the ±-merging of root spaces),
  // and the scalar family must be conjugate-equivariant.
  auto matches = [](const CVec& u, const CVec& w) {
    double tol = 1e-6 * std::max(1.0, u.norm());
    return (u - w).norm() <= tol || (u + w).norm() <= tol;
  };
  int total_mult = 0;
  for (int t = 0; t < count; ++t) {
    const CVec vals = system.roots[root_indices[t]].values.conjugate();
    int partner = -1;
    for (int u = 0; u < count; ++u) {
      if (matches(system.roots[root_indices[u]].values, vals)) {
        partner = u;
        break;
      }
    }
    if (partner < 0)
      throw InvalidParams("assemble: root list is not conjugation-closed");
    if (std::abs(scalars[partner] - std::conj(scalars[t])) >
        1e-8 * std::max(1.0, std::abs(scalars[t])))
      throw InvalidParams("assemble: scalars are not conjugate-equivariant");
    total_mult += system.roots[root_indices[t]].mult_q;
  }

  AssembledOperator out;
  if (count == 0) {
    out.basis = Mat::Zero(n, 0);
    out.matrix = Mat::Zero(0, 0);
    return out;
  }

  // Real points of the conjugation-stable sum of root spaces.
  Mat re_im(n, 0);
  for (int t = 0; t < count; ++t) {
    const CMat& q = system.roots[root_indices[t]].q_space;
    Mat add(n, 2 * q.cols());
    add << q.real(), q.imag();
    Mat joined(n, re_im.cols() + add.cols());
    joined << re_im, add;
    re_im = joined;
  }
  Mat basis = la::column_space(re_im);
  if (basis.cols() != total_mult)
    throw InvalidParams(
        "assemble: real form dimension does not match total multiplicity");

  std::vector<const CMat*> blocks;
  for (int t = 0; t < count; ++t)
    blocks.push_back(&system.roots[root_indices[t]].q_space);
  CMat q_all = hstack(blocks, n);
  CMat q_scaled = q_all;
  {
    int at = 0;
    for (int t = 0; t < count; ++t) {
      int m = system.roots[root_indices[t]].mult_q;
      q_scaled.middleCols(at, m) *= scalars[t];
      at += m;
    }
  }

  Eigen::ColPivHouseholderQR<CMat> qr(q_all);
  CMat coords = qr.solve(basis.cast<cplx>());
  if ((q_all * coords - basis.cast<cplx>()).norm() >
      kResidTol * std::max(1.0, basis.norm()))
    throw InvalidParams("assemble: real basis does not lie in the root spaces");
  CMat applied = q_scaled * coords;
  double scale = std::max(1.0, applied.norm());
  if (applied.imag().norm() > kResidTol * scale)
    throw InvalidParams("assemble: operator is not real on the real points");

  out.basis = basis;
  out.matrix = basis.transpose() * applied.real();
  if ((basis * out.matrix - applied.real()).norm() > kResidTol * scale)
    throw InvalidParams("assemble: operator does not preserve the real span");
  return out;
}

namespace {

AssembledOperator tangent_operator(const OrbitPoint& point, const Vec& dir,
                                   const RestrictedRootSystem& system,
                                   bool shape) {
  if (point.algebra.get() != system.pair.algebra_ptr().get())
    throw AlgebraMismatch("orbit point and root system use different algebras");
  Vec wc = cartan_coefficients(system.cartan, point.w);
  Vec dc;
  try {
    dc = cartan_coefficients(system.cartan, dir);
  } catch (const WNotInCartan&) {
    throw InvalidParams("direction is not in the Cartan subspace");
  }
  std::vector<int> tangent = tangent_root_indices(system, wc, nullptr);
  std::vector<cplx> scalars;
  scalars.reserve(tangent.size());
  for (int i : tangent) {
    const RestrictedRoot& root = system.roots[i];
    cplx val_d = root.value_at(dc);
    if (shape) {
      cplx val_w = root.value_at(wc);
      scalars.push_back(-val_d / std::tanh(val_w));
    } else {
      scalars.push_back(val_d * val_d);
    }
  }
  return assemble_real_operator(system, tangent, scalars);
}

} // namespace

AssembledOperator isotropy_shape_operator(const OrbitPoint& point, const Vec& a,
                                          const RestrictedRootSystem& system) {
  return tangent_operator(point, a, system, true);
}

AssembledOperator jacobi_operator(const OrbitPoint& point, const Vec& v,
                                  const RestrictedRootSystem& system) {
  return tangent_operator(point, v, system, false);
}

} // namespace orbitlab

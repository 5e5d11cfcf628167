#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "orbitlab/errors.hpp"
#include "orbitlab/oracle.hpp"
#include "orbitlab/orbits.hpp"
#include "test_support.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/QR>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <vector>

using namespace orbitlab;
using testsupport::sample_pairs;
using testsupport::sl2_pair;
using testsupport::subspace_distance;

namespace {

struct SystemBundle {
  SymmetricPair pair;
  RestrictedRootSystem sys;
};

const std::vector<SystemBundle>& bundles() {
  static const std::vector<SystemBundle> all = [] {
    std::vector<SystemBundle> v;
    for (const SymmetricPair& p : sample_pairs()) {
      CartanSubspace cs = maximal_abelian(p.algebra(), p.q_p(), p.q_f(), 42);
      v.push_back({p, restricted_roots(p, cs, 42)});
    }
    return v;
  }();
  return all;
}

/// Cartan coefficients whose root values stay away from the singular lattice,
/// from zero, and from overflow territory.
Vec generic_coeffs(const RestrictedRootSystem& sys, std::mt19937& rng,
                   double scale = 0.25) {
  std::normal_distribution<double> n(0.0, 1.0);
  for (int tries = 0; tries < 500; ++tries) {
    Vec c(sys.cartan.rank());
    for (int i = 0; i < c.size(); ++i) c(i) = scale * n(rng);
    bool ok = true;
    for (const RestrictedRoot& root : sys.roots) {
      cplx val = root.value_at(c);
      if (nearest_lattice_point(val).distance < 0.05 || std::abs(val) > 2.5) {
        ok = false;
        break;
      }
    }
    if (ok) return c;
  }
  REQUIRE_MESSAGE(false, "no generic Cartan element found");
  return Vec();
}

CVec cv(const Vec& v) { return v.cast<cplx>(); }

/// Restriction of an operator on q^c to an invariant column span (q coords).
CMat restrict_cols(const CMat& op_q, const CMat& cols_q) {
  Eigen::ColPivHouseholderQR<CMat> qr(cols_q);
  CMat sol = qr.solve(op_q * cols_q);
  double scale = std::max(1.0, op_q.norm() * std::max(1.0, cols_q.norm()));
  REQUIRE((cols_q * sol - op_q * cols_q).norm() <= 1e-7 * scale);
  return sol;
}

struct RealRadius {
  double t = 0.0;
  int mult = 0;
};

/// Positive real points of the focal window, merged across families.
std::vector<RealRadius> real_radii(const FocalSet& fs) {
  std::vector<RealRadius> out;
  for (const FocalWindowEntry& e : fs.window) {
    if (std::abs(e.z.imag()) > 1e-8 * (1.0 + std::abs(e.z))) continue;
    if (e.z.real() <= 1e-9) continue;
    bool merged = false;
    for (RealRadius& r : out) {
      if (std::abs(r.t - e.z.real()) <= 1e-7) {
        r.mult += e.mult;
        merged = true;
        break;
      }
    }
    if (!merged) out.push_back({e.z.real(), e.mult});
  }
  std::sort(out.begin(), out.end(),
            [](const RealRadius& a, const RealRadius& b) { return a.t < b.t; });
  return out;
}

} // namespace

TEST_CASE("rank-one worked example pins split, spectrum, focal set and fields") {
  const SystemBundle& b = bundles()[0]; // sl(2,R), Ad(diag(1,-1))
  const LieAlgebra& g = b.pair.algebra();
  // basis order: H = diag(1,-1), E = e12, F = e21
  Vec e_plus_f = Vec::Zero(3), e_minus_f = Vec::Zero(3), e_only = Vec::Zero(3),
      h_only = Vec::Zero(3);
  e_plus_f(1) = e_plus_f(2) = 1.0;
  e_minus_f(1) = 1.0;
  e_minus_f(2) = -1.0;
  e_only(1) = 1.0;
  h_only(0) = 1.0;

  const double t = 0.3, s = 0.7;

  CHECK_THROWS_AS(make_orbit_point(b.pair, h_only), InvalidParams);
  CHECK_THROWS_AS(make_orbit_point(b.pair, e_only), NonSemisimpleW);

  OrbitPoint pt = make_orbit_point(b.pair, t * e_plus_f);

  SUBCASE("tangent split") {
    TangentSplit split = isotropy_tangent_split(pt, b.sys);
    REQUIRE(split.tangent_roots.size() == 1);
    CHECK(split.excluded_roots.empty());
    CHECK(subspace_distance(split.tangent, CMat(cv(e_minus_f))) < 1e-9);
    CHECK(subspace_distance(split.normal, CMat(cv(e_plus_f))) < 1e-9);

    TangentSplit at_origin =
        isotropy_tangent_split(make_orbit_point(b.pair, Vec::Zero(3)), b.sys);
    CHECK(at_origin.tangent.cols() == 0);
    CHECK(at_origin.normal.cols() == 2);

    Vec not_in_cartan = e_minus_f;
    CHECK_THROWS_AS(
        isotropy_tangent_split(make_orbit_point(b.pair, not_in_cartan), b.sys),
        WNotInCartan);
  }

  SUBCASE("shape spectrum and operator") {
    OrbitSpectrum spec = isotropy_shape_spectrum(pt, s * e_plus_f, b.sys);
    REQUIRE(spec.entries.size() == 1);
    CHECK(spec.entries[0].mult == 1);
    CHECK(!spec.entries[0].annihilates_w);
    CHECK(spec.space_dim == 1);
    // -sqrt(-1)*2s / tan(sqrt(-1)*2t) = -2s/tanh(2t)
    cplx expected(-2.0 * s / std::tanh(2.0 * t), 0.0);
    CHECK(std::abs(spec.entries[0].eigenvalue - expected) < 1e-10);

    OrbitSpectrum zero_dir = isotropy_shape_spectrum(pt, Vec::Zero(3), b.sys);
    CHECK(std::abs(zero_dir.entries[0].eigenvalue) < 1e-12);

    AssembledOperator op = isotropy_shape_operator(pt, s * e_plus_f, b.sys);
    REQUIRE(op.dim() == 1);
    CHECK(std::abs(op.matrix(0, 0) - expected.real()) < 1e-10);
    CHECK(subspace_distance(op.basis, Mat(e_minus_f)) < 1e-9);
  }

  SUBCASE("jacobi spectrum") {
    OrbitSpectrum jac = jacobi_spectrum(pt, e_plus_f, b.sys);
    REQUIRE(jac.entries.size() == 2);
    CHECK(std::abs(jac.entries[0].eigenvalue - cplx(4.0, 0.0)) < 1e-10);
    CHECK(jac.entries[1].part == SpectrumPart::ZeroPart);
    CHECK(jac.entries[1].mult == 1);
    CHECK(jac.space_dim == 2);
    CHECK_THROWS_AS(jacobi_spectrum(pt, e_minus_f, b.sys), InvalidParams);
  }

  SUBCASE("focal lattice") {
    FocalSet fs = complex_focal_radii(pt, s * e_plus_f, b.sys, 5.0);
    REQUIRE(fs.families.size() == 1);
    const FocalFamily& fam = fs.families[0];
    CHECK(fam.mult == 1);
    CHECK(std::abs(fam.offset - cplx(-t / s, 0.0)) < 1e-12);
    CHECK(std::abs(std::abs(fam.step) - std::numbers::pi / (2.0 * s)) < 1e-12);
    CHECK(std::abs(fam.step.real()) < 1e-12);
    // window |z| <= 5: k in {-2,...,2}
    REQUIRE(fs.window.size() == 5);
    CHECK(std::abs(fs.window[0].z - cplx(-t / s, 0.0)) < 1e-12);
    CHECK(std::abs(fs.window[1].z.real() + t / s) < 1e-12);
    CHECK(std::abs(std::abs(fs.window[1].z.imag()) - std::numbers::pi / (2.0 * s)) <
          1e-12);
    CHECK(std::abs(fs.window[1].z + fs.window[2].z - cplx(-2.0 * t / s, 0.0)) <
          1e-12);

    // a annihilated by every root: empty focal data
    FocalSet none = complex_focal_radii(pt, Vec::Zero(3), b.sys, 5.0);
    CHECK(none.families.empty());
    CHECK(none.window.empty());
    CHECK_THROWS_AS(complex_focal_radii(pt, s * e_plus_f, b.sys, -1.0),
                    InvalidParams);
  }

  SUBCASE("cos/sinc operators") {
    DcoDsi id = dco_dsi(b.pair, e_plus_f, cplx(0.0, 0.0));
    CHECK((id.dco - CMat::Identity(2, 2)).norm() < 1e-12);
    CHECK((id.dsi - CMat::Identity(2, 2)).norm() < 1e-12);

    cplx z(0.8, 0.3);
    DcoDsi d = dco_dsi(b.pair, e_plus_f, z);
    Mat adv = g.ad(e_plus_f);
    Mat adv2 = adv * adv;
    CMat kq = b.pair.q().restrict_op(adv2).cast<cplx>();
    // cos^2 + sin^2 = 1:  dco^2 - z^2 ad(v)^2 dsi^2 = id
    CMat resid = d.dco * d.dco - z * z * kq * d.dsi * d.dsi -
                 CMat::Identity(2, 2);
    CHECK(resid.norm() < 1e-10);

    CHECK_THROWS_AS(dco_dsi(b.pair, h_only, z), InvalidParams);
  }

  SUBCASE("strongly M-Jacobi field") {
    CVec x = cv(e_minus_f);
    CVec y0 = strong_jacobi_field(b.pair, e_plus_f, x, CVec::Zero(3), 0.0);
    CHECK((y0 - x).norm() < 1e-12);
    // totally geodesic: Y(s) = cosh(2s) X
    double sp = 0.9;
    CVec y = strong_jacobi_field(b.pair, e_plus_f, x, CVec::Zero(3), sp);
    CHECK((y - std::cosh(2.0 * sp) * x).norm() < 1e-10);
    // with A X supplied: Y(s) = (cosh(2s) - lambda sinh(2s)/2) X
    double lambda = -2.0 * s / std::tanh(2.0 * t);
    CVec y2 = strong_jacobi_field(b.pair, e_plus_f, x, lambda * x, sp);
    double expect = std::cosh(2.0 * sp) - lambda * std::sinh(2.0 * sp) / 2.0;
    CHECK((y2 - expect * x).norm() < 1e-10);
  }

  SUBCASE("partial tube horizontal shape") {
    CVec x = cv(e_minus_f);
    CVec zero = CVec::Zero(3);
    // totally geodesic base: only the first term survives and reduces to
    // -beta(w_dir) sinh(beta(v)) X on the root space
    CVec out = partial_tube_shape(b.pair, t * e_plus_f, s * e_plus_f, x, zero, zero);
    CVec expect = -2.0 * s * std::sinh(2.0 * t) * x;
    CHECK((out - expect).norm() < 1e-10);

    CHECK(partial_tube_shape(b.pair, t * e_plus_f, s * e_plus_f, zero, zero, zero)
              .norm() < 1e-14);

    // collapsed tube: the base shape operator in the normal direction returns
    CVec aw = cplx(0.4, 0.1) * x;
    CVec back = partial_tube_shape(b.pair, Vec::Zero(3), s * e_plus_f, x, zero, aw);
    CHECK((back - aw).norm() < 1e-12);

    CHECK_THROWS_AS(partial_tube_shape(b.pair, e_plus_f, e_minus_f, x, zero, zero),
                    NonAbelianSpan);
  }
}

TEST_CASE("tangent/normal splitting laws across the catalogue") {
  std::mt19937 rng(2024);
  for (const SystemBundle& b : bundles()) {
    const LieAlgebra& g = b.pair.algebra();
    Vec wc = generic_coeffs(b.sys, rng);
    OrbitPoint pt = make_orbit_point(b.pair, b.sys.cartan.element(wc));
    TangentSplit split = isotropy_tangent_split(pt, b.sys);

    // generic w: every root contributes to the tangent space
    CHECK(split.excluded_roots.empty());
    CHECK(split.tangent_roots.size() == b.sys.roots.size());

    int mult_total = 0;
    for (const RestrictedRoot& r : b.sys.roots) mult_total += r.mult_q;
    CHECK(split.tangent.cols() == mult_total);
    CHECK(split.tangent.cols() + split.normal.cols() == b.pair.q().dim());

    // principal-type point: the normal space is exactly the centralizer
    CHECK(subspace_distance(split.normal, b.sys.zero_q) < 1e-7);

    // B^c-orthogonal complements inside q^c
    CMat kc = g.killing().cast<cplx>();
    CMat cross = split.tangent.transpose() * kc * split.normal;
    double scale = std::max(1.0, split.tangent.norm() * split.normal.norm() *
                                     kc.norm());
    CHECK(cross.norm() <= 1e-8 * scale);

    // spectrum bookkeeping matches the split
    OrbitSpectrum spec =
        isotropy_shape_spectrum(pt, b.sys.cartan.element(wc), b.sys);
    CHECK(spec.space_dim == split.tangent.cols());
  }
}

TEST_CASE("shape spectrum matches the finite-difference variation oracle") {
  std::mt19937 rng(515);
  std::normal_distribution<double> n(0.0, 1.0);
  for (int bi : {0, 1, 2, 4}) {
    const SystemBundle& b = bundles()[bi];
    const LieAlgebra& g = b.pair.algebra();
    Vec wc = generic_coeffs(b.sys, rng, 0.2);
    Vec ac = generic_coeffs(b.sys, rng, 0.4);
    Vec w = b.sys.cartan.element(wc);
    Vec a = b.sys.cartan.element(ac);
    OrbitPoint pt = make_orbit_point(b.pair, w);
    AssembledOperator shape = isotropy_shape_operator(pt, a, b.sys);
    REQUIRE(shape.dim() > 0);

    for (int trial = 0; trial < 3; ++trial) {
      Vec zc(b.pair.h().dim());
      for (int i = 0; i < zc.size(); ++i) zc(i) = 0.5 * n(rng);
      Vec z = b.pair.h().lift(zc);
      oracle::VariationEstimate est =
          oracle::variation_shape_estimate(b.pair, w, z, a);
      const Vec& x = est.velocity;
      REQUIRE(x.norm() > 1e-8);
      Vec coef = shape.basis.transpose() * x;
      // the orbit velocity lies in the assembled tangent frame
      REQUIRE((shape.basis * coef - x).norm() <= 1e-7 * x.norm());
      Vec ax = shape.basis * (shape.matrix * coef);
      double predicted = g.killing_form(ax, x);
      double tol = 1e-6 * std::max(1.0, std::abs(predicted));
      CHECK_MESSAGE(std::abs(predicted - est.pairing) <= tol,
                    "pair ", bi, ": predicted ", predicted, " vs oracle ",
                    est.pairing);
    }
  }
}

TEST_CASE("focal lattice matches the determinant scan in both directions") {
  std::mt19937 rng(771);
  const double t_max = 3.0;

  // Deterministic antipodal check: along a = -w every tangent root produces
  // the focal radius t = 1 (the orbit through exp(w) collapses toward the
  // base point), with multiplicity the whole tangent dimension.
  for (int bi : {0, 1, 2}) {
    const SystemBundle& b = bundles()[bi];
    Vec wc = generic_coeffs(b.sys, rng, 0.3);
    Vec w = b.sys.cartan.element(wc);
    OrbitPoint pt = make_orbit_point(b.pair, w);
    Vec a = -w;

    FocalSet fs = complex_focal_radii(pt, a, b.sys, 3.2);
    std::vector<RealRadius> mine = real_radii(fs);
    REQUIRE(!mine.empty());
    bool has_one = false;
    int tangent_dim = 0;
    for (const RestrictedRoot& r : b.sys.roots) tangent_dim += r.mult_q;
    for (const RealRadius& r : mine)
      if (std::abs(r.t - 1.0) < 1e-9) {
        has_one = true;
        CHECK(r.mult == tangent_dim);
      }
    CHECK(has_one);

    AssembledOperator jac = jacobi_operator(pt, a, b.sys);
    AssembledOperator shape = isotropy_shape_operator(pt, a, b.sys);
    oracle::FocalScanResult scan =
        oracle::determinant_focal_scan(jac.matrix, shape.matrix, t_max);

    // every lattice point in (0, t_max] is found by the scan and vice versa
    std::vector<RealRadius> expected;
    for (const RealRadius& r : mine)
      if (r.t <= t_max + 1e-9) expected.push_back(r);
    REQUIRE(scan.radii.size() == expected.size());
    for (std::size_t i = 0; i < expected.size(); ++i) {
      CHECK(std::abs(scan.radii[i] - expected[i].t) <= 1e-6);
      CHECK(scan.multiplicities[i] == expected[i].mult);
    }
  }

  // Generic-direction check with per-radius kernel certification.
  for (int bi : {2, 3}) {
    const SystemBundle& b = bundles()[bi];
    Vec wc = generic_coeffs(b.sys, rng, 0.3);
    Vec ac = generic_coeffs(b.sys, rng, 0.5);
    Vec w = b.sys.cartan.element(wc);
    Vec a = b.sys.cartan.element(ac);
    OrbitPoint pt = make_orbit_point(b.pair, w);

    FocalSet fs = complex_focal_radii(pt, a, b.sys, 3.2);
    OrbitSpectrum spec = isotropy_shape_spectrum(pt, a, b.sys);
    std::vector<RealRadius> mine;
    for (const RealRadius& r : real_radii(fs))
      if (r.t <= t_max + 1e-9) mine.push_back(r);

    AssembledOperator jac = jacobi_operator(pt, a, b.sys);
    AssembledOperator shape = isotropy_shape_operator(pt, a, b.sys);
    oracle::FocalScanResult scan =
        oracle::determinant_focal_scan(jac.matrix, shape.matrix, t_max);

    REQUIRE(scan.radii.size() == mine.size());
    for (std::size_t i = 0; i < mine.size(); ++i) {
      CHECK(std::abs(scan.radii[i] - mine[i].t) <= 1e-6);
      CHECK(scan.multiplicities[i] == mine[i].mult);
    }

    // closed-form kernel identity at each real window point, root by root:
    // cosh(t mu) - t sinhc(t mu) lambda = 0 with the production eigenvalue
    for (const FocalWindowEntry& e : fs.window) {
      if (std::abs(e.z.imag()) > 1e-8 * (1.0 + std::abs(e.z))) continue;
      if (e.z.real() <= 1e-9 || e.z.real() > t_max) continue;
      cplx mu = b.sys.roots[e.root_index].value_at(ac);
      cplx lambda;
      for (const SpectrumEntry& se : spec.entries)
        if (se.root_index == e.root_index) lambda = se.eigenvalue;
      cplx tz(e.z.real(), 0.0);
      cplx resid = std::cosh(tz * mu) - tz * (std::sinh(tz * mu) / (tz * mu)) * lambda;
      CHECK(std::abs(resid) <= 1e-8 * std::max(1.0, std::abs(std::cosh(tz * mu))));
    }
  }
}

TEST_CASE("strong Jacobi fields agree with RK4 integration of the Jacobi equation") {
  std::mt19937 rng(909);
  std::normal_distribution<double> n(0.0, 1.0);
  for (int bi : {0, 1, 2, 5}) {
    const SystemBundle& b = bundles()[bi];
    Vec wc = generic_coeffs(b.sys, rng, 0.25);
    Vec ac = generic_coeffs(b.sys, rng, 0.4);
    Vec w = b.sys.cartan.element(wc);
    Vec a = b.sys.cartan.element(ac);
    OrbitPoint pt = make_orbit_point(b.pair, w);
    AssembledOperator shape = isotropy_shape_operator(pt, a, b.sys);

    Mat adv = b.pair.algebra().ad(a);
    Mat adv2_full = adv * adv;
    Mat ad_q = b.pair.q().restrict_op(adv2_full);

    Vec coef(shape.dim());
    for (int i = 0; i < coef.size(); ++i) coef(i) = n(rng);
    Vec x = shape.basis * coef;
    Vec ax = shape.basis * (shape.matrix * coef);

    for (double sp : {0.5, 1.0, 2.0}) {
      CVec closed = strong_jacobi_field(b.pair, a, cv(x), cv(ax), sp);
      CHECK(closed.imag().norm() <= 1e-8 * std::max(1.0, closed.norm()));
      Vec y_rk = oracle::jacobi_integrate(ad_q, b.pair.q().drop(x),
                                          -b.pair.q().drop(ax), sp);
      Vec closed_q = b.pair.q().drop(Vec(closed.real()));
      double scale = std::max(1.0, y_rk.norm());
      CHECK((closed_q - y_rk).norm() <= 1e-6 * scale);
    }
  }
}

TEST_CASE("shape and Jacobi operators commute and diagonalize on the tangent frame") {
  std::mt19937 rng(1336);
  for (int bi : {1, 2, 3, 4}) {
    const SystemBundle& b = bundles()[bi];
    for (int trial = 0; trial < 5; ++trial) {
      Vec wc = generic_coeffs(b.sys, rng, 0.3);
      Vec vc = generic_coeffs(b.sys, rng, 0.5);
      Vec uc = generic_coeffs(b.sys, rng, 0.5);
      OrbitPoint pt = make_orbit_point(b.pair, b.sys.cartan.element(wc));
      AssembledOperator shape =
          isotropy_shape_operator(pt, b.sys.cartan.element(vc), b.sys);
      AssembledOperator jac =
          jacobi_operator(pt, b.sys.cartan.element(uc), b.sys);
      REQUIRE(shape.dim() == jac.dim());
      REQUIRE((shape.basis - jac.basis).norm() < 1e-12);

      Mat comm = shape.matrix * jac.matrix - jac.matrix * shape.matrix;
      double scale = std::max(1e-12, shape.matrix.norm() * jac.matrix.norm());
      CHECK(comm.norm() <= 1e-8 * scale);

      // diagonalizability of the complexified shape operator
      Eigen::ComplexEigenSolver<CMat> ces(shape.matrix.cast<cplx>());
      REQUIRE(ces.info() == Eigen::Success);
      CMat v = ces.eigenvectors();
      Eigen::FullPivLU<CMat> lu(v);
      REQUIRE(lu.rank() == v.cols());
      CMat recon = v * ces.eigenvalues().asDiagonal() * lu.inverse();
      CHECK((recon - shape.matrix.cast<cplx>()).norm() <=
            1e-8 * std::max(1.0, shape.matrix.norm()));
    }
  }
}

TEST_CASE("jacobi spectrum equals the eigendecomposition of the curvature operator") {
  // compact isotropy pair: every root value on a p-element is real
  auto g = LieAlgebra::cached("sl(3,R)");
  SymmetricPair pair =
      SymmetricPair::build(g, Involution::neg_transpose(Mat::Identity(3, 3), "so(3)"));
  CartanSubspace cs = maximal_abelian(*g, pair.q_p(), pair.q_f(), 42);
  RestrictedRootSystem sys = restricted_roots(pair, cs, 42);

  std::mt19937 rng(22);
  Vec vc = generic_coeffs(sys, rng, 0.6);
  Vec v = sys.cartan.element(vc);
  OrbitPoint pt = make_orbit_point(pair, sys.cartan.element(generic_coeffs(sys, rng)));
  OrbitSpectrum jac = jacobi_spectrum(pt, v, sys);

  // independent eigendecomposition of ad(v)^2 on q
  Mat adv = g->ad(v);
  Mat adv2 = adv * adv;
  Mat op = pair.q().restrict_op(adv2);
  Eigen::EigenSolver<Mat> es(op);
  REQUIRE(es.info() == Eigen::Success);
  std::vector<double> expected;
  for (int i = 0; i < op.rows(); ++i) {
    CHECK(std::abs(es.eigenvalues()(i).imag()) < 1e-9);
    expected.push_back(es.eigenvalues()(i).real());
  }
  std::vector<double> mine;
  for (const SpectrumEntry& e : jac.entries) {
    CHECK(std::abs(e.eigenvalue.imag()) < 1e-10);
    for (int m = 0; m < e.mult; ++m) mine.push_back(e.eigenvalue.real());
  }
  REQUIRE(mine.size() == expected.size());
  std::sort(mine.begin(), mine.end());
  std::sort(expected.begin(), expected.end());
  for (std::size_t i = 0; i < mine.size(); ++i)
    CHECK(std::abs(mine[i] - expected[i]) < 1e-7);
  CHECK(jac.space_dim == pair.q().dim());
}

TEST_CASE("window enumeration is complete and every entry is kernel-certified") {
  std::mt19937 rng(404);
  const double radius = 6.0;
  for (int bi : {0, 2, 4}) {
    const SystemBundle& b = bundles()[bi];
    Vec wc = generic_coeffs(b.sys, rng, 0.3);
    Vec ac = generic_coeffs(b.sys, rng, 0.5);
    Vec w = b.sys.cartan.element(wc);
    Vec a = b.sys.cartan.element(ac);
    OrbitPoint pt = make_orbit_point(b.pair, w);

    FocalSet fs = complex_focal_radii(pt, a, b.sys, radius);
    TangentSplit split = isotropy_tangent_split(pt, b.sys);
    OrbitSpectrum spec = isotropy_shape_spectrum(pt, a, b.sys);

    // tangent-restricted pencil P(z) = Dco(z) - z Dsi(z) A
    CMat tq(b.pair.q().dim(), split.tangent.cols());
    for (int c = 0; c < split.tangent.cols(); ++c) {
      CVec col = split.tangent.col(c);
      tq.col(c) = b.pair.q().drop(col);
    }
    CMat a_blocks = CMat::Zero(tq.cols(), tq.cols());
    {
      int at = 0;
      for (int ri : split.tangent_roots) {
        int m = b.sys.roots[ri].mult_q;
        cplx lam;
        for (const SpectrumEntry& se : spec.entries)
          if (se.root_index == ri) lam = se.eigenvalue;
        a_blocks.block(at, at, m, m) = lam * CMat::Identity(m, m);
        at += m;
      }
    }
    auto pencil = [&](cplx z) {
      DcoDsi d = dco_dsi(b.pair, a, z);
      CMat dco_t = restrict_cols(d.dco, tq);
      CMat dsi_t = restrict_cols(d.dsi, tq);
      return CMat(dco_t - z * dsi_t * a_blocks);
    };

    int certified = 0;
    for (const FocalWindowEntry& e : fs.window) {
      if (certified >= 10) break;
      Eigen::JacobiSVD<CMat> svd(pencil(e.z));
      double smax = svd.singularValues()(0);
      double smin = svd.singularValues()(svd.singularValues().size() - 1);
      CHECK(smin <= 1e-6 * std::max(1.0, smax));
      ++certified;
    }
    REQUIRE(certified > 0);

    // completeness: away from every lattice point the pencil is regular
    std::uniform_real_distribution<double> u(-radius, radius);
    int probed = 0;
    while (probed < 5) {
      cplx z(u(rng), u(rng));
      double dist = radius;
      for (const FocalFamily& fam : fs.families) {
        // distance to the full lattice of the family (k unbounded)
        double kf = (((z - fam.offset) / fam.step).real());
        for (long k = std::lround(kf) - 1; k <= std::lround(kf) + 1; ++k)
          dist = std::min(dist,
                          std::abs(z - fam.offset - static_cast<double>(k) * fam.step));
      }
      if (dist < 0.5) continue;
      ++probed;
      Eigen::JacobiSVD<CMat> svd(pencil(z));
      double smax = svd.singularValues()(0);
      double smin = svd.singularValues()(svd.singularValues().size() - 1);
      CHECK(smin > 1e-4 * std::max(1.0, smax));
    }
  }
}

TEST_CASE("partial tube formula against a plain power-series evaluation") {
  std::mt19937 rng(68);
  std::normal_distribution<double> n(0.0, 1.0);
  for (int bi : {1, 2, 6}) {
    const SystemBundle& b = bundles()[bi];
    const LieAlgebra& g = b.pair.algebra();
    const int nd = g.dim();
    REQUIRE(b.sys.cartan.rank() >= 1);

    // two commuting directions from the Cartan subspace
    Vec vc = generic_coeffs(b.sys, rng, 0.4);
    Vec uc = generic_coeffs(b.sys, rng, 0.4);
    Vec v = b.sys.cartan.element(vc);
    Vec w_dir = b.sys.cartan.element(uc);

    auto random_qc = [&]() {
      CVec out(nd);
      Vec re(b.pair.q().dim()), im(b.pair.q().dim());
      for (int i = 0; i < re.size(); ++i) {
        re(i) = n(rng);
        im(i) = n(rng);
      }
      CVec sub = re.cast<cplx>() + cplx(0.0, 1.0) * im.cast<cplx>();
      return CVec(b.pair.q().lift(sub));
    };
    CVec x = random_qc(), av_x = random_qc(), aw_x = random_qc();

    CVec got = partial_tube_shape(b.pair, v, w_dir, x, av_x, aw_x);

    // plain truncated series with scalar coefficient recurrences
    CMat adv = g.ad(v).cast<cplx>();
    CMat adw = g.ad(w_dir).cast<cplx>();
    CMat m1 = CMat::Zero(nd, nd), m2 = CMat::Zero(nd, nd), m3 = CMat::Zero(nd, nd);
    CMat pw = CMat::Identity(nd, nd);
    double fact = 1.0;
    for (int k = 0; k <= 40; ++k) {
      if (k > 0) {
        pw = (pw * adv).eval();
        fact *= k;
      }
      if (k % 2 == 1) {
        m1 += -(1.0 / fact) * pw;                  // -sinh
      } else {
        m2 += -(1.0 / (fact * (k + 1))) * pw;      // -sinh(x)/x
      }
    }
    // m3 = (cosh(x)-1)/x + (x-sinh(x))/x^2 = sum_{j>=1} [1/(2j)! - 1/(2j+1)!] x^(2j-1)
    {
      CMat oddpow = adv; // adv^1
      double f2j = 2.0;  // (2j)! with j=1
      for (int j = 1; j <= 20; ++j) {
        if (j > 1) {
          oddpow = (oddpow * adv * adv).eval();
          f2j *= (2.0 * j - 1.0) * (2.0 * j);
        }
        double c = 1.0 / f2j - 1.0 / (f2j * (2.0 * j + 1.0));
        m3 += c * oddpow;
      }
    }
    CVec expect = adw * (m1 * x) - m2 * aw_x + m3 * (adw * av_x);
    double scale = std::max(1.0, expect.norm());
    CHECK((got - expect).norm() <= 1e-9 * scale);
  }
}

TEST_CASE("flagged directions, singular directions and input validation") {
  std::mt19937 rng(31);

  // a point annihilated by one root but generic for the others
  bool tested_flag = false;
  for (const SystemBundle& b : bundles()) {
    if (b.sys.cartan.rank() < 2 || b.sys.roots.size() < 2) continue;
    const RestrictedRoot& r0 = b.sys.roots[0];
    Mat sys2(2, b.sys.cartan.rank());
    for (int i = 0; i < b.sys.cartan.rank(); ++i) {
      sys2(0, i) = r0.values(i).real();
      sys2(1, i) = r0.values(i).imag();
    }
    Mat ker = la::nullspace(sys2);
    if (ker.cols() == 0) continue;
    Vec c = ker.col(0);
    // keep the other roots off the lattice
    bool usable = true;
    for (std::size_t j = 1; j < b.sys.roots.size(); ++j) {
      cplx val = b.sys.roots[j].value_at(c);
      if (std::abs(val) < 0.05 || nearest_lattice_point(val).distance < 0.05) {
        usable = false;
        break;
      }
    }
    if (!usable) continue;

    OrbitPoint pt = make_orbit_point(b.pair, b.sys.cartan.element(c));
    TangentSplit split = isotropy_tangent_split(pt, b.sys);
    CHECK(std::find(split.excluded_roots.begin(), split.excluded_roots.end(), 0) !=
          split.excluded_roots.end());
    OrbitSpectrum spec =
        isotropy_shape_spectrum(pt, b.sys.cartan.element(c), b.sys);
    CHECK(spec.entries[0].annihilates_w);
    int unflagged = 0;
    for (const SpectrumEntry& e : spec.entries)
      if (!e.annihilates_w) unflagged += e.mult;
    CHECK(spec.space_dim == unflagged);
    CHECK(spec.space_dim == split.tangent.cols());
    tested_flag = true;
    break;
  }
  CHECK(tested_flag);

  // a nonzero lattice hit raises SingularDirection
  bool tested_singular = false;
  for (const SystemBundle& b : bundles()) {
    int elliptic = -1;
    for (std::size_t i = 0; i < b.sys.roots.size(); ++i) {
      const CVec& vals = b.sys.roots[i].values;
      if (vals.real().norm() < 1e-9 && vals.imag().norm() > 1e-6) {
        elliptic = static_cast<int>(i);
        break;
      }
    }
    if (elliptic < 0) continue;
    const RestrictedRoot& root = b.sys.roots[elliptic];
    // solve alpha(w) = i*pi on the imaginary parts
    Vec imparts = root.values.imag();
    Vec c = imparts * (std::numbers::pi / imparts.squaredNorm());
    cplx val = root.value_at(c);
    if (std::abs(val - cplx(0.0, std::numbers::pi)) > 1e-8) continue;
    OrbitPoint pt = make_orbit_point(b.pair, b.sys.cartan.element(c));
    CHECK_THROWS_AS(
        isotropy_shape_spectrum(pt, b.sys.cartan.element(c), b.sys),
        SingularDirection);
    CHECK_THROWS_AS(
        complex_focal_radii(pt, b.sys.cartan.element(c), b.sys, 2.0),
        SingularDirection);
    tested_singular = true;
    break;
  }
  CHECK(tested_singular);

  // assembled operators reject non-equivariant data
  {
    const SystemBundle& b = bundles()[0];
    CHECK_THROWS_AS(
        assemble_real_operator(b.sys, {0}, {cplx(0.0, 1.0)}), InvalidParams);
    CHECK_THROWS_AS(assemble_real_operator(b.sys, {0}, {}), InvalidParams);
    CHECK_THROWS_AS(assemble_real_operator(b.sys, {7}, {cplx(1.0, 0.0)}),
                    InvalidParams);
  }

  // a conjugate pair of genuinely complex roots must travel together
  bool tested_pair = false;
  for (const SystemBundle& b : bundles()) {
    for (std::size_t i = 0; i < b.sys.roots.size(); ++i) {
      const CVec& vals = b.sys.roots[i].values;
      if (vals.real().norm() > 1e-6 && vals.imag().norm() > 1e-6) {
        CHECK_THROWS_AS(assemble_real_operator(b.sys, {static_cast<int>(i)},
                                               {cplx(1.0, 0.0)}),
                        InvalidParams);
        tested_pair = true;
        break;
      }
    }
    if (tested_pair) break;
  }
  if (!tested_pair)
    MESSAGE("no mixed-value root in the catalogue sample; pair test skipped");
}

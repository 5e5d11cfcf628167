#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "orbitlab/errors.hpp"
#include "orbitlab/hermann.hpp"
#include "orbitlab/oracle.hpp"
#include "test_support.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/QR>

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <string>
#include <vector>

using namespace orbitlab;
using testsupport::sample_pairs;

namespace {

/// sl(4,R)/so(2,2) with a symplectic second involution: the smallest split
/// configuration whose root spaces split into nontrivial h'- and q'-parts.
const SymmetricPair& split_pair() {
  static const SymmetricPair pair = [] {
    auto g = LieAlgebra::cached("sl(4,R)");
    Mat ipq = Mat::Identity(4, 4);
    ipq(2, 2) = ipq(3, 3) = -1;
    return SymmetricPair::build(g, Involution::neg_transpose(ipq, "so(2,2)"));
  }();
  return pair;
}

Involution symplectic_recipe() {
  Mat j = Mat::Zero(4, 4);
  j.topRightCorner(2, 2) = -Mat::Identity(2, 2);
  j.bottomLeftCorner(2, 2) = Mat::Identity(2, 2);
  return Involution::neg_transpose(j, "sp(2,R)");
}

const HermannConfiguration& split_config() {
  static const HermannConfiguration config =
      hermann_configuration(split_pair(), symplectic_recipe());
  return config;
}

/// sl(3,R)/so(1,2) with the dual-action involution: a rank-two configuration
/// whose Cartan subspace is elliptic (purely imaginary root values).
const SymmetricPair& elliptic_pair() {
  static const SymmetricPair pair = [] {
    auto g = LieAlgebra::cached("sl(3,R)");
    Mat m = Mat::Identity(3, 3);
    m(0, 0) = -1;
    return SymmetricPair::build(g, Involution::neg_transpose(m, "so(1,2)"));
  }();
  return pair;
}

const HermannConfiguration& elliptic_config() {
  static const HermannConfiguration config =
      hermann_configuration(elliptic_pair(), "sigma*theta");
  return config;
}

/// Cartan coefficients for a configuration whose root values stay away from
/// the singular lattice, from zero, and from overflow territory.
Vec generic_coeffs(const HermannConfiguration& config, std::mt19937& rng,
                   double scale = 0.25) {
  std::normal_distribution<double> n(0.0, 1.0);
  for (int tries = 0; tries < 500; ++tries) {
    Vec c(config.b.rank());
    for (int i = 0; i < c.size(); ++i) c(i) = scale * n(rng);
    bool ok = true;
    for (const RestrictedRoot& root : config.system.roots) {
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

/// Residual of the best least-squares expression of `cols` inside `space`.
double span_residual(const CMat& space, const CMat& cols) {
  if (cols.cols() == 0) return 0.0;
  if (space.cols() == 0) return cols.norm();
  Eigen::ColPivHouseholderQR<CMat> qr(space);
  CMat sol = qr.solve(cols);
  return (space * sol - cols).norm() / std::max(1.0, cols.norm());
}

/// Sorted real eigenvalues of an assembled operator (imaginary parts are
/// required to vanish).
std::vector<double> real_spectrum(const Mat& m) {
  Eigen::EigenSolver<Mat> es(m);
  std::vector<double> out;
  for (int i = 0; i < m.rows(); ++i) {
    CHECK(std::abs(es.eigenvalues()(i).imag()) <= 1e-9);
    out.push_back(es.eigenvalues()(i).real());
  }
  std::sort(out.begin(), out.end());
  return out;
}

const Subspace& empty_subspace(const LieAlgebra& g) {
  static std::vector<std::pair<const LieAlgebra*, Subspace>> cache;
  for (const auto& [key, sub] : cache)
    if (key == &g) return sub;
  cache.emplace_back(&g, make_subspace(g, Mat(g.dim(), 0), false, "empty"));
  return cache.back().second;
}

}  // namespace

TEST_CASE("configuration splits every root space and the centralizer") {
  for (const SymmetricPair& pair : sample_pairs()) {
    for (const std::string token : {"theta", "sigma*theta"}) {
      HermannData data = hermann_setup(pair, token);
      if (data.q_qp.dim() == 0) {
        // q ∩ q' can only vanish when sigma' acts as the identity on q,
        // i.e. for the dual action of a pair whose sigma equals theta.
        CHECK(token == std::string("sigma*theta"));
        CHECK(pair.h_p().dim() == 0);
        continue;
      }
      const std::string where = pair.algebra().descriptor() + " + " + token;
      CAPTURE(where);
      HermannConfiguration config = hermann_configuration(data);
      const LieAlgebra& g = pair.algebra();

      // Cartan subspace: inside q ∩ q', commuting, semisimple, normalized.
      REQUIRE(config.b.rank() >= 1);
      REQUIRE(config.b.rank() == config.b.p_count + config.b.f_count);
      for (int i = 0; i < config.b.rank(); ++i) {
        Vec bi = config.b.basis.col(i);
        CHECK(data.q_qp.contains(bi));
        CHECK(g.is_semisimple_element(bi));
        CHECK(std::abs(std::abs(g.killing_form(bi, bi)) - 1.0) <= 1e-7);
        for (int j = i + 1; j < config.b.rank(); ++j)
          CHECK(g.bracket(bi, Vec(config.b.basis.col(j))).norm() <= 1e-8);
      }

      // Root-space splits: parts lie in the root space, are eigenvectors of
      // sigma', and fill the full multiplicity.
      REQUIRE(config.splits.size() == config.system.roots.size());
      const CMat sp = data.s_prime.cast<cplx>();
      int covered = 0;
      for (size_t r = 0; r < config.splits.size(); ++r) {
        const RestrictedRoot& root = config.system.roots[r];
        const RootSplit& split = config.splits[r];
        CHECK(static_cast<int>(split.h_prime_part.cols() +
                               split.q_prime_part.cols()) == root.mult_q);
        CHECK(span_residual(root.q_space, split.h_prime_part) <= 1e-7);
        CHECK(span_residual(root.q_space, split.q_prime_part) <= 1e-7);
        if (split.h_prime_part.cols() > 0)
          CHECK((sp * split.h_prime_part - split.h_prime_part).norm() <=
                1e-7 * split.h_prime_part.norm());
        if (split.q_prime_part.cols() > 0)
          CHECK((sp * split.q_prime_part + split.q_prime_part).norm() <=
                1e-7 * split.q_prime_part.norm());
        covered += root.mult_q;
      }

      // Centralizer split: same eigenvector checks, and b sits in the
      // q'-part of the centralizer.
      CHECK(config.zero_h_prime.cols() + config.zero_q_prime.cols() ==
            config.system.zero_q.cols());
      if (config.zero_h_prime.cols() > 0)
        CHECK((sp * config.zero_h_prime - config.zero_h_prime).norm() <=
              1e-7 * config.zero_h_prime.norm());
      if (config.zero_q_prime.cols() > 0)
        CHECK((sp * config.zero_q_prime + config.zero_q_prime).norm() <=
              1e-7 * config.zero_q_prime.norm());
      CHECK(span_residual(config.system.zero_q, config.zero_h_prime) <= 1e-7);
      CHECK(span_residual(config.system.zero_q, config.zero_q_prime) <= 1e-7);
      CHECK(span_residual(config.zero_q_prime,
                          CMat(config.b.basis.cast<cplx>())) <= 1e-7);

      // Completeness: centralizer plus root spaces exhaust q^c.
      CHECK(covered + static_cast<int>(config.system.zero_q.cols()) ==
            pair.q().dim());
    }
  }
}

TEST_CASE("a degenerate second involution reproduces the isotropy formulas") {
  std::mt19937 rng(2203);
  for (const SymmetricPair& pair : sample_pairs()) {
    const std::string where = pair.algebra().descriptor();
    CAPTURE(where);
    HermannConfiguration config = hermann_configuration(pair, pair.sigma());

    // sigma' = sigma leaves nothing on the h'-side.
    CHECK(config.zero_h_prime.cols() == 0);
    for (size_t r = 0; r < config.splits.size(); ++r) {
      CHECK(config.splits[r].h_prime_part.cols() == 0);
      CHECK(static_cast<int>(config.splits[r].q_prime_part.cols()) ==
            config.system.roots[r].mult_q);
    }

    for (int draw = 0; draw < 3; ++draw) {
      Vec wc = generic_coeffs(config, rng);
      Vec vc = generic_coeffs(config, rng);
      Vec w = config.b.element(wc);
      Vec v = config.b.element(vc);

      // Spectra agree entry by entry, eigenvalues bitwise: both paths
      // evaluate the same expression on the same coefficients.
      OrbitSpectrum hs = hermann_orbit_spectrum(config, w, v);
      OrbitPoint point = make_orbit_point(pair, w);
      OrbitSpectrum is = isotropy_shape_spectrum(point, v, config.system);
      REQUIRE(hs.entries.size() == is.entries.size());
      CHECK(hs.space_dim == is.space_dim);
      for (size_t i = 0; i < hs.entries.size(); ++i) {
        CHECK(hs.entries[i].root_index == is.entries[i].root_index);
        CHECK(hs.entries[i].mult == is.entries[i].mult);
        CHECK(hs.entries[i].part == is.entries[i].part);
        CHECK(hs.entries[i].annihilates_w == is.entries[i].annihilates_w);
        CHECK(hs.entries[i].eigenvalue == is.entries[i].eigenvalue);
      }

      // The assembled operators act identically on the common tangent space.
      AssembledOperator ah = hermann_shape_operator(config, w, v);
      AssembledOperator ai = isotropy_shape_operator(point, v, config.system);
      REQUIRE(ah.dim() == ai.dim());
      Vec coef = Vec::Zero(ah.dim());
      std::normal_distribution<double> n(0.0, 1.0);
      for (int i = 0; i < coef.size(); ++i) coef(i) = n(rng);
      Vec x = ah.basis * coef;
      Eigen::ColPivHouseholderQR<Mat> qr(ai.basis);
      Vec coef_i = qr.solve(x);
      REQUIRE((ai.basis * coef_i - x).norm() <= 1e-8 * x.norm());
      Vec yh = ah.basis * (ah.matrix * coef);
      Vec yi = ai.basis * (ai.matrix * coef_i);
      double scale = std::max(1.0, yh.norm());
      CHECK((yh - yi).norm() <= 1e-7 * scale);
    }
  }
}

TEST_CASE("split rank-one configuration has the closed-form branch pair") {
  const HermannConfiguration& config = split_config();

  // One root, multiplicity four, split evenly; four flat orbit directions.
  REQUIRE(config.b.rank() == 1);
  CHECK(config.b.p_count == 1);
  REQUIRE(config.system.roots.size() == 1);
  const RestrictedRoot& root = config.system.roots[0];
  CHECK(root.mult_q == 4);
  CHECK(config.splits[0].h_prime_part.cols() == 2);
  CHECK(config.splits[0].q_prime_part.cols() == 2);
  CHECK(config.zero_h_prime.cols() == 4);
  CHECK(config.zero_q_prime.cols() == 1);

  // The root value on the unit Cartan direction is 1/sqrt(8): the Killing
  // form of sl(4,R) is 8 tr(xy) and the root is the difference of two
  // diagonal functionals on a normalized split direction.
  Vec unit = Vec::Ones(1);
  cplx beta = root.value_at(unit);
  CHECK(std::abs(beta.imag()) <= 1e-12);
  CHECK(beta.real() == doctest::Approx(1.0 / std::sqrt(8.0)).epsilon(1e-10));

  const double t = 0.7, s = 1.3;
  Vec w = config.b.element(t * unit);
  Vec v = config.b.element(s * unit);
  const double bw = t * beta.real(), bv = s * beta.real();
  const double lam_h = -bv * std::tanh(bw);
  const double lam_q = -bv / std::tanh(bw);

  OrbitSpectrum spec = hermann_orbit_spectrum(config, w, v);
  REQUIRE(spec.entries.size() == 3);
  CHECK(spec.space_dim == 8);
  CHECK(spec.entries[0].part == SpectrumPart::ZeroPart);
  CHECK(spec.entries[0].mult == 4);
  CHECK(spec.entries[0].eigenvalue == cplx(0.0, 0.0));
  CHECK(spec.entries[1].part == SpectrumPart::HPrimePart);
  CHECK(spec.entries[1].mult == 2);
  CHECK(spec.entries[1].eigenvalue.real() == doctest::Approx(lam_h).epsilon(1e-12));
  CHECK(std::abs(spec.entries[1].eigenvalue.imag()) <= 1e-12);
  CHECK(spec.entries[2].part == SpectrumPart::QPart);
  CHECK(spec.entries[2].mult == 2);
  CHECK(spec.entries[2].eigenvalue.real() == doctest::Approx(lam_q).epsilon(1e-12));

  // Assembled shape and Jacobi operators on the shared tangent frame.
  AssembledOperator a = hermann_shape_operator(config, w, v);
  AssembledOperator r = hermann_jacobi_operator(config, w, v);
  REQUIRE(a.dim() == 8);
  CHECK((a.basis - r.basis).norm() == 0.0);  // same deterministic frame
  CHECK(split_pair().q().contains(Vec(a.basis.col(0))));
  CHECK(split_pair().q().contains(Vec(a.basis.col(7))));

  std::vector<double> expect_a = {lam_q, lam_q, lam_h, lam_h, 0, 0, 0, 0};
  std::sort(expect_a.begin(), expect_a.end());
  std::vector<double> got_a = real_spectrum(a.matrix);
  for (int i = 0; i < 8; ++i)
    CHECK(got_a[i] == doctest::Approx(expect_a[i]).epsilon(1e-9));

  std::vector<double> expect_r = {0, 0, 0, 0, bv * bv, bv * bv, bv * bv,
                                  bv * bv};
  std::vector<double> got_r = real_spectrum(r.matrix);
  for (int i = 0; i < 8; ++i)
    CHECK(got_r[i] == doctest::Approx(expect_r[i]).epsilon(1e-9));

  double comm_scale = std::max(1.0, a.matrix.norm() * r.matrix.norm());
  CHECK((a.matrix * r.matrix - r.matrix * a.matrix).norm() <= 1e-12 * comm_scale);
}

TEST_CASE("branch eigenvalue product is the squared root value on the normal") {
  std::mt19937 rng(515);
  for (const HermannConfiguration* config : {&split_config(), &elliptic_config()}) {
    for (int draw = 0; draw < 10; ++draw) {
      Vec wc = generic_coeffs(*config, rng);
      Vec vc = generic_coeffs(*config, rng);
      OrbitSpectrum spec = hermann_orbit_spectrum(
          *config, config->b.element(wc), config->b.element(vc));

      for (size_t r = 0; r < config->system.roots.size(); ++r) {
        if (config->splits[r].h_prime_part.cols() == 0 ||
            config->splits[r].q_prime_part.cols() == 0)
          continue;
        cplx lam_h, lam_q;
        for (const SpectrumEntry& e : spec.entries) {
          if (e.root_index != static_cast<int>(r) || e.annihilates_w) continue;
          (e.part == SpectrumPart::HPrimePart ? lam_h : lam_q) = e.eigenvalue;
        }
        // tanh and 1/tanh branches: the w-dependence cancels in the product.
        cplx bv = config->system.roots[r].value_at(vc);
        CHECK(std::abs(lam_h * lam_q - bv * bv) <= 1e-10 * std::abs(bv * bv));
      }
    }
  }
}

TEST_CASE("variation oracle confirms the shape pairings of both branch types") {
  std::mt19937 rng(907);
  std::normal_distribution<double> n(0.0, 1.0);
  for (const HermannConfiguration* config : {&split_config(), &elliptic_config()}) {
    const SymmetricPair& pair = config->data.pair;
    const LieAlgebra& g = pair.algebra();
    const std::string where = g.descriptor();
    CAPTURE(where);
    for (int draw = 0; draw < 2; ++draw) {
      Vec w = config->b.element(generic_coeffs(*config, rng));
      Vec v = config->b.element(generic_coeffs(*config, rng));
      AssembledOperator shape = hermann_shape_operator(*config, w, v);
      for (int zdraw = 0; zdraw < 2; ++zdraw) {
        Vec zc(config->data.h_prime.dim());
        for (int i = 0; i < zc.size(); ++i) zc(i) = 0.5 * n(rng);
        Vec z = config->data.h_prime.lift(zc);

        oracle::VariationEstimate est =
            oracle::variation_shape_estimate(pair, w, z, v);
        Vec x = est.velocity;
        Vec coef = shape.basis.transpose() * x;
        REQUIRE((shape.basis * coef - x).norm() <= 1e-7 * std::max(1.0, x.norm()));
        Vec ax = shape.basis * (shape.matrix * coef);
        double predicted = g.killing_form(ax, x);
        CHECK(std::abs(predicted - est.pairing) <=
              1e-6 * std::max(1.0, std::abs(predicted)));
      }
    }
  }
}

TEST_CASE("random spectra stay diagonalizable, commuting, and eigenvalue-safe") {
  std::mt19937 rng(4242);
  for (const HermannConfiguration* config : {&split_config(), &elliptic_config()}) {
    const std::string where = config->data.pair.algebra().descriptor();
    CAPTURE(where);
    for (int draw = 0; draw < 25; ++draw) {
      Vec wc = generic_coeffs(*config, rng);
      Vec vc = generic_coeffs(*config, rng);
      Vec w = config->b.element(wc), v = config->b.element(vc);
      AssembledOperator a = hermann_shape_operator(*config, w, v);
      AssembledOperator r = hermann_jacobi_operator(*config, w, v);

      // Shape and Jacobi operators commute (curvature-adaptedness).
      double comm_scale = std::max(1.0, a.matrix.norm() * r.matrix.norm());
      CHECK((a.matrix * r.matrix - r.matrix * a.matrix).norm() <=
            1e-8 * comm_scale);

      // The shape operator is diagonalizable over R with bounded residual.
      Eigen::EigenSolver<Mat> es(a.matrix);
      CMat vecs = es.eigenvectors();
      CMat recon = vecs * es.eigenvalues().asDiagonal() * vecs.inverse();
      CHECK((recon - a.matrix.cast<cplx>()).norm() <=
            1e-8 * std::max(1.0, a.matrix.norm()));

      // Neither +beta(v) nor -beta(v) is a shape eigenvalue: the margin that
      // keeps partial tubes away from resonances.
      OrbitSpectrum spec = hermann_orbit_spectrum(*config, w, v);
      for (const RestrictedRoot& root : config->system.roots) {
        cplx bv = root.value_at(vc);
        for (double sign : {1.0, -1.0}) {
          for (const SpectrumEntry& e : spec.entries) {
            if (e.annihilates_w) continue;
            CHECK(std::abs(sign * bv - e.eigenvalue) >= 1e-6);
          }
        }
      }
    }
  }
}

TEST_CASE("singular data is flagged or rejected") {
  const HermannConfiguration& config = split_config();
  const SymmetricPair& pair = split_pair();
  Vec unit = Vec::Ones(1);
  Vec v = config.b.element(unit);

  // w = 0: the root annihilates w, so only the flat block carries an
  // eigenvalue and the assembled operator shrinks to it.
  OrbitSpectrum at_zero = hermann_orbit_spectrum(config, Vec::Zero(pair.algebra().dim()), v);
  REQUIRE(at_zero.entries.size() == 2);
  CHECK(at_zero.entries[0].part == SpectrumPart::ZeroPart);
  CHECK(at_zero.entries[1].annihilates_w);
  CHECK(at_zero.entries[1].mult == 4);
  CHECK(at_zero.space_dim == 4);
  AssembledOperator flat = hermann_shape_operator(config, Vec::Zero(pair.algebra().dim()), v);
  CHECK(flat.dim() == 4);
  CHECK(flat.matrix.norm() == 0.0);

  // A nonzero singular lattice point raises instead of flagging: use the
  // elliptic configuration, whose root values are imaginary, and scale a
  // Cartan direction until one root value reaches i*pi.
  {
    const HermannConfiguration& ell = elliptic_config();
    const RestrictedRoot& root = ell.system.roots[0];
    Vec y(ell.b.rank());
    for (int i = 0; i < y.size(); ++i) y(i) = root.values(i).imag();
    Vec c = (std::numbers::pi / y.squaredNorm()) * y;
    REQUIRE(std::abs(root.value_at(c) - cplx(0.0, std::numbers::pi)) <= 1e-9);
    std::mt19937 vrng(77);
    Vec v_ell = ell.b.element(generic_coeffs(ell, vrng));
    CHECK_THROWS_AS(hermann_orbit_spectrum(ell, ell.b.element(c), v_ell),
                    SingularDirection);
  }

  // Semisimple q-element outside the Cartan subspace: rejected by name.
  Mat off = Mat::Zero(4, 4);
  off.diagonal() << 1, -1, 2, -2;
  Vec w_off = pair.algebra().coordinates(off);
  REQUIRE(pair.q().contains(w_off));
  CHECK_THROWS_AS(hermann_orbit_spectrum(config, w_off, v), WNotInCartan);
  CHECK_THROWS_AS(hermann_orbit_spectrum(config, config.b.element(0.3 * unit), w_off),
                  InvalidParams);

  // Points outside q and junk tokens are parameter errors.
  Vec e0 = Vec::Unit(pair.h().dim(), 0);
  Vec in_h = pair.h().lift(e0);
  CHECK_THROWS_AS(hermann_orbit_spectrum(config, in_h, v), InvalidParams);
  CHECK_THROWS_AS(hermann_configuration(pair, "antipodal"), UnsupportedSigma);
}

TEST_CASE("isotropy orbits through the base point have no real focal radii") {
  std::mt19937 rng(66);
  std::normal_distribution<double> n(0.0, 1.0);
  std::vector<SymmetricPair> pairs = sample_pairs();
  for (int idx : {1, 2, 4}) {  // sl(3,R), su(1,2), sp(2,R) samples
    const SymmetricPair& pair = pairs[idx];
    const LieAlgebra& g = pair.algebra();
    const std::string where = g.descriptor();
    CAPTURE(where);
    const Subspace& tangent = pair.q_f();  // orbit of Fix(theta) through o
    REQUIRE(tangent.dim() > 0);
    Mat zero_shape = Mat::Zero(tangent.dim(), tangent.dim());

    for (int draw = 0; draw < 20; ++draw) {
      Vec c(pair.q_p().dim());
      for (int i = 0; i < c.size(); ++i) c(i) = n(rng);
      Vec v = pair.q_p().lift(c);

      double resid = 0.0;
      Mat ad2 = tangent.restrict_op(Mat(g.ad(v) * g.ad(v)), &resid);
      REQUIRE(resid <= 1e-8 * std::max(1.0, ad2.norm()));

      // Closed form: ad(v)^2 is nonnegative on the orbit tangent space, so
      // every Jacobi determinant factor is a cosh — nowhere zero.
      Eigen::EigenSolver<Mat> es(ad2);
      for (int i = 0; i < ad2.rows(); ++i) {
        CHECK(std::abs(es.eigenvalues()(i).imag()) <= 1e-8);
        CHECK(es.eigenvalues()(i).real() >= -1e-8);
      }

      // Independent scan of det(D^co - t D^si A) with A = 0 on [0, 10].
      oracle::FocalScanResult scan =
          oracle::determinant_focal_scan(ad2, zero_shape, 10.0);
      CHECK(scan.radii.empty());
    }
  }
}

TEST_CASE("cohomogeneity integers match the certified catalog values") {
  // Worked rows with hand-checked flats.
  {
    CatalogEntry entry = parse_space("SL(3,R)/SO0(1,2)");
    CHECK(entry.table == 1);
    CohomogeneityRow row = cohomogeneity(entry);
    CHECK(row.cohom_K == 2);
    CHECK(row.cohom_L == 1);
    CHECK(row.K_group == "SO(3)");
  }
  {
    CohomogeneityRow row = cohomogeneity(parse_space("SL(4,R)/Sp(2,R)"));
    CHECK(row.cohom_K == 1);
    CHECK(row.cohom_L == 1);
  }
  {
    CohomogeneityRow row = cohomogeneity(parse_space("Sp(2,C)/Sp(1,1)"));
    CHECK(row.cohom_K == 2);
    CHECK(row.cohom_L == 1);
  }

  // A pair built outside the catalog still yields the two integers.
  {
    auto g = LieAlgebra::cached("sl(3,R)");
    Mat m = Mat::Identity(3, 3);
    m(2, 2) = -1;
    SymmetricPair pair =
        SymmetricPair::build(g, Involution::neg_transpose(m, ""));
    CohomogeneityRow row = cohomogeneity(pair);
    CHECK(row.cohom_K == 2);
    CHECK(row.cohom_L == 1);
    CHECK(row.formula_K == -1);
    CHECK(row.space == "sl(3,R)/H");
  }
}

TEST_CASE("tabulated closed forms that undercount carry rank certificates") {
  // The tabulated K-cohomogeneity of this family counts the rank of the
  // semisimple factor only; the central direction of the dual group adds a
  // flat direction.  Certify computed > formula by exhibiting the witness.
  CatalogEntry entry = parse_space("Sp(2,R)/SL(2,R).U(1)");
  CHECK(entry.formula_k == 1);
  CHECK(entry.expected_k == 2);
  CHECK(entry.formula_k_low);
  CHECK(entry.flagged());

  CohomogeneityRow row = cohomogeneity(entry);
  CHECK(row.cohom_K == 2);
  CHECK(row.cohom_K == row.expected_K);
  CHECK(row.formula_K_low);
  CHECK(row.stable);

  // Runtime certificate: two commuting independent semisimple directions
  // inside q ∩ p.
  auto g = LieAlgebra::cached(entry.g);
  SymmetricPair pair = SymmetricPair::build(g, entry.sigma);
  CartanSubspace cert =
      maximal_abelian(*g, pair.q_p(), empty_subspace(*g), 42);
  REQUIRE(cert.rank() == 2);
  CHECK(la::rank(cert.basis) == 2);
  for (int i = 0; i < 2; ++i) {
    Vec bi = cert.basis.col(i);
    CHECK(pair.q_p().contains(bi));
    CHECK(g->is_semisimple_element(bi));
    for (int j = i + 1; j < 2; ++j)
      CHECK(g->bracket(bi, Vec(cert.basis.col(j))).norm() <= 1e-8);
  }

  // The LU(1)-ambiguous L-side of a unitary row reports its interpretation.
  CatalogEntry amb = parse_space("SU(1,2)/SO0(1,2)");
  CHECK(amb.ambiguous_l);
  CHECK(amb.formula_l == 2);  // reading the tabulated n - 1 as p + q - 1
  CohomogeneityRow arow = cohomogeneity(amb);
  CHECK(arow.cohom_L == 2);
  CHECK(arow.ambiguous_L);
}

TEST_CASE("every small-parameter table row matches its certified value") {
  int rows_checked = 0;
  for (int table : {1, 2, 3}) {
    for (const CatalogEntry& entry : enumerate_table(table, 2)) {
      const std::string where = entry.space;
      CAPTURE(where);
      REQUIRE(entry.expected_k >= 0);
      REQUIRE(entry.expected_l >= 0);
      CohomogeneityRow row = cohomogeneity(entry, 42, 3);
      CHECK(row.cohom_K == entry.expected_k);
      CHECK(row.cohom_L == entry.expected_l);
      CHECK(row.stable);

      // Every catalogued subgroup is noncompact (its p-part is nonzero), so
      // none of these rows degenerates to a Riemannian isotropy action.
      SymmetricPair pair =
          SymmetricPair::build(LieAlgebra::cached(entry.g), entry.sigma);
      CHECK(pair.h_p().dim() >= 1);
      ++rows_checked;
    }
  }
  CHECK(rows_checked >= 15);
}

TEST_CASE("table generation bounds, errors, and CSV shape") {
  CHECK_THROWS_AS(enumerate_table(4, 2), UnsupportedFamily);
  CHECK_THROWS_AS(enumerate_table(0, 2), UnsupportedFamily);
  CHECK_THROWS_AS(enumerate_table(1, 9), InvalidParams);
  CHECK(enumerate_table(1, 0).empty());
  CHECK(generate_table(2, 0).empty());

  std::vector<CohomogeneityRow> rows = generate_table(1, 2, 42, 1);
  REQUIRE(!rows.empty());
  std::string csv = table_csv(rows);
  CHECK(csv.rfind("space,K,L,cohom_K,cohom_L\n", 0) == 0);
  CHECK(csv.back() == '\n');
  CHECK(std::count(csv.begin(), csv.end(), '\n') ==
        static_cast<long>(rows.size()) + 1);
  // String fields are quoted so group labels may contain commas.
  CHECK(csv.find("\"SL(") != std::string::npos);
  CHECK(csv.find("\"SO(") != std::string::npos);
}

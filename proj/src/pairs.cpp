#include "orbitlab/pairs.hpp"

#include <Eigen/Eigenvalues>
#include <numeric>
#include <random>

namespace orbitlab {

// ------------------------------------------------------------------ Involution

Involution Involution::conjugation(const Mat& m, std::string label) {
  Involution s;
  s.m = m;
  s.m_inv = m.inverse();
  s.transpose = false;
  s.sign = 1.0;
  s.label = std::move(label);
  return s;
}

Involution Involution::neg_transpose(const Mat& m, std::string label) {
  Involution s;
  s.m = m;
  s.m_inv = m.inverse();
  s.transpose = true;
  s.sign = -1.0;
  s.label = std::move(label);
  return s;
}

Involution Involution::theta(int ambient) {
  return neg_transpose(Mat::Identity(ambient, ambient), "theta");
}

Mat Involution::apply(const Mat& x) const {
  if (transpose) return sign * m * x.transpose() * m_inv;
  return sign * m * x * m_inv;
}

Mat Involution::apply_group(const Mat& g) const {
  if (transpose) {
    Mat ginv_t = g.inverse().transpose();
    return m * ginv_t * m_inv;
  }
  return m * g * m_inv;
}

Involution Involution::composed(const Involution& other) const {
  Involution r;
  r.sign = sign * other.sign;
  r.transpose = transpose != other.transpose;
  // this(other(X)): when this transposes, the inner conjugation flips to the
  // inverse-transpose of the inner matrix
  r.m = transpose ? Mat(m * other.m_inv.transpose()) : Mat(m * other.m);
  r.m_inv = r.m.inverse();
  r.label = label + "∘" + other.label;
  if (r.transpose && r.sign > 0)
    throw UnsupportedSigma("composition " + r.label +
                           " is a transpose recipe with positive sign");
  return r;
}

// ------------------------------------------------------------------- Subspace

bool Subspace::contains(const Vec& full, double tol) const {
  return (projector * full - full).norm() <= tol * std::max(1.0, full.norm());
}

Mat Subspace::restrict_op(const Mat& op, double* resid) const {
  Mat mapped = op * basis;
  Mat r = pinv * mapped;
  if (resid) {
    double scale = std::max(1.0, mapped.norm());
    *resid = (basis * r - mapped).norm() / scale;
  }
  return r;
}

CMat Subspace::restrict_op(const CMat& op, double* resid) const {
  CMat mapped = op * basis.cast<cplx>();
  CMat r = pinv.cast<cplx>() * mapped;
  if (resid) {
    double scale = std::max(1.0, mapped.norm());
    *resid = (basis.cast<cplx>() * r - mapped).norm() / scale;
  }
  return r;
}

Subspace make_subspace(const LieAlgebra& g, const Mat& projector_or_basis,
                       bool is_projector, const std::string& what) {
  Subspace s;
  Mat raw = is_projector ? la::column_space(projector_or_basis) : projector_or_basis;
  const int k = static_cast<int>(raw.cols());
  if (k == 0) {
    s.basis = Mat(g.dim(), 0);
    s.pinv = Mat(0, g.dim());
    s.projector = is_projector ? projector_or_basis : Mat::Zero(g.dim(), g.dim());
    s.signature = Eigen::VectorXi(0);
    return s;
  }

  // pseudo-orthonormalize against the Killing form: diagonalize the Gram
  // matrix and rescale eigendirections to B = ±1
  Mat gram = raw.transpose() * g.killing() * raw;
  Eigen::SelfAdjointEigenSolver<Mat> es(0.5 * (gram + gram.transpose()));
  const Vec& ev = es.eigenvalues();
  const double top = ev.cwiseAbs().maxCoeff();
  if (ev.cwiseAbs().minCoeff() <= 1e-8 * std::max(1.0, top))
    throw DegenerateSubspace("Killing form is degenerate on " + what + " of " +
                             g.descriptor());
  // positive directions first, each scaled to |B| = 1
  std::vector<int> order(k);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return ev(a) > ev(b); });
  s.basis.resize(g.dim(), k);
  s.signature.resize(k);
  for (int c = 0; c < k; ++c) {
    const int src = order[c];
    s.basis.col(c) = raw * es.eigenvectors().col(src) / std::sqrt(std::abs(ev(src)));
    s.signature(c) = ev(src) > 0 ? 1 : -1;
  }
  s.pinv = la::pseudo_inverse(s.basis);
  s.projector = is_projector ? projector_or_basis : Mat(s.basis * s.pinv);
  return s;
}

// ---------------------------------------------------------- involution coords

Mat involution_coords(const LieAlgebra& g, const Involution& sigma) {
  const int d = g.dim();
  Mat s(d, d);
  for (int k = 0; k < d; ++k) {
    Mat img = sigma.apply(g.basis_matrix(k));
    s.col(k) = g.coordinates(img, 1e-7);  // throws AlgebraMismatch if it leaves g
  }
  // involutive?
  if ((s * s - Mat::Identity(d, d)).norm() > 1e-7 * d)
    throw UnsupportedSigma("recipe '" + sigma.label + "' is not involutive on " +
                           g.descriptor());
  // automorphism spot-check on random pairs
  std::mt19937_64 rng(0x5EED);
  for (int trial = 0; trial < 5; ++trial) {
    Vec x = la::gaussian_vector(rng, d), y = la::gaussian_vector(rng, d);
    Vec lhs = s * g.bracket(x, y);
    Vec rhs = g.bracket(Vec(s * x), Vec(s * y));
    if ((lhs - rhs).norm() > 1e-6 * std::max(1.0, lhs.norm()))
      throw UnsupportedSigma("recipe '" + sigma.label +
                             "' fails the automorphism check on " + g.descriptor());
  }
  return s;
}

// -------------------------------------------------------------- SymmetricPair

namespace {

Mat eigenprojector(const Mat& s, double eigenvalue) {
  const int d = static_cast<int>(s.rows());
  return 0.5 * (Mat::Identity(d, d) + eigenvalue * s);
}

} // namespace

SymmetricPair SymmetricPair::build(AlgebraPtr g, const Involution& sigma) {
  SymmetricPair pair;
  pair.g_ = std::move(g);
  pair.sigma_ = sigma;
  const LieAlgebra& alg = *pair.g_;
  pair.s_ = involution_coords(alg, sigma);
  pair.t_ = involution_coords(alg, Involution::theta(alg.ambient()));

  if ((pair.s_ * pair.t_ - pair.t_ * pair.s_).norm() > 1e-7 * alg.dim())
    throw NonCommutingInvolutions("sigma '" + sigma.label +
                                  "' does not commute with theta on " +
                                  alg.descriptor());

  Mat ph = eigenprojector(pair.s_, +1.0), pq = eigenprojector(pair.s_, -1.0);
  Mat pf = eigenprojector(pair.t_, +1.0), pp = eigenprojector(pair.t_, -1.0);
  pair.h_ = make_subspace(alg, ph, true, "h");
  pair.q_ = make_subspace(alg, pq, true, "q");
  pair.f_ = make_subspace(alg, pf, true, "f");
  pair.p_ = make_subspace(alg, pp, true, "p");
  pair.q_p_ = make_subspace(alg, Mat(pq * pp), true, "q∩p");
  pair.q_f_ = make_subspace(alg, Mat(pq * pf), true, "q∩f");
  pair.h_p_ = make_subspace(alg, Mat(ph * pp), true, "h∩p");
  pair.h_f_ = make_subspace(alg, Mat(ph * pf), true, "h∩f");

  if (pair.h_.dim() + pair.q_.dim() != alg.dim() ||
      pair.q_p_.dim() + pair.q_f_.dim() != pair.q_.dim() ||
      pair.h_p_.dim() + pair.h_f_.dim() != pair.h_.dim())
    throw UnsupportedSigma("eigenspace dimensions of '" + sigma.label +
                           "' do not add up on " + alg.descriptor());
  return pair;
}

// -------------------------------------------------------------- Hermann setup

HermannData hermann_setup(const SymmetricPair& pair, const Involution& sigma_prime) {
  HermannData d{pair, sigma_prime};
  const LieAlgebra& alg = pair.algebra();
  d.s_prime = involution_coords(alg, sigma_prime);

  const Mat& s = pair.sigma_coords();
  const Mat& t = pair.theta_coords();
  if ((d.s_prime * s - s * d.s_prime).norm() > 1e-7 * alg.dim())
    throw NonCommutingInvolutions("sigma' '" + sigma_prime.label +
                                  "' does not commute with sigma on " +
                                  alg.descriptor());
  if ((d.s_prime * t - t * d.s_prime).norm() > 1e-7 * alg.dim())
    throw NonCommutingInvolutions("sigma' '" + sigma_prime.label +
                                  "' does not commute with theta on " +
                                  alg.descriptor());

  Mat php = eigenprojector(d.s_prime, +1.0), pqp = eigenprojector(d.s_prime, -1.0);
  Mat pq = eigenprojector(s, -1.0);
  Mat pf = eigenprojector(t, +1.0), pp = eigenprojector(t, -1.0);
  d.h_prime = make_subspace(alg, php, true, "h'");
  d.q_prime = make_subspace(alg, pqp, true, "q'");
  d.q_hp = make_subspace(alg, Mat(pq * php), true, "q∩h'");
  d.q_qp = make_subspace(alg, Mat(pq * pqp), true, "q∩q'");
  d.q_qp_p = make_subspace(alg, Mat(pq * pqp * pp), true, "q∩q'∩p");
  d.q_qp_f = make_subspace(alg, Mat(pq * pqp * pf), true, "q∩q'∩f");

  if (d.q_hp.dim() + d.q_qp.dim() != pair.q().dim() ||
      d.q_qp_p.dim() + d.q_qp_f.dim() != d.q_qp.dim())
    throw UnsupportedSigma("sigma' eigenspace dimensions do not add up on " +
                           alg.descriptor());
  return d;
}

HermannData hermann_setup(const SymmetricPair& pair, const std::string& token) {
  const int n = pair.algebra().ambient();
  if (token == "theta") return hermann_setup(pair, Involution::theta(n));
  if (token == "sigma*theta" || token == "sigma-theta" || token == "L") {
    Involution st = pair.sigma().composed(Involution::theta(n));
    st.label = "sigma*theta";
    return hermann_setup(pair, st);
  }
  throw UnsupportedSigma("unknown sigma' token '" + token +
                         "'; use \"theta\", \"sigma*theta\" or an explicit recipe");
}

} // namespace orbitlab

#ifndef ORBITLAB_PAIRS_HPP
#define ORBITLAB_PAIRS_HPP

#include <optional>
#include <string>

#include "orbitlab/liealg.hpp"

namespace orbitlab {

/// An involutive automorphism of a matrix Lie algebra, stored in the normal
/// form  sigma(X) = sign * M * X^(T?) * M^{-1}  at the ambient (real) level.
///
/// A transpose recipe is only an automorphism with sign = -1 (the transpose
/// alone is an anti-automorphism), which the constructor enforces.  The
/// matching group-level automorphism is m -> M m M^{-1}, respectively
/// m -> M m^{-T} M^{-1}.
struct Involution {
  Mat m;
  Mat m_inv;
  bool transpose = false;
  double sign = 1.0;
  std::string label;

  /// sigma(X) = sign * M X M^{-1}
  static Involution conjugation(const Mat& m, std::string label);
  /// sigma(X) = -M X^T M^{-1}
  static Involution neg_transpose(const Mat& m, std::string label);
  /// The Cartan involution theta(X) = -X^T of every supported family.
  static Involution theta(int ambient);

  Mat apply(const Mat& x) const;
  /// Group-level automorphism matching apply() under differentiation.
  Mat apply_group(const Mat& g) const;
  /// Composition this ∘ other (again an involution whenever the two commute).
  Involution composed(const Involution& other) const;
};

/// A subspace of a Lie algebra in basis coordinates, equipped with a
/// Killing-pseudo-orthonormal basis: B(b_i, b_j) = ±δ_ij, positive columns
/// first (recorded in `signature`).
struct Subspace {
  Mat basis;                    ///< dim x k
  Mat pinv;                     ///< k x dim, Euclidean left inverse of basis
  Mat projector;                ///< dim x dim projector onto the subspace
  Eigen::VectorXi signature;    ///< +1 / -1 per basis column

  int dim() const { return static_cast<int>(basis.cols()); }
  Vec lift(const Vec& sub) const { return basis * sub; }
  CVec lift(const CVec& sub) const { return basis.cast<cplx>() * sub; }
  Vec drop(const Vec& full) const { return pinv * full; }
  CVec drop(const CVec& full) const { return pinv.cast<cplx>() * full; }
  Vec project(const Vec& full) const { return projector * full; }
  bool contains(const Vec& full, double tol = 1e-8) const;

  /// Restriction pinv * op * basis of a (complexified) operator that maps the
  /// subspace into itself; *resid receives the relative invariance defect.
  Mat restrict_op(const Mat& op, double* resid = nullptr) const;
  CMat restrict_op(const CMat& op, double* resid = nullptr) const;
};

/// A reductive symmetric pair (g, h = Fix sigma) together with the Cartan
/// grading from theta(X) = -X^T:
///   g = h ⊕ q   (sigma = ±1),   g = f ⊕ p   (theta = ±1),
/// plus the four simultaneous intersections.  sigma is checked to be an
/// involutive automorphism commuting with theta, and the Killing form is
/// checked to be nondegenerate on each piece.
class SymmetricPair {
public:
  static SymmetricPair build(AlgebraPtr g, const Involution& sigma);

  const LieAlgebra& algebra() const { return *g_; }
  const AlgebraPtr& algebra_ptr() const { return g_; }
  const Involution& sigma() const { return sigma_; }
  const Mat& sigma_coords() const { return s_; }
  const Mat& theta_coords() const { return t_; }

  const Subspace& h() const { return h_; }
  const Subspace& q() const { return q_; }
  const Subspace& f() const { return f_; }   ///< compact part (+1 of theta)
  const Subspace& p() const { return p_; }   ///< noncompact part (-1 of theta)
  const Subspace& q_p() const { return q_p_; }
  const Subspace& q_f() const { return q_f_; }
  const Subspace& h_p() const { return h_p_; }
  const Subspace& h_f() const { return h_f_; }

private:
  AlgebraPtr g_;
  Involution sigma_;
  Mat s_, t_;
  Subspace h_, q_, f_, p_, q_p_, q_f_, h_p_, h_f_;
};

/// A symmetric pair refined by a second involution sigma' (Hermann setting):
/// the acting subgroup is H' = Fix(sigma').  sigma' must commute with both
/// sigma and theta.  Carries the splittings used by orbit computations.
struct HermannData {
  SymmetricPair pair;
  Involution sigma_prime;
  Mat s_prime;

  Subspace h_prime, q_prime;
  Subspace q_hp;    ///< q ∩ h'
  Subspace q_qp;    ///< q ∩ q'
  Subspace q_qp_p;  ///< q ∩ q' ∩ p
  Subspace q_qp_f;  ///< q ∩ q' ∩ f
};

/// Attach a second involution.  Accepts the tokens "theta" (isotropy K-action)
/// and "sigma*theta" (L-action) or an explicit recipe.
HermannData hermann_setup(const SymmetricPair& pair, const Involution& sigma_prime);
HermannData hermann_setup(const SymmetricPair& pair, const std::string& token);

/// Coordinate matrix of an involution (column k = coordinates of sigma(e_k)).
/// Throws AlgebraMismatch when sigma does not preserve the algebra and
/// UnsupportedSigma when it fails the automorphism spot-check.
Mat involution_coords(const LieAlgebra& g, const Involution& sigma);

/// Killing-pseudo-orthonormal subspace from a projector (or raw basis).
/// Throws DegenerateSubspace when B restricted to the space is singular.
Subspace make_subspace(const LieAlgebra& g, const Mat& projector_or_basis,
                       bool is_projector, const std::string& what);

} // namespace orbitlab

#endif // ORBITLAB_PAIRS_HPP

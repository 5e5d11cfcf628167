#ifndef ORBITLAB_ROOTS_HPP
#define ORBITLAB_ROOTS_HPP

#include "orbitlab/pairs.hpp"

namespace orbitlab {

/// A theta-split Cartan subspace of a theta-stable subspace V ⊆ q: a maximal
/// abelian subspace spanned by commuting semisimple elements, with the
/// noncompact directions (in p) listed before the compact ones (in f).
/// Columns are Killing-normalized to |B(a_i, a_i)| = 1.
struct CartanSubspace {
  Mat basis;        ///< dim x r
  int p_count = 0;  ///< leading columns lying in p (hyperbolic)
  int f_count = 0;  ///< trailing columns lying in f (elliptic)

  int rank() const { return static_cast<int>(basis.cols()); }
  /// Lift coefficient vector to algebra coordinates.
  Vec element(const Vec& coeffs) const { return basis * coeffs; }
};

/// Randomized construction of a theta-split Cartan subspace of V = Vp ⊕ Vf:
/// first a maximal abelian subspace of Vp (descent through centralizers of
/// random elements), then a maximal abelian subspace of its centralizer in Vf.
/// The result is verified to be self-centralizing in V; failure to stabilize
/// raises MaximalityNotReached.
CartanSubspace maximal_abelian(const LieAlgebra& g, const Subspace& vp,
                               const Subspace& vf, unsigned seed = 42);

struct RankResult {
  int rank = 0;
  bool stable = true;  ///< all seeds agreed
};

/// Stabilized rank: run maximal_abelian over `retries` seeds, take the max.
RankResult rank_of(const LieAlgebra& g, const Subspace& vp, const Subspace& vf,
                   unsigned seed = 42, int retries = 5);

/// One positive restricted root of (g, sigma) relative to a Cartan subspace
/// a ⊆ q: a joint eigenvalue functional of { ad(a_i)^2 } on q^c together with
/// its root spaces in q^c and h^c.
struct RestrictedRoot {
  CVec values;           ///< alpha(a_i), real on p-columns, imaginary on f-columns
  int mult_q = 0;        ///< dim_C q_alpha^c
  int mult_h = 0;        ///< dim_C h_alpha^c (equals mult_q)
  CMat q_space;          ///< dim x mult_q, coordinates in g^c
  CMat h_space;          ///< dim x mult_h
  CVec a_alpha;          ///< coordinates of the Killing-dual element of alpha
  cplx alpha_a_alpha;    ///< alpha(a_alpha) = B-square length of alpha

  /// alpha evaluated on an element of the Cartan subspace given by real
  /// coefficients.
  cplx value_at(const Vec& coeffs) const {
    return (values.transpose() * coeffs.cast<cplx>())(0, 0);
  }
};

/// Restricted-root decomposition of q^c and h^c under a Cartan subspace:
///   q^c = z_{q^c}(a) ⊕ Σ_alpha q_alpha^c,   h^c = z_{h^c}(a) ⊕ Σ_alpha h_alpha^c.
/// Positive representatives only; the sign convention makes the first nonzero
/// entry of (Re values, Im values) positive.  Roots are sorted by that tuple.
struct RestrictedRootSystem {
  SymmetricPair pair;
  CartanSubspace cartan;
  std::vector<RestrictedRoot> roots;
  CMat zero_q;  ///< centralizer of the Cartan subspace in q^c (contains a^c)
  CMat zero_h;  ///< centralizer in h^c
};

/// Compute the restricted-root decomposition.  The relative signs of the
/// entries of each value vector are fixed with the anticommutator identity
/// {ad(a*), ad(a_i)} = 2 alpha(a*) alpha(a_i) on the root space, for a generic
/// reference element a*.  Raises ClusteringAmbiguous when joint eigenspaces
/// cannot be separated or verified.
RestrictedRootSystem restricted_roots(const SymmetricPair& pair,
                                      const CartanSubspace& cartan,
                                      unsigned seed = 42);

/// A normalized root-vector pair: Y ∈ q_alpha^c, Z ∈ h_alpha^c with
///   [a, Y] = alpha(a) Z,  [a, Z] = alpha(a) Y  for all a in the Cartan
///   subspace, and  B(Y, Y) = alpha(a_alpha)  (so [Z, Y] = alpha(a_alpha)
///   a_alpha on simple blocks).
struct RootVectorPair {
  CVec y;  ///< q^c component
  CVec z;  ///< h^c component
};

/// Construct normalized root-vector pairs spanning q_alpha^c.  Multiplicity
/// > 1 is refined by a generic element of z_h(a); isotropic directions that
/// cannot be normalized raise NormalizationSingular.
std::vector<RootVectorPair> root_vectors(const RestrictedRootSystem& sys,
                                         int root_index, unsigned seed = 42);

} // namespace orbitlab

#endif // ORBITLAB_ROOTS_HPP

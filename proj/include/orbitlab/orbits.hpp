#ifndef ORBITLAB_ORBITS_HPP
#define ORBITLAB_ORBITS_HPP

#include "orbitlab/roots.hpp"

#include <vector>

namespace orbitlab {

/// A point exp_G(w)H on an isotropy-action orbit, recorded by its defining
/// element w ∈ q (algebra coordinates).  ad(w) must be semisimple.
struct OrbitPoint {
  AlgebraPtr algebra;
  Vec w;
};

/// Validate w ∈ q with ad(w) semisimple.  Throws InvalidParams when w is not
/// in q and NonSemisimpleW when ad(w) has a nontrivial nilpotent part.
OrbitPoint make_orbit_point(const SymmetricPair& pair, const Vec& w);

/// Coefficients of an element in the columns of a Cartan subspace basis.
/// Throws WNotInCartan when the element is not in the span (tol 1e-8 rel).
Vec cartan_coefficients(const CartanSubspace& cartan, const Vec& element);

/// Distance data of a complex value to the singular lattice sqrt(-1)*pi*Z.
struct LatticePoint {
  double distance = 0.0;  ///< |value - i*pi*k| for the nearest k
  long k = 0;             ///< nearest lattice index
};
LatticePoint nearest_lattice_point(cplx value);

/// Tangent/normal splitting of q^c at exp_G(w)H: the tangent space collects
/// q_alpha^c over roots with alpha(w) off the lattice i*pi*Z, the normal
/// space is the centralizer of the Cartan subspace plus the excluded root
/// spaces.  The two are B^c-orthogonal complements inside q^c.
struct TangentSplit {
  CMat tangent;                     ///< algebra^c coordinates, basis columns
  CMat normal;
  std::vector<int> tangent_roots;   ///< indices into system.roots
  std::vector<int> excluded_roots;  ///< roots with alpha(w) on the lattice
};

TangentSplit isotropy_tangent_split(const OrbitPoint& point,
                                    const RestrictedRootSystem& system);

/// Which block of the orbit tangent space a spectrum entry describes.
enum class SpectrumPart {
  QPart,       ///< a restricted-root space q_alpha^c (or its q'-part)
  HPrimePart,  ///< Hermann splitting piece q_beta^c ∩ h'^c
  ZeroPart     ///< centralizer of the Cartan subspace
};

/// One eigenvalue block of a shape or Jacobi operator.
struct SpectrumEntry {
  int root_index = -1;     ///< index into system.roots; -1 for the zero part
  cplx eigenvalue{0.0, 0.0};
  int mult = 0;            ///< complex dimension of the block
  SpectrumPart part = SpectrumPart::QPart;
  bool annihilates_w = false;  ///< root vanishes on w: flagged, no eigenvalue
};

struct OrbitSpectrum {
  std::vector<SpectrumEntry> entries;
  int space_dim = 0;  ///< complex dimension of the space the operator acts on

  /// Sum of mult over unflagged entries.
  int covered_dim() const;
};

/// Shape-operator spectrum of the isotropy orbit through exp_G(w)H in the
/// normal direction (the left-translate of) a:
///   A|_{q_alpha^c} = -sqrt(-1)*alpha(a)/tan(sqrt(-1)*alpha(w)) * id
/// over roots off the lattice.  Roots with alpha(w) ~ 0 are emitted as
/// flagged entries (the orbit does not extend in those directions); roots on
/// a nonzero lattice point raise SingularDirection.  `a` must lie in the
/// Cartan subspace.
OrbitSpectrum isotropy_shape_spectrum(const OrbitPoint& point, const Vec& a,
                                      const RestrictedRootSystem& system);

/// Spectrum of ad(v)^2 on q^c, the negative of the Jacobi operator
/// R^c(.,v)v: eigenvalue alpha(v)^2 on q_alpha^c, 0 on the centralizer.
OrbitSpectrum jacobi_spectrum(const OrbitPoint& point, const Vec& v,
                              const RestrictedRootSystem& system);

/// The operators D^co = cos(sqrt(-1) z ad(v)) and
/// D^si = sin(sqrt(-1) z ad(v)) / (sqrt(-1) z ad(v)) restricted to q^c
/// (both involve only even powers of ad(v), hence preserve q), in the
/// pseudo-orthonormal basis of q.  Evaluated by eigendecomposition of
/// ad(v)^2|_q when semisimple, by an adaptive power series otherwise.
struct DcoDsi {
  CMat dco;
  CMat dsi;
};
DcoDsi dco_dsi(const SymmetricPair& pair, const Vec& v, cplx z);

/// Value at parameter s of the strongly M-Jacobi field along the geodesic
/// with initial direction v:  Y(s) = (D^co_{sv} - s D^si_{sv} A_v)(X), with
/// A_v X supplied by the caller.  Parallel transport along the geodesic is
/// the left-translation identification, so the result is again expressed in
/// algebra^c coordinates at the base point.
CVec strong_jacobi_field(const SymmetricPair& pair, const Vec& v, const CVec& x,
                         const CVec& ax, double s);

/// One arithmetic family of complex focal radii: z_k = offset + k*step,
/// k in Z, contributed by one restricted root with multiplicity mult.
struct FocalFamily {
  int root_index = -1;
  cplx offset{0.0, 0.0};  ///< -beta(w)/beta(a)
  cplx step{0.0, 0.0};    ///< pi/(sqrt(-1)*beta(a))
  int mult = 0;
};

struct FocalWindowEntry {
  cplx z{0.0, 0.0};
  int k = 0;
  int root_index = -1;
  int mult = 0;
};

struct FocalSet {
  std::vector<FocalFamily> families;
  std::vector<FocalWindowEntry> window;  ///< all |z| <= radius, sorted by |z|
};

/// Complex focal radii of the isotropy orbit through exp_G(w)H along the
/// geodesic in direction a: per tangent root beta with beta(a) != 0 the
/// lattice z_k = (k pi - sqrt(-1) beta(w)) / (sqrt(-1) beta(a)), with
/// multiplicity dim_C q_beta^c, plus the window enumeration |z| <= radius.
FocalSet complex_focal_radii(const OrbitPoint& point, const Vec& a,
                             const RestrictedRootSystem& system,
                             double window_radius);

/// Shape operator of a partial tube, horizontal part: for a tube offset v,
/// normal direction w_dir with Span{v, w_dir} abelian, base tangent vector x
/// and base shape data av_x = A_v x, aw_x = A_{w_dir} x, evaluates
///   sqrt(-1) ad(w_dir) sin(sqrt(-1) ad(v)) (x)
///   - [sqrt(-1) sin(sqrt(-1) ad(v)) / ad(v)] (aw_x)
///   + [ (cos(sqrt(-1) ad(v)) - id)/ad(v)
///       + (sqrt(-1) sin(sqrt(-1) ad(v)) + ad(v))/ad(v)^2 ] (ad(w_dir) av_x)
/// with the functional calculus of the full ambient ad(v).  Vertical tangent
/// vectors of a partial tube are handled by the base-slice shape operator
/// itself and need no formula here.  Throws NonAbelianSpan when [v,w] != 0.
CVec partial_tube_shape(const SymmetricPair& pair, const Vec& v,
                        const Vec& w_dir, const CVec& x, const CVec& av_x,
                        const CVec& aw_x);

/// A linear operator assembled on the real points of a conjugation-stable
/// sum of root spaces: `basis` (algebra coordinates) spans those real points
/// and `matrix` is the operator in that basis.
struct AssembledOperator {
  Mat basis;
  Mat matrix;

  int dim() const { return static_cast<int>(basis.cols()); }
};

/// Assemble sum_alpha scalar_alpha * (projector onto q_alpha^c) over the
/// listed roots as a real matrix.  The root list must be closed under
/// conjugation with conjugate-equivariant scalars (checked; InvalidParams
/// otherwise).
AssembledOperator assemble_real_operator(const RestrictedRootSystem& system,
                                         const std::vector<int>& root_indices,
                                         const std::vector<cplx>& scalars);

/// The isotropy-orbit shape operator of direction a as a real matrix on the
/// real points of the tangent space (same classification and eigenvalues as
/// isotropy_shape_spectrum).
AssembledOperator isotropy_shape_operator(const OrbitPoint& point, const Vec& a,
                                          const RestrictedRootSystem& system);

/// ad(v)^2 on the same tangent basis as isotropy_shape_operator (the negated
/// Jacobi operator restricted to the orbit tangent space), so the two
/// matrices act in one common frame.
AssembledOperator jacobi_operator(const OrbitPoint& point, const Vec& v,
                                  const RestrictedRootSystem& system);

} // namespace orbitlab

#endif // ORBITLAB_ORBITS_HPP

#ifndef ORBITLAB_LIEALG_HPP
#define ORBITLAB_LIEALG_HPP

#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "orbitlab/errors.hpp"
#include "orbitlab/linalg.hpp"

namespace orbitlab {

/// The ten supported families of classical real matrix Lie algebras.
///
/// Families whose natural ambient is complex (or quaternionic) are realified:
/// every complex entry a+bi becomes the 2x2 real block [[a,-b],[b,a]], so all
/// algebra elements are real N x N matrices and the Lie bracket is the plain
/// matrix commutator.  Quaternionic families use the complex 2m x 2m
/// realization { X : J conj(X) J^-1 = X } with J = [[0,-I],[I,0]] before
/// realifying.
enum class Family {
  sl_R,     ///< sl(n,R), traceless real
  su,       ///< su(p,q), traceless, anti-Hermitian for diag(I_p,-I_q)
  su_star,  ///< su*(2n), quaternionic gl(n,H) with Re tr = 0
  so,       ///< so(p,q), anti-symmetric for diag(I_p,-I_q)
  so_star,  ///< so*(2n), complex skew Z1 / Hermitian Z2 blocks
  sp_R,     ///< sp(n,R), real symplectic
  sp,       ///< sp(p,q), quaternionic form of signature (p,q)
  sl_C,     ///< sl(n,C) realified
  so_C,     ///< so(n,C) realified
  sp_C      ///< sp(n,C) realified
};

/// Per-entry realification of a complex matrix (a+bi -> [[a,-b],[b,a]]).
Mat realify(const CMat& z);

/// The realified matrix of complex conjugation: C * realify(X) * C equals
/// realify(conj(X)), with C = blockdiag(1,-1,1,-1,...).  C is orthogonal and
/// involutive.
Mat conjugation_matrix(int complex_size);

/// Inverse of realify on matrices that commute with the realified i.
CMat unrealify(const Mat& m, double tol = 1e-9);

/// A classical real matrix Lie algebra with a fixed, deterministic basis.
///
/// Everything downstream works in basis coordinates: elements are Vec (or
/// CVec for the complexification), operators are dim x dim matrices.  The
/// class owns the structure constants, the Killing form computed from them,
/// and the change between coordinates and ambient matrices.
class LieAlgebra {
public:
  /// Build a fresh instance.  Throws InvalidParams / UnsupportedFamily /
  /// DimensionGuard.  Parameter conventions:
  ///   sl_R(n), sl_C(n): n >= 2;      su(p,q), so(p,q), sp(p,q): p,q >= 0
  ///   su_star(n) means su*(2n);      so_star(n) means so*(2n)
  ///   sp_R(n), sp_C(n), so_C(n): n >= 1.
  static std::shared_ptr<const LieAlgebra> create(Family family, int p, int q = 0);

  /// Parse descriptors like "sl(3,R)", "su(1,2)", "su*(4)", "so*(6)",
  /// "sp(2,R)", "sp(1,1)", "sl(2,C)".  Case-insensitive, spaces ignored.
  static std::shared_ptr<const LieAlgebra> parse(const std::string& descriptor);

  /// Like create/parse but memoized on the canonical descriptor, so repeated
  /// table rows over one ambient algebra share the structure constants.
  static std::shared_ptr<const LieAlgebra> cached(Family family, int p, int q = 0);
  static std::shared_ptr<const LieAlgebra> cached(const std::string& descriptor);

  Family family() const { return family_; }
  int param_p() const { return p_; }
  int param_q() const { return q_; }
  /// Real dimension.
  int dim() const { return dim_; }
  /// Ambient real matrix size N (elements are N x N).
  int ambient() const { return ambient_; }
  /// True when the ambient is a realified complex matrix space.
  bool realified() const { return complex_size_ > 0; }
  /// Complex matrix size before realification (0 for genuinely real ambient).
  int complex_size() const { return complex_size_; }
  /// Canonical descriptor, e.g. "su*(4)".
  const std::string& descriptor() const { return descriptor_; }

  // --- basis and coordinates --------------------------------------------

  /// Dense ambient matrix of basis element k.
  Mat basis_matrix(int k) const;
  /// (N^2 x dim) matrix whose column k is the column-major vec of e_k.
  const Mat& flat_basis() const { return flat_; }
  /// Ambient matrix of a coordinate vector.
  Mat realize(const Vec& coords) const;
  /// Coordinates of an ambient matrix; throws AlgebraMismatch when x is not
  /// in the algebra (relative residual above tol).
  Vec coordinates(const Mat& x, double tol = 1e-8) const;
  bool contains(const Mat& x, double tol = 1e-8) const;

  // --- structure ----------------------------------------------------------

  /// Coordinates of [X, Y].
  Vec bracket(const Vec& x, const Vec& y) const;
  /// Complex-bilinear bracket on the complexification.
  CVec bracket_complex(const CVec& x, const CVec& y) const;
  /// Dense matrix of ad(X) on coordinates.
  Mat ad(const Vec& x) const;
  /// Complex-bilinear ad for complexified arguments.
  CMat ad_complex(const CVec& x) const;
  /// Structure constant c^k_{ij} with [e_i, e_j] = sum_k c^k_{ij} e_k.
  double structure_constant(int i, int j, int k) const;

  /// Killing Gram matrix B(e_i, e_j) = tr(ad e_i ad e_j), computed from the
  /// structure constants.
  const Mat& killing() const { return killing_; }
  double killing_form(const Vec& x, const Vec& y) const;
  /// Complex-bilinear extension (no conjugation on either slot).
  cplx killing_form_c(const CVec& x, const CVec& y) const;

  /// True when ad(X) is diagonalizable over C: for each eigenvalue cluster,
  /// rank(ad X - z) equals rank((ad X - z)^2).
  bool is_semisimple_element(const Vec& x, double tol = 1e-8) const;

private:
  LieAlgebra() = default;
  void init(Family family, int p, int q);
  void build_basis();
  void build_structure();

  Family family_{};
  int p_ = 0, q_ = 0;
  int dim_ = 0, ambient_ = 0, complex_size_ = 0;
  std::string descriptor_;

  Mat flat_;     // N^2 x dim
  Mat dual_;     // dim x N^2, left inverse of flat_
  Mat killing_;  // dim x dim

  // sparse structure constants for i < j; [e_j, e_i] = -[e_i, e_j]
  using SparseCol = std::vector<std::pair<int, double>>;
  std::vector<SparseCol> sc_;
  std::size_t pair_index(int i, int j) const;  // requires i < j
  const SparseCol& sc_at(int i, int j) const { return sc_[pair_index(i, j)]; }
};

using AlgebraPtr = std::shared_ptr<const LieAlgebra>;

} // namespace orbitlab

#endif // ORBITLAB_LIEALG_HPP

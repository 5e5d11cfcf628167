#ifndef ORBITLAB_LINALG_HPP
#define ORBITLAB_LINALG_HPP

#include <Eigen/Dense>
#include <complex>
#include <random>
#include <vector>

namespace orbitlab {

using Mat  = Eigen::MatrixXd;
using Vec  = Eigen::VectorXd;
using CMat = Eigen::MatrixXcd;
using CVec = Eigen::VectorXcd;
using cplx = std::complex<double>;

/// Small dense-linear-algebra helpers shared by every module.
///
/// All rank-revealing routines use singular values with a *relative* cutoff:
/// a direction counts as zero when its singular value is below
/// `tol_rel * max_singular_value` (or below `tol_rel` outright for an all-zero
/// matrix).  The default 1e-10 is far below every geometric tolerance used by
/// the higher layers, so subspace dimensions are stable against roundoff.
namespace la {

inline constexpr double kRankTol = 1e-10;

/// Numerical rank via SVD.
int rank(const Mat& a, double tol_rel = kRankTol);
int rank(const CMat& a, double tol_rel = kRankTol);

/// Orthonormal basis of the kernel (columns).  Empty (n x 0) when injective.
Mat nullspace(const Mat& a, double tol_rel = kRankTol);
CMat nullspace(const CMat& a, double tol_rel = kRankTol);

/// Orthonormal basis of the column space (columns).
Mat column_space(const Mat& a, double tol_rel = kRankTol);
CMat column_space(const CMat& a, double tol_rel = kRankTol);

/// Orthonormal basis of (column space of u) ∩ (column space of v).
Mat intersect_columns(const Mat& u, const Mat& v, double tol_rel = kRankTol);
CMat intersect_columns(const CMat& u, const CMat& v, double tol_rel = kRankTol);

/// Moore-Penrose pseudo-inverse (SVD-based).
Mat pseudo_inverse(const Mat& a, double tol_rel = kRankTol);

/// Group indices of near-equal complex values.  Transitive closure: two
/// values land in one cluster when they are linked by a chain of pairs closer
/// than `tol_abs`.  Returned clusters are sorted by their mean value
/// (lexicographically by real part, then imaginary part).
std::vector<std::vector<int>> cluster_values(const CVec& values, double tol_abs);

/// Standard-normal vector from a seeded engine (deterministic per seed).
Vec gaussian_vector(std::mt19937_64& rng, int n);

} // namespace la
} // namespace orbitlab

#endif // ORBITLAB_LINALG_HPP

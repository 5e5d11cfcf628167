#include "orbitlab/linalg.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

namespace orbitlab::la {
namespace {

template <typename Matrix>
int rank_impl(const Matrix& a, double tol_rel) {
  if (a.rows() == 0 || a.cols() == 0) return 0;
  Eigen::JacobiSVD<Matrix> svd(a);
  const auto& sv = svd.singularValues();
  const double cut = tol_rel * std::max(1.0, sv(0));
  int r = 0;
  for (int i = 0; i < sv.size(); ++i)
    if (sv(i) > cut) ++r;
  return r;
}

template <typename Matrix>
Matrix nullspace_impl(const Matrix& a, double tol_rel) {
  if (a.cols() == 0) return Matrix(a.cols(), 0);
  if (a.rows() == 0) {
    Matrix id = Matrix::Identity(a.cols(), a.cols());
    return id;
  }
  Eigen::JacobiSVD<Matrix> svd(a, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  const double cut = tol_rel * std::max(1.0, sv.size() ? sv(0) : 0.0);
  int r = 0;
  for (int i = 0; i < sv.size(); ++i)
    if (sv(i) > cut) ++r;
  return svd.matrixV().rightCols(a.cols() - r);
}

template <typename Matrix>
Matrix column_space_impl(const Matrix& a, double tol_rel) {
  if (a.rows() == 0 || a.cols() == 0) return Matrix(a.rows(), 0);
  Eigen::JacobiSVD<Matrix> svd(a, Eigen::ComputeThinU);
  const auto& sv = svd.singularValues();
  const double cut = tol_rel * std::max(1.0, sv(0));
  int r = 0;
  for (int i = 0; i < sv.size(); ++i)
    if (sv(i) > cut) ++r;
  return svd.matrixU().leftCols(r);
}

// x in im(u) ∩ im(v)  ⇔  x = u s = v t for some (s,t), i.e. (s,t) in the
// kernel of [u | -v]; the intersection is then spanned by u * s over that
// kernel.  A final column_space pass re-orthonormalizes.
template <typename Matrix>
Matrix intersect_columns_impl(const Matrix& u, const Matrix& v, double tol_rel) {
  if (u.cols() == 0 || v.cols() == 0) return Matrix(u.rows(), 0);
  Matrix stacked(u.rows(), u.cols() + v.cols());
  stacked << u, -v;
  Matrix ker = nullspace_impl(stacked, tol_rel);
  if (ker.cols() == 0) return Matrix(u.rows(), 0);
  Matrix combo = u * ker.topRows(u.cols());
  return column_space_impl(combo, tol_rel);
}

} // namespace

int rank(const Mat& a, double tol_rel) { return rank_impl(a, tol_rel); }
int rank(const CMat& a, double tol_rel) { return rank_impl(a, tol_rel); }

Mat nullspace(const Mat& a, double tol_rel) { return nullspace_impl(a, tol_rel); }
CMat nullspace(const CMat& a, double tol_rel) { return nullspace_impl(a, tol_rel); }

Mat column_space(const Mat& a, double tol_rel) { return column_space_impl(a, tol_rel); }
CMat column_space(const CMat& a, double tol_rel) { return column_space_impl(a, tol_rel); }

Mat intersect_columns(const Mat& u, const Mat& v, double tol_rel) {
  return intersect_columns_impl(u, v, tol_rel);
}
CMat intersect_columns(const CMat& u, const CMat& v, double tol_rel) {
  return intersect_columns_impl(u, v, tol_rel);
}

Mat pseudo_inverse(const Mat& a, double tol_rel) {
  if (a.rows() == 0 || a.cols() == 0) return Mat(a.cols(), a.rows());
  Eigen::JacobiSVD<Mat> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& sv = svd.singularValues();
  const double cut = tol_rel * std::max(1.0, sv(0));
  Vec inv = Vec::Zero(sv.size());
  for (int i = 0; i < sv.size(); ++i)
    if (sv(i) > cut) inv(i) = 1.0 / sv(i);
  return svd.matrixV() * inv.asDiagonal() * svd.matrixU().transpose();
}

std::vector<std::vector<int>> cluster_values(const CVec& values, double tol_abs) {
  const int n = static_cast<int>(values.size());
  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int i) {
    while (parent[i] != i) i = parent[i] = parent[parent[i]];
    return i;
  };
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (std::abs(values(i) - values(j)) <= tol_abs) parent[find(i)] = find(j);

  std::vector<std::vector<int>> groups;
  std::vector<int> root_of(n, -1);
  for (int i = 0; i < n; ++i) {
    int r = find(i);
    if (root_of[r] < 0) {
      root_of[r] = static_cast<int>(groups.size());
      groups.emplace_back();
    }
    groups[root_of[r]].push_back(i);
  }
  auto mean = [&](const std::vector<int>& g) {
    cplx s{0, 0};
    for (int i : g) s += values(i);
    return s / static_cast<double>(g.size());
  };
  std::sort(groups.begin(), groups.end(),
            [&](const std::vector<int>& a, const std::vector<int>& b) {
              cplx ma = mean(a), mb = mean(b);
              if (ma.real() != mb.real()) return ma.real() < mb.real();
              return ma.imag() < mb.imag();
            });
  return groups;
}

Vec gaussian_vector(std::mt19937_64& rng, int n) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Vec v(n);
  for (int i = 0; i < n; ++i) v(i) = gauss(rng);
  return v;
}

} // namespace orbitlab::la

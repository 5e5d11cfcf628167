#include "orbitlab/liealg.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cctype>
#include <map>
#include <mutex>
#include <regex>
#include <sstream>
#include <unordered_map>

namespace orbitlab {

// ---------------------------------------------------------------- realification

Mat realify(const CMat& z) {
  Mat r = Mat::Zero(2 * z.rows(), 2 * z.cols());
  for (int i = 0; i < z.rows(); ++i)
    for (int j = 0; j < z.cols(); ++j) {
      const double a = z(i, j).real(), b = z(i, j).imag();
      r(2 * i, 2 * j) = a;
      r(2 * i, 2 * j + 1) = -b;
      r(2 * i + 1, 2 * j) = b;
      r(2 * i + 1, 2 * j + 1) = a;
    }
  return r;
}

Mat conjugation_matrix(int complex_size) {
  Vec d(2 * complex_size);
  for (int i = 0; i < complex_size; ++i) {
    d(2 * i) = 1.0;
    d(2 * i + 1) = -1.0;
  }
  return d.asDiagonal();
}

CMat unrealify(const Mat& m, double tol) {
  if (m.rows() % 2 != 0 || m.cols() % 2 != 0)
    throw AlgebraMismatch("unrealify: odd-sized matrix");
  const int n = static_cast<int>(m.rows() / 2), c = static_cast<int>(m.cols() / 2);
  const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  CMat z(n, c);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < c; ++j) {
      const double a = m(2 * i, 2 * j), b = m(2 * i + 1, 2 * j);
      if (std::abs(m(2 * i + 1, 2 * j + 1) - a) > tol * scale ||
          std::abs(m(2 * i, 2 * j + 1) + b) > tol * scale)
        throw AlgebraMismatch("unrealify: matrix is not complex-linear");
      z(i, j) = cplx(a, b);
    }
  return z;
}

// ----------------------------------------------------------------- basis builder

namespace {

CMat cunit(int n, int i, int j, cplx v = cplx(1, 0)) {
  CMat m = CMat::Zero(n, n);
  m(i, j) = v;
  return m;
}

// quaternionic block embedding [[Z1, Z2], [-conj Z2, conj Z1]]
CMat quat_block(const CMat& z1, const CMat& z2) {
  const int n = static_cast<int>(z1.rows());
  CMat x = CMat::Zero(2 * n, 2 * n);
  x.topLeftCorner(n, n) = z1;
  x.topRightCorner(n, n) = z2;
  x.bottomLeftCorner(n, n) = -z2.conjugate();
  x.bottomRightCorner(n, n) = z1.conjugate();
  return x;
}

Vec signature_eps(int p, int q) {
  Vec eps(p + q);
  for (int i = 0; i < p + q; ++i) eps(i) = i < p ? 1.0 : -1.0;
  return eps;
}

const cplx kI(0, 1);

} // namespace

void LieAlgebra::build_basis() {
  std::vector<Mat> basis;

  switch (family_) {
    case Family::sl_R: {
      const int n = p_;
      for (int k = 0; k + 1 < n; ++k) {
        Mat h = Mat::Zero(n, n);
        h(k, k) = 1.0;
        h(k + 1, k + 1) = -1.0;
        basis.push_back(h);
      }
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          if (i != j) {
            Mat e = Mat::Zero(n, n);
            e(i, j) = 1.0;
            basis.push_back(e);
          }
      break;
    }
    case Family::so: {
      const int n = p_ + q_;
      Vec eps = signature_eps(p_, q_);
      for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
          Mat f = Mat::Zero(n, n);
          f(i, j) = 1.0;
          f(j, i) = -eps(i) * eps(j);
          basis.push_back(f);
        }
      break;
    }
    case Family::sp_R: {
      const int n = p_;
      auto embed = [n](const Mat& a, const Mat& b, const Mat& c) {
        Mat x = Mat::Zero(2 * n, 2 * n);
        x.topLeftCorner(n, n) = a;
        x.topRightCorner(n, n) = b;
        x.bottomLeftCorner(n, n) = c;
        x.bottomRightCorner(n, n) = -a.transpose();
        return x;
      };
      const Mat zn = Mat::Zero(n, n);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          Mat a = Mat::Zero(n, n);
          a(i, j) = 1.0;
          basis.push_back(embed(a, zn, zn));
        }
      for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) {
          Mat s = Mat::Zero(n, n);
          s(i, j) += 1.0;
          s(j, i) += 1.0;
          if (i == j) s(i, i) = 1.0;
          basis.push_back(embed(zn, s, zn));
        }
      for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) {
          Mat s = Mat::Zero(n, n);
          s(i, j) += 1.0;
          s(j, i) += 1.0;
          if (i == j) s(i, i) = 1.0;
          basis.push_back(embed(zn, zn, s));
        }
      break;
    }
    case Family::su: {
      const int n = p_ + q_;
      Vec eps = signature_eps(p_, q_);
      std::vector<CMat> cb;
      for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
          cb.push_back(cunit(n, i, j) - eps(i) * eps(j) * cunit(n, j, i));
          cb.push_back(kI * (cunit(n, i, j) + eps(i) * eps(j) * cunit(n, j, i)));
        }
      for (int k = 0; k + 1 < n; ++k)
        cb.push_back(kI * (cunit(n, k, k) - cunit(n, k + 1, k + 1)));
      for (const auto& z : cb) basis.push_back(realify(z));
      break;
    }
    case Family::su_star: {
      const int n = p_;
      const CMat zn = CMat::Zero(n, n);
      std::vector<CMat> cb;
      // Z1 slot: gl(n,C) with Re tr = 0
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          if (i != j) {
            cb.push_back(quat_block(cunit(n, i, j), zn));
            cb.push_back(quat_block(cunit(n, i, j, kI), zn));
          }
      for (int k = 0; k + 1 < n; ++k)
        cb.push_back(quat_block(cunit(n, k, k) - cunit(n, k + 1, k + 1), zn));
      for (int k = 0; k < n; ++k)
        cb.push_back(quat_block(cunit(n, k, k, kI), zn));
      // Z2 slot: all of gl(n,C)
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          cb.push_back(quat_block(zn, cunit(n, i, j)));
          cb.push_back(quat_block(zn, cunit(n, i, j, kI)));
        }
      for (const auto& z : cb) basis.push_back(realify(z));
      break;
    }
    case Family::so_star: {
      const int n = p_;
      const CMat zn = CMat::Zero(n, n);
      std::vector<CMat> cb;
      // Z1 slot: complex skew
      for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
          cb.push_back(quat_block(cunit(n, i, j) - cunit(n, j, i), zn));
          cb.push_back(quat_block(cunit(n, i, j, kI) - cunit(n, j, i, kI), zn));
        }
      // Z2 slot: Hermitian
      for (int k = 0; k < n; ++k) cb.push_back(quat_block(zn, cunit(n, k, k)));
      for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
          cb.push_back(quat_block(zn, cunit(n, i, j) + cunit(n, j, i)));
          cb.push_back(quat_block(zn, cunit(n, i, j, kI) - cunit(n, j, i, kI)));
        }
      for (const auto& z : cb) basis.push_back(realify(z));
      break;
    }
    case Family::sp: {
      const int m = p_ + q_;
      Vec eps = signature_eps(p_, q_);
      CMat i0 = CMat::Zero(m, m);
      for (int k = 0; k < m; ++k) i0(k, k) = eps(k);
      const CMat zm = CMat::Zero(m, m);
      std::vector<CMat> cb;
      // Z1 slot: u(p,q)
      for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j) {
          cb.push_back(quat_block(cunit(m, i, j) - eps(i) * eps(j) * cunit(m, j, i), zm));
          cb.push_back(
              quat_block(kI * (cunit(m, i, j) + eps(i) * eps(j) * cunit(m, j, i)), zm));
        }
      for (int k = 0; k < m; ++k) cb.push_back(quat_block(cunit(m, k, k, kI), zm));
      // Z2 slot: I0 * (complex symmetric)
      for (int i = 0; i < m; ++i)
        for (int j = i; j < m; ++j) {
          CMat s = CMat::Zero(m, m);
          s(i, j) += cplx(1, 0);
          s(j, i) += cplx(1, 0);
          if (i == j) s(i, i) = cplx(1, 0);
          cb.push_back(quat_block(zm, i0 * s));
          cb.push_back(quat_block(zm, i0 * (kI * s)));
        }
      for (const auto& z : cb) basis.push_back(realify(z));
      break;
    }
    case Family::sl_C: {
      const int n = p_;
      std::vector<CMat> cx;
      for (int k = 0; k + 1 < n; ++k)
        cx.push_back(cunit(n, k, k) - cunit(n, k + 1, k + 1));
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          if (i != j) cx.push_back(cunit(n, i, j));
      for (const auto& z : cx) {
        basis.push_back(realify(z));
        basis.push_back(realify(kI * z));
      }
      break;
    }
    case Family::so_C: {
      const int n = p_;
      std::vector<CMat> cx;
      for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) cx.push_back(cunit(n, i, j) - cunit(n, j, i));
      for (const auto& z : cx) {
        basis.push_back(realify(z));
        basis.push_back(realify(kI * z));
      }
      break;
    }
    case Family::sp_C: {
      const int n = p_;
      const CMat zn = CMat::Zero(n, n);
      auto embed = [n, &zn](const CMat& a, const CMat& b, const CMat& c) {
        CMat x = CMat::Zero(2 * n, 2 * n);
        x.topLeftCorner(n, n) = a;
        x.topRightCorner(n, n) = b;
        x.bottomLeftCorner(n, n) = c;
        x.bottomRightCorner(n, n) = -a.transpose();
        return x;
      };
      std::vector<CMat> cx;
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) cx.push_back(embed(cunit(n, i, j), zn, zn));
      for (int slot = 0; slot < 2; ++slot)
        for (int i = 0; i < n; ++i)
          for (int j = i; j < n; ++j) {
            CMat s = CMat::Zero(n, n);
            s(i, j) += cplx(1, 0);
            s(j, i) += cplx(1, 0);
            if (i == j) s(i, i) = cplx(1, 0);
            cx.push_back(slot == 0 ? embed(zn, s, zn) : embed(zn, zn, s));
          }
      for (const auto& z : cx) {
        basis.push_back(realify(z));
        basis.push_back(realify(kI * z));
      }
      break;
    }
  }

  dim_ = static_cast<int>(basis.size());
  flat_.resize(static_cast<Eigen::Index>(ambient_) * ambient_, dim_);
  for (int k = 0; k < dim_; ++k)
    flat_.col(k) = Eigen::Map<const Vec>(basis[k].data(),
                                         static_cast<Eigen::Index>(ambient_) * ambient_);

  // left inverse of flat_ via the (well-conditioned) Gram matrix
  Mat gram = flat_.transpose() * flat_;
  Eigen::SelfAdjointEigenSolver<Mat> ges(gram);
  if (ges.eigenvalues().minCoeff() < 1e-8 * std::max(1.0, ges.eigenvalues().maxCoeff()))
    throw Error("Internal", "basis of " + descriptor_ + " is numerically dependent");
  dual_ = gram.llt().solve(flat_.transpose());
}

// ------------------------------------------------------------------- structure

std::size_t LieAlgebra::pair_index(int i, int j) const {
  // row-major upper triangle, i < j
  return static_cast<std::size_t>(i) * (2 * dim_ - i - 1) / 2 +
         static_cast<std::size_t>(j - i - 1);
}

void LieAlgebra::build_structure() {
  const int N = ambient_;
  using Trip = std::vector<std::tuple<int, int, double>>;
  std::vector<Trip> trip(dim_);
  for (int k = 0; k < dim_; ++k)
    for (int c = 0; c < N; ++c)
      for (int r = 0; r < N; ++r) {
        const double v = flat_(static_cast<Eigen::Index>(c) * N + r, k);
        if (v != 0.0) trip[k].emplace_back(r, c, v);
      }

  sc_.assign(static_cast<std::size_t>(dim_) * (dim_ - 1) / 2, {});
  std::unordered_map<long, double> acc;
  Vec coords(dim_);
  for (int i = 0; i < dim_; ++i) {
    for (int j = i + 1; j < dim_; ++j) {
      acc.clear();
      for (const auto& [r1, c1, v1] : trip[i])
        for (const auto& [r2, c2, v2] : trip[j]) {
          if (c1 == r2) acc[static_cast<long>(c2) * N + r1] += v1 * v2;
          if (c2 == r1) acc[static_cast<long>(c1) * N + r2] -= v1 * v2;
        }
      coords.setZero();
      double bscale = 0.0;
      for (const auto& [idx, v] : acc) {
        if (v == 0.0) continue;
        bscale = std::max(bscale, std::abs(v));
        coords += v * dual_.col(idx);
      }
      SparseCol col;
      const double cut = 1e-10 * std::max(1.0, coords.cwiseAbs().maxCoeff());
      for (int k = 0; k < dim_; ++k)
        if (std::abs(coords(k)) > cut) col.emplace_back(k, coords(k));

      // closure check: the sparse reconstruction must reproduce the bracket
      std::unordered_map<long, double> rec;
      for (const auto& [k, ck] : col)
        for (const auto& [r, c, v] : trip[k]) rec[static_cast<long>(c) * N + r] += ck * v;
      double resid = 0.0;
      for (const auto& [idx, v] : acc) {
        auto it = rec.find(idx);
        resid = std::max(resid, std::abs(v - (it == rec.end() ? 0.0 : it->second)));
        if (it != rec.end()) rec.erase(it);
      }
      for (const auto& [idx, v] : rec) resid = std::max(resid, std::abs(v));
      if (resid > 1e-8 * std::max(1.0, bscale))
        throw AlgebraMismatch("bracket of basis elements " + std::to_string(i) + "," +
                              std::to_string(j) + " left " + descriptor_);
      sc_[pair_index(i, j)] = std::move(col);
    }
  }

  // Killing form from the structure constants: B_ij = tr(ad e_i ad e_j)
  killing_.resize(dim_, dim_);
  Mat adi(dim_, dim_);
  auto column = [this](int a, int b, SparseCol& out) {
    // coords of [e_a, e_b] into out (signed lookup)
    out.clear();
    if (a == b) return;
    if (a < b) {
      out = sc_at(a, b);
    } else {
      for (const auto& [k, v] : sc_at(b, a)) out.emplace_back(k, -v);
    }
  };
  SparseCol colbuf;
  for (int i = 0; i < dim_; ++i) {
    adi.setZero();
    for (int j = 0; j < dim_; ++j) {
      column(i, j, colbuf);
      for (const auto& [l, v] : colbuf) adi(l, j) = v;
    }
    for (int j = i; j < dim_; ++j) {
      double s = 0.0;
      for (int k = 0; k < dim_; ++k) {
        column(j, k, colbuf);
        for (const auto& [l, v] : colbuf) s += adi(k, l) * v;
      }
      killing_(i, j) = s;
      killing_(j, i) = s;
    }
  }
}

// ------------------------------------------------------------------ public API

Mat LieAlgebra::basis_matrix(int k) const {
  return Eigen::Map<const Mat>(flat_.col(k).data(), ambient_, ambient_);
}

Mat LieAlgebra::realize(const Vec& coords) const {
  if (coords.size() != dim_)
    throw AlgebraMismatch("coordinate vector has wrong length for " + descriptor_);
  Vec v = flat_ * coords;
  return Eigen::Map<const Mat>(v.data(), ambient_, ambient_);
}

Vec LieAlgebra::coordinates(const Mat& x, double tol) const {
  if (x.rows() != ambient_ || x.cols() != ambient_)
    throw AlgebraMismatch("matrix size does not match ambient of " + descriptor_);
  Eigen::Map<const Vec> vx(x.data(), static_cast<Eigen::Index>(ambient_) * ambient_);
  Vec c = dual_ * vx;
  const double resid = (flat_ * c - vx).norm();
  if (resid > tol * std::max(1.0, vx.norm()))
    throw AlgebraMismatch("matrix is not an element of " + descriptor_ +
                          " (residual " + std::to_string(resid) + ")");
  return c;
}

bool LieAlgebra::contains(const Mat& x, double tol) const {
  if (x.rows() != ambient_ || x.cols() != ambient_) return false;
  Eigen::Map<const Vec> vx(x.data(), static_cast<Eigen::Index>(ambient_) * ambient_);
  Vec c = dual_ * vx;
  return (flat_ * c - vx).norm() <= tol * std::max(1.0, vx.norm());
}

Vec LieAlgebra::bracket(const Vec& x, const Vec& y) const {
  Mat bx = realize(x), by = realize(y);
  return coordinates(bx * by - by * bx, 1e-7);
}

CVec LieAlgebra::bracket_complex(const CVec& x, const CVec& y) const {
  Vec xr = x.real(), xi = x.imag(), yr = y.real(), yi = y.imag();
  Vec re = bracket(xr, yr) - bracket(xi, yi);
  Vec im = bracket(xr, yi) + bracket(xi, yr);
  return re + cplx(0, 1) * im;
}

Mat LieAlgebra::ad(const Vec& x) const {
  if (x.size() != dim_)
    throw AlgebraMismatch("coordinate vector has wrong length for " + descriptor_);
  Mat a = Mat::Zero(dim_, dim_);
  for (int i = 0; i < dim_; ++i) {
    const double xi = x(i);
    if (xi == 0.0) continue;
    for (int j = 0; j < dim_; ++j) {
      if (j == i) continue;
      if (i < j) {
        for (const auto& [l, v] : sc_at(i, j)) a(l, j) += xi * v;
      } else {
        for (const auto& [l, v] : sc_at(j, i)) a(l, j) -= xi * v;
      }
    }
  }
  return a;
}

CMat LieAlgebra::ad_complex(const CVec& x) const {
  return ad(Vec(x.real())).cast<cplx>() + cplx(0, 1) * ad(Vec(x.imag())).cast<cplx>();
}

double LieAlgebra::structure_constant(int i, int j, int k) const {
  if (i == j) return 0.0;
  const SparseCol& col = i < j ? sc_at(i, j) : sc_at(j, i);
  const double sign = i < j ? 1.0 : -1.0;
  for (const auto& [l, v] : col)
    if (l == k) return sign * v;
  return 0.0;
}

double LieAlgebra::killing_form(const Vec& x, const Vec& y) const {
  return x.dot(killing_ * y);
}

cplx LieAlgebra::killing_form_c(const CVec& x, const CVec& y) const {
  // bilinear extension: transpose, not adjoint
  return (x.transpose() * (killing_.cast<cplx>() * y))(0, 0);
}

bool LieAlgebra::is_semisimple_element(const Vec& x, double tol) const {
  Mat a = ad(x);
  const double scale = std::max(1.0, a.cwiseAbs().maxCoeff());
  Eigen::ComplexEigenSolver<CMat> es(a.cast<cplx>(), /*computeEigenvectors=*/false);
  auto groups = la::cluster_values(es.eigenvalues(), tol * scale);
  CMat ac = a.cast<cplx>();
  for (const auto& g : groups) {
    cplx lambda{0, 0};
    for (int idx : g) lambda += es.eigenvalues()(idx);
    lambda /= static_cast<double>(g.size());
    CMat m = ac - lambda * CMat::Identity(dim_, dim_);
    if (la::rank(m, 1e-9) != la::rank(CMat(m * m), 1e-9)) return false;
  }
  return true;
}

// ------------------------------------------------------------- create / parse

void LieAlgebra::init(Family family, int p, int q) {
  family_ = family;
  p_ = p;
  q_ = q;
  std::ostringstream name;
  auto pq = [&] { return "(" + std::to_string(p) + "," + std::to_string(q) + ")"; };
  switch (family) {
    case Family::sl_R:
      if (p < 2 || q != 0) throw InvalidParams("sl(n,R) needs n >= 2");
      ambient_ = p;
      complex_size_ = 0;
      name << "sl(" << p << ",R)";
      break;
    case Family::su:
      if (p < 0 || q < 0 || p + q < 2) throw InvalidParams("su(p,q) needs p+q >= 2");
      complex_size_ = p + q;
      ambient_ = 2 * complex_size_;
      name << "su" << pq();
      break;
    case Family::su_star:
      if (p < 1 || q != 0) throw InvalidParams("su*(2n) needs n >= 1");
      complex_size_ = 2 * p;
      ambient_ = 4 * p;
      name << "su*(" << 2 * p << ")";
      break;
    case Family::so:
      if (p < 0 || q < 0 || p + q < 2) throw InvalidParams("so(p,q) needs p+q >= 2");
      ambient_ = p + q;
      complex_size_ = 0;
      name << "so" << pq();
      break;
    case Family::so_star:
      if (p < 1 || q != 0) throw InvalidParams("so*(2n) needs n >= 1");
      complex_size_ = 2 * p;
      ambient_ = 4 * p;
      name << "so*(" << 2 * p << ")";
      break;
    case Family::sp_R:
      if (p < 1 || q != 0) throw InvalidParams("sp(n,R) needs n >= 1");
      ambient_ = 2 * p;
      complex_size_ = 0;
      name << "sp(" << p << ",R)";
      break;
    case Family::sp:
      if (p < 0 || q < 0 || p + q < 1) throw InvalidParams("sp(p,q) needs p+q >= 1");
      complex_size_ = 2 * (p + q);
      ambient_ = 4 * (p + q);
      name << "sp" << pq();
      break;
    case Family::sl_C:
      if (p < 2 || q != 0) throw InvalidParams("sl(n,C) needs n >= 2");
      complex_size_ = p;
      ambient_ = 2 * p;
      name << "sl(" << p << ",C)";
      break;
    case Family::so_C:
      if (p < 2 || q != 0) throw InvalidParams("so(n,C) needs n >= 2");
      complex_size_ = p;
      ambient_ = 2 * p;
      name << "so(" << p << ",C)";
      break;
    case Family::sp_C:
      if (p < 1 || q != 0) throw InvalidParams("sp(n,C) needs n >= 1");
      complex_size_ = 2 * p;
      ambient_ = 4 * p;
      name << "sp(" << p << ",C)";
      break;
  }
  descriptor_ = name.str();
  if (ambient_ > 96) throw DimensionGuard(descriptor_ + ": ambient exceeds guard (96)");
}

std::shared_ptr<const LieAlgebra> LieAlgebra::create(Family family, int p, int q) {
  auto alg = std::shared_ptr<LieAlgebra>(new LieAlgebra());
  alg->init(family, p, q);
  alg->build_basis();
  if (alg->dim_ < 1) throw InvalidParams(alg->descriptor_ + " has dimension 0");
  if (alg->dim_ > 1200)
    throw DimensionGuard(alg->descriptor_ + ": dimension exceeds guard (1200)");
  alg->build_structure();
  return alg;
}

std::shared_ptr<const LieAlgebra> LieAlgebra::parse(const std::string& descriptor) {
  std::string s;
  for (char c : descriptor)
    if (!std::isspace(static_cast<unsigned char>(c)))
      s.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));

  static const std::regex re(R"(^(sl|su|so|sp)(\*?)\((\d+)(?:,(\d+|r|c))?\)$)");
  std::smatch m;
  if (!std::regex_match(s, m, re))
    throw ParseError("cannot parse algebra descriptor '" + descriptor + "'");
  const std::string fam = m[1], star = m[2], a2 = m[4];
  const int a1 = std::stoi(m[3]);

  if (!star.empty()) {
    if (!a2.empty())
      throw ParseError("starred families take a single parameter: '" + descriptor + "'");
    if (a1 % 2 != 0)
      throw InvalidParams(fam + "*(m) needs even m in '" + descriptor + "'");
    if (fam == "su") return create(Family::su_star, a1 / 2);
    if (fam == "so") return create(Family::so_star, a1 / 2);
    throw UnsupportedFamily("no starred form of '" + fam + "'");
  }
  if (fam == "sl") {
    if (a2 == "r") return create(Family::sl_R, a1);
    if (a2 == "c") return create(Family::sl_C, a1);
    throw ParseError("sl needs a field tag, e.g. sl(" + std::to_string(a1) + ",R)");
  }
  if (fam == "su") {
    if (a2.empty() || a2 == "r" || a2 == "c")
      throw ParseError("su takes a signature, e.g. su(p,q)");
    return create(Family::su, a1, std::stoi(a2));
  }
  if (fam == "so") {
    if (a2 == "c") return create(Family::so_C, a1);
    if (a2.empty() || a2 == "r")
      throw ParseError("so takes a signature or C, e.g. so(p,q) or so(n,C)");
    return create(Family::so, a1, std::stoi(a2));
  }
  // sp
  if (a2 == "r") return create(Family::sp_R, a1);
  if (a2 == "c") return create(Family::sp_C, a1);
  if (a2.empty()) throw ParseError("sp takes a field tag or signature");
  return create(Family::sp, a1, std::stoi(a2));
}

namespace {
std::map<std::string, std::shared_ptr<const LieAlgebra>>& algebra_cache() {
  static std::map<std::string, std::shared_ptr<const LieAlgebra>> cache;
  return cache;
}
std::mutex& cache_mutex() {
  static std::mutex m;
  return m;
}
} // namespace

std::shared_ptr<const LieAlgebra> LieAlgebra::cached(Family family, int p, int q) {
  auto fresh = [&] { return create(family, p, q); };
  // construct once to learn the canonical descriptor cheaply would build twice;
  // instead key on the raw triple
  std::string key = std::to_string(static_cast<int>(family)) + ":" + std::to_string(p) +
                    ":" + std::to_string(q);
  std::lock_guard<std::mutex> lock(cache_mutex());
  auto& cache = algebra_cache();
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  auto alg = fresh();
  cache.emplace(key, alg);
  return alg;
}

std::shared_ptr<const LieAlgebra> LieAlgebra::cached(const std::string& descriptor) {
  std::lock_guard<std::mutex> lock(cache_mutex());
  auto& cache = algebra_cache();
  auto it = cache.find(descriptor);
  if (it != cache.end()) return it->second;
  // parse outside the map insertion so the canonical descriptor is also keyed
  auto alg = parse(descriptor);
  cache.emplace(descriptor, alg);
  cache.emplace(alg->descriptor(), alg);
  return alg;
}

} // namespace orbitlab

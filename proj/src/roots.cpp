#include "orbitlab/roots.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <random>
#include <string>
#include <utility>
#include <vector>

namespace orbitlab {
namespace {

constexpr double kTolRel = 1e-8;

double op_scale(const CMat& m) { return std::max(1.0, m.norm()); }

Vec random_unit(const Mat& cols, std::mt19937_64& rng) {
  Vec x = cols * la::gaussian_vector(rng, static_cast<int>(cols.cols()));
  double n = x.norm();
  while (n < 1e-8) {
    x = cols * la::gaussian_vector(rng, static_cast<int>(cols.cols()));
    n = x.norm();
  }
  return x / n;
}

/// Maximal abelian subspace of span(cur) by descending through centralizers
/// of random members; every column of the result stays in the initial span.
Mat abelian_descent(const LieAlgebra& g, Mat cur, std::mt19937_64& rng) {
  int spent = 0;
  while (cur.cols() > 0) {
    const double tol = 1e-9 * std::max(1.0, cur.norm());
    // A few random probes find a witness of non-commutativity cheaply; the
    // column-by-column scan only runs when the span already looks abelian,
    // and certifies it (or supplies the witness the probes missed).
    Mat brk(g.dim(), 0);
    for (int probe = 0; probe < 3 && brk.cols() == 0; ++probe) {
      Mat cand = g.ad(random_unit(cur, rng)) * cur;
      if (cand.norm() > tol) brk = std::move(cand);
    }
    if (brk.cols() == 0) {
      for (int i = 0; i < cur.cols() && brk.cols() == 0; ++i) {
        Mat cand = g.ad(cur.col(i)) * cur;
        if (cand.norm() > tol) brk = std::move(cand);
      }
      if (brk.cols() == 0) break;  // abelian, certified column by column
    }
    if (++spent > 8 * static_cast<int>(cur.cols()) + 32)
      throw MaximalityNotReached("centralizer descent did not stabilize");
    Mat ker = la::nullspace(brk);
    if (ker.cols() == cur.cols()) continue;  // numerically central, redraw
    if (ker.cols() == 0)
      throw MaximalityNotReached("centralizer collapsed to zero");
    cur = la::column_space(Mat(cur * ker));
  }
  return cur;
}

/// Stack the brackets [b_i, v_j] so its kernel is the centralizer of the
/// b-columns inside the span of v (as coefficient vectors).
Mat bracket_stack(const LieAlgebra& g, const Mat& b, const Mat& v) {
  const int d = g.dim();
  Mat stacked(b.cols() * d, v.cols());
  for (int i = 0; i < b.cols(); ++i)
    stacked.middleRows(i * d, d) = g.ad(b.col(i)) * v;
  return stacked;
}

} // namespace

CartanSubspace maximal_abelian(const LieAlgebra& g, const Subspace& vp,
                               const Subspace& vf, unsigned seed) {
  std::mt19937_64 rng(seed);
  const int d = g.dim();
  Mat bp(d, 0), bf(d, 0);
  if (vp.dim() > 0) bp = abelian_descent(g, vp.basis, rng);
  if (vf.dim() > 0) {
    // restrict to the centralizer of the noncompact part first
    Mat zf = vf.basis;
    if (bp.cols() > 0) {
      Mat ker = la::nullspace(bracket_stack(g, bp, zf));
      zf = ker.cols() > 0 ? Mat(la::column_space(Mat(zf * ker))) : Mat(d, 0);
    }
    if (zf.cols() > 0) bf = abelian_descent(g, zf, rng);
  }

  CartanSubspace cs;
  cs.p_count = static_cast<int>(bp.cols());
  cs.f_count = static_cast<int>(bf.cols());
  cs.basis.resize(d, cs.p_count + cs.f_count);
  if (cs.p_count) cs.basis.leftCols(cs.p_count) = bp;
  if (cs.f_count) cs.basis.rightCols(cs.f_count) = bf;

  // Killing-normalize: B is positive on the p-columns, negative on the
  // f-columns, so no column is isotropic.
  for (int i = 0; i < cs.basis.cols(); ++i) {
    double b = g.killing_form(cs.basis.col(i), cs.basis.col(i));
    if (std::abs(b) < 1e-10)
      throw DegenerateSubspace("Cartan direction is Killing-isotropic");
    cs.basis.col(i) /= std::sqrt(std::abs(b));
  }

  // The centralizer of the result inside V must be the result itself.
  const int r = cs.rank();
  if (r > 0) {
    Mat v(d, vp.dim() + vf.dim());
    if (vp.dim()) v.leftCols(vp.dim()) = vp.basis;
    if (vf.dim()) v.rightCols(vf.dim()) = vf.basis;
    if (la::nullspace(bracket_stack(g, cs.basis, v)).cols() != r)
      throw MaximalityNotReached("candidate is centralized by more of V than itself");
  }
  return cs;
}

RankResult rank_of(const LieAlgebra& g, const Subspace& vp, const Subspace& vf,
                   unsigned seed, int retries) {
  RankResult out;
  int successes = 0;
  for (int k = 0; k < std::max(1, retries); ++k) {
    int r = 0;
    try {
      r = maximal_abelian(g, vp, vf, seed + static_cast<unsigned>(k)).rank();
    } catch (const MaximalityNotReached&) {
      out.stable = false;
      continue;
    }
    if (successes > 0 && r != out.rank) out.stable = false;
    out.rank = std::max(out.rank, r);
    ++successes;
  }
  if (successes == 0)
    throw MaximalityNotReached("no seed produced a maximal abelian subspace");
  return out;
}

// ---------------------------------------------------------------------------
// restricted roots
// ---------------------------------------------------------------------------

namespace {

/// Orthonormal bases of the clustered eigenspaces of `op`.
std::vector<CMat> eigen_blocks(const CMat& op) {
  Eigen::ComplexEigenSolver<CMat> es(op);
  if (es.info() != Eigen::Success)
    throw ClusteringAmbiguous("eigensolver did not converge");
  const CVec& vals = es.eigenvalues();
  double vmax = vals.size() ? vals.cwiseAbs().maxCoeff() : 0.0;
  std::vector<CMat> out;
  for (const auto& cluster : la::cluster_values(vals, kTolRel * std::max(1.0, vmax))) {
    CMat cols(op.rows(), static_cast<int>(cluster.size()));
    for (std::size_t j = 0; j < cluster.size(); ++j)
      cols.col(static_cast<int>(j)) = es.eigenvectors().col(cluster[j]);
    CMat w = la::column_space(cols);
    if (w.cols() != cols.cols())
      throw ClusteringAmbiguous("eigenvectors of one cluster are not independent");
    out.push_back(std::move(w));
  }
  return out;
}

/// Restriction of `op` to the orthonormal block w, verifying invariance.
CMat block_restrict(const CMat& op, const CMat& w, const char* what) {
  CMat m = w.adjoint() * (op * w);
  if ((op * w - w * m).norm() > 1e-7 * op_scale(op))
    throw ClusteringAmbiguous(std::string(what) + ": block is not invariant");
  return m;
}

/// The scalar by which `op` acts on the block (throws when not scalar).
cplx scalar_on_block(const CMat& op, const CMat& w, const char* what) {
  CMat m = block_restrict(op, w, what);
  const auto k = m.cols();
  cplx mean = m.trace() / static_cast<double>(k);
  if ((m - mean * CMat::Identity(k, k)).norm() > 1e-6 * op_scale(op))
    throw ClusteringAmbiguous(std::string(what) + ": operator is not scalar on block");
  return mean;
}

/// Split C^k into joint eigenblocks: cluster the first operator, then refine
/// until every operator restricts to a scalar on every block.
std::vector<CMat> joint_blocks(const std::vector<CMat>& ops) {
  std::vector<CMat> blocks = eigen_blocks(ops.front());
  const int n = static_cast<int>(ops.front().rows());
  int rounds = 0;
  bool changed = true;
  while (changed) {
    if (++rounds > 2 * n + 8)
      throw ClusteringAmbiguous("joint block refinement did not settle");
    changed = false;
    for (std::size_t k = 1; k < ops.size() && !changed; ++k) {
      std::vector<CMat> next;
      for (const CMat& w : blocks) {
        CMat m = block_restrict(ops[k], w, "refinement");
        cplx mean = m.trace() / static_cast<double>(m.cols());
        if ((m - mean * CMat::Identity(m.cols(), m.cols())).norm() <=
            1e-7 * op_scale(ops[k])) {
          next.push_back(w);
          continue;
        }
        changed = true;
        for (const CMat& piece : eigen_blocks(m))
          next.push_back(la::column_space(CMat(w * piece)));
      }
      blocks.swap(next);
    }
  }
  return blocks;
}

struct SideBlock {
  CMat w;    ///< orthonormal columns in the side's coordinate space
  CVec key;  ///< (mu, lambda_1..lambda_r): squared values of (a*, a_1..a_r)
  bool zero = false;
};

/// Joint eigenblocks of {primary} ∪ {squares} labelled by their squared
/// values, with blocks of matching keys merged.
std::vector<SideBlock> side_blocks(const CMat& primary,
                                   const std::vector<CMat>& squares) {
  std::vector<CMat> ops;
  ops.push_back(primary);
  for (const CMat& s : squares) ops.push_back(s);

  std::vector<SideBlock> raw;
  for (const CMat& w : joint_blocks(ops)) {
    SideBlock b;
    b.w = w;
    b.key.resize(static_cast<int>(ops.size()));
    bool all_zero = true;
    for (std::size_t k = 0; k < ops.size(); ++k) {
      cplx v = scalar_on_block(ops[k], w, "side block");
      b.key(static_cast<int>(k)) = v;
      if (std::abs(v) > kTolRel * op_scale(ops[k])) all_zero = false;
    }
    b.zero = all_zero;
    raw.push_back(std::move(b));
  }

  // merge blocks whose keys agree (over-splitting safety)
  std::vector<SideBlock> merged;
  for (auto& b : raw) {
    bool absorbed = false;
    for (auto& m : merged) {
      double scale = std::max(1.0, std::max(m.key.norm(), b.key.norm()));
      if ((m.key - b.key).norm() <= 1e-6 * scale) {
        CMat joined(m.w.rows(), m.w.cols() + b.w.cols());
        joined << m.w, b.w;
        m.w = la::column_space(joined);
        m.zero = m.zero && b.zero;
        absorbed = true;
        break;
      }
    }
    if (!absorbed) merged.push_back(std::move(b));
  }
  return merged;
}

/// Lexicographic comparison of (Re values..., Im values...) tuples.
bool value_less(const CVec& a, const CVec& b) {
  for (int pass = 0; pass < 2; ++pass)
    for (int i = 0; i < a.size(); ++i) {
      double x = pass == 0 ? a(i).real() : a(i).imag();
      double y = pass == 0 ? b(i).real() : b(i).imag();
      if (std::abs(x - y) > 1e-9) return x < y;
    }
  return false;
}

/// One full decomposition attempt for a fixed generic coefficient vector c.
RestrictedRootSystem analyze(const SymmetricPair& pair,
                             const CartanSubspace& cartan,
                             const std::vector<Mat>& ad_i,
                             const std::vector<Mat>& sq_q,
                             const std::vector<Mat>& sq_h, const Vec& c,
                             std::mt19937_64& rng) {
  const LieAlgebra& g = pair.algebra();
  const Subspace& q = pair.q();
  const Subspace& h = pair.h();
  const int r = cartan.rank();

  Mat ad_star = Mat::Zero(g.dim(), g.dim());
  for (int i = 0; i < r; ++i) ad_star += c(i) * ad_i[i];
  Mat star2 = ad_star * ad_star;

  CMat primary_q = q.restrict_op(star2).cast<cplx>().eval();
  CMat primary_h = h.restrict_op(star2).cast<cplx>().eval();
  std::vector<CMat> squares_q(r), squares_h(r);
  for (int i = 0; i < r; ++i) {
    squares_q[i] = sq_q[i].cast<cplx>();
    squares_h[i] = sq_h[i].cast<cplx>();
  }

  auto qb = side_blocks(primary_q, squares_q);
  auto hb = side_blocks(primary_h, squares_h);

  // locate the zero blocks
  CMat zero_q(q.dim(), 0), zero_h(h.dim(), 0);
  int zq = 0, zh = 0;
  for (const auto& b : qb)
    if (b.zero) {
      zero_q = b.w;
      ++zq;
    }
  for (const auto& b : hb)
    if (b.zero) {
      zero_h = b.w;
      ++zh;
    }
  if (zq != 1)
    throw ClusteringAmbiguous("expected exactly one joint kernel block in q");
  if (zh > 1) throw ClusteringAmbiguous("multiple joint kernel blocks in h");

  // the Cartan subspace itself must sit inside the q-side kernel
  for (int i = 0; i < r; ++i) {
    Vec col = cartan.basis.col(i);
    CVec a_sub = q.drop(col).cast<cplx>();
    if ((a_sub - zero_q * (zero_q.adjoint() * a_sub)).norm() > 1e-7 * a_sub.norm())
      throw ClusteringAmbiguous("Cartan subspace missing from the q-side kernel");
  }

  // sign resolution on the q side via the anticommutators
  // { ad(a*), ad(a_i) } = 2 alpha(a*) alpha(a_i) on each root block
  std::vector<CMat> cross(r);
  for (int i = 0; i < r; ++i) {
    Mat anti = ad_star * ad_i[i] + ad_i[i] * ad_star;
    cross[i] = q.restrict_op(anti).cast<cplx>();
  }

  struct Draft {
    CVec values;
    CVec key;
    CMat wq;
    const SideBlock* hmatch = nullptr;
  };
  std::vector<Draft> drafts;
  for (const auto& b : qb) {
    if (b.zero) continue;
    cplx mu = b.key(0);
    if (std::abs(mu) < 1e-6 * op_scale(primary_q))
      throw ClusteringAmbiguous("reference element nearly annihilates a root block");
    cplx astar_val = std::sqrt(mu);
    Draft d;
    d.values.resize(r);
    for (int i = 0; i < r; ++i) {
      cplx nu = scalar_on_block(cross[i], b.w, "anticommutator");
      d.values(i) = nu / (2.0 * astar_val);
      double lam_scale = std::max(1.0, std::abs(b.key(i + 1)));
      if (std::abs(d.values(i) * d.values(i) - b.key(i + 1)) > 1e-6 * lam_scale)
        throw ClusteringAmbiguous("signed values are inconsistent with squares");
    }
    d.key = b.key;
    d.wq = b.w;
    drafts.push_back(std::move(d));
  }

  // match each root block to its h-side partner by the squared-value key
  for (auto& d : drafts) {
    for (const auto& b : hb) {
      if (b.zero) continue;
      double scale = std::max(1.0, std::max(d.key.norm(), b.key.norm()));
      if ((d.key - b.key).norm() <= 1e-6 * scale) {
        if (d.hmatch) throw ClusteringAmbiguous("root matches two h-side blocks");
        d.hmatch = &b;
      }
    }
    if (!d.hmatch) throw ClusteringAmbiguous("root has no h-side partner block");
    if (d.hmatch->w.cols() != d.wq.cols())
      throw ClusteringAmbiguous("q- and h-side multiplicities disagree");
  }
  {
    std::size_t used = 0;
    for (const auto& b : hb)
      if (!b.zero) ++used;
    if (used != drafts.size())
      throw ClusteringAmbiguous("unmatched h-side block");
  }

  // clean the value pattern: real on p-columns, imaginary on f-columns,
  // then canonicalize the overall sign
  RestrictedRootSystem sys;
  sys.pair = pair;
  sys.cartan = cartan;
  sys.zero_q = q.basis.cast<cplx>() * zero_q;
  sys.zero_h = h.basis.cast<cplx>() * zero_h;

  Mat gram(r, r);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j)
      gram(i, j) = g.killing_form(cartan.basis.col(i), cartan.basis.col(j));
  Eigen::PartialPivLU<Mat> gram_lu(gram);

  for (auto& d : drafts) {
    double vmax = d.values.cwiseAbs().maxCoeff();
    for (int i = 0; i < r; ++i) {
      bool is_p = i < cartan.p_count;
      double bad = is_p ? std::abs(d.values(i).imag()) : std::abs(d.values(i).real());
      if (bad > 1e-6 * vmax)
        throw ClusteringAmbiguous("value pattern violates the p/f reality split");
      d.values(i) = is_p ? cplx(d.values(i).real(), 0.0)
                         : cplx(0.0, d.values(i).imag());
    }
    // canonical sign: first nonzero of (Re..., Im...) positive
    for (int pass = 0, done = 0; pass < 2 && !done; ++pass)
      for (int i = 0; i < r && !done; ++i) {
        double x = pass == 0 ? d.values(i).real() : d.values(i).imag();
        if (std::abs(x) > 1e-9 * vmax) {
          if (x < 0) d.values = -d.values;
          done = 1;
        }
      }

    RestrictedRoot root;
    root.values = d.values;
    root.mult_q = static_cast<int>(d.wq.cols());
    root.mult_h = static_cast<int>(d.hmatch->w.cols());
    root.q_space = q.basis.cast<cplx>() * d.wq;
    root.h_space = h.basis.cast<cplx>() * d.hmatch->w;
    CVec x = gram_lu.solve(d.values.real().eval()).cast<cplx>() +
             cplx(0, 1) * gram_lu.solve(d.values.imag().eval()).cast<cplx>();
    root.a_alpha = cartan.basis.cast<cplx>() * x;
    root.alpha_a_alpha = (d.values.transpose() * x)(0, 0);
    sys.roots.push_back(std::move(root));
  }

  // completeness of the decomposition
  int total_q = static_cast<int>(zero_q.cols());
  int total_h = static_cast<int>(zero_h.cols());
  for (const auto& root : sys.roots) {
    total_q += root.mult_q;
    total_h += root.mult_h;
  }
  if (total_q != q.dim() || total_h != h.dim())
    throw ClusteringAmbiguous("root-space dimensions do not add up");

  // verify the defining eigenvalue property on random Cartan elements
  for (int trial = 0; trial < 3; ++trial) {
    Vec t = la::gaussian_vector(rng, r);
    Mat ada = g.ad(cartan.element(t));
    CMat ada2 = (ada * ada).cast<cplx>();
    double tol = 1e-7 * op_scale(ada2);
    auto check = [&](const CMat& space, cplx val2, const char* what) {
      for (int j = 0; j < std::min<int>(space.cols(), 3); ++j) {
        CVec x = space.col(j);
        if ((ada2 * x - val2 * x).norm() > tol * std::max(1.0, x.norm()))
          throw ClusteringAmbiguous(std::string(what) +
                                    ": eigen-identity fails verification");
      }
    };
    for (const auto& root : sys.roots) {
      cplx v = root.value_at(t);
      check(root.q_space, v * v, "q root space");
      check(root.h_space, v * v, "h root space");
    }
    check(sys.zero_q, 0.0, "q kernel");
    if (zero_h.cols() > 0) check(sys.zero_h, 0.0, "h kernel");
  }

  std::sort(sys.roots.begin(), sys.roots.end(),
            [](const RestrictedRoot& a, const RestrictedRoot& b) {
              return value_less(a.values, b.values);
            });
  return sys;
}

} // namespace

RestrictedRootSystem restricted_roots(const SymmetricPair& pair,
                                      const CartanSubspace& cartan,
                                      unsigned seed) {
  const LieAlgebra& g = pair.algebra();
  const int r = cartan.rank();
  if (r <= 0)
    throw InvalidParams("restricted_roots needs a nonzero Cartan subspace");
  const Subspace& q = pair.q();
  const Subspace& h = pair.h();

  std::vector<Mat> ad_i(r), sq_q(r), sq_h(r);
  for (int i = 0; i < r; ++i) {
    ad_i[i] = g.ad(cartan.basis.col(i));
    Mat m2 = ad_i[i] * ad_i[i];
    double rq = 0, rh = 0;
    sq_q[i] = q.restrict_op(m2, &rq);
    sq_h[i] = h.restrict_op(m2, &rh);
    if (rq > 1e-8 || rh > 1e-8)
      throw InvalidParams("Cartan candidate does not stabilize the pair splitting");
  }

  std::mt19937_64 rng(seed);
  std::string last;
  for (int attempt = 0; attempt < 5; ++attempt) {
    Vec c = la::gaussian_vector(rng, r);
    try {
      return analyze(pair, cartan, ad_i, sq_q, sq_h, c, rng);
    } catch (const ClusteringAmbiguous& e) {
      last = e.what();
    }
  }
  throw ClusteringAmbiguous("no generic reference element succeeded (" + last + ")");
}

// ---------------------------------------------------------------------------
// root vectors
// ---------------------------------------------------------------------------

namespace {

/// Basis of span(w) that is orthogonal for the complex-bilinear Killing form
/// with no isotropic basis vector.  Deflation with pivot search over single
/// columns and simple mixtures; succeeds whenever B is nondegenerate on the
/// span.
std::vector<CVec> bilinear_orthogonalize(const LieAlgebra& g, CMat w) {
  const double b_scale = std::max(1.0, g.killing().cwiseAbs().maxCoeff());
  std::vector<CVec> out;
  while (w.cols() > 0) {
    const int k = static_cast<int>(w.cols());
    CVec best;
    double best_ratio = -1.0;
    auto consider = [&](const CVec& v) {
      double n2 = v.squaredNorm();
      if (n2 < 1e-20) return;
      double ratio = std::abs(g.killing_form_c(v, v)) / n2;
      if (ratio > best_ratio) {
        best_ratio = ratio;
        best = v;
      }
    };
    for (int i = 0; i < k; ++i) {
      consider(w.col(i));
      for (int j = i + 1; j < k; ++j) {
        consider(w.col(i) + w.col(j));
        consider(w.col(i) + cplx(0, 1) * w.col(j));
      }
    }
    if (best_ratio < 1e-8 * b_scale)
      throw NormalizationSingular(
          "root space is Killing-isotropic in every probed direction");
    best /= best.norm();
    cplx bb = g.killing_form_c(best, best);
    out.push_back(best);
    if (k == 1) break;
    CMat deflated(w.rows(), k);
    for (int i = 0; i < k; ++i)
      deflated.col(i) = w.col(i) - (g.killing_form_c(best, w.col(i)) / bb) * best;
    CMat reduced = la::column_space(deflated, 1e-8);
    if (reduced.cols() != k - 1)
      throw NormalizationSingular("deflation changed the root-space dimension");
    w = reduced;
  }
  return out;
}

} // namespace

std::vector<RootVectorPair> root_vectors(const RestrictedRootSystem& sys,
                                         int root_index, unsigned seed) {
  if (root_index < 0 || root_index >= static_cast<int>(sys.roots.size()))
    throw InvalidParams("root index out of range");
  const LieAlgebra& g = sys.pair.algebra();
  const RestrictedRoot& rt = sys.roots[root_index];
  const int r = sys.cartan.rank();
  const int m = rt.mult_q;
  std::mt19937_64 rng(seed);

  // generic real Cartan element on which the root does not vanish
  Vec c;
  cplx astar_val;
  {
    int tries = 0;
    do {
      if (++tries > 64)
        throw NormalizationSingular("root vanished on every reference draw");
      c = la::gaussian_vector(rng, r);
      astar_val = rt.value_at(c);
    } while (std::abs(astar_val) < 0.1 * rt.values.norm());
  }
  CMat ad_star = g.ad(sys.cartan.element(c)).cast<cplx>();

  // refine a multiplicity > 1 space by a generic element of the h-side
  // centralizer of the Cartan subspace (it commutes with the squares, so it
  // preserves the root space)
  std::vector<CMat> blocks{rt.q_space};
  if (m > 1 && sys.zero_h.cols() > 0) {
    Mat zr(g.dim(), 2 * sys.zero_h.cols());
    zr << sys.zero_h.real(), sys.zero_h.imag();
    Mat zbasis = la::column_space(zr);
    CMat wq = la::column_space(rt.q_space);
    std::vector<CMat> best{rt.q_space};
    std::size_t best_count = 1;
    for (int trial = 0; trial < 5 && best_count < static_cast<std::size_t>(m);
         ++trial) {
      Vec z = zbasis * la::gaussian_vector(rng, static_cast<int>(zbasis.cols()));
      CMat adz = g.ad(z).cast<cplx>();
      try {
        CMat restr = block_restrict(adz, wq, "centralizer refinement");
        std::vector<CMat> cand;
        for (const CMat& piece : eigen_blocks(restr))
          cand.push_back(wq * piece);
        if (cand.size() > best_count) {
          best_count = cand.size();
          best = std::move(cand);
        }
      } catch (const ClusteringAmbiguous&) {
        continue;
      }
    }
    blocks = std::move(best);
  }

  // per-column ad matrices for verification
  std::vector<CMat> ad_c(r);
  for (int i = 0; i < r; ++i)
    ad_c[i] = g.ad(sys.cartan.basis.col(i)).cast<cplx>();

  auto make_pairs = [&](const std::vector<CMat>& blks) {
    std::vector<RootVectorPair> made;
    for (const CMat& block : blks) {
      for (const CVec& y0 : bilinear_orthogonalize(g, block)) {
        CVec z0 = (ad_star * y0) / astar_val;
        cplx kappa = g.killing_form_c(y0, y0);
        cplx scale = std::sqrt(rt.alpha_a_alpha / kappa);
        RootVectorPair rv{scale * y0, scale * z0};

        double size = rv.y.norm() + rv.z.norm();
        for (int i = 0; i < r; ++i) {
          double tol = 1e-7 * op_scale(ad_c[i]) * std::max(1.0, size);
          if ((ad_c[i] * rv.y - rt.values(i) * rv.z).norm() > tol ||
              (ad_c[i] * rv.z - rt.values(i) * rv.y).norm() > tol)
            throw NormalizationSingular(
                "root-vector pair fails the intertwining law");
        }
        // Killing projection of [Z, Y] onto the Cartan subspace matches
        // alpha(a_alpha) a_alpha
        CVec zy = g.bracket_complex(rv.z, rv.y);
        for (int i = 0; i < r; ++i) {
          cplx want = rt.values(i) * rt.alpha_a_alpha;
          cplx got =
              g.killing_form_c(zy, sys.cartan.basis.col(i).cast<cplx>().eval());
          if (std::abs(got - want) > 1e-6 * std::max(1.0, std::abs(want)))
            throw NormalizationSingular("bracket normalization check failed");
        }
        made.push_back(std::move(rv));
      }
    }
    if (static_cast<int>(made.size()) != m)
      throw NormalizationSingular("did not produce one pair per multiplicity");
    return made;
  };

  // The refined pieces occasionally pair isotropically across opposite
  // refinement eigenvalues; the whole root space is always nondegenerate,
  // so fall back to it.
  try {
    return make_pairs(blocks);
  } catch (const NormalizationSingular&) {
    if (blocks.size() <= 1) throw;
    return make_pairs({rt.q_space});
  }
}

} // namespace orbitlab

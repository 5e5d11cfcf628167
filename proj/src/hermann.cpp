#include "orbitlab/hermann.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "orbitlab/errors.hpp"
#include "orbitlab/linalg.hpp"

namespace orbitlab {

namespace {

constexpr double kLatticeTol = 1e-9;  ///< distance to i*pi*Z deciding "singular"
constexpr double kResidTol = 1e-7;    ///< restriction / assembly residuals

/// Split a sigma'-invariant complex subspace (given by basis columns in g^c
/// coordinates) into the ±1 eigenparts of sigma'.  The restriction of sigma'
/// to the span is computed by least squares; a large residual means the space
/// is not actually invariant and raises ClusteringAmbiguous.
std::pair<CMat, CMat> split_by_involution(const CMat& space, const Mat& s_prime,
                                          const std::string& what) {
  const int n = static_cast<int>(space.rows());
  const int k = static_cast<int>(space.cols());
  if (k == 0) return {CMat(n, 0), CMat(n, 0)};

  CMat image = s_prime.cast<cplx>() * space;
  Eigen::ColPivHouseholderQR<CMat> qr(space);
  CMat restricted = qr.solve(image);  // k x k matrix of sigma' in the basis
  if ((space * restricted - image).norm() >
      kResidTol * std::max(1.0, image.norm()))
    throw ClusteringAmbiguous("second involution does not preserve " + what);

  CMat id = CMat::Identity(k, k);
  CMat plus_coeff = la::column_space(CMat(0.5 * (id + restricted)));
  CMat minus_coeff = la::column_space(CMat(0.5 * (id - restricted)));
  if (plus_coeff.cols() + minus_coeff.cols() != k)
    throw ClusteringAmbiguous("eigenvalue splitting of " + what +
                              " does not fill the space: " +
                              std::to_string(plus_coeff.cols()) + " + " +
                              std::to_string(minus_coeff.cols()) +
                              " != " + std::to_string(k));
  CMat plus = plus_coeff.cols() > 0
                  ? la::column_space(CMat(space * plus_coeff))
                  : CMat(n, 0);
  CMat minus = minus_coeff.cols() > 0
                   ? la::column_space(CMat(space * minus_coeff))
                   : CMat(n, 0);
  return {plus, minus};
}

/// Lattice classification of beta(w) shared by the spectrum and the two
/// operator assemblies: k != 0 raises SingularDirection, k == 0 flags the
/// root as annihilating w.
struct RootAtW {
  cplx val_w{0.0, 0.0};
  bool annihilates = false;
};

RootAtW classify(const RestrictedRoot& root, const Vec& wc, int index) {
  RootAtW at;
  at.val_w = root.value_at(wc);
  LatticePoint lp = nearest_lattice_point(at.val_w);
  if (lp.distance <= kLatticeTol) {
    if (lp.k != 0)
      throw SingularDirection("root " + std::to_string(index) +
                              " meets the lattice i*pi*Z at k = " +
                              std::to_string(lp.k) +
                              "; the closed-form spectrum degenerates there");
    at.annihilates = true;
  }
  return at;
}

/// Validated Cartan coefficients of (w, v) for a configuration.
struct Directions {
  Vec wc, vc;
};

Directions resolve_directions(const HermannConfiguration& config, const Vec& w,
                              const Vec& v) {
  // make_orbit_point validates membership in q and semisimplicity of w.
  make_orbit_point(config.data.pair, w);
  Directions d;
  d.wc = cartan_coefficients(config.b, w);
  try {
    d.vc = cartan_coefficients(config.b, v);
  } catch (const WNotInCartan&) {
    throw InvalidParams("shape direction is not in the Cartan subspace");
  }
  return d;
}

/// Assemble sum_j scalar_j * (projector onto block_j) as a real matrix on a
/// real basis of the union span.  Same recipe as the isotropy operator
/// assembly, generalized from per-root blocks to arbitrary sub-blocks; the
/// blocks together must span a conjugation-stable space with
/// conjugate-equivariant scalars, which the residual checks enforce.
AssembledOperator assemble_blocks(int dim,
                                  const std::vector<const CMat*>& blocks,
                                  const std::vector<cplx>& scalars) {
  int total = 0;
  for (const CMat* b : blocks) total += static_cast<int>(b->cols());
  AssembledOperator out;
  if (total == 0) {
    out.basis = Mat(dim, 0);
    out.matrix = Mat(0, 0);
    return out;
  }

  CMat stacked(dim, total), applied(dim, total);
  {
    int at = 0;
    for (size_t t = 0; t < blocks.size(); ++t) {
      const int m = static_cast<int>(blocks[t]->cols());
      stacked.middleCols(at, m) = *blocks[t];
      applied.middleCols(at, m) = scalars[t] * (*blocks[t]);
      at += m;
    }
  }

  Mat re_im(dim, 2 * total);
  re_im << stacked.real(), stacked.imag();
  Mat basis = la::column_space(re_im);
  if (basis.cols() != total)
    throw InvalidParams(
        "assemble: real form dimension does not match total multiplicity");

  Eigen::ColPivHouseholderQR<CMat> qr(stacked);
  CMat coords = qr.solve(basis.cast<cplx>());
  if ((stacked * coords - basis.cast<cplx>()).norm() >
      kResidTol * std::max(1.0, basis.norm()))
    throw InvalidParams("assemble: real basis does not lie in the block span");
  CMat applied_pts = applied * coords;
  double scale = std::max(1.0, applied_pts.norm());
  if (applied_pts.imag().norm() > kResidTol * scale)
    throw InvalidParams("assemble: operator is not real on the real points");

  out.basis = basis;
  out.matrix = basis.transpose() * applied_pts.real();
  if ((basis * out.matrix - applied_pts.real()).norm() > kResidTol * scale)
    throw InvalidParams("assemble: operator does not preserve the real span");
  return out;
}

/// Shared tangent-block walk for the shape and Jacobi operators.  Both use
/// the identical block list (zero part, then per root the h'- and q'-parts)
/// so their assembled bases coincide and the matrices commute entrywise.
AssembledOperator tangent_operator(const HermannConfiguration& config,
                                   const Vec& w, const Vec& v, bool shape) {
  Directions d = resolve_directions(config, w, v);
  const int dim = config.data.pair.algebra().dim();

  std::vector<const CMat*> blocks;
  std::vector<cplx> scalars;
  if (config.zero_h_prime.cols() > 0) {
    blocks.push_back(&config.zero_h_prime);
    scalars.push_back(cplx(0.0, 0.0));
  }
  for (int i = 0; i < static_cast<int>(config.system.roots.size()); ++i) {
    const RestrictedRoot& root = config.system.roots[i];
    RootAtW at = classify(root, d.wc, i);
    if (at.annihilates) continue;  // the orbit does not extend there
    cplx val_v = root.value_at(d.vc);
    const RootSplit& split = config.splits[i];
    if (split.h_prime_part.cols() > 0) {
      blocks.push_back(&split.h_prime_part);
      scalars.push_back(shape ? -val_v * std::tanh(at.val_w) : val_v * val_v);
    }
    if (split.q_prime_part.cols() > 0) {
      blocks.push_back(&split.q_prime_part);
      scalars.push_back(shape ? -val_v / std::tanh(at.val_w) : val_v * val_v);
    }
  }
  return assemble_blocks(dim, blocks, scalars);
}

} // namespace

// ------------------------------------------------------------- configuration

HermannConfiguration hermann_configuration(const HermannData& data,
                                           unsigned seed) {
  const LieAlgebra& g = data.pair.algebra();
  HermannConfiguration config;
  config.data = data;
  config.b = maximal_abelian(g, data.q_qp_p, data.q_qp_f, seed);
  config.system = restricted_roots(data.pair, config.b, seed);

  config.splits.reserve(config.system.roots.size());
  for (size_t i = 0; i < config.system.roots.size(); ++i) {
    const RestrictedRoot& root = config.system.roots[i];
    auto [plus, minus] = split_by_involution(
        root.q_space, data.s_prime, "root space " + std::to_string(i));
    if (static_cast<int>(plus.cols() + minus.cols()) != root.mult_q)
      throw ClusteringAmbiguous("root-space splitting lost dimensions");
    config.splits.push_back(RootSplit{std::move(plus), std::move(minus)});
  }

  auto [zero_plus, zero_minus] = split_by_involution(
      config.system.zero_q, data.s_prime, "the Cartan centralizer in q^c");
  config.zero_h_prime = std::move(zero_plus);
  config.zero_q_prime = std::move(zero_minus);
  return config;
}

HermannConfiguration hermann_configuration(const SymmetricPair& pair,
                                           const Involution& sigma_prime,
                                           unsigned seed) {
  return hermann_configuration(hermann_setup(pair, sigma_prime), seed);
}

HermannConfiguration hermann_configuration(const SymmetricPair& pair,
                                           const std::string& token,
                                           unsigned seed) {
  return hermann_configuration(hermann_setup(pair, token), seed);
}

// ------------------------------------------------------------------ spectrum

OrbitSpectrum hermann_orbit_spectrum(const HermannConfiguration& config,
                                     const Vec& w, const Vec& v) {
  Directions d = resolve_directions(config, w, v);

  OrbitSpectrum spec;
  if (config.zero_h_prime.cols() > 0) {
    SpectrumEntry zero;
    zero.root_index = -1;
    zero.eigenvalue = cplx(0.0, 0.0);
    zero.mult = static_cast<int>(config.zero_h_prime.cols());
    zero.part = SpectrumPart::ZeroPart;
    spec.entries.push_back(zero);
  }
  for (int i = 0; i < static_cast<int>(config.system.roots.size()); ++i) {
    const RestrictedRoot& root = config.system.roots[i];
    RootAtW at = classify(root, d.wc, i);
    if (at.annihilates) {
      SpectrumEntry entry;
      entry.root_index = i;
      entry.mult = root.mult_q;
      entry.part = SpectrumPart::QPart;
      entry.annihilates_w = true;
      spec.entries.push_back(entry);
      continue;
    }
    cplx val_v = root.value_at(d.vc);
    const RootSplit& split = config.splits[i];
    if (split.h_prime_part.cols() > 0) {
      SpectrumEntry entry;
      entry.root_index = i;
      // sqrt(-1) beta(v) tan(sqrt(-1) beta(w)) == -beta(v) tanh(beta(w))
      entry.eigenvalue = -val_v * std::tanh(at.val_w);
      entry.mult = static_cast<int>(split.h_prime_part.cols());
      entry.part = SpectrumPart::HPrimePart;
      spec.entries.push_back(entry);
    }
    if (split.q_prime_part.cols() > 0) {
      SpectrumEntry entry;
      entry.root_index = i;
      // -sqrt(-1) beta(v) / tan(sqrt(-1) beta(w)) == -beta(v)/tanh(beta(w))
      entry.eigenvalue = -val_v / std::tanh(at.val_w);
      entry.mult = static_cast<int>(split.q_prime_part.cols());
      entry.part = SpectrumPart::QPart;
      spec.entries.push_back(entry);
    }
  }
  spec.space_dim = spec.covered_dim();
  return spec;
}

AssembledOperator hermann_shape_operator(const HermannConfiguration& config,
                                         const Vec& w, const Vec& v) {
  return tangent_operator(config, w, v, true);
}

AssembledOperator hermann_jacobi_operator(const HermannConfiguration& config,
                                          const Vec& w, const Vec& v) {
  return tangent_operator(config, w, v, false);
}

// ------------------------------------------------------------- cohomogeneity

CohomogeneityRow cohomogeneity(const SymmetricPair& pair,
                               const CatalogEntry& entry, unsigned seed,
                               int retries) {
  const LieAlgebra& g = pair.algebra();
  if (entry.dim_h >= 0 && pair.h().dim() != entry.dim_h)
    throw AlgebraMismatch("fixed algebra of " + entry.space + " has dimension " +
                          std::to_string(pair.h().dim()) +
                          ", catalogued subgroup has dimension " +
                          std::to_string(entry.dim_h));
  const int dim_l = pair.h_f().dim() + pair.q_p().dim();
  if (entry.dim_l >= 0 && dim_l != entry.dim_l)
    throw AlgebraMismatch("dual algebra of " + entry.space + " has dimension " +
                          std::to_string(dim_l) +
                          ", catalogued subgroup has dimension " +
                          std::to_string(entry.dim_l));

  Subspace empty = make_subspace(g, Mat(g.dim(), 0), false, "empty selector");
  RankResult rk = rank_of(g, pair.q_p(), empty, seed, retries);
  RankResult rl = rank_of(g, empty, pair.q_f(), seed, retries);

  CohomogeneityRow row;
  row.space = entry.space;
  row.K_group = entry.k_label;
  row.L_group = entry.l_label;
  row.cohom_K = rk.rank;
  row.cohom_L = rl.rank;
  row.formula_K = entry.formula_k;
  row.formula_L = entry.formula_l;
  row.expected_K = entry.expected_k;
  row.expected_L = entry.expected_l;
  row.ambiguous_L = entry.ambiguous_l;
  row.formula_K_low = entry.formula_k_low;
  row.formula_L_low = entry.formula_l_low;
  row.stable = rk.stable && rl.stable;
  return row;
}

CohomogeneityRow cohomogeneity(const SymmetricPair& pair, unsigned seed,
                               int retries) {
  const LieAlgebra& g = pair.algebra();
  if (auto entry = find_subgroup(g.descriptor(), pair.sigma().label))
    return cohomogeneity(pair, *entry, seed, retries);

  Subspace empty = make_subspace(g, Mat(g.dim(), 0), false, "empty selector");
  RankResult rk = rank_of(g, pair.q_p(), empty, seed, retries);
  RankResult rl = rank_of(g, empty, pair.q_f(), seed, retries);
  CohomogeneityRow row;
  row.space = g.descriptor() + "/" +
              (pair.sigma().label.empty() ? std::string("H") : pair.sigma().label);
  row.cohom_K = rk.rank;
  row.cohom_L = rl.rank;
  row.stable = rk.stable && rl.stable;
  return row;
}

CohomogeneityRow cohomogeneity(const CatalogEntry& entry, unsigned seed,
                               int retries) {
  AlgebraPtr g = LieAlgebra::cached(entry.g);
  SymmetricPair pair = SymmetricPair::build(g, entry.sigma);
  return cohomogeneity(pair, entry, seed, retries);
}

std::vector<CohomogeneityRow> generate_table(int table_id, int param_bound,
                                             unsigned seed, int retries) {
  std::vector<CohomogeneityRow> rows;
  for (const CatalogEntry& entry : enumerate_table(table_id, param_bound))
    rows.push_back(cohomogeneity(entry, seed, retries));
  return rows;
}

std::string table_csv(const std::vector<CohomogeneityRow>& rows) {
  std::string csv = "space,K,L,cohom_K,cohom_L\n";
  for (const CohomogeneityRow& row : rows) {
    csv += '"' + row.space + "\",\"" + row.K_group + "\",\"" + row.L_group +
           "\"," + std::to_string(row.cohom_K) + ',' +
           std::to_string(row.cohom_L) + '\n';
  }
  return csv;
}

} // namespace orbitlab

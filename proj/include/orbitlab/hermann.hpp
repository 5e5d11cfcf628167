#ifndef ORBITLAB_HERMANN_HPP
#define ORBITLAB_HERMANN_HPP

#include <string>
#include <vector>

#include "orbitlab/catalog.hpp"
#include "orbitlab/orbits.hpp"
#include "orbitlab/roots.hpp"

namespace orbitlab {

/// Splitting of one restricted-root space q_beta^c under the second
/// involution: q_beta^c = (q_beta^c ∩ h'^c) ⊕ (q_beta^c ∩ q'^c).  The two
/// parts are the ±1 eigenspaces of sigma' restricted to the root space, which
/// sigma' preserves because it commutes with every ad(b_i)².  Column counts
/// always sum to mult_q (checked at construction).
struct RootSplit {
  CMat h_prime_part;  ///< dim x k, coordinates in g^c
  CMat q_prime_part;  ///< dim x (mult_q - k)
};

/// Everything needed to evaluate orbit spectra of the action of H' on G/H:
/// the enriched pair data, a Cartan subspace b of q ∩ q', the b-restricted
/// root system of (g, sigma), the sigma'-splitting of each root space, and
/// the sigma'-splitting of the centralizer of b in q^c.  The tangent space of
/// the orbit through exp(w)·o, w ∈ b generic, is the translate of
///   (z_{q^c}(b) ∩ h'^c) ⊕ Σ_beta q_beta^c,
/// and the shape operator acts as a scalar on each sigma'-part of each root
/// space.
struct HermannConfiguration {
  HermannData data;
  CartanSubspace b;             ///< Cartan subspace of q ∩ q'
  RestrictedRootSystem system;  ///< b-restricted roots of (g, sigma)
  std::vector<RootSplit> splits;  ///< one per system.roots entry
  CMat zero_h_prime;  ///< z_{q^c}(b) ∩ h'^c (orbit tangent, eigenvalue 0)
  CMat zero_q_prime;  ///< z_{q^c}(b) ∩ q'^c (normal directions; contains b^c)
};

/// Build a Hermann configuration from enriched pair data: construct b as a
/// maximal abelian subspace of q ∩ q' (noncompact part first), compute the
/// b-restricted roots of (g, sigma), and split every root space and the
/// centralizer under sigma'.  Raises ClusteringAmbiguous when a root-space
/// splitting fails the dimension count.
HermannConfiguration hermann_configuration(const HermannData& data,
                                           unsigned seed = 42);
HermannConfiguration hermann_configuration(const SymmetricPair& pair,
                                           const Involution& sigma_prime,
                                           unsigned seed = 42);
/// Token form: "theta" (K-action) or "sigma*theta" (L-action).
HermannConfiguration hermann_configuration(const SymmetricPair& pair,
                                           const std::string& token,
                                           unsigned seed = 42);

/// Shape-operator spectrum of the H'-orbit through exp(w)·o in the normal
/// direction (the translate of) v, for w, v ∈ b given in algebra coordinates:
///   sqrt(-1)·beta(v)·tan(sqrt(-1)·beta(w))   on q_beta^c ∩ h'^c,
///   -sqrt(-1)·beta(v)/tan(sqrt(-1)·beta(w))  on q_beta^c ∩ q'^c,
///   0                                        on z_{q^c}(b) ∩ h'^c.
/// Roots with beta(w) ≈ 0 are emitted flagged (no eigenvalue); beta(w) on a
/// nonzero lattice point i·pi·k raises SingularDirection.  With sigma' =
/// sigma the h'-parts and the zero block are empty and the result coincides
/// with isotropy_shape_spectrum — the q'-branch is the same formula.
OrbitSpectrum hermann_orbit_spectrum(const HermannConfiguration& config,
                                     const Vec& w, const Vec& v);

/// The shape operator of the orbit through exp(w)·o in direction v as a real
/// matrix on a real basis of the tangent space (eigenvalue 0 block included).
AssembledOperator hermann_shape_operator(const HermannConfiguration& config,
                                         const Vec& w, const Vec& v);

/// The Jacobi operator R(·, v)v = -ad(v)² on the same tangent basis:
/// eigenvalue beta(v)² on the whole root space q_beta^c, 0 on the centralizer
/// part.
AssembledOperator hermann_jacobi_operator(const HermannConfiguration& config,
                                          const Vec& w, const Vec& v);

/// Cohomogeneity of the isotropy K-action and of the dual L-action on G/H:
/// cohom_K is the rank over q ∩ p and cohom_L the rank over q ∩ f, each the
/// dimension of a maximal abelian subspace of commuting semisimple elements.
/// The group labels and tabulated closed forms are display metadata copied
/// from the catalog row; the integers are the contract.
struct CohomogeneityRow {
  std::string space;    ///< "G/H" display label
  std::string K_group;  ///< maximal compact subgroup of G
  std::string L_group;  ///< L = Fix(sigma ∘ theta)_0
  int cohom_K = 0;
  int cohom_L = 0;

  // Reporting extras (not part of the CSV):
  int formula_K = -1;   ///< tabulated closed form, -1 when uncatalogued
  int formula_L = -1;
  int expected_K = -1;  ///< certified value (== formula unless flagged)
  int expected_L = -1;
  bool ambiguous_L = false;  ///< catalogued L-form is ambiguous, report-only
  bool formula_K_low = false;  ///< closed form provably undercounts
  bool formula_L_low = false;
  bool stable = true;   ///< all rank retries agreed on both sides
};

/// Compute both cohomogeneities for a pair.  The catalog is consulted via
/// the sigma label to fill the display metadata; an uncatalogued pair still
/// yields the two integers.
CohomogeneityRow cohomogeneity(const SymmetricPair& pair, unsigned seed = 42,
                               int retries = 5);
/// As above with the catalog row supplied; the fixed-set dimension and the
/// derived dim L are checked against the catalogued labels (AlgebraMismatch
/// on disagreement — a realization bug, not a user error).
CohomogeneityRow cohomogeneity(const SymmetricPair& pair,
                               const CatalogEntry& entry, unsigned seed = 42,
                               int retries = 5);
/// Build the pair from the catalog row, then compute.
CohomogeneityRow cohomogeneity(const CatalogEntry& entry, unsigned seed = 42,
                               int retries = 5);

/// All rows of the numbered cohomogeneity table with printed parameters
/// <= param_bound, each computed via cohomogeneity().  Errors propagate
/// (UnsupportedFamily for a table outside {1,2,3}, InvalidParams for
/// param_bound > 8); an empty parameter range yields an empty list.
std::vector<CohomogeneityRow> generate_table(int table_id, int param_bound,
                                             unsigned seed = 42,
                                             int retries = 3);

/// CSV serialization: header "space,K,L,cohom_K,cohom_L", string fields
/// double-quoted (labels contain commas), one row per line, '\n' endings.
std::string table_csv(const std::vector<CohomogeneityRow>& rows);

} // namespace orbitlab

#endif // ORBITLAB_HERMANN_HPP

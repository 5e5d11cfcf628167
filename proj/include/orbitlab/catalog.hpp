#ifndef ORBITLAB_CATALOG_HPP
#define ORBITLAB_CATALOG_HPP

#include <optional>
#include <string>
#include <vector>

#include "orbitlab/pairs.hpp"

namespace orbitlab {

/// One concrete pseudo-Riemannian symmetric pair G/H from the classical
/// cohomogeneity tables, instantiated at specific integer parameters.
///
/// Table 1 lists the pairs whose G is a noncomplex real form of a special
/// linear or special unitary group, table 2 the orthogonal families (real,
/// quaternionic and complex) together with the complex special linear
/// families, and table 3 the symplectic families.  Only classical G are
/// catalogued; exceptional rows are out of scope.
struct CatalogEntry {
  int table = 0;          ///< 1, 2 or 3
  std::string space;      ///< display label "G/H"
  std::string g;          ///< algebra descriptor accepted by LieAlgebra::parse
  std::string k_label;    ///< maximal compact subgroup K of G (display only)
  std::string l_label;    ///< L = Fix(sigma ∘ theta)_0, the dual acting group
  Involution sigma;       ///< involution of g with fixed algebra h

  int dim_h = -1;         ///< dim H predicted from the label (build-time check)
  int dim_l = -1;         ///< dim L predicted from the label

  /// Tabulated closed forms for the cohomogeneities of the K- and L-actions
  /// on G/H, evaluated at this row's parameters.
  int formula_k = -1;
  int formula_l = -1;

  /// The tabulated cohom_L form for this family reads "n - 1" with n not
  /// among the row's parameters; the value stored in formula_l interprets
  /// n = p + q, and consumers should treat the row as report-only.
  bool ambiguous_l = false;

  /// The tabulated closed form provably undercounts the rank: an explicit
  /// commuting family of independent semisimple elements exceeds it (see the
  /// table tests for the witnesses).  expected_* carries the certified value.
  bool formula_k_low = false;
  bool formula_l_low = false;

  /// Rank values the rank computation is expected to return.  Equal to
  /// formula_k / formula_l unless one of the flags above is set.
  int expected_k = -1;
  int expected_l = -1;

  bool flagged() const { return ambiguous_l || formula_k_low || formula_l_low; }
};

/// All rows of the numbered table whose printed integer parameters are all
/// >= 1 and <= param_bound, instantiated, validity-filtered (G simple and
/// noncompact, H noncompact and proper) and deduplicated (parameter
/// assignments giving the same pair up to relabeling appear once).
/// param_bound > 8 raises InvalidParams (runtime guard); an empty range
/// yields an empty list.  table_id outside {1,2,3} raises UnsupportedFamily.
std::vector<CatalogEntry> enumerate_table(int table_id, int param_bound);

/// Parse a "SL(3,R)/SO0(1,2)"-style space descriptor by matching it against
/// the instantiated catalog: the G part fixes the family and parameters, the
/// H part is compared label-wise (case-, space- and product-sign-insensitive;
/// "SO" and "SO0" both accepted for identity components).  Throws ParseError
/// when nothing matches.
CatalogEntry parse_space(const std::string& descriptor);

/// Catalog row for the given G whose H label matches h_label (normalization
/// as in parse_space); used to resolve a second involution by subgroup name.
std::optional<CatalogEntry> find_subgroup(const std::string& g_descriptor,
                                          const std::string& h_label);

} // namespace orbitlab

#endif // ORBITLAB_CATALOG_HPP

#ifndef ORBITLAB_JSON_IO_HPP
#define ORBITLAB_JSON_IO_HPP

#include <string>

#include <json.hpp>

#include "orbitlab/hermann.hpp"
#include "orbitlab/oracle.hpp"
#include "orbitlab/orbits.hpp"
#include "orbitlab/roots.hpp"

namespace orbitlab {

using Json = nlohmann::json;

/// Schema tag stamped into every emitted document ("schema" key).
inline constexpr const char* kJsonSchema = "orbitlab/1";

/// Canonical compact serialization: object keys in sorted order (the default
/// Json object is an ordered map), no whitespace, floating-point numbers
/// fixed-format with 12 significant digits.  Identical values therefore
/// produce byte-identical output.  Non-finite numbers throw InvalidParams
/// (JSON has no representation for them and silence would corrupt goldens).
std::string dump_canonical(const Json& value);

/// {"im": ..., "re": ...}
Json json_complex(cplx z);

/// Root system: rank, an echo of the Cartan basis (ambient coordinate
/// columns) so the value vectors are reproducible, roots as {values per
/// basis vector, multiplicities}, and the centralizer dimensions.
Json json_of(const RestrictedRootSystem& system);

/// Shape/Jacobi spectrum: per-entry eigenvalue, multiplicity, tangent-block
/// tag ("q" / "h_prime" / "zero") and the annihilates_w flag.
Json json_of(const OrbitSpectrum& spectrum);

/// Focal set: arithmetic families as {offset, step, mult} plus the
/// enumerated window entries.
Json json_of(const FocalSet& focal);

/// Cohomogeneity row: mirrors the struct field-for-field.
Json json_of(const CohomogeneityRow& row);

/// Complex determinant-scan report: parameters, counters and zeros found.
Json json_of(const oracle::ScanReport& report);

/// Structured error envelope {"error": {"code": ..., "message": ...}}.
Json json_error(const std::string& code, const std::string& message);

} // namespace orbitlab

#endif // ORBITLAB_JSON_IO_HPP

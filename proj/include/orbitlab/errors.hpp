#ifndef ORBITLAB_ERRORS_HPP
#define ORBITLAB_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace orbitlab {

/// Base class for all structured failures.
///
/// Every throw site supplies a stable machine-readable code (mirrored in the
/// CLI's JSON error envelope) together with a human-readable message.  The
/// codes double as the vocabulary of the test suite: tests assert on codes,
/// never on message text.
class Error : public std::runtime_error {
public:
  Error(std::string code, const std::string& message)
      : std::runtime_error(code + ": " + message), code_(std::move(code)) {}

  const std::string& code() const noexcept { return code_; }

private:
  std::string code_;
};

// Construction / parsing ------------------------------------------------------

/// Family token not in the supported matrix-algebra catalogue.
struct UnsupportedFamily : Error {
  explicit UnsupportedFamily(const std::string& m) : Error("UnsupportedFamily", m) {}
};

/// Parameters violate a family's constraints (e.g. p+q mismatch, n < 1).
struct InvalidParams : Error {
  explicit InvalidParams(const std::string& m) : Error("InvalidParams", m) {}
};

/// A textual descriptor could not be parsed at all.
struct ParseError : Error {
  explicit ParseError(const std::string& m) : Error("ParseError", m) {}
};

/// A matrix is not an element of the algebra it was claimed to belong to,
/// or an operation received data built over a different algebra instance.
struct AlgebraMismatch : Error {
  explicit AlgebraMismatch(const std::string& m) : Error("AlgebraMismatch", m) {}
};

// Involutions / pairs ---------------------------------------------------------

/// Requested involution is not available for the given algebra.
struct UnsupportedSigma : Error {
  explicit UnsupportedSigma(const std::string& m) : Error("UnsupportedSigma", m) {}
};

/// Two involutions that must commute (for a common eigenspace grading) do not.
struct NonCommutingInvolutions : Error {
  explicit NonCommutingInvolutions(const std::string& m)
      : Error("NonCommutingInvolutions", m) {}
};

/// The Killing form restricted to a subspace is (numerically) degenerate,
/// so no pseudo-orthonormal basis exists.
struct DegenerateSubspace : Error {
  explicit DegenerateSubspace(const std::string& m) : Error("DegenerateSubspace", m) {}
};

// Root-space machinery --------------------------------------------------------

/// Randomized maximal-abelian search failed to stabilize.
struct MaximalityNotReached : Error {
  explicit MaximalityNotReached(const std::string& m)
      : Error("MaximalityNotReached", m) {}
};

/// Eigenvalue clusters could not be separated or matched consistently.
struct ClusteringAmbiguous : Error {
  explicit ClusteringAmbiguous(const std::string& m)
      : Error("ClusteringAmbiguous", m) {}
};

/// Root-vector normalization hit a (numerically) isotropic vector.
struct NormalizationSingular : Error {
  explicit NormalizationSingular(const std::string& m)
      : Error("NormalizationSingular", m) {}
};

// Orbit geometry --------------------------------------------------------------

/// The offset w handed to an orbit computation does not lie in the Cartan
/// subspace the root data was computed for.
struct WNotInCartan : Error {
  explicit WNotInCartan(const std::string& m) : Error("WNotInCartan", m) {}
};

/// A root value sits on (or too close to) the singular lattice, so the
/// requested orbit quantity is not defined there.
struct SingularDirection : Error {
  explicit SingularDirection(const std::string& m) : Error("SingularDirection", m) {}
};

/// ad(w) fails the semisimplicity check required for spectral formulas.
struct NonSemisimpleW : Error {
  explicit NonSemisimpleW(const std::string& m) : Error("NonSemisimpleW", m) {}
};

/// The pair of directions handed to a tube computation must commute.
struct NonAbelianSpan : Error {
  explicit NonAbelianSpan(const std::string& m) : Error("NonAbelianSpan", m) {}
};

// Guards / numerics -----------------------------------------------------------

/// Requested computation exceeds a configured size guard.
struct DimensionGuard : Error {
  explicit DimensionGuard(const std::string& m) : Error("DimensionGuard", m) {}
};

/// Finite-difference estimator could not reach its target accuracy.
struct StepTooLarge : Error {
  explicit StepTooLarge(const std::string& m) : Error("StepTooLarge", m) {}
};

} // namespace orbitlab

#endif // ORBITLAB_ERRORS_HPP

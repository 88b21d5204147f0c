#pragma once

#include <stdexcept>
#include <string>

namespace toeplab {

/// Base class for all failures raised by this library. Subclasses carry the
/// condition name used in CLI diagnostics and test assertions.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what_arg) : std::runtime_error(what_arg) {}
};

// --- symbol / root finding ---

/// z hits one of the special points where the characteristic polynomial
/// degenerates (z = 0, or z = a_0 when N_+ or N_- vanishes).
struct DegenerateParameter : Error { using Error::Error; };

/// A characteristic root sits on the unit circle within tolerance, i.e. z is
/// effectively on the symbol curve.
struct RootsOnCircle : Error { using Error::Error; };

/// Iterative root finder exceeded its iteration budget.
struct NonConvergence : Error { using Error::Error; };

/// Spectral-parameter point lies on (or too close to) the symbol curve.
struct OnCurve : Error { using Error::Error; };

/// Winding-number argument tracking could not resolve a turn < pi/2 even at
/// maximal grid refinement.
struct RefinementExhausted : Error { using Error::Error; };

/// Region boundary crossing count changed under grid refinement; possible
/// tangency between the region boundary and the symbol curve.
struct SuspectBoundary : Error { using Error::Error; };

// --- parsing ---

/// Syntax error in a symbol expression; position is a 0-based byte offset.
struct ParseError : Error {
    std::size_t position;
    std::string expected;
    ParseError(std::size_t pos, const std::string& expected_tokens,
               const std::string& what_arg)
        : Error(what_arg), position(pos), expected(expected_tokens) {}
};

/// All coefficients cancelled to zero after term merging.
struct EmptySymbol : Error { using Error::Error; };

/// A domain-type invariant would be violated (e.g. N_+ = N_- = 0).
struct InvariantViolation : Error { using Error::Error; };

// --- linear algebra ---

struct NonSquare : Error { using Error::Error; };
struct NoConvergence : Error { using Error::Error; };
struct ShapeMismatch : Error { using Error::Error; };
struct DimensionLimit : Error { using Error::Error; };

// --- operators / kernels ---

/// Circulant dimension too small for the band (wraparound overlap).
struct Overlap : Error { using Error::Error; };

/// z coincides with a point of the (circulant) spectrum.
struct OnSpectrum : Error { using Error::Error; };

/// Contour quadrature failed to stabilize under node doubling.
struct QuadratureStall : Error { using Error::Error; };

/// The symbol derivative vanishes at a preimage of the probe point.
struct DegenerateCriticalPoint : Error { using Error::Error; };

// --- grushin / quasimode ---

/// The Neumann-series condition ||dQ|| * ||E0|| < 1/2 fails.
struct NeumannDivergence : Error { using Error::Error; };

/// Quasimode requested on the wrong side of the index dichotomy.
struct WrongIndexSign : Error { using Error::Error; };

/// A matrix that must have maximal rank numerically does not.
struct RankDeficient : Error { using Error::Error; };

// --- experiments / cli ---

/// A stated experiment precondition fails; the message names the inequality.
struct PreconditionViolated : Error { using Error::Error; };

/// Bad flag/config combination; maps to CLI exit code 2.
struct ConfigError : Error { using Error::Error; };

}  // namespace toeplab

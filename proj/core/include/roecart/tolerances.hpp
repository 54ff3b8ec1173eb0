#pragma once

// Numeric policy shared across the library.  Every tolerance that a caller
// might need to reason about lives here; nothing else hard-codes thresholds.

namespace roecart {

// Entries with modulus at or below this are structural zeros: they do not
// count towards supports, propagation, or slice bounds.
inline constexpr double kStructuralZero = 1e-12;

// Slack allowed when validating metric axioms (symmetry, triangle inequality).
inline constexpr double kMetricTol = 1e-9;

// Singular-value cutoff for rank decisions (span dimensions, commutants).
inline constexpr double kRankTol = 1e-9;

// Max-norm defect allowed in a matrix that is required to be unitary.
inline constexpr double kUnitaryTol = 1e-8;

// A single-diagonal operator's sup-entry norm must match its spectral norm
// this tightly; used as an internal consistency bound.
inline constexpr double kSingleDiagNormTol = 1e-10;

}  // namespace roecart

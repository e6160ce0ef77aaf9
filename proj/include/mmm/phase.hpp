#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "mmm/orbit.hpp"
#include "mmm/rational.hpp"

namespace mmm {

/// ceil(1/x) for x in (0,1), by exact integer ceiling division.
/// Throws std::domain_error outside (0,1).
long ell_of(const Rational& x);

/// Transit-time prediction: either the exact value 2*ell+3 (unit fractions)
/// or the strict lower bound "tau > 2*ell+3". A first-class marker, not a
/// sentinel, so callers can distinguish equality from excess exactly.
struct TauPrediction {
  bool exact;
  long bound;  // 2*ell + 3
};

/// Limit prediction: exact value 2x-1 (unit fractions) or the strict upper
/// bound "m < 2x-1".
struct LimitPrediction {
  bool exact;
  Rational bound;  // 2x - 1
};

/// Closed-form initial orbit segment of [x,1] of length 2*ell+2.
struct PhaseDescription {
  Rational x;
  long ell = 0;
  bool unit_fraction = false;
  std::vector<Rational> points;  // x_1 .. x_{2*ell+2}
  TauPrediction tau;
  LimitPrediction limit;
};

/// The predictable phase of the Akiyama orbit of [x,1], x in (0,1):
/// (x, 1, 0, 2x-1), then -(n-4)x up to n = 2*ell+2 for unit fractions
/// (followed by stabilization at 2x-1), or up to n = 2*ell with the two
/// closing terms (ell^2-2ell+3)x - ell and (ell^2-ell+2)x - ell - 1
/// otherwise. Throws std::domain_error outside (0,1).
PhaseDescription predicted_prefix(const Rational& x);

/// tau_A(x) >= 2/x + 3 and m_A(x) <= 2x - 1, equality iff x is a unit
/// fraction. Bounds are exact rationals; no rounding.
struct TheoremBounds {
  Rational tau_lower;
  Rational m_upper;
  bool equality;  // x is a unit fraction
};

TheoremBounds theorem_bounds(const Rational& x);

/// The sharper two-sided form: for x > 1/2 the mirrored bounds
/// tau_A >= 2/(1-x) + 3 and m_A <= 0 apply.
struct ImprovedBounds {
  Rational tau_lower;
  Rational m_upper;
};

ImprovedBounds improved_bounds(const Rational& x);

/// Result of checking an engine orbit of [x,1] against the closed forms.
struct PhaseReport {
  Rational x;
  long ell = 0;
  bool unit_fraction = false;
  std::vector<Rational> predicted;           // x_1 .. x_{2*ell+2}
  std::vector<Rational> engine;              // same indices, from the record
  std::vector<std::size_t> mismatches;       // 1-based indices, expected empty
  bool prefix_match = false;
  std::optional<long> tau;                   // engine values when resolved
  std::optional<Rational> m;
  bool tau_bound_ok = false;                 // bound holds with correct strictness
  bool m_bound_ok = false;

  /// One-line machine-readable summary:
  /// "x=<p/q> ell=<int> unit=<bool> prefix_match=<bool> tau=<int|?>
  ///  tau_bound_ok=<bool> m=<p/q|?> m_bound_ok=<bool>"
  std::string summary() const;

  /// Human-readable per-index table plus the summary.
  std::string text() const;
};

/// Cross-checks an engine record against predicted_prefix and the theorem
/// bounds. The record must be the Akiyama orbit of [x, 1] with at least
/// 2*ell+2 recorded points; anything else is rejected.
PhaseReport verify_phase(const Rational& x, const OrbitRecord& record);

}  // namespace mmm

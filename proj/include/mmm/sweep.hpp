#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mmm/orbit.hpp"
#include "mmm/phase.hpp"
#include "mmm/rational.hpp"

namespace mmm {

/// Rational interval with per-endpoint openness. Text form "a..b" with an
/// optional bracket pair, e.g. "(0..1)", "[1/3..1/2]", "(0..1/2]"; bare
/// "a..b" is closed.
struct Interval {
  Rational lo, hi;
  bool lo_open = false, hi_open = false;

  bool contains(const Rational& x) const;
  std::string str() const;
  static Interval parse(std::string_view text);
};

/// All reduced fractions p/q with 1 <= q <= qmax lying in the interval, in
/// increasing order.
std::vector<Rational> enumerate_farey(long qmax, const Interval& interval);

struct SweepConfig {
  Variant variant = Variant::Akiyama;
  long qmax = 2;
  Interval interval{Rational(0), Rational(1), true, true};
  std::size_t cap = 100000;
  unsigned jobs = 1;
};

/// One initial condition's outcome plus the closed-form reference bounds.
struct SweepRecord {
  Rational x;
  std::optional<long> tau;      // empty: unresolved within cap
  std::optional<Rational> m;
  long ell = 0;
  Rational theorem_tau_lower, theorem_m_upper;
  Rational improved_tau_lower, improved_m_upper;
  bool bounds_ok = true;
  bool equality_case = false;  // x is a unit fraction
};

/// Runs the map over every enumerated fraction ([x,1] for the Akiyama
/// variant, [0,x,1] for the original) and assembles records in increasing-x
/// order, independent of the worker count. The bound audit (bounds_ok)
/// applies to the Akiyama variant; original-variant records carry the
/// reference bounds but are never flagged.
std::vector<SweepRecord> sweep(const SweepConfig& config);

/// CSV with the mandatory header
/// x_exact,x_decimal,tau,tau_resolved,m_exact,m_decimal,m_resolved,ell,
/// unit_fraction,theorem_tau_lower,theorem_m_upper,improved_tau_lower,
/// improved_m_upper,bounds_ok
/// Exact columns in "p/q" form, decimal columns display-only (12 significant
/// digits), unresolved tau/m as empty fields. Refuses an empty record list.
void emit_csv(const std::vector<SweepRecord>& records, std::ostream& os);
void emit_csv(const std::vector<SweepRecord>& records, const std::string& path);

/// Reads back what emit_csv wrote (exact columns; decimals are ignored).
std::vector<SweepRecord> parse_csv(std::istream& is);

/// Checks tau_A(1-x) = tau_A(x) and m_A(1-x) = m_A(x) - 2x + 1 for every
/// reduced x in (0, 1/2] with denominator <= qmax where both orbits resolve.
struct SymmetryAudit {
  struct Pair {
    Rational x, mirror;
    long tau_x = 0, tau_mirror = 0;
    Rational m_x, m_mirror;
    bool ok = false;
  };
  std::vector<Pair> checked;
  std::vector<Rational> unresolved;  // x where either side hit the cap
  std::size_t violations = 0;

  bool all_ok() const { return violations == 0; }
};

SymmetryAudit symmetry_audit(long qmax, std::size_t cap);

/// Walks the families x = 1/ell and x = (ell-1)/ell for ell = 2..len+1:
/// tau_A = 2*ell+3 grows without bound on both, m_A(1/ell) = 2/ell - 1
/// heads to -1 while m_A(0) = 0 (computed from the [0,1] orbit), and the
/// mirrored family keeps m_A = 0.
struct DiscontinuityProbe {
  struct Sample {
    long ell = 0;
    Rational x;
    long tau = 0;
    Rational m;
  };
  std::vector<Sample> unit_family;    // x = 1/ell
  std::vector<Sample> mirror_family;  // x = (ell-1)/ell
  Rational limit_at_zero;             // m_A(0), from the [0,1] orbit
  bool tau_unbounded_ok = false;      // tau == 2*ell+3 on both families
  bool m_gap_ok = false;              // m(1/ell) == 2/ell-1, mirror m == 0, m(0) == 0
};

DiscontinuityProbe discontinuity_probe(long len, std::size_t cap);

}  // namespace mmm

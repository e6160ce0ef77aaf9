#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mmm/orbit.hpp"
#include "mmm/rational.hpp"

namespace mmm {

/// Continuous piecewise-affine function on a closed rational interval,
/// stored as strictly increasing breakpoints with exact values. Always kept
/// canonical: collinear interior breakpoints are removed, so pointwise-equal
/// functions compare equal structurally.
class PafFunction {
 public:
  /// Builds the interpolant of (xs, ys) and canonicalizes. Requires at least
  /// two strictly increasing breakpoints and matching lengths.
  PafFunction(std::vector<Rational> xs, std::vector<Rational> ys);

  static PafFunction constant(const Rational& lo, const Rational& hi, const Rational& value);
  static PafFunction identity(const Rational& lo, const Rational& hi);

  const std::vector<Rational>& breakpoints() const { return xs_; }
  const std::vector<Rational>& values() const { return ys_; }
  const Rational& lo() const { return xs_.front(); }
  const Rational& hi() const { return xs_.back(); }

  /// Exact evaluation. Throws std::domain_error outside [lo, hi].
  Rational operator()(const Rational& x) const;

  bool same_domain(const PafFunction& other) const {
    return lo() == other.lo() && hi() == other.hi();
  }

  friend bool operator==(const PafFunction& a, const PafFunction& b) {
    return a.xs_ == b.xs_ && a.ys_ == b.ys_;
  }

 private:
  std::vector<Rational> xs_, ys_;
};

/// Ordered family of piecewise-affine functions on one common domain,
/// acted on pointwise by the map (functions[k] plays the role of Y_{k+1}).
class Bundle {
 public:
  Bundle() = default;
  explicit Bundle(std::vector<PafFunction> functions);

  void append(PafFunction f);  // must share the domain
  std::size_t size() const { return fns_.size(); }
  bool empty() const { return fns_.empty(); }
  const PafFunction& operator[](std::size_t k) const { return fns_[k]; }
  const std::vector<PafFunction>& functions() const { return fns_; }

 private:
  std::vector<PafFunction> fns_;
};

/// Sum of coeffs[i] * funcs[i] on the union of all breakpoints.
PafFunction paf_combine(std::span<const Rational> coeffs, std::span<const PafFunction> funcs);

/// Pointwise min/max; interior crossings become breakpoints so the result
/// is exactly piecewise-affine.
PafFunction paf_min(const PafFunction& f, const PafFunction& g);
PafFunction paf_max(const PafFunction& f, const PafFunction& g);

/// g(x) = f(1-x). Requires a domain symmetric under x -> 1-x.
PafFunction paf_reflect(const PafFunction& f);

/// The conjugating shift applied pointwise: (f - 2x + 1)(x) = f(x) - 2x + 1.
PafFunction paf_conjugate(const PafFunction& f);

/// Pointwise median of the member functions, glued into one continuous
/// piecewise-affine function over the crossing-refined partition.
PafFunction bundle_median(const Bundle& bundle);

/// Function-valued orbit step: |bundle|*median - sum for the Akiyama map,
/// (|bundle|+1)*median - sum for the original one.
PafFunction functional_step(const Bundle& bundle, Variant v);

struct FunctionalOrbit {
  Bundle bundle;
  std::optional<std::size_t> truncated_at;  // bundle size reached when the budget tripped
};

/// Akiyama functional orbit from [identity, 1] on [lo, hi], a closed
/// subinterval of (0,1), grown until n_max functions exist or a member
/// would exceed max_breakpoints.
FunctionalOrbit functional_orbit(std::size_t n_max, const Rational& lo, const Rational& hi,
                                 std::size_t max_breakpoints = 100000);

/// Transversal crossing of two bundle members: equal at `location`,
/// strictly ordered on both sides near it. lower/upper name the function
/// below/above immediately to the left of the crossing.
struct XPoint {
  Rational location;
  std::size_t lower_index, upper_index;  // 0-based bundle indices
};

/// Non-transversal contact: the pair touches at a point or agrees on a whole
/// segment without exchanging order (from == to for a point contact).
struct Tangency {
  std::size_t a, b;
  Rational from, to;
};

struct CrossingReport {
  std::vector<XPoint> xpoints;
  std::vector<Tangency> tangencies;
};

/// All pairwise transversal crossings interior to the domain; tangencies
/// are classified separately, endpoint contacts are excluded.
CrossingReport xpoint_detect(const Bundle& bundle);

struct PsiCoefficients {
  Rational alpha, beta, gamma;  // alpha + beta + gamma = 1
};

/// Solves Y = alpha*min{Y3,Y4} + beta*max{Y3,Y4} + gamma*Y1 with
/// alpha+beta+gamma = 1, sampling at deterministic mediant points and then
/// verifying the candidate identity exactly on the full refinement. Returns
/// empty when no exact representation exists; `diag`, when given, records
/// why (identity failure or degenerate sample exhaustion).
std::optional<PsiCoefficients> psi_coefficients(const PafFunction& y, const Bundle& bundle4,
                                                std::string* diag = nullptr);

/// Restriction to [lo, hi], a subinterval of f's domain.
PafFunction paf_restrict(const PafFunction& f, const Rational& lo, const Rational& hi);

/// Membership of the orbit functions in the X-point family is a statement
/// local to the crossing at 1/2 (deeper functions fragment away from it), so
/// the table restricts every member to the widest symmetric interval around
/// 1/2 that contains no other member breakpoint, then solves there.
struct PsiTable {
  Rational lo, hi;  // the neighbourhood actually used
  struct Row {
    std::size_t n;  // orbit index, starting at 5
    std::optional<PsiCoefficients> coeffs;
    std::string diag;  // set when coeffs is absent
  };
  std::vector<Row> rows;
};

/// Requires a bundle of at least four functions whose domain contains 1/2
/// strictly; rows cover Y_5 .. Y_{size}.
PsiTable psi_table(const Bundle& bundle);

/// "paf domain=<a>..<b> n=<k>" header plus one "<breakpoint> <value>" line
/// per breakpoint.
void write_paf(std::ostream& os, const PafFunction& f);

/// Members concatenated with "## Y_<n>" index headers.
void write_bundle(std::ostream& os, const Bundle& bundle);

}  // namespace mmm

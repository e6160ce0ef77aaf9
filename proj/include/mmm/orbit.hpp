#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string_view>
#include <vector>

#include "mmm/rational.hpp"

namespace mmm {

/// The two orbit-step rules. With n points, median M and sum S, the
/// appended point is (n+1)M - S for the original map and nM - S for the
/// Akiyama map.
enum class Variant { Original, Akiyama };

std::string_view variant_name(Variant v);
Variant parse_variant(std::string_view name);  // "original" | "akiyama"

/// Sorted rational multiset with a cached exact sum.
class MultisetState {
 public:
  MultisetState() = default;
  explicit MultisetState(std::vector<Rational> elements);

  std::size_t size() const { return elems_.size(); }
  bool empty() const { return elems_.empty(); }
  const Rational& sum() const { return sum_; }
  const std::vector<Rational>& elements() const { return elems_; }

  /// Middle element (odd size) or exact mean of the middle pair (even size).
  /// Throws std::domain_error on an empty state.
  Rational median() const;

  /// The point the map appends. Throws std::domain_error on an empty state.
  Rational next_point(Variant v) const;

  /// Inserts q at its sorted position and updates the cached sum.
  void insert(Rational q);

  /// Elementwise image {a*e + b}, with sum a*S + |state|*b.
  MultisetState affine_image(const Rational& a, const Rational& b) const;

 private:
  std::vector<Rational> elems_;  // non-decreasing
  Rational sum_;
};

enum class MedianDirection { NonIncreasing, NonDecreasing, Constant, Violated };

std::string_view direction_name(MedianDirection d);

struct Stabilized {
  long tau;        // smallest index from which the orbit is constant
  Rational limit;  // the constant value, equal to the final median
};

/// Full trace of one orbit: points x_1..x_N, medians M_{n0}..M_N, and the
/// resolution status. On stabilization the trace stops at the detection
/// index; it is never padded with the constant tail.
struct OrbitRecord {
  Variant variant = Variant::Akiyama;
  std::size_t initial_size = 0;  // n0
  std::vector<Rational> points;  // initial points kept in input order
  std::vector<Rational> medians;
  std::optional<Stabilized> stabilized;  // empty => Unresolved(cap)
  std::size_t cap = 0;
  MedianDirection direction = MedianDirection::Constant;

  bool resolved() const { return stabilized.has_value(); }

  /// M_n for n0 <= n <= n0 + medians.size() - 1.
  const Rational& median_at(std::size_t n) const;
};

/// Iterates the map from `initial`, recording points and medians, until two
/// consecutive medians are equal (stabilization) or `cap` points exist.
/// Requires a non-empty initial set and cap > initial.size().
OrbitRecord iterate_orbit(std::vector<Rational> initial, Variant variant, std::size_t cap);

/// Classifies a recorded median sequence. Requires at least two medians.
MedianDirection median_direction(const OrbitRecord& record);

/// Witness for convergence of the median sequence: points x_i = x_j with a
/// median on the correct side (M_s >= x_i for the non-increasing case,
/// M_s <= x_i for the non-decreasing one).
struct RepeatCertificate {
  std::size_t i, j;  // 1-based point indices, i < j, x_i == x_j
  std::size_t s;     // set-size index with n0 <= s, median M_s on the right side
};

std::optional<RepeatCertificate> repeated_point_certificate(const OrbitRecord& record);

/// Line-oriented trace: a "# variant=... initial=... cap=..." header, then
/// one "n<TAB>x_n<TAB>M_n" row per recorded point ("-" where no median is
/// defined, i.e. n < n0).
void write_trace(std::ostream& os, const OrbitRecord& record);

}  // namespace mmm

#include "mmm/orbit.hpp"

#include <algorithm>
#include <ostream>
#include <stdexcept>
#include <unordered_map>

namespace mmm {

std::string_view variant_name(Variant v) {
  return v == Variant::Akiyama ? "akiyama" : "original";
}

Variant parse_variant(std::string_view name) {
  if (name == "akiyama") return Variant::Akiyama;
  if (name == "original") return Variant::Original;
  throw std::invalid_argument("unknown variant '" + std::string(name) +
                              "' (expected akiyama or original)");
}

MultisetState::MultisetState(std::vector<Rational> elements) : elems_(std::move(elements)) {
  std::sort(elems_.begin(), elems_.end());
  for (const Rational& e : elems_) sum_ += e;
}

Rational MultisetState::median() const {
  if (elems_.empty()) throw std::domain_error("median of an empty set");
  const std::size_t n = elems_.size();
  if (n % 2 == 1) return elems_[(n - 1) / 2];
  return mean2(elems_[n / 2 - 1], elems_[n / 2]);
}

Rational MultisetState::next_point(Variant v) const {
  if (elems_.empty()) throw std::domain_error("next_point of an empty set");
  const Rational coeff(static_cast<long long>(size()) + (v == Variant::Original ? 1 : 0));
  return coeff * median() - sum_;
}

void MultisetState::insert(Rational q) {
  auto pos = std::upper_bound(elems_.begin(), elems_.end(), q);
  sum_ += q;
  elems_.insert(pos, std::move(q));
}

MultisetState MultisetState::affine_image(const Rational& a, const Rational& b) const {
  MultisetState out;
  out.elems_.reserve(elems_.size());
  for (const Rational& e : elems_) out.elems_.push_back(a * e + b);
  if (a.sign() < 0) std::reverse(out.elems_.begin(), out.elems_.end());
  out.sum_ = a * sum_ + Rational(static_cast<long long>(size())) * b;
  return out;
}

const Rational& OrbitRecord::median_at(std::size_t n) const {
  if (n < initial_size || n - initial_size >= medians.size())
    throw std::out_of_range("median_at: index outside the recorded median sequence");
  return medians[n - initial_size];
}

OrbitRecord iterate_orbit(std::vector<Rational> initial, Variant variant, std::size_t cap) {
  if (initial.empty()) throw std::invalid_argument("iterate_orbit: empty initial set");
  if (cap <= initial.size())
    throw std::invalid_argument("iterate_orbit: cap must exceed the initial size");

  OrbitRecord rec;
  rec.variant = variant;
  rec.initial_size = initial.size();
  rec.cap = cap;
  rec.points = std::move(initial);

  MultisetState state(rec.points);
  rec.medians.push_back(state.median());

  while (state.size() < cap) {
    Rational x = state.next_point(variant);
    rec.points.push_back(x);
    state.insert(std::move(x));
    rec.medians.push_back(state.median());

    const std::size_t k = rec.medians.size();
    if (rec.medians[k - 1] == rec.medians[k - 2]) {
      // Two equal consecutive medians force x_j = M for all later j. Every
      // unrecorded point equals the limit, so tau is found by walking back
      // from the first unrecorded index over recorded points equal to it.
      const Rational& limit = rec.medians[k - 1];
      std::size_t tau = rec.points.size() + 1;
      while (tau >= 2 && rec.points[tau - 2] == limit) --tau;
      rec.stabilized = Stabilized{static_cast<long>(tau), limit};
      break;
    }
  }
  rec.direction = median_direction(rec);
  return rec;
}

MedianDirection median_direction(const OrbitRecord& record) {
  if (record.medians.size() < 2)
    throw std::invalid_argument("median_direction: need at least two medians");
  bool rose = false, fell = false;
  for (std::size_t k = 1; k < record.medians.size(); ++k) {
    const auto cmp = record.medians[k] <=> record.medians[k - 1];
    if (cmp > 0) rose = true;
    if (cmp < 0) fell = true;
  }
  if (rose && fell) return MedianDirection::Violated;
  if (rose) return MedianDirection::NonDecreasing;
  if (fell) return MedianDirection::NonIncreasing;
  return MedianDirection::Constant;
}

std::string_view direction_name(MedianDirection d) {
  switch (d) {
    case MedianDirection::NonIncreasing: return "non-increasing";
    case MedianDirection::NonDecreasing: return "non-decreasing";
    case MedianDirection::Constant: return "constant";
    case MedianDirection::Violated: return "violated";
  }
  return "?";
}

std::optional<RepeatCertificate> repeated_point_certificate(const OrbitRecord& record) {
  if (record.direction == MedianDirection::Violated) return std::nullopt;

  auto median_side_ok = [&](const Rational& v, bool non_increasing) {
    for (std::size_t k = 0; k < record.medians.size(); ++k) {
      const auto cmp = record.medians[k] <=> v;
      if (non_increasing ? cmp >= 0 : cmp <= 0)
        return std::optional<std::size_t>(record.initial_size + k);
    }
    return std::optional<std::size_t>();
  };

  const bool constant = record.direction == MedianDirection::Constant;
  const bool non_increasing = record.direction != MedianDirection::NonDecreasing;

  std::unordered_map<Rational, std::size_t> first_seen;
  for (std::size_t j = 0; j < record.points.size(); ++j) {
    auto [it, fresh] = first_seen.try_emplace(record.points[j], j);
    if (fresh) continue;
    auto s = median_side_ok(record.points[j], non_increasing);
    if (!s && constant) s = median_side_ok(record.points[j], !non_increasing);
    if (s) return RepeatCertificate{it->second + 1, j + 1, *s};
  }
  return std::nullopt;
}

void write_trace(std::ostream& os, const OrbitRecord& record) {
  os << "# variant=" << variant_name(record.variant) << " initial=";
  for (std::size_t i = 0; i < record.initial_size; ++i) {
    if (i) os << ',';
    os << record.points[i];
  }
  os << " cap=" << record.cap << '\n';
  for (std::size_t n = 1; n <= record.points.size(); ++n) {
    os << n << '\t' << record.points[n - 1] << '\t';
    if (n >= record.initial_size)
      os << record.median_at(n);
    else
      os << '-';
    os << '\n';
  }
}

}  // namespace mmm

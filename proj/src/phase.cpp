#include "mmm/phase.hpp"

#include <sstream>
#include <stdexcept>

namespace mmm {

namespace {

void require_unit_interval(const Rational& x, const char* who) {
  if (x.sign() <= 0 || x >= Rational(1))
    throw std::domain_error(std::string(who) + ": x must lie in (0,1), got " + x.str());
}

}  // namespace

long ell_of(const Rational& x) {
  require_unit_interval(x, "ell_of");
  Int l = (x.den() + x.num() - 1) / x.num();  // ceil(q/p), both positive
  return l.convert_to<long>();
}

PhaseDescription predicted_prefix(const Rational& x) {
  require_unit_interval(x, "predicted_prefix");
  PhaseDescription d;
  d.x = x;
  d.ell = ell_of(x);
  d.unit_fraction = x.num() == 1;

  const long l = d.ell;
  auto& p = d.points;
  p.reserve(static_cast<std::size_t>(2 * l + 2));
  p.push_back(x);
  p.push_back(Rational(1));
  p.push_back(Rational(0));
  p.push_back(Rational(2) * x - Rational(1));
  if (l == 2) {
    // x in [1/2, 1): the phase is just the first six points.
    if (d.unit_fraction) {  // x = 1/2: (1/2, 1, 0, 0, -1/2, -1)
      p.push_back(-x);
      p.push_back(Rational(-1));
    } else {  // (x, 1, 0, 2x-1, 3x-2, 4x-3)
      p.push_back(Rational(3) * x - Rational(2));
      p.push_back(Rational(4) * x - Rational(3));
    }
  } else if (d.unit_fraction) {
    for (long n = 5; n <= 2 * l + 2; ++n) p.push_back(Rational(-(n - 4)) * x);
  } else {
    for (long n = 5; n <= 2 * l; ++n) p.push_back(Rational(-(n - 4)) * x);
    const Int li(l);
    p.push_back(Rational(li * li - 2 * li + 3) * x - Rational(li));
    p.push_back(Rational(li * li - li + 2) * x - Rational(li + 1));
  }

  d.tau = TauPrediction{d.unit_fraction, 2 * l + 3};
  d.limit = LimitPrediction{d.unit_fraction, Rational(2) * x - Rational(1)};
  return d;
}

TheoremBounds theorem_bounds(const Rational& x) {
  require_unit_interval(x, "theorem_bounds");
  return TheoremBounds{Rational(2) / x + Rational(3), Rational(2) * x - Rational(1),
                       x.num() == 1};
}

ImprovedBounds improved_bounds(const Rational& x) {
  require_unit_interval(x, "improved_bounds");
  if (x <= Rational(1, 2))
    return ImprovedBounds{Rational(2) / x + Rational(3), Rational(2) * x - Rational(1)};
  return ImprovedBounds{Rational(2) / (Rational(1) - x) + Rational(3), Rational(0)};
}

PhaseReport verify_phase(const Rational& x, const OrbitRecord& record) {
  if (record.variant != Variant::Akiyama)
    throw std::invalid_argument("verify_phase: record is not an Akiyama orbit");
  if (record.initial_size != 2 || record.points.size() < 2 || record.points[0] != x ||
      record.points[1] != Rational(1))
    throw std::invalid_argument("verify_phase: record is not the orbit of [x, 1] for x = " +
                                x.str());

  PhaseDescription pred = predicted_prefix(x);
  if (record.points.size() < pred.points.size())
    throw std::invalid_argument(
        "verify_phase: record too short for the predictable phase (needs " +
        std::to_string(pred.points.size()) + " points, has " +
        std::to_string(record.points.size()) + ")");

  PhaseReport rep;
  rep.x = x;
  rep.ell = pred.ell;
  rep.unit_fraction = pred.unit_fraction;
  rep.predicted = pred.points;
  rep.engine.assign(record.points.begin(),
                    record.points.begin() + static_cast<long>(pred.points.size()));
  for (std::size_t k = 0; k < pred.points.size(); ++k)
    if (rep.engine[k] != rep.predicted[k]) rep.mismatches.push_back(k + 1);
  rep.prefix_match = rep.mismatches.empty();

  const TheoremBounds tb = theorem_bounds(x);
  if (record.resolved()) {
    rep.tau = record.stabilized->tau;
    rep.m = record.stabilized->limit;
    const Rational tau_r(static_cast<long long>(*rep.tau));
    rep.tau_bound_ok = tb.equality ? tau_r == tb.tau_lower : tau_r > tb.tau_lower;
    rep.m_bound_ok = tb.equality ? *rep.m == tb.m_upper : *rep.m < tb.m_upper;
  } else {
    // Nothing to audit; the bounds constrain resolved orbits only.
    rep.tau_bound_ok = true;
    rep.m_bound_ok = true;
  }
  return rep;
}

std::string PhaseReport::summary() const {
  std::ostringstream os;
  os << "x=" << x << " ell=" << ell << " unit=" << (unit_fraction ? "true" : "false")
     << " prefix_match=" << (prefix_match ? "true" : "false");
  os << " tau=";
  if (tau)
    os << *tau;
  else
    os << '?';
  os << " tau_bound_ok=" << (tau_bound_ok ? "true" : "false");
  os << " m=";
  if (m)
    os << *m;
  else
    os << '?';
  os << " m_bound_ok=" << (m_bound_ok ? "true" : "false");
  return os.str();
}

std::string PhaseReport::text() const {
  std::ostringstream os;
  os << "predictable phase of [" << x << ", 1/1]  (ell=" << ell
     << (unit_fraction ? ", unit fraction" : "") << ")\n";
  os << "  n  predicted  engine\n";
  for (std::size_t k = 0; k < predicted.size(); ++k) {
    os << "  " << (k + 1) << "  " << predicted[k] << "  " << engine[k]
       << (predicted[k] == engine[k] ? "" : "  MISMATCH") << '\n';
  }
  os << summary() << '\n';
  return os.str();
}

}  // namespace mmm

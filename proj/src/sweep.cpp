#include "mmm/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace mmm {

bool Interval::contains(const Rational& x) const {
  if (lo_open ? !(x > lo) : !(x >= lo)) return false;
  if (hi_open ? !(x < hi) : !(x <= hi)) return false;
  return true;
}

std::string Interval::str() const {
  std::string s;
  s += lo_open ? '(' : '[';
  s += lo.str() + ".." + hi.str();
  s += hi_open ? ')' : ']';
  return s;
}

Interval Interval::parse(std::string_view text) {
  Interval iv;
  std::string_view s = text;
  const bool bracketed = !s.empty() && (s.front() == '(' || s.front() == '[');
  if (bracketed) {
    if (s.size() < 2 || (s.back() != ')' && s.back() != ']'))
      throw std::invalid_argument("Interval::parse: unbalanced brackets in '" +
                                  std::string(text) + "'");
    iv.lo_open = s.front() == '(';
    iv.hi_open = s.back() == ')';
    s = s.substr(1, s.size() - 2);
  }
  const std::size_t dots = s.find("..");
  if (dots == std::string_view::npos)
    throw std::invalid_argument("Interval::parse: expected 'a..b' in '" + std::string(text) +
                                "'");
  iv.lo = Rational::parse(s.substr(0, dots));
  iv.hi = Rational::parse(s.substr(dots + 2));
  if (iv.lo > iv.hi || (iv.lo == iv.hi && (iv.lo_open || iv.hi_open)))
    throw std::invalid_argument("Interval::parse: empty interval '" + std::string(text) + "'");
  return iv;
}

std::vector<Rational> enumerate_farey(long qmax, const Interval& interval) {
  if (qmax < 1) throw std::invalid_argument("enumerate_farey: qmax must be positive");
  std::vector<Rational> out;
  for (long q = 1; q <= qmax; ++q) {
    const Int qi(q);
    // p range with p/q inside [lo, hi], found by exact floor division.
    auto floor_div = [](const Int& a, const Int& b) {
      Int quo = a / b;
      if ((a % b != 0) && ((a < 0) != (b < 0))) --quo;
      return quo;
    };
    Int p_lo = floor_div(interval.lo.num() * qi, interval.lo.den());
    if (interval.lo_open || p_lo * interval.lo.den() != interval.lo.num() * qi) ++p_lo;
    Int p_hi = floor_div(interval.hi.num() * qi, interval.hi.den());
    if (interval.hi_open && p_hi * interval.hi.den() == interval.hi.num() * qi) --p_hi;
    for (Int p = p_lo; p <= p_hi; ++p) {
      if (gcd(abs(p), qi) != 1) continue;
      out.emplace_back(p, qi);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

SweepRecord make_record(const Rational& x, Variant variant, std::size_t cap) {
  std::vector<Rational> initial = variant == Variant::Akiyama
                                      ? std::vector<Rational>{x, Rational(1)}
                                      : std::vector<Rational>{Rational(0), x, Rational(1)};
  const OrbitRecord orbit = iterate_orbit(std::move(initial), variant, cap);

  SweepRecord rec;
  rec.x = x;
  if (orbit.resolved()) {
    rec.tau = orbit.stabilized->tau;
    rec.m = orbit.stabilized->limit;
  }
  rec.ell = ell_of(x);
  const TheoremBounds tb = theorem_bounds(x);
  const ImprovedBounds ib = improved_bounds(x);
  rec.theorem_tau_lower = tb.tau_lower;
  rec.theorem_m_upper = tb.m_upper;
  rec.improved_tau_lower = ib.tau_lower;
  rec.improved_m_upper = ib.m_upper;
  rec.equality_case = tb.equality;

  if (variant == Variant::Akiyama) {
    bool tau_ok = true, m_ok = true;
    if (rec.tau) {
      const Rational tau_r(static_cast<long long>(*rec.tau));
      tau_ok = tb.equality ? tau_r == tb.tau_lower : tau_r > tb.tau_lower;
    }
    if (rec.m) m_ok = tb.equality ? *rec.m == tb.m_upper : *rec.m < tb.m_upper;
    rec.bounds_ok = tau_ok && m_ok;
  }
  return rec;
}

}  // namespace

std::vector<SweepRecord> sweep(const SweepConfig& config) {
  if (config.qmax < 2) throw std::invalid_argument("sweep: qmax must be at least 2");
  if (config.cap < 10) throw std::invalid_argument("sweep: cap must be at least 10");
  if (config.jobs < 1) throw std::invalid_argument("sweep: jobs must be positive");
  const Interval& iv = config.interval;
  if (iv.lo < Rational(0) || iv.hi > Rational(1) || (iv.lo.is_zero() && !iv.lo_open) ||
      (iv.hi == Rational(1) && !iv.hi_open))
    throw std::invalid_argument("sweep: interval must lie within (0,1), got " + iv.str());

  const std::vector<Rational> xs = enumerate_farey(config.qmax, iv);
  std::vector<SweepRecord> records(xs.size());

  // Workers claim indices from a shared counter; records land at their
  // enumeration index, so output order never depends on scheduling.
  const unsigned jobs =
      static_cast<unsigned>(std::min<std::size_t>(config.jobs, std::max<std::size_t>(xs.size(), 1)));
  if (jobs <= 1) {
    for (std::size_t i = 0; i < xs.size(); ++i)
      records[i] = make_record(xs[i], config.variant, config.cap);
  } else {
    std::atomic<std::size_t> next{0};
    auto work = [&] {
      for (;;) {
        const std::size_t i = next.fetch_add(1);
        if (i >= xs.size()) return;
        records[i] = make_record(xs[i], config.variant, config.cap);
      }
    };
    std::vector<std::thread> pool;
    pool.reserve(jobs);
    for (unsigned t = 0; t < jobs; ++t) pool.emplace_back(work);
    for (std::thread& t : pool) t.join();
  }
  return records;
}

namespace {

std::string bool_field(bool b) { return b ? "true" : "false"; }

bool parse_bool_field(std::string_view s) {
  if (s == "true") return true;
  if (s == "false") return false;
  throw std::invalid_argument("parse_csv: bad boolean field '" + std::string(s) + "'");
}

constexpr std::string_view kCsvHeader =
    "x_exact,x_decimal,tau,tau_resolved,m_exact,m_decimal,m_resolved,ell,unit_fraction,"
    "theorem_tau_lower,theorem_m_upper,improved_tau_lower,improved_m_upper,bounds_ok";

}  // namespace

void emit_csv(const std::vector<SweepRecord>& records, std::ostream& os) {
  if (records.empty()) throw std::invalid_argument("emit_csv: refusing to write zero records");
  os << kCsvHeader << '\n';
  for (const SweepRecord& r : records) {
    os << r.x << ',' << r.x.decimal() << ',';
    if (r.tau) os << *r.tau;
    os << ',' << bool_field(r.tau.has_value()) << ',';
    if (r.m) os << *r.m;
    os << ',';
    if (r.m) os << r.m->decimal();
    os << ',' << bool_field(r.m.has_value()) << ',';
    os << r.ell << ',' << bool_field(r.equality_case) << ',';
    os << r.theorem_tau_lower << ',' << r.theorem_m_upper << ',';
    os << r.improved_tau_lower << ',' << r.improved_m_upper << ',';
    os << bool_field(r.bounds_ok) << '\n';
  }
}

void emit_csv(const std::vector<SweepRecord>& records, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("emit_csv: cannot open '" + path + "' for writing");
  emit_csv(records, out);
  out.flush();
  if (!out) throw std::runtime_error("emit_csv: write failed for '" + path + "'");
}

std::vector<SweepRecord> parse_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line) || line != kCsvHeader)
    throw std::invalid_argument("parse_csv: missing or unexpected header row");
  std::vector<SweepRecord> out;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::vector<std::string> f;
    std::size_t start = 0;
    for (;;) {
      const std::size_t comma = line.find(',', start);
      f.push_back(line.substr(start, comma - start));
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
    if (f.size() != 14)
      throw std::invalid_argument("parse_csv: expected 14 fields, got " +
                                  std::to_string(f.size()));
    SweepRecord r;
    r.x = Rational::parse(f[0]);
    if (parse_bool_field(f[3])) r.tau = std::stol(f[2]);
    if (parse_bool_field(f[6])) r.m = Rational::parse(f[4]);
    r.ell = std::stol(f[7]);
    r.equality_case = parse_bool_field(f[8]);
    r.theorem_tau_lower = Rational::parse(f[9]);
    r.theorem_m_upper = Rational::parse(f[10]);
    r.improved_tau_lower = Rational::parse(f[11]);
    r.improved_m_upper = Rational::parse(f[12]);
    r.bounds_ok = parse_bool_field(f[13]);
    out.push_back(std::move(r));
  }
  return out;
}

SymmetryAudit symmetry_audit(long qmax, std::size_t cap) {
  if (qmax < 2) throw std::invalid_argument("symmetry_audit: qmax must be at least 2");
  SymmetryAudit audit;
  const Interval half{Rational(0), Rational(1, 2), true, false};  // (0, 1/2]
  for (const Rational& x : enumerate_farey(qmax, half)) {
    const Rational mirror = Rational(1) - x;
    const OrbitRecord a = iterate_orbit({x, Rational(1)}, Variant::Akiyama, cap);
    const OrbitRecord b = iterate_orbit({mirror, Rational(1)}, Variant::Akiyama, cap);
    if (!a.resolved() || !b.resolved()) {
      audit.unresolved.push_back(x);
      continue;
    }
    SymmetryAudit::Pair pair;
    pair.x = x;
    pair.mirror = mirror;
    pair.tau_x = a.stabilized->tau;
    pair.tau_mirror = b.stabilized->tau;
    pair.m_x = a.stabilized->limit;
    pair.m_mirror = b.stabilized->limit;
    pair.ok = pair.tau_mirror == pair.tau_x &&
              pair.m_mirror == pair.m_x - Rational(2) * x + Rational(1);
    if (!pair.ok) ++audit.violations;
    audit.checked.push_back(std::move(pair));
  }
  return audit;
}

DiscontinuityProbe discontinuity_probe(long len, std::size_t cap) {
  if (len < 3) throw std::invalid_argument("discontinuity_probe: len must be at least 3");
  const std::size_t needed = static_cast<std::size_t>(2 * (len + 1) + 6);
  if (cap < needed)
    throw std::invalid_argument("discontinuity_probe: cap too small for len (need >= " +
                                std::to_string(needed) + ")");

  DiscontinuityProbe probe;
  probe.tau_unbounded_ok = true;
  probe.m_gap_ok = true;
  auto run = [&](const Rational& x, long ell) {
    const OrbitRecord rec = iterate_orbit({x, Rational(1)}, Variant::Akiyama, cap);
    if (!rec.resolved())
      throw std::runtime_error("discontinuity_probe: orbit of " + x.str() +
                               " unexpectedly unresolved");
    return DiscontinuityProbe::Sample{ell, x, rec.stabilized->tau, rec.stabilized->limit};
  };
  for (long ell = 2; ell <= len + 1; ++ell) {
    DiscontinuityProbe::Sample u = run(Rational(1, ell), ell);
    DiscontinuityProbe::Sample v = run(Rational(ell - 1, ell), ell);
    if (u.tau != 2 * ell + 3 || v.tau != 2 * ell + 3) probe.tau_unbounded_ok = false;
    if (u.m != Rational(2, ell) - Rational(1) || !v.m.is_zero()) probe.m_gap_ok = false;
    probe.unit_family.push_back(std::move(u));
    probe.mirror_family.push_back(std::move(v));
  }
  const OrbitRecord zero = iterate_orbit({Rational(0), Rational(1)}, Variant::Akiyama, cap);
  probe.limit_at_zero = zero.stabilized ? zero.stabilized->limit : Rational(0);
  if (!zero.resolved() || !probe.limit_at_zero.is_zero()) probe.m_gap_ok = false;
  return probe;
}

}  // namespace mmm

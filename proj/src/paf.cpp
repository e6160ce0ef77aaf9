#include "mmm/paf.hpp"

#include <algorithm>
#include <deque>
#include <ostream>
#include <stdexcept>

namespace mmm {

namespace {

// Slope of cell [i, i+1] equals slope of cell [i-1, i]?  Cross-multiplied to
// stay in exact integers.
bool slope_unchanged(const std::vector<Rational>& xs, const std::vector<Rational>& ys,
                     std::size_t i) {
  return (ys[i + 1] - ys[i]) * (xs[i] - xs[i - 1]) == (ys[i] - ys[i - 1]) * (xs[i + 1] - xs[i]);
}

std::vector<Rational> merged_breakpoints(std::span<const PafFunction> fs) {
  std::vector<Rational> grid;
  for (const PafFunction& f : fs)
    grid.insert(grid.end(), f.breakpoints().begin(), f.breakpoints().end());
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  return grid;
}

// Union of all member breakpoints plus every interior pairwise crossing, so
// that on the result no two members cross inside an open cell.
std::vector<Rational> crossing_refinement(std::span<const PafFunction> fs) {
  std::vector<Rational> grid = merged_breakpoints(fs);
  if (fs.size() < 2) return grid;

  std::vector<std::vector<Rational>> vals(fs.size());
  for (std::size_t i = 0; i < fs.size(); ++i) {
    vals[i].reserve(grid.size());
    for (const Rational& x : grid) vals[i].push_back(fs[i](x));
  }

  std::vector<Rational> cuts;
  for (std::size_t c = 0; c + 1 < grid.size(); ++c) {
    for (std::size_t i = 0; i < fs.size(); ++i) {
      for (std::size_t j = i + 1; j < fs.size(); ++j) {
        const Rational du = vals[i][c] - vals[j][c];
        const Rational dv = vals[i][c + 1] - vals[j][c + 1];
        if (du.sign() * dv.sign() < 0)
          cuts.push_back(grid[c] + (grid[c + 1] - grid[c]) * du / (du - dv));
      }
    }
  }
  if (cuts.empty()) return grid;
  grid.insert(grid.end(), cuts.begin(), cuts.end());
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  return grid;
}

Rational mediant(const Rational& a, const Rational& b) {
  return Rational(a.num() + b.num(), a.den() + b.den());
}

}  // namespace

PafFunction::PafFunction(std::vector<Rational> xs, std::vector<Rational> ys) {
  if (xs.size() != ys.size())
    throw std::invalid_argument("PafFunction: breakpoint/value length mismatch");
  if (xs.size() < 2) throw std::invalid_argument("PafFunction: need at least two breakpoints");
  for (std::size_t i = 0; i + 1 < xs.size(); ++i)
    if (!(xs[i] < xs[i + 1]))
      throw std::invalid_argument("PafFunction: breakpoints must be strictly increasing");

  // Canonical form: keep only breakpoints where the slope changes. Slope
  // comparisons run over the intact inputs before anything is moved out.
  std::vector<bool> keep(xs.size(), true);
  for (std::size_t i = 1; i + 1 < xs.size(); ++i) keep[i] = !slope_unchanged(xs, ys, i);
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (!keep[i]) continue;
    xs_.push_back(std::move(xs[i]));
    ys_.push_back(std::move(ys[i]));
  }
}

PafFunction PafFunction::constant(const Rational& lo, const Rational& hi, const Rational& value) {
  return PafFunction({lo, hi}, {value, value});
}

PafFunction PafFunction::identity(const Rational& lo, const Rational& hi) {
  return PafFunction({lo, hi}, {lo, hi});
}

Rational PafFunction::operator()(const Rational& x) const {
  if (x < lo() || x > hi())
    throw std::domain_error("PafFunction: " + x.str() + " outside domain [" + lo().str() + ", " +
                            hi().str() + "]");
  const auto it = std::upper_bound(xs_.begin(), xs_.end(), x);
  const std::size_t k = static_cast<std::size_t>(it - xs_.begin()) - 1;
  if (xs_[k] == x) return ys_[k];
  return ys_[k] + (ys_[k + 1] - ys_[k]) * (x - xs_[k]) / (xs_[k + 1] - xs_[k]);
}

Bundle::Bundle(std::vector<PafFunction> functions) {
  for (PafFunction& f : functions) append(std::move(f));
}

void Bundle::append(PafFunction f) {
  if (!fns_.empty() && !f.same_domain(fns_.front()))
    throw std::invalid_argument("Bundle: members must share one domain");
  fns_.push_back(std::move(f));
}

PafFunction paf_combine(std::span<const Rational> coeffs, std::span<const PafFunction> funcs) {
  if (funcs.empty()) throw std::invalid_argument("paf_combine: no functions");
  if (coeffs.size() != funcs.size())
    throw std::invalid_argument("paf_combine: coefficient/function length mismatch");
  for (const PafFunction& f : funcs)
    if (!f.same_domain(funcs.front()))
      throw std::invalid_argument("paf_combine: functions must share one domain");

  std::vector<Rational> grid = merged_breakpoints(funcs);
  std::vector<Rational> vals;
  vals.reserve(grid.size());
  for (const Rational& x : grid) {
    Rational v;
    for (std::size_t i = 0; i < funcs.size(); ++i) v += coeffs[i] * funcs[i](x);
    vals.push_back(std::move(v));
  }
  return PafFunction(std::move(grid), std::move(vals));
}

namespace {

PafFunction pointwise_extreme(const PafFunction& f, const PafFunction& g, bool take_min) {
  if (!f.same_domain(g)) throw std::invalid_argument("paf_min/max: domains differ");
  const PafFunction fs[] = {f, g};
  std::vector<Rational> grid = crossing_refinement(fs);
  std::vector<Rational> vals;
  vals.reserve(grid.size());
  for (const Rational& x : grid) {
    Rational a = f(x), b = g(x);
    vals.push_back(take_min ? std::min(a, b) : std::max(a, b));
  }
  return PafFunction(std::move(grid), std::move(vals));
}

}  // namespace

PafFunction paf_min(const PafFunction& f, const PafFunction& g) {
  return pointwise_extreme(f, g, true);
}

PafFunction paf_max(const PafFunction& f, const PafFunction& g) {
  return pointwise_extreme(f, g, false);
}

PafFunction paf_reflect(const PafFunction& f) {
  if (f.lo() + f.hi() != Rational(1))
    throw std::domain_error("paf_reflect: domain is not symmetric under x -> 1-x");
  std::vector<Rational> xs(f.breakpoints().rbegin(), f.breakpoints().rend());
  for (Rational& x : xs) x = Rational(1) - x;
  std::vector<Rational> ys(f.values().rbegin(), f.values().rend());
  return PafFunction(std::move(xs), std::move(ys));
}

PafFunction paf_conjugate(const PafFunction& f) {
  const PafFunction parts[] = {f, PafFunction::identity(f.lo(), f.hi()),
                               PafFunction::constant(f.lo(), f.hi(), Rational(1))};
  const Rational coeffs[] = {Rational(1), Rational(-2), Rational(1)};
  return paf_combine(coeffs, parts);
}

PafFunction bundle_median(const Bundle& bundle) {
  if (bundle.empty()) throw std::invalid_argument("bundle_median: empty bundle");
  std::vector<Rational> grid = crossing_refinement(bundle.functions());
  std::vector<Rational> vals;
  vals.reserve(grid.size());
  std::vector<Rational> at;
  for (const Rational& x : grid) {
    at.clear();
    for (const PafFunction& f : bundle.functions()) at.push_back(f(x));
    std::sort(at.begin(), at.end());
    const std::size_t n = at.size();
    vals.push_back(n % 2 == 1 ? at[(n - 1) / 2] : mean2(at[n / 2 - 1], at[n / 2]));
  }
  return PafFunction(std::move(grid), std::move(vals));
}

PafFunction functional_step(const Bundle& bundle, Variant v) {
  if (bundle.empty()) throw std::invalid_argument("functional_step: empty bundle");
  const long long n = static_cast<long long>(bundle.size());
  std::vector<Rational> ones(bundle.size(), Rational(1));
  PafFunction sum = paf_combine(ones, bundle.functions());
  const PafFunction parts[] = {bundle_median(bundle), std::move(sum)};
  const Rational coeffs[] = {Rational(v == Variant::Original ? n + 1 : n), Rational(-1)};
  return paf_combine(coeffs, parts);
}

FunctionalOrbit functional_orbit(std::size_t n_max, const Rational& lo, const Rational& hi,
                                 std::size_t max_breakpoints) {
  if (n_max < 2) throw std::invalid_argument("functional_orbit: n_max must be at least 2");
  if (!(lo.sign() > 0 && lo < hi && hi < Rational(1)))
    throw std::invalid_argument("functional_orbit: domain must be a closed subinterval of (0,1)");

  FunctionalOrbit out;
  out.bundle.append(PafFunction::identity(lo, hi));
  out.bundle.append(PafFunction::constant(lo, hi, Rational(1)));
  while (out.bundle.size() < n_max) {
    PafFunction next = functional_step(out.bundle, Variant::Akiyama);
    if (next.breakpoints().size() > max_breakpoints) {
      out.truncated_at = out.bundle.size();
      return out;
    }
    out.bundle.append(std::move(next));
  }
  return out;
}

CrossingReport xpoint_detect(const Bundle& bundle) {
  CrossingReport report;
  for (std::size_t i = 0; i < bundle.size(); ++i) {
    for (std::size_t j = i + 1; j < bundle.size(); ++j) {
      const PafFunction pair[] = {bundle[i], bundle[j]};
      const Rational coeffs[] = {Rational(1), Rational(-1)};
      const PafFunction d = paf_combine(coeffs, pair);
      const auto& xs = d.breakpoints();
      const auto& ys = d.values();
      const std::size_t n = xs.size();

      auto emit_xpoint = [&](Rational where, int left_sign) {
        // left_sign is the sign of f_i - f_j just left of the crossing.
        report.xpoints.push_back(left_sign < 0 ? XPoint{std::move(where), i, j}
                                               : XPoint{std::move(where), j, i});
      };

      for (std::size_t k = 0; k + 1 < n; ++k) {
        // Zero segment: the pair agrees on the whole cell.
        if (ys[k].is_zero() && ys[k + 1].is_zero()) {
          report.tangencies.push_back(Tangency{i, j, xs[k], xs[k + 1]});
          continue;
        }
        // Sign change inside the cell: a transversal crossing.
        if (ys[k].sign() * ys[k + 1].sign() < 0) {
          Rational where = xs[k] + (xs[k + 1] - xs[k]) * ys[k] / (ys[k] - ys[k + 1]);
          emit_xpoint(std::move(where), ys[k].sign());
        }
      }
      // Zeros at interior breakpoints with nonzero neighbours.
      for (std::size_t k = 1; k + 1 < n; ++k) {
        if (!ys[k].is_zero() || ys[k - 1].is_zero() || ys[k + 1].is_zero()) continue;
        const int left = ys[k - 1].sign(), right = ys[k + 1].sign();
        if (left * right < 0)
          emit_xpoint(xs[k], left);
        else
          report.tangencies.push_back(Tangency{i, j, xs[k], xs[k]});
      }
    }
  }
  return report;
}

std::optional<PsiCoefficients> psi_coefficients(const PafFunction& y, const Bundle& bundle4,
                                                std::string* diag) {
  if (bundle4.size() < 4)
    throw std::invalid_argument("psi_coefficients: bundle must supply Y_1..Y_4");
  const PafFunction& y1 = bundle4[0];
  if (!y.same_domain(y1))
    throw std::invalid_argument("psi_coefficients: function domain differs from the bundle's");
  const PafFunction mn = paf_min(bundle4[2], bundle4[3]);
  const PafFunction mx = paf_max(bundle4[2], bundle4[3]);

  // With gamma = 1 - alpha - beta the membership test reduces to
  //   y - Y1 = alpha*(mn - Y1) + beta*(mx - Y1),
  // a 2x2 system at two interior sample points. Samples come from a
  // deterministic breadth-first mediant subdivision, skipping breakpoints.
  const PafFunction all[] = {y, y1, mn, mx};
  std::vector<Rational> avoid = merged_breakpoints(all);
  std::vector<Rational> samples;
  std::deque<std::pair<Rational, Rational>> queue{{y.lo(), y.hi()}};
  while (samples.size() < 8 && !queue.empty()) {
    auto [a, b] = queue.front();
    queue.pop_front();
    Rational m = mediant(a, b);
    if (!std::binary_search(avoid.begin(), avoid.end(), m)) samples.push_back(m);
    queue.emplace_back(a, m);
    queue.emplace_back(m, b);
  }

  auto u = [&](const Rational& s) { return mn(s) - y1(s); };
  auto v = [&](const Rational& s) { return mx(s) - y1(s); };
  auto w = [&](const Rational& s) { return y(s) - y1(s); };

  for (std::size_t p = 0; p < samples.size(); ++p) {
    for (std::size_t q = p + 1; q < samples.size(); ++q) {
      const Rational u1 = u(samples[p]), v1 = v(samples[p]), w1 = w(samples[p]);
      const Rational u2 = u(samples[q]), v2 = v(samples[q]), w2 = w(samples[q]);
      const Rational det = u1 * v2 - u2 * v1;
      if (det.is_zero()) continue;
      const Rational alpha = (w1 * v2 - w2 * v1) / det;
      const Rational beta = (u1 * w2 - u2 * w1) / det;
      const Rational gamma = Rational(1) - alpha - beta;
      const PafFunction parts[] = {mn, mx, y1};
      const Rational coeffs[] = {alpha, beta, gamma};
      if (paf_combine(coeffs, parts) == y) return PsiCoefficients{alpha, beta, gamma};
      if (diag)
        *diag = "candidate (" + alpha.str() + ", " + beta.str() + ", " + gamma.str() +
                ") fails the identity on the full refinement";
      return std::nullopt;
    }
  }
  if (diag) *diag = "sample systems all singular; evaluation points exhausted";
  return std::nullopt;
}

PafFunction paf_restrict(const PafFunction& f, const Rational& lo, const Rational& hi) {
  if (lo < f.lo() || hi > f.hi() || !(lo < hi))
    throw std::invalid_argument("paf_restrict: [" + lo.str() + ", " + hi.str() +
                                "] is not a subinterval of the domain");
  std::vector<Rational> xs{lo};
  std::vector<Rational> ys{f(lo)};
  for (std::size_t k = 0; k < f.breakpoints().size(); ++k) {
    const Rational& x = f.breakpoints()[k];
    if (x > lo && x < hi) {
      xs.push_back(x);
      ys.push_back(f.values()[k]);
    }
  }
  xs.push_back(hi);
  ys.push_back(f(hi));
  return PafFunction(std::move(xs), std::move(ys));
}

PsiTable psi_table(const Bundle& bundle) {
  if (bundle.size() < 4) throw std::invalid_argument("psi_table: bundle must supply Y_1..Y_4");
  const Rational half(1, 2);
  const Rational& lo = bundle[0].lo();
  const Rational& hi = bundle[0].hi();
  if (!(lo < half && half < hi))
    throw std::invalid_argument("psi_table: domain must contain 1/2 strictly");

  // Widest symmetric radius around 1/2 clear of member breakpoints.
  Rational radius = std::min(half - lo, hi - half);
  for (const PafFunction& f : bundle.functions())
    for (const Rational& b : f.breakpoints()) {
      if (b == half) continue;
      const Rational gap = b < half ? half - b : b - half;
      if (gap < radius && gap.sign() > 0) radius = gap;
    }

  PsiTable table;
  table.lo = half - radius;
  table.hi = half + radius;
  Bundle local;
  for (const PafFunction& f : bundle.functions())
    local.append(paf_restrict(f, table.lo, table.hi));
  for (std::size_t n = 5; n <= local.size(); ++n) {
    PsiTable::Row row;
    row.n = n;
    row.coeffs = psi_coefficients(local[n - 1], local, &row.diag);
    table.rows.push_back(std::move(row));
  }
  return table;
}

void write_paf(std::ostream& os, const PafFunction& f) {
  os << "paf domain=" << f.lo() << ".." << f.hi() << " n=" << f.breakpoints().size() << '\n';
  for (std::size_t k = 0; k < f.breakpoints().size(); ++k)
    os << f.breakpoints()[k] << ' ' << f.values()[k] << '\n';
}

void write_bundle(std::ostream& os, const Bundle& bundle) {
  for (std::size_t k = 0; k < bundle.size(); ++k) {
    os << "## Y_" << (k + 1) << '\n';
    write_paf(os, bundle[k]);
  }
}

}  // namespace mmm

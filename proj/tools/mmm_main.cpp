// Command-line front end for the mean-median map engine: single orbits,
// Farey-grid sweeps with the bound audit, phase verification, functional
// orbits, and the symmetry/discontinuity probes.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "mmm/orbit.hpp"
#include "mmm/paf.hpp"
#include "mmm/phase.hpp"
#include "mmm/rational.hpp"
#include "mmm/sweep.hpp"

namespace {

std::vector<mmm::Rational> parse_initial(const std::string& text) {
  std::vector<mmm::Rational> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t comma = text.find(',', start);
    const std::string item = text.substr(start, comma - start);
    if (item.empty()) throw std::invalid_argument("empty entry in initial set '" + text + "'");
    out.push_back(mmm::Rational::parse(item));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

int run_orbit(const std::string& variant_name, const std::string& initial_text,
              std::size_t cap, const std::string& trace_path) {
  const mmm::Variant variant = mmm::parse_variant(variant_name);
  const mmm::OrbitRecord rec = mmm::iterate_orbit(parse_initial(initial_text), variant, cap);
  if (rec.resolved())
    std::cout << "status=stabilized tau=" << rec.stabilized->tau
              << " m=" << rec.stabilized->limit;
  else
    std::cout << "status=unresolved cap=" << rec.cap;
  std::cout << " points=" << rec.points.size()
            << " direction=" << mmm::direction_name(rec.direction) << '\n';
  if (!trace_path.empty()) {
    if (trace_path == "-") {
      mmm::write_trace(std::cout, rec);
    } else {
      std::ofstream out(trace_path, std::ios::binary);
      if (!out) throw std::runtime_error("cannot open '" + trace_path + "' for writing");
      mmm::write_trace(out, rec);
    }
  }
  return 0;
}

int run_sweep(const std::string& variant_name, long qmax, const std::string& interval_text,
              std::size_t cap, const std::string& out_path, unsigned jobs) {
  mmm::SweepConfig cfg;
  cfg.variant = mmm::parse_variant(variant_name);
  cfg.qmax = qmax;
  cfg.interval = mmm::Interval::parse(interval_text);
  cfg.cap = cap;
  cfg.jobs = jobs;
  const auto records = mmm::sweep(cfg);

  std::size_t resolved = 0, violations = 0;
  for (const auto& r : records) {
    if (r.tau) ++resolved;
    if (!r.bounds_ok) ++violations;
  }
  mmm::emit_csv(records, out_path);
  std::cout << "wrote " << records.size() << " records to " << out_path << " (resolved "
            << resolved << ", unresolved " << records.size() - resolved << ")\n";
  if (violations > 0) {
    std::cout << "BOUND VIOLATIONS: " << violations << '\n';
    return 1;
  }
  return 0;
}

int run_phase(const std::string& x_text, std::size_t cap, bool full) {
  const mmm::Rational x = mmm::Rational::parse(x_text);
  const auto rec = mmm::iterate_orbit({x, mmm::Rational(1)}, mmm::Variant::Akiyama, cap);
  const auto rep = mmm::verify_phase(x, rec);
  if (full)
    std::cout << rep.text();
  else
    std::cout << rep.summary() << '\n';
  return rep.prefix_match && rep.tau_bound_ok && rep.m_bound_ok ? 0 : 1;
}

int run_bundle(std::size_t nmax, const std::string& domain_text, const std::string& out_path,
               std::size_t budget) {
  const mmm::Interval domain = mmm::Interval::parse(domain_text);
  const auto fo = mmm::functional_orbit(nmax, domain.lo, domain.hi, budget);
  if (fo.truncated_at)
    std::cout << "truncated at Y_" << (*fo.truncated_at + 1) << " (breakpoint budget "
              << budget << ")\n";
  for (std::size_t k = 0; k < fo.bundle.size(); ++k)
    std::cout << "Y_" << (k + 1) << ": breakpoints=" << fo.bundle[k].breakpoints().size()
              << '\n';

  const auto report = mmm::xpoint_detect(fo.bundle);
  std::cout << "x-points: " << report.xpoints.size() << '\n';
  for (const auto& xp : report.xpoints)
    std::cout << "  x=" << xp.location << " lower=Y_" << (xp.lower_index + 1) << " upper=Y_"
              << (xp.upper_index + 1) << '\n';
  if (!report.tangencies.empty())
    std::cout << "non-transversal contacts: " << report.tangencies.size() << '\n';
  for (const auto& t : report.tangencies)
    std::cout << "  Y_" << (t.a + 1) << "~Y_" << (t.b + 1) << " on [" << t.from << ", " << t.to
              << "]\n";

  if (fo.bundle.size() >= 5 && domain.lo < mmm::Rational(1, 2) &&
      mmm::Rational(1, 2) < domain.hi) {
    const auto table = mmm::psi_table(fo.bundle);
    std::cout << "psi table on [" << table.lo << ", " << table.hi
              << "] (x-point neighbourhood):\n";
    for (const auto& row : table.rows) {
      std::cout << "  Y_" << row.n << ": ";
      if (row.coeffs)
        std::cout << "alpha=" << row.coeffs->alpha << " beta=" << row.coeffs->beta
                  << " gamma=" << row.coeffs->gamma << '\n';
      else
        std::cout << "absent (" << row.diag << ")\n";
    }
  }

  if (!out_path.empty()) {
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open '" + out_path + "' for writing");
    mmm::write_bundle(out, fo.bundle);
    std::cout << "wrote bundle to " << out_path << '\n';
  }
  return 0;
}

int run_symmetry(long qmax, std::size_t cap) {
  const auto audit = mmm::symmetry_audit(qmax, cap);
  std::cout << "checked " << audit.checked.size() << " mirror pairs, unresolved "
            << audit.unresolved.size() << ", violations " << audit.violations << '\n';
  for (const auto& p : audit.checked) {
    if (p.ok) continue;
    std::cout << "VIOLATION x=" << p.x << ": tau " << p.tau_x << " vs " << p.tau_mirror
              << ", m " << p.m_x << " vs " << p.m_mirror << '\n';
  }
  return audit.all_ok() ? 0 : 1;
}

int run_probe(long len, std::size_t cap) {
  const auto probe = mmm::discontinuity_probe(len, cap);
  std::cout << "ell\tx=1/ell: tau, m\tx=(ell-1)/ell: tau, m\n";
  for (std::size_t k = 0; k < probe.unit_family.size(); ++k) {
    const auto& u = probe.unit_family[k];
    const auto& v = probe.mirror_family[k];
    std::cout << u.ell << '\t' << u.tau << ", " << u.m << '\t' << v.tau << ", " << v.m << '\n';
  }
  std::cout << "m at 0 (from the [0,1] orbit): " << probe.limit_at_zero << '\n';
  std::cout << "tau = 2*ell+3 on both families: " << (probe.tau_unbounded_ok ? "yes" : "NO")
            << '\n';
  std::cout << "m(1/ell) = 2/ell-1 -> -1 while m(0) = 0: " << (probe.m_gap_ok ? "yes" : "NO")
            << '\n';
  return probe.tau_unbounded_ok && probe.m_gap_ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact mean-median map toolkit (original and Akiyama variants)"};
  app.require_subcommand(1);

  std::string variant = "akiyama", initial, interval = "(0..1)", out_path, trace_path;
  std::string x_text, domain = "1/100..99/100";
  std::size_t cap = 100000, budget = 100000, nmax = 12;
  long qmax = 100, len = 20;
  unsigned jobs = std::max(1u, std::thread::hardware_concurrency());
  bool full = false;

  auto* orbit = app.add_subcommand("orbit", "iterate one orbit and report tau and m");
  orbit->add_option("--variant", variant, "akiyama|original")->capture_default_str();
  orbit->add_option("--initial", initial, "comma-separated rationals, e.g. 1/2,1")->required();
  orbit->add_option("--cap", cap, "maximum recorded points")->capture_default_str();
  orbit->add_option("--trace", trace_path, "write the n, x_n, M_n trace here ('-' = stdout)");

  auto* sweep_cmd = app.add_subcommand("sweep", "Farey-grid sweep with the bound audit");
  sweep_cmd->add_option("--variant", variant, "akiyama|original")->capture_default_str();
  sweep_cmd->add_option("--qmax", qmax, "largest denominator")->required();
  sweep_cmd->add_option("--interval", interval, "e.g. \"(0..1)\" or \"[1/3..1/2]\"")
      ->capture_default_str();
  sweep_cmd->add_option("--cap", cap, "orbit point cap")->capture_default_str();
  sweep_cmd->add_option("--out", out_path, "CSV output path")->required();
  sweep_cmd->add_option("--jobs", jobs, "worker threads")->capture_default_str();

  auto* phase = app.add_subcommand("phase", "verify the predictable phase of [x,1]");
  phase->add_option("--x", x_text, "initial condition in (0,1), e.g. 2/21")->required();
  phase->add_option("--cap", cap, "orbit point cap")->capture_default_str();
  phase->add_flag("--full", full, "print the per-index table, not just the summary");

  auto* bundle = app.add_subcommand("bundle", "functional orbit, psi table, x-points");
  bundle->add_option("--nmax", nmax, "number of orbit functions")->capture_default_str();
  bundle->add_option("--domain", domain, "closed subinterval of (0,1)")->capture_default_str();
  bundle->add_option("--out", out_path, "write the bundle functions here");
  bundle->add_option("--budget", budget, "breakpoint budget per function")
      ->capture_default_str();

  auto* symmetry = app.add_subcommand("symmetry", "audit tau/m under x -> 1-x");
  symmetry->add_option("--qmax", qmax, "largest denominator")->capture_default_str();
  symmetry->add_option("--cap", cap, "orbit point cap")->capture_default_str();

  auto* probe = app.add_subcommand("probe-discontinuity",
                                   "tau and m along 1/ell and (ell-1)/ell");
  probe->add_option("--len", len, "family length (ell runs 2..len+1)")->capture_default_str();
  probe->add_option("--cap", cap, "orbit point cap")->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  try {
    if (app.got_subcommand(orbit)) return run_orbit(variant, initial, cap, trace_path);
    if (app.got_subcommand(sweep_cmd))
      return run_sweep(variant, qmax, interval, cap, out_path, jobs);
    if (app.got_subcommand(phase)) return run_phase(x_text, cap, full);
    if (app.got_subcommand(bundle)) return run_bundle(nmax, domain, out_path, budget);
    if (app.got_subcommand(symmetry)) return run_symmetry(qmax, cap);
    if (app.got_subcommand(probe)) return run_probe(len, cap);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 2;
}

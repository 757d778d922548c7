// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <boost/math/distributions/chi_squared.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "dbd/asymptotics.hpp"
#include "dbd/counting.hpp"
#include "dbd/density.hpp"
#include "dbd/enumerate.hpp"
#include "dbd/sampler.hpp"
#include "dbd/syntax.hpp"

namespace {

using namespace dbd;

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool condition, const std::string& what) {
    if (!condition) {
      if (pass) detail << "failed: ";
      else detail << "; ";
      detail << what;
      pass = false;
    }
  }
};

const std::vector<OpenBound> kOracleBounds = {0, 1, 2, 3, 4, kAnyOpenness};

std::string label(OpenBound m) { return m ? std::to_string(*m) : "inf"; }

void check_oracle(Outcome& out, const Signature& sig, std::size_t max_n) {
  CountTable table = count_m_open(max_n, sig);
  for (OpenBound m : kOracleBounds) {
    for (std::size_t n = 0; n <= max_n; ++n) {
      BigInt expected = enumerate(n, m, sig).size();
      if (table.at(m, n) != expected) {
        out.require(false, "c[" + label(m) + "][" + std::to_string(n) + "] = " + table.at(m, n).get_str() +
                               ", enumeration gives " + expected.get_str());
      }
    }
  }
}

void check_structure(Outcome& out, const Signature& sig, std::size_t max_n) {
  CountTable table = count_m_open(max_n, sig);
  for (std::size_t n = 0; n <= max_n; ++n) {
    for (std::size_t m = 0; m <= n + 2; ++m) {
      if (m >= n && table.at(m, n) != table.at_infinity(n)) {
        out.require(false, "truncation at m=" + std::to_string(m) + " n=" + std::to_string(n));
      }
      if (table.at(m, n) > table.at(m + 1, n)) {
        out.require(false, "monotonicity at m=" + std::to_string(m) + " n=" + std::to_string(n));
      }
    }
  }
}

// Smallest positive root of (1 - 3z)^2 (1 - z)^2 = 8 z^4 by bisection on [0, 0.3].
double quartic_root() {
  auto p = [](double z) {
    return (1 - 3 * z) * (1 - 3 * z) * (1 - z) * (1 - z) - 8 * z * z * z * z;
  };
  double lo = 0.0;
  double hi = 0.3;
  for (int i = 0; i < 200; ++i) {
    double mid = 0.5 * (lo + hi);
    (p(mid) > 0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

struct Shared {
  Signature sig = Signature::standard();
  std::optional<CountTable> table;
  std::optional<SingularityData> sd;

  void ensure() {
    if (table) return;
    table.emplace(count_m_open(1000, sig, CountOptions{std::size_t{20}}));
    sd.emplace(singularity_data(sig));
    estimate_constants(*sd, *table, 20);
  }
};

Outcome criterion_oracle(Shared& shared) {
  Outcome out;
  check_oracle(out, shared.sig, 12);
  std::vector<BigInt> a = count_infinity(7, shared.sig);
  CountTable table = count_m_open(7, shared.sig);
  const std::vector<long> frozen_a = {1, 5, 18, 58, 181};
  const std::vector<long> frozen_s = {2, 8, 34, 124};
  for (std::size_t i = 0; i < frozen_a.size(); ++i) out.require(a[3 + i] == frozen_a[i], "a[" + std::to_string(3 + i) + "]");
  for (std::size_t i = 0; i < frozen_s.size(); ++i) {
    out.require(table.at(0, 4 + i) == frozen_s[i], "c[0][" + std::to_string(4 + i) + "]");
  }
  if (out.pass) out.detail << "n <= 12, m in {0..4, inf}; a[3..7] = 1 5 18 58 181; sentences[4..7] = 2 8 34 124";
  return out;
}

Outcome criterion_truncation(Shared& shared) {
  Outcome out;
  check_structure(out, shared.sig, 100);
  if (out.pass) out.detail << "n <= 100";
  return out;
}

Outcome criterion_kernel(Shared& shared) {
  Outcome out;
  BigInt worst_slack = -1;
  for (std::size_t n = 0; n <= 200; ++n) {
    for (std::size_t m = 0; m <= 200; ++m) {
      BigInt gap = atom_kernel_gap(n, m, shared.sig);
      long bound = 2 * std::max<long>(0, static_cast<long>(n) - static_cast<long>(m) - 2);
      if (gap > bound) out.require(false, "n=" + std::to_string(n) + " m=" + std::to_string(m));
      if (gap < 0) out.require(false, "negative gap n=" + std::to_string(n) + " m=" + std::to_string(m));
    }
  }
  if (out.pass) out.detail << "n, m <= 200";
  return out;
}

Outcome criterion_singularity(Shared& shared) {
  Outcome out;
  BranchPoint bp = solve_singularity(shared.sig);
  double root = quartic_root();
  out.require(std::abs(bp.rho - root) < 1e-6, "rho off quartic root");
  out.require(bp.equation_residual < 1e-12, "equation residual");
  out.require(bp.derivative_residual < 1e-12, "derivative residual");
  char buf[160];
  std::snprintf(buf, sizeof buf, "rho=%.10f quartic=%.10f residuals %.1e %.1e", bp.rho, root,
                bp.equation_residual, bp.derivative_residual);
  out.detail << (out.pass ? "" : " | ") << buf;
  return out;
}

Outcome criterion_asymptotic(Shared& shared) {
  Outcome out;
  shared.ensure();
  double previous = INFINITY;
  std::ostringstream errors;
  for (std::size_t n : {250, 500, 1000}) {
    double error = std::abs(asymptotic_ratio(shared.table->at_infinity(n), n, *shared.sd) - 1.0);
    errors << " n=" << n << ":" << error;
    out.require(error < previous, "error not decreasing at n=" + std::to_string(n));
    previous = error;
  }
  out.require(previous < 0.05, "error at n=1000 not below 0.05");
  out.detail << (out.pass ? "relative errors" : " |") << errors.str();
  return out;
}

Outcome criterion_cm(Shared& shared) {
  Outcome out;
  shared.ensure();
  const SingularityData& sd = *shared.sd;
  for (std::size_t m = 0; m + 1 <= 20; ++m) {
    const CmEstimate& lo = sd.Cm.at(m);
    const CmEstimate& hi = sd.Cm.at(m + 1);
    out.require(lo.value < hi.value, "C_" + std::to_string(m) + " >= C_" + std::to_string(m + 1));
    out.require(hi.deficit < lo.deficit, "|C_m/C_inf - 1| not decreasing at m=" + std::to_string(m + 1));
    out.require(hi.deficit > 0, "deficit not positive at m=" + std::to_string(m + 1));
  }
  double cross = std::abs(sd.C_inf.value / sd.C - 1.0);
  out.require(cross < 0.02, "C_inf not within 2% of Puiseux C");
  char buf[200];
  std::snprintf(buf, sizeof buf, "C_0=%.6f C_20=%.9f C_inf=%.9f C=%.9f |C_inf/C-1|=%.2e deficit_20=%.2e",
                sd.Cm.at(0).value, sd.Cm.at(20).value, sd.C_inf.value, sd.C, cross, sd.Cm.at(20).deficit);
  out.detail << (out.pass ? "" : " | ") << buf;
  return out;
}

Outcome criterion_density(Shared& shared) {
  Outcome out;
  shared.ensure();
  Template ef = parse_template("(exists (forall _))", shared.sig);
  out.require(template_density_exact(ef, 7, *shared.table) == Rational(4, 31), "density at n=7 (16/124)");
  double limit = template_density_limit(ef, shared.sig, *shared.sd);
  double expected = shared.sd->Cm.at(2).value * shared.sd->rho * shared.sd->rho / shared.sd->Cm.at(0).value;
  out.require(std::abs(limit - expected) < 1e-12, "limit differs from C_2 rho^2 / C_0");
  double previous = INFINITY;
  std::ostringstream residuals;
  for (std::size_t n : {100, 200, 400}) {
    double r = std::abs(template_density_exact(ef, n, *shared.table).get_d() - limit);
    residuals << " n=" << n << ":" << r;
    out.require(r < previous, "residual not decreasing at n=" + std::to_string(n));
    previous = r;
  }
  out.detail << (out.pass ? "" : " | ") << "limit=" << limit << " residuals" << residuals.str();
  return out;
}

Outcome criterion_bounds(Shared& shared) {
  Outcome out;
  shared.ensure();
  const SingularityData& sd = *shared.sd;
  for (const char* text : {"(exists (in 0 0))", "(forall (or (in 0 0) (not (in 0 0))))",
                           "(forall (exists (or (in 0 1) (not (in 0 1)))))"}) {
    Formula tau = parse_formula(text, shared.sig);
    std::size_t t = size(tau, shared.sig);
    TautologyBounds b = tautology_bounds(tau, shared.sig, sd);
    out.require(b.lower == std::pow(sd.rho, static_cast<double>(1 + t)), std::string("lower for ") + text);
    out.require(b.upper == 1.0 - std::pow(sd.rho, static_cast<double>(2 + t)), std::string("upper for ") + text);
    out.require(0 < b.lower && b.lower < b.upper && b.upper < 1, std::string("ordering for ") + text);
  }
  Signature with_implies({{"and", 2, 1}, {"or", 2, 1}, {"not", 1, 1}, {"implies", 2, 1}});
  Formula tau = parse_formula("(forall (or (in 0 0) (not (in 0 0))))", with_implies);
  Formula phi = parse_formula("(exists (forall (not (in 0 1))))", with_implies);
  IndependenceBound native = independence_density_bound(phi, tau, with_implies, sd);
  out.require(native.density == std::pow(sd.rho, static_cast<double>(native.template_size)), "native rho^d");
  out.require(native.template_size == 18, "native template size");
  IndependenceBound desugared = independence_density_bound(phi, tau, shared.sig, sd);
  out.require(desugared.density == std::pow(sd.rho, static_cast<double>(desugared.template_size)), "desugared rho^d");
  out.require(desugared.template_size == 20, "desugared template size");
  if (out.pass) out.detail << "three tautologies; independence d=18 (implies) and d=20 (desugared)";
  return out;
}

Outcome criterion_sampler(Shared& shared) {
  Outcome out;
  CountTable table = count_m_open(7, shared.sig);
  std::vector<Formula> all = enumerate(6, std::size_t{0}, shared.sig);
  out.require(all.size() == 34, "34 sentences of size 6");
  std::map<Formula, std::size_t> index;
  for (std::size_t i = 0; i < all.size(); ++i) index[all[i]] = i;
  const std::size_t samples = 34000;
  const double expected = static_cast<double>(samples) / static_cast<double>(all.size());
  const double threshold = boost::math::quantile(boost::math::chi_squared(static_cast<double>(all.size() - 1)), 0.999);
  int passing = 0;
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    Sampler sampler(table, seed);
    std::vector<std::size_t> counts(all.size(), 0);
    for (std::size_t i = 0; i < samples; ++i) {
      auto it = index.find(sampler.sample(6, std::size_t{0}));
      if (it == index.end()) {
        out.require(false, "sample outside the class");
        return out;
      }
      ++counts[it->second];
    }
    double statistic = 0.0;
    for (std::size_t c : counts) statistic += (c - expected) * (c - expected) / expected;
    if (statistic < threshold) ++passing;
  }
  out.require(passing >= 9, "chi-square passed for " + std::to_string(passing) + "/10 seeds");
  Template ef = parse_template("(exists (forall _))", shared.sig);
  Sampler sampler(table, 12345);
  MonteCarloEstimate mc = estimate_density_mc(ef, 7, 100000, sampler);
  double z = std::abs(mc.fraction - 16.0 / 124.0) / mc.standard_error;
  out.require(z < 4.0, "Monte-Carlo estimate outside 4 standard errors");
  char buf[160];
  std::snprintf(buf, sizeof buf, "chi-square %d/10 seeds below %.3f; MC %.5f vs %.5f (%.2f se)", passing,
                threshold, mc.fraction, 16.0 / 124.0, z);
  out.detail << (out.pass ? "" : " | ") << buf;
  return out;
}

Outcome criterion_alternate(Shared&) {
  Outcome out;
  Signature nand({{"nand", 2, 1}});
  check_oracle(out, nand, 10);
  check_structure(out, nand, 100);
  for (std::size_t n = 0; n <= 200; ++n) {
    for (std::size_t m = 0; m <= 200; ++m) {
      long bound = 2 * std::max<long>(0, static_cast<long>(n) - static_cast<long>(m) - 2);
      if (atom_kernel_gap(n, m, nand) > bound) out.require(false, "kernel bound");
    }
  }
  CountTable table = count_m_open(600, nand, CountOptions{std::size_t{2}});
  SingularityData sd = singularity_data(nand);
  out.require(sd.equation_residual < 1e-12 && sd.derivative_residual < 1e-12, "singularity residuals");
  estimate_constants(sd, table, 2);
  out.require(std::abs(sd.C_inf.value / sd.C - 1.0) < 0.02, "C_inf within 2% of C");
  out.require(sd.Cm.at(0).value < sd.Cm.at(1).value && sd.Cm.at(1).value < sd.Cm.at(2).value, "C_m ordering");
  double previous = INFINITY;
  for (std::size_t n : {150, 300, 600}) {
    double error = std::abs(asymptotic_ratio(table.at_infinity(n), n, sd) - 1.0);
    out.require(error < previous, "asymptotic error not decreasing");
    previous = error;
  }
  Template ef = parse_template("(exists (forall _))", nand);
  double limit = template_density_limit(ef, nand, sd);
  double last_residual = INFINITY;
  for (std::size_t n : {150, 300, 600}) {
    Rational exact = template_density_exact(ef, n, table);
    out.require(exact > 0 && exact < 1, "density outside (0, 1)");
    double r = std::abs(exact.get_d() - limit);
    out.require(r < last_residual, "density residual not decreasing");
    last_residual = r;
  }
  CountTable small = count_m_open(30, nand);
  Sampler sampler(small, 3);
  for (std::size_t n = 4; n <= 30; ++n) {
    if (small.at(0, n) == 0) continue;
    Formula f = sampler.sample(n, std::size_t{0});
    out.require(size(f, nand) == n && is_sentence(f), "sampled formula violates size/openness");
  }
  if (out.pass) {
    out.detail << "rho=" << sd.rho << " C=" << sd.C << " density limit=" << limit
               << " residual at 600=" << last_residual;
  }
  return out;
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    std::function<Outcome(Shared&)> run;
  };
  const std::vector<Criterion> criteria = {
      {1, "oracle equivalence", criterion_oracle},
      {2, "truncation and monotonicity", criterion_truncation},
      {3, "kernel bound", criterion_kernel},
      {4, "singularity", criterion_singularity},
      {5, "asymptotic validation", criterion_asymptotic},
      {6, "C_m convergence", criterion_cm},
      {7, "template density", criterion_density},
      {8, "tautology and independence bounds", criterion_bounds},
      {9, "sampler uniformity", criterion_sampler},
      {10, "alternate signature", criterion_alternate},
  };
  Shared shared;
  int failures = 0;
  for (const Criterion& c : criteria) {
    auto start = std::chrono::steady_clock::now();
    Outcome outcome;
    try {
      outcome = c.run(shared);
    } catch (const std::exception& e) {
      outcome.pass = false;
      outcome.detail << "exception: " << e.what();
    }
    double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (!outcome.pass) ++failures;
    std::printf("%s %2d %-34s %7.2fs  %s\n", outcome.pass ? "PASS" : "FAIL", c.id, c.name, seconds,
                outcome.detail.str().c_str());
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}

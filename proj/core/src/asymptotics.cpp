#include "dbd/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "dbd/error.hpp"
#include "dbd/format.hpp"
#include "json.hpp"

namespace dbd {

namespace {

double ipow(double base, std::size_t exponent) {
  double result = 1.0;
  while (exponent > 0) {
    if (exponent & 1U) result *= base;
    base *= base;
    exponent >>= 1U;
  }
  return result;
}

// z^(k-1) scaled by k, i.e. d/dz z^k.
double dpow(double z, std::size_t k) { return k == 0 ? 0.0 : static_cast<double>(k) * ipow(z, k - 1); }

}  // namespace

GFSystem::GFSystem(Signature sig) : sig_(std::move(sig)) {}

double GFSystem::atoms(double z) const {
  const ConstructorWeights& w = sig_.weights();
  double index = ipow(z, w.zero) / (1.0 - ipow(z, w.succ));
  return ipow(z, w.membership) * index * index;
}

double GFSystem::atoms_dz(double z) const {
  const ConstructorWeights& w = sig_.weights();
  double denom = 1.0 - ipow(z, w.succ);
  double index = ipow(z, w.zero) / denom;
  double index_dz = dpow(z, w.zero) / denom + ipow(z, w.zero) * dpow(z, w.succ) / (denom * denom);
  return dpow(z, w.membership) * index * index + 2.0 * ipow(z, w.membership) * index * index_dz;
}

double GFSystem::value(double z, double y) const {
  double total = atoms(z) + 2.0 * ipow(z, sig_.weights().quantifier) * y;
  for (const Connective& c : sig_.connectives()) total += ipow(z, c.weight) * ipow(y, c.arity);
  return total;
}

double GFSystem::dy(double z, double y) const {
  double total = 2.0 * ipow(z, sig_.weights().quantifier);
  for (const Connective& c : sig_.connectives()) total += ipow(z, c.weight) * dpow(y, c.arity);
  return total;
}

double GFSystem::dz(double z, double y) const {
  double total = atoms_dz(z) + 2.0 * dpow(z, sig_.weights().quantifier) * y;
  for (const Connective& c : sig_.connectives()) total += dpow(z, c.weight) * ipow(y, c.arity);
  return total;
}

double GFSystem::dyy(double z, double y) const {
  double total = 0.0;
  for (const Connective& c : sig_.connectives()) {
    if (c.arity < 2) continue;
    double a = static_cast<double>(c.arity);
    total += ipow(z, c.weight) * a * (a - 1.0) * ipow(y, c.arity - 2);
  }
  return total;
}

double GFSystem::dyz(double z, double y) const {
  double total = dpow(z, sig_.weights().quantifier) * 2.0;
  for (const Connective& c : sig_.connectives()) total += dpow(z, c.weight) * dpow(y, c.arity);
  return total;
}

namespace {

struct NewtonResult {
  double z;
  double y;
  int iterations;
  bool ok;
};

// Newton on (F(z, y) - y, F_y(z, y) - 1) = 0.
NewtonResult newton_branch(const GFSystem& sys, double z, double y, double tol, int max_iter) {
  for (int it = 1; it <= max_iter; ++it) {
    double g1 = sys.value(z, y) - y;
    double g2 = sys.dy(z, y) - 1.0;
    double j11 = sys.dz(z, y);
    double j12 = g2;  // F_y - 1
    double j21 = sys.dyz(z, y);
    double j22 = sys.dyy(z, y);
    double det = j11 * j22 - j12 * j21;
    if (!std::isfinite(det) || det == 0.0) return {z, y, it, false};
    double dz = (g1 * j22 - j12 * g2) / det;
    double dy = (j11 * g2 - j21 * g1) / det;
    z -= dz;
    y -= dy;
    if (!std::isfinite(z) || !std::isfinite(y) || z <= 0.0 || z >= 1.0 || y < 0.0) {
      return {z, y, it, false};
    }
    if (std::abs(dz) <= 1e-15 * z && std::abs(dy) <= 1e-15 * std::max(1.0, y)) {
      bool converged = std::abs(sys.value(z, y) - y) < tol && std::abs(sys.dy(z, y) - 1.0) < tol;
      return {z, y, it, converged};
    }
  }
  bool converged = std::abs(sys.value(z, y) - y) < tol && std::abs(sys.dy(z, y) - 1.0) < tol;
  return {z, y, max_iter, converged};
}

// The y >= 0 minimising F(z, y) - y; F is convex in y, so this is where
// F_y = 1, or 0 when F_y(z, 0) >= 1 already.
double critical_y(const GFSystem& sys, double z) {
  if (sys.dy(z, 0.0) >= 1.0) return 0.0;
  double lo = 0.0;
  double hi = 1.0;
  while (sys.dy(z, hi) < 1.0) {
    lo = hi;
    hi *= 2.0;
    if (!std::isfinite(hi) || hi > 1e300) return hi;
  }
  for (int i = 0; i < 200 && hi - lo > 1e-17 * hi; ++i) {
    double mid = 0.5 * (lo + hi);
    (sys.dy(z, mid) < 1.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

// min_y (F(z, y) - y): negative below the singularity, positive above it,
// nondecreasing in z.
double branch_gap(const GFSystem& sys, double z) {
  double y = critical_y(sys, z);
  return sys.value(z, y) - y;
}

NewtonResult bisect_branch(const GFSystem& sys) {
  double lo = 0.0;
  double hi = 1.0 - 1e-12;
  if (!(branch_gap(sys, hi) > 0.0)) {
    std::ostringstream msg;
    msg << "no sign change of the branch gap on (0, 1): gap(" << hi << ") = " << branch_gap(sys, hi);
    throw ConvergenceError(msg.str());
  }
  for (int i = 0; i < 200 && hi - lo > 1e-17; ++i) {
    double mid = 0.5 * (lo + hi);
    (branch_gap(sys, mid) > 0.0 ? hi : lo) = mid;
  }
  double z = 0.5 * (lo + hi);
  return {z, critical_y(sys, z), 0, true};
}

// Starting point from coefficient ratios and the truncated series.
bool initial_guess(const Signature& sig, double& z, double& y) {
  constexpr std::size_t kSeedSize = 80;
  std::vector<BigInt> counts = count_infinity(kSeedSize, sig);
  std::size_t last = kSeedSize;
  while (last > 0 && counts[last] == 0) --last;
  std::size_t prev = last;
  while (prev > 0 && (prev == last || counts[prev] == 0)) --prev;
  if (prev == 0 || counts[prev] == 0) return false;
  double log_ratio = (log_of(counts[prev]) - log_of(counts[last])) / static_cast<double>(last - prev);
  z = std::exp(log_ratio);
  if (!(z > 0.0 && z < 1.0)) return false;
  y = 0.0;
  for (std::size_t n = 0; n <= kSeedSize; ++n) {
    if (counts[n] == 0) continue;
    y += std::exp(log_of(counts[n]) + static_cast<double>(n) * std::log(z));
  }
  return std::isfinite(y);
}

}  // namespace

BranchPoint solve_singularity(const Signature& sig, double tol, bool force_bisection) {
  if (!(tol > 0.0)) throw Error("tolerance must be positive");
  if (!sig.admissible_for_asymptotics()) {
    throw NotAdmissibleError(
        "signature has no connective of arity >= 2; the generating function is rational "
        "and has no square-root singularity");
  }
  GFSystem sys(sig);
  BranchPoint out;
  NewtonResult result{0.0, 0.0, 0, false};
  double z0 = 0.0;
  double y0 = 0.0;
  if (!force_bisection && initial_guess(sig, z0, y0)) result = newton_branch(sys, z0, y0, tol, 100);
  if (!result.ok) {
    out.used_bisection = true;
    NewtonResult bracket = bisect_branch(sys);
    result = newton_branch(sys, bracket.z, bracket.y, tol, 50);
    if (!result.ok) {
      result.z = bracket.z;
      result.y = bracket.y;
    }
  }
  out.rho = result.z;
  out.tau = result.y;
  out.newton_iterations = result.iterations;
  out.equation_residual = std::abs(sys.value(out.rho, out.tau) - out.tau);
  out.derivative_residual = std::abs(sys.dy(out.rho, out.tau) - 1.0);
  if (!(out.rho > 0.0 && out.rho < 1.0) || !(out.equation_residual < tol) ||
      !(out.derivative_residual < tol)) {
    std::ostringstream msg;
    msg << "branch point not resolved: rho = " << out.rho << ", tau = " << out.tau
        << ", residuals = (" << out.equation_residual << ", " << out.derivative_residual << ")";
    throw ConvergenceError(msg.str());
  }
  return out;
}

PuiseuxConstants puiseux_constants(const GFSystem& sys, double rho, double tau, double tol) {
  double curvature = sys.dyy(rho, tau);
  if (!(curvature >= tol)) {
    throw ConvergenceError("degenerate branch: F_yy(rho, tau) = " + format_real(curvature));
  }
  return {tau, std::sqrt(2.0 * rho * sys.dz(rho, tau) / curvature)};
}

double SingularityData::constant_ratio(std::size_t m) const {
  if (m == 0) return 1.0;
  auto num = Cm.find(m);
  auto den = Cm.find(0);
  if (num == Cm.end() || den == Cm.end()) {
    throw DataError("C_" + std::to_string(m) + " / C_0 requested but not estimated");
  }
  return (1.0 - num->second.deficit) / (1.0 - den->second.deficit);
}

SingularityData singularity_data(const Signature& sig, double tol) {
  BranchPoint branch = solve_singularity(sig, tol);
  PuiseuxConstants constants = puiseux_constants(GFSystem(sig), branch.rho, branch.tau, tol);
  SingularityData sd;
  sd.rho = branch.rho;
  sd.tau = branch.tau;
  sd.a = constants.a;
  sd.b = constants.b;
  sd.gamma = 1.0 / branch.rho;
  sd.C = constants.b / (2.0 * std::sqrt(std::numbers::pi));
  sd.equation_residual = branch.equation_residual;
  sd.derivative_residual = branch.derivative_residual;
  return sd;
}

double log_of(const BigInt& value) {
  if (value <= 0) return -std::numeric_limits<double>::infinity();
  long exponent = 0;
  double mantissa = mpz_get_d_2exp(&exponent, value.get_mpz_t());
  return std::log(mantissa) + static_cast<double>(exponent) * std::numbers::ln2;
}

namespace {

double richardson(std::size_t n1, double s1, std::size_t n2, double s2) {
  double x1 = static_cast<double>(n1);
  double x2 = static_cast<double>(n2);
  return (x2 * s2 - x1 * s1) / (x2 - x1);
}

// Largest n' <= n with a nonzero unrestricted count.
std::size_t nonzero_at_or_below(const CountTable& table, std::size_t n) {
  while (n > 0 && table.at_infinity(n) == 0) --n;
  return n;
}

struct Window {
  std::size_t hi;
  std::size_t lo;
  std::vector<std::size_t> alternatives;
};

Window make_window(const CountTable& table, const ExtrapolationOptions& options) {
  std::size_t big = table.max_size();
  if (big < options.min_table_size) {
    throw DataError("insufficient data: table size " + std::to_string(big) +
                    " is below the required " + std::to_string(options.min_table_size));
  }
  Window w;
  w.hi = nonzero_at_or_below(table, big);
  w.lo = nonzero_at_or_below(table, static_cast<std::size_t>(std::ceil(options.window_start * static_cast<double>(big))));
  if (w.lo < table.signature().min_formula_size() || w.lo >= w.hi) {
    throw DataError("insufficient data: extrapolation window is empty");
  }
  for (std::size_t i = 1; i <= options.spread_points; ++i) {
    std::size_t n = w.lo + (w.hi - w.lo) * i / (options.spread_points + 1);
    n = nonzero_at_or_below(table, n);
    if (n > w.lo && n < w.hi) w.alternatives.push_back(n);
  }
  return w;
}

double scaled_count(const BigInt& count, std::size_t n, double rho) {
  double x = static_cast<double>(n);
  return std::exp(log_of(count) + x * std::log(rho) + 1.5 * std::log(x));
}

double deficit_at(const CountTable& table, std::size_t m, std::size_t n) {
  const BigInt& all = table.at_infinity(n);
  BigInt missing = all - table.at(m, n);
  return mpq_class(missing, all).get_d();
}

}  // namespace

CmEstimate estimate_Cm(OpenBound m, const CountTable& table, const SingularityData& sd,
                       const ExtrapolationOptions& options) {
  Window w = make_window(table, options);
  if (m && *m > table.kept_rows() && *m < w.hi) {
    throw DataError("row m = " + std::to_string(*m) + " was not kept in the table");
  }

  CmEstimate infinity{kAnyOpenness};
  double s_lo = scaled_count(table.at_infinity(w.lo), w.lo, sd.rho);
  double s_hi = scaled_count(table.at_infinity(w.hi), w.hi, sd.rho);
  infinity.value = richardson(w.lo, s_lo, w.hi, s_hi);
  for (std::size_t n : w.alternatives) {
    double alt = richardson(n, scaled_count(table.at_infinity(n), n, sd.rho), w.hi, s_hi);
    infinity.spread = std::max(infinity.spread, std::abs(alt - infinity.value));
  }
  if (!m) return infinity;

  CmEstimate out{m};
  double d_lo = deficit_at(table, *m, w.lo);
  double d_hi = deficit_at(table, *m, w.hi);
  out.deficit = richardson(w.lo, d_lo, w.hi, d_hi);
  for (std::size_t n : w.alternatives) {
    double alt = richardson(n, deficit_at(table, *m, n), w.hi, d_hi);
    out.deficit_spread = std::max(out.deficit_spread, std::abs(alt - out.deficit));
  }
  out.value = infinity.value * (1.0 - out.deficit);
  out.spread = infinity.spread * (1.0 - out.deficit) + infinity.value * out.deficit_spread;
  return out;
}

void estimate_constants(SingularityData& sd, const CountTable& table, std::size_t max_m,
                        const ExtrapolationOptions& options) {
  sd.C_inf = estimate_Cm(kAnyOpenness, table, sd, options);
  sd.Cm.clear();
  for (std::size_t m = 0; m <= max_m; ++m) sd.Cm.emplace(m, estimate_Cm(m, table, sd, options));
}

double log_asymptotic_count(std::size_t n, const SingularityData& sd, OpenBound m) {
  double constant = sd.C;
  if (m) {
    auto it = sd.Cm.find(*m);
    if (it == sd.Cm.end()) throw DataError("C_" + std::to_string(*m) + " has not been estimated");
    constant = it->second.value;
  }
  double x = static_cast<double>(n);
  return std::log(constant) + x * std::log(sd.gamma) - 1.5 * std::log(x);
}

long double asymptotic_count(std::size_t n, const SingularityData& sd, OpenBound m) {
  return std::exp(static_cast<long double>(log_asymptotic_count(n, sd, m)));
}

double asymptotic_ratio(const BigInt& exact, std::size_t n, const SingularityData& sd, OpenBound m) {
  return std::exp(log_of(exact) - log_asymptotic_count(n, sd, m));
}

bool coefficients_positive(std::span<const BigInt> counts, std::size_t from, std::size_t to) {
  for (std::size_t n = from; n <= to && n < counts.size(); ++n) {
    if (counts[n] <= 0) return false;
  }
  return true;
}

std::string asymptotics_report_json(const SingularityData& sd, const CountTable& table,
                                    const std::vector<std::size_t>& validation_sizes) {
  using nlohmann::json;
  auto r = [](double v) { return round_significant(v); };
  json doc;
  doc["signature"] = json::parse(table.signature().to_json());
  doc["table_size"] = table.max_size();
  doc["rho"] = r(sd.rho);
  doc["gamma"] = r(sd.gamma);
  doc["tau"] = r(sd.tau);
  doc["a"] = r(sd.a);
  doc["b"] = r(sd.b);
  doc["C"] = r(sd.C);
  doc["C_inf"] = {{"value", r(sd.C_inf.value)}, {"spread", r(sd.C_inf.spread)}};
  doc["Cm"] = json::array();
  for (const auto& [m, est] : sd.Cm) {
    doc["Cm"].push_back({{"m", m},
                         {"value", r(est.value)},
                         {"deficit", r(est.deficit)},
                         {"spread", r(est.spread)}});
  }
  doc["residuals"] = {{"equation", r(sd.equation_residual)},
                      {"derivative", r(sd.derivative_residual)}};
  doc["validation"] = json::array();
  for (std::size_t n : validation_sizes) {
    if (n == 0 || n > table.max_size() || table.at_infinity(n) == 0) continue;
    doc["validation"].push_back(
        {{"n", n}, {"ratio", r(asymptotic_ratio(table.at_infinity(n), n, sd))}});
  }
  return doc.dump(2);
}

}  // namespace dbd

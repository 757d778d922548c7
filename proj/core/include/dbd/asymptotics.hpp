#ifndef DBD_ASYMPTOTICS_HPP
#define DBD_ASYMPTOTICS_HPP

#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "dbd/counting.hpp"
#include "dbd/signature.hpp"

namespace dbd {

inline constexpr double kDefaultTolerance = 1e-12;

// Evaluable form of y = F(z, y), the functional equation of the unrestricted
// formula class:
//
//   F(z, y) = z^mem * (z^zero / (1 - z^succ))^2 + 2 z^quant y + sum_c z^w(c) y^ar(c)
//
// Valid for 0 <= z < 1 and y >= 0.
class GFSystem {
 public:
  explicit GFSystem(Signature sig);

  const Signature& signature() const noexcept { return sig_; }

  double atoms(double z) const;
  double atoms_dz(double z) const;

  double value(double z, double y) const;
  double dy(double z, double y) const;
  double dz(double z, double y) const;
  double dyy(double z, double y) const;
  double dyz(double z, double y) const;

  // dF/dy vanishes at the origin.
  bool proper() const { return dy(0.0, 0.0) == 0.0 && value(0.0, 0.0) == 0.0; }

 private:
  Signature sig_;
};

struct BranchPoint {
  double rho = 0.0;
  double tau = 0.0;
  double equation_residual = 0.0;    // |tau - F(rho, tau)|
  double derivative_residual = 0.0;  // |1 - F_y(rho, tau)|
  int newton_iterations = 0;
  bool used_bisection = false;
};

// Dominant singularity of the unrestricted class and the value of the
// generating function there. Throws NotAdmissibleError when no connective has
// arity >= 2 and ConvergenceError when the residuals stay above `tol`.
// `force_bisection` skips Newton and uses the bracketing fallback directly.
BranchPoint solve_singularity(const Signature& sig, double tol = kDefaultTolerance,
                              bool force_bisection = false);

struct PuiseuxConstants {
  double a = 0.0;
  double b = 0.0;
};

// Phi(z) = a - b sqrt(1 - z/rho) + O(1 - z/rho). Throws ConvergenceError when
// F_yy(rho, tau) < tol (no square-root branch).
PuiseuxConstants puiseux_constants(const GFSystem& sys, double rho, double tau,
                                   double tol = kDefaultTolerance);

// Richardson-extrapolated limit of (m-open count) * rho^n * n^{3/2}.
struct CmEstimate {
  OpenBound m;
  double value = 0.0;
  // 1 - C_m / C_inf, extrapolated from exact big-integer differences.
  double deficit = 0.0;
  // Largest deviation of alternative Richardson pairs from `value`.
  double spread = 0.0;
  double deficit_spread = 0.0;
};

struct SingularityData {
  double rho = 0.0;
  double tau = 0.0;
  double a = 0.0;
  double b = 0.0;
  double gamma = 0.0;
  double C = 0.0;  // b / (2 sqrt(pi))
  double equation_residual = 0.0;
  double derivative_residual = 0.0;
  CmEstimate C_inf;
  std::map<std::size_t, CmEstimate> Cm;

  // C_m / C_0 through the exact deficits; 1 when m == 0.
  double constant_ratio(std::size_t m) const;
};

// rho, tau, a, b, gamma and C; leaves the C_m map empty.
SingularityData singularity_data(const Signature& sig, double tol = kDefaultTolerance);

struct ExtrapolationOptions {
  // The window is [window_start * N, N].
  double window_start = 0.5;
  // Alternative Richardson pairs used for the spread.
  std::size_t spread_points = 4;
  std::size_t min_table_size = 500;
};

// Throws DataError when the table is smaller than `min_table_size` or the row
// was not kept.
CmEstimate estimate_Cm(OpenBound m, const CountTable& table, const SingularityData& sd,
                       const ExtrapolationOptions& options = {});

// Fills sd.C_inf and sd.Cm for m = 0..max_m.
void estimate_constants(SingularityData& sd, const CountTable& table, std::size_t max_m,
                        const ExtrapolationOptions& options = {});

// C_eff * gamma^n * n^{-3/2}, where C_eff is C (m unbounded) or the stored C_m.
long double asymptotic_count(std::size_t n, const SingularityData& sd, OpenBound m = kAnyOpenness);
double log_asymptotic_count(std::size_t n, const SingularityData& sd, OpenBound m = kAnyOpenness);

// exact / asymptotic_count, evaluated in log space.
double asymptotic_ratio(const BigInt& exact, std::size_t n, const SingularityData& sd,
                        OpenBound m = kAnyOpenness);

double log_of(const BigInt& value);

// Every coefficient in [from, to] is positive.
bool coefficients_positive(std::span<const BigInt> counts, std::size_t from, std::size_t to);

// JSON report: rho, gamma, tau, a, b, C, C_inf, Cm[], residuals, validation.
std::string asymptotics_report_json(const SingularityData& sd, const CountTable& table,
                                    const std::vector<std::size_t>& validation_sizes);

}  // namespace dbd

#endif  // DBD_ASYMPTOTICS_HPP

#ifndef DBD_DENSITY_HPP
#define DBD_DENSITY_HPP

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "dbd/asymptotics.hpp"
#include "dbd/counting.hpp"
#include "dbd/formula.hpp"
#include "dbd/signature.hpp"

namespace dbd {

using Rational = mpq_class;

// Fixed-point rendering rounded half-up to `digits` fractional digits.
std::string to_decimal(const Rational& value, int digits = 12);

// |L(C) of size n| / |sentences of size n| = c[m][n - d] / c[0][n], with m the
// template's permissiveness. Throws TemplateError for invalid templates and
// DataError when the table does not cover n, n < d + min size, or there are no
// sentences of size n.
Rational template_density_exact(const Template& tmpl, std::size_t n, const CountTable& table);

// C_m * rho^d / C_0.
double template_density_limit(const Template& tmpl, const Signature& sig, const SingularityData& sd);

struct DensityReport {
  std::string template_text;
  std::size_t d = 0;
  std::size_t m = 0;
  std::vector<std::pair<std::size_t, Rational>> exact;
  bool has_limit = false;
  double limit = 0.0;
  // |exact(n) - limit| for each entry of `exact`, when the limit is known.
  std::vector<double> residuals;

  std::string to_json() const;
  // "n\texact\tdecimal" per row.
  std::string to_tsv() const;
};

// Exact densities at `sizes`; the limit is filled in when `sd` is given.
DensityReport density_report(const Template& tmpl, const CountTable& table,
                             const std::vector<std::size_t>& sizes,
                             const SingularityData* sd = nullptr);

struct ConnectiveNames {
  std::string conjunction = "and";
  std::string disjunction = "or";
  std::string negation = "not";
  std::string implication = "implies";
};

struct TautologyBounds {
  double lower = 0.0;
  double upper = 0.0;
  Template lower_template;  // (or _ tau)
  Template upper_template;  // (and _ (not tau))
  std::size_t lower_size = 0;
  std::size_t upper_size = 0;
};

// Densities of ([.] or tau) and 1 - density of ([.] and not tau). Validity of
// tau is not checked; it only has to be a sentence.
TautologyBounds tautology_bounds(const Formula& tautology, const Signature& sig,
                                 const SingularityData& sd, const ConnectiveNames& names = {});

enum class ImplicationMode {
  PreferNative,   // use the implication connective when the signature has it
  RequireNative,  // fail without it
  Desugar,        // always write (not (and x (not y)))
};

struct IndependenceBound {
  double density = 0.0;
  std::size_t template_size = 0;
  bool native_implication = false;
  Template tmpl;
};

// Density of ((tau or [.]) -> phi).
IndependenceBound independence_density_bound(const Formula& phi, const Formula& tautology,
                                             const Signature& sig, const SingularityData& sd,
                                             const ConnectiveNames& names = {},
                                             ImplicationMode mode = ImplicationMode::PreferNative);

}  // namespace dbd

#endif  // DBD_DENSITY_HPP

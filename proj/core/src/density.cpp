#include "dbd/density.hpp"

#include <cmath>
#include <sstream>

#include "dbd/error.hpp"
#include "dbd/format.hpp"
#include "dbd/syntax.hpp"
#include "json.hpp"

namespace dbd {

std::string to_decimal(const Rational& value, int digits) {
  BigInt scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(digits));
  BigInt num = abs(value.get_num()) * scale * 2 + value.get_den();
  BigInt den = value.get_den() * 2;
  BigInt scaled = num / den;  // round half up on the magnitude
  BigInt whole = scaled / scale;
  BigInt frac = scaled % scale;
  std::string frac_text = frac.get_str();
  std::string out = (value < 0 && scaled != 0) ? "-" : "";
  out += whole.get_str();
  if (digits > 0) {
    out += '.';
    out += std::string(static_cast<std::size_t>(digits) - frac_text.size(), '0') + frac_text;
  }
  return out;
}

Rational template_density_exact(const Template& tmpl, std::size_t n, const CountTable& table) {
  const Signature& sig = table.signature();
  std::size_t m = permissiveness(tmpl);
  std::size_t d = tmpl.size(sig);
  if (n < d + sig.min_formula_size()) {
    throw DataError("size " + std::to_string(n) + " is below template size plus the smallest formula");
  }
  if (n > table.max_size()) {
    throw DataError("table of size " + std::to_string(table.max_size()) + " does not cover n = " +
                    std::to_string(n));
  }
  const BigInt& sentences = table.at(std::size_t{0}, n);
  if (sentences == 0) throw DataError("no sentences of size " + std::to_string(n));
  Rational density(table.at(m, n - d), sentences);
  density.canonicalize();
  return density;
}

double template_density_limit(const Template& tmpl, const Signature& sig, const SingularityData& sd) {
  std::size_t m = permissiveness(tmpl);
  std::size_t d = tmpl.size(sig);
  return sd.constant_ratio(m) * std::pow(sd.rho, static_cast<double>(d));
}

DensityReport density_report(const Template& tmpl, const CountTable& table,
                             const std::vector<std::size_t>& sizes, const SingularityData* sd) {
  DensityReport report;
  report.template_text = render(tmpl);
  report.m = permissiveness(tmpl);
  report.d = tmpl.size(table.signature());
  for (std::size_t n : sizes) report.exact.emplace_back(n, template_density_exact(tmpl, n, table));
  if (sd != nullptr) {
    report.has_limit = true;
    report.limit = template_density_limit(tmpl, table.signature(), *sd);
    for (const auto& [n, value] : report.exact) {
      report.residuals.push_back(std::abs(value.get_d() - report.limit));
    }
  }
  return report;
}

std::string DensityReport::to_json() const {
  using nlohmann::json;
  json doc;
  doc["template"] = template_text;
  doc["d"] = d;
  doc["m"] = m;
  doc["exact"] = json::array();
  for (std::size_t i = 0; i < exact.size(); ++i) {
    json row = {{"n", exact[i].first},
                {"fraction", exact[i].second.get_str()},
                {"decimal", to_decimal(exact[i].second)}};
    if (has_limit) row["residual"] = round_significant(residuals[i]);
    doc["exact"].push_back(row);
  }
  doc["limit"] = has_limit ? json(round_significant(limit)) : json(nullptr);
  return doc.dump(2);
}

std::string DensityReport::to_tsv() const {
  std::ostringstream out;
  out << "n\texact\tdecimal\n";
  for (const auto& [n, value] : exact) out << n << '\t' << value.get_str() << '\t' << to_decimal(value) << '\n';
  return out.str();
}

namespace {

const Connective& require_connective(const Signature& sig, const std::string& name,
                                     std::size_t arity) {
  const Connective* c = sig.find(name);
  if (c == nullptr) throw SignatureError("signature lacks the connective '" + name + "'");
  if (c->arity != arity) {
    throw SignatureError("connective '" + name + "' must have arity " + std::to_string(arity));
  }
  return *c;
}

void require_sentence(const Formula& formula, const Signature& sig, const char* role) {
  validate(formula, sig);
  if (formula.hole_count() != 0 || !is_sentence(formula)) {
    throw TemplateError(std::string(role) + " must be a sentence: " + render(formula));
  }
}

}  // namespace

TautologyBounds tautology_bounds(const Formula& tautology, const Signature& sig,
                                 const SingularityData& sd, const ConnectiveNames& names) {
  require_sentence(tautology, sig, "tautology");
  require_connective(sig, names.disjunction, 2);
  require_connective(sig, names.conjunction, 2);
  require_connective(sig, names.negation, 1);

  Template lower(Formula::connective(names.disjunction, {Formula::hole(), tautology}));
  Template upper(Formula::connective(
      names.conjunction, {Formula::hole(), Formula::connective(names.negation, {tautology})}));
  return TautologyBounds{template_density_limit(lower, sig, sd),
                         1.0 - template_density_limit(upper, sig, sd),
                         lower,
                         upper,
                         lower.size(sig),
                         upper.size(sig)};
}

IndependenceBound independence_density_bound(const Formula& phi, const Formula& tautology,
                                             const Signature& sig, const SingularityData& sd,
                                             const ConnectiveNames& names, ImplicationMode mode) {
  require_sentence(phi, sig, "independent sentence");
  require_sentence(tautology, sig, "tautology");
  require_connective(sig, names.disjunction, 2);

  Formula premise = Formula::connective(names.disjunction, {tautology, Formula::hole()});
  const Connective* native = sig.find(names.implication);
  bool use_native = false;
  if (mode == ImplicationMode::RequireNative) {
    require_connective(sig, names.implication, 2);
    use_native = true;
  } else if (mode == ImplicationMode::PreferNative) {
    use_native = native != nullptr && native->arity == 2;
  }

  Formula skeleton = premise;
  if (use_native) {
    skeleton = Formula::connective(names.implication, {premise, phi});
  } else {
    require_connective(sig, names.conjunction, 2);
    require_connective(sig, names.negation, 1);
    skeleton = Formula::connective(
        names.negation,
        {Formula::connective(names.conjunction,
                             {premise, Formula::connective(names.negation, {phi})})});
  }
  Template tmpl(skeleton);
  return IndependenceBound{template_density_limit(tmpl, sig, sd), tmpl.size(sig), use_native, tmpl};
}

}  // namespace dbd

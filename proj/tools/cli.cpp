#include "cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "dbd/asymptotics.hpp"
#include "dbd/counting.hpp"
#include "dbd/density.hpp"
#include "dbd/enumerate.hpp"
#include "dbd/error.hpp"
#include "dbd/format.hpp"
#include "dbd/sampler.hpp"
#include "dbd/syntax.hpp"
#include "json.hpp"

namespace dbd::cli {

namespace {

using nlohmann::json;

constexpr std::size_t kCountLimit = 5000;

struct Options {
  std::string sig_path;
  std::string format = "tsv";

  std::size_t size = 0;
  std::optional<std::size_t> open;
  bool closed = false;
  bool all = false;
  bool force = false;

  std::size_t max_m = 20;
  double tol = kDefaultTolerance;
  double window = 0.5;
  std::size_t min_size = 500;

  std::string template_text;
  bool limit = false;
  std::size_t extrapolation_size = 600;

  std::string tautology;
  std::string phi;
  bool native_implies = false;
  ConnectiveNames names;

  std::size_t count = 10;
  std::uint64_t seed = 1;

  std::string formula;
};

Signature load_signature(const Options& opt) {
  if (!opt.sig_path.empty()) return Signature::from_file(opt.sig_path);
  if (const char* env = std::getenv("DBD_SIG"); env != nullptr && *env != '\0') {
    return Signature::from_file(env);
  }
  return Signature::standard();
}

// Exactly one of --open/--closed/--all; defaults to `fallback` when none given.
OpenBound selected_bound(const Options& opt, OpenBound fallback) {
  int chosen = (opt.open ? 1 : 0) + (opt.closed ? 1 : 0) + (opt.all ? 1 : 0);
  if (chosen > 1) throw CLI::ValidationError("choose only one of --open, --closed, --all");
  if (opt.open) return *opt.open;
  if (opt.closed) return std::size_t{0};
  if (opt.all) return kAnyOpenness;
  return fallback;
}

std::string bound_label(OpenBound m) { return m ? std::to_string(*m) : "inf"; }

bool json_output(const Options& opt) { return opt.format == "json"; }

void guard_table_size(const Options& opt, std::size_t n) {
  if (n > kCountLimit && !opt.force) {
    throw DataError("size " + std::to_string(n) + " exceeds " + std::to_string(kCountLimit) +
                    "; pass --force to proceed");
  }
}

void write_pairs(std::ostream& out, const std::vector<std::pair<std::string, std::string>>& rows) {
  out << "key\tvalue\n";
  for (const auto& [key, value] : rows) out << key << '\t' << value << '\n';
}

int cmd_count(const Options& opt, std::ostream& out) {
  Signature sig = load_signature(opt);
  OpenBound m = selected_bound(opt, kAnyOpenness);
  guard_table_size(opt, opt.size);
  std::vector<BigInt> counts;
  if (m) {
    CountTable table = count_m_open(opt.size, sig, CountOptions{*m});
    counts = table.row(m);
  } else {
    counts = count_infinity(opt.size, sig);
  }
  if (json_output(opt)) {
    json doc;
    doc["m"] = bound_label(m);
    doc["max_size"] = opt.size;
    doc["counts"] = json::array();
    for (const BigInt& c : counts) doc["counts"].push_back(c.get_str());
    out << doc.dump(2) << '\n';
  } else {
    out << "m\tn\tcount\n";
    for (std::size_t n = 0; n < counts.size(); ++n) {
      out << bound_label(m) << '\t' << n << '\t' << counts[n].get_str() << '\n';
    }
  }
  return kOk;
}

SingularityData full_analysis(const Signature& sig, std::size_t table_size, std::size_t max_m,
                              const Options& opt, std::optional<CountTable>& table_out) {
  SingularityData sd = singularity_data(sig, opt.tol);
  table_out.emplace(count_m_open(table_size, sig, CountOptions{max_m}));
  ExtrapolationOptions ex;
  ex.window_start = opt.window;
  ex.min_table_size = opt.min_size;
  estimate_constants(sd, *table_out, max_m, ex);
  return sd;
}

int cmd_asymptotics(const Options& opt, std::ostream& out) {
  Signature sig = load_signature(opt);
  std::size_t size = opt.size == 0 ? 1000 : opt.size;
  guard_table_size(opt, size);
  std::optional<CountTable> table;
  SingularityData sd = full_analysis(sig, size, opt.max_m, opt, table);
  std::vector<std::size_t> checks = {size / 4, size / 2, size};
  if (json_output(opt)) {
    out << asymptotics_report_json(sd, *table, checks) << '\n';
    return kOk;
  }
  std::vector<std::pair<std::string, std::string>> rows = {
      {"rho", format_real(sd.rho)},     {"gamma", format_real(sd.gamma)},
      {"tau", format_real(sd.tau)},     {"a", format_real(sd.a)},
      {"b", format_real(sd.b)},         {"C", format_real(sd.C)},
      {"C_inf", format_real(sd.C_inf.value)},
      {"residual_equation", format_real(sd.equation_residual)},
      {"residual_derivative", format_real(sd.derivative_residual)},
  };
  for (const auto& [m, est] : sd.Cm) rows.emplace_back("C_" + std::to_string(m), format_real(est.value));
  for (std::size_t n : checks) {
    if (n == 0 || table->at_infinity(n) == 0) continue;
    rows.emplace_back("ratio_" + std::to_string(n),
                      format_real(asymptotic_ratio(table->at_infinity(n), n, sd)));
  }
  write_pairs(out, rows);
  return kOk;
}

int cmd_density(const Options& opt, std::ostream& out) {
  Signature sig = load_signature(opt);
  Template tmpl = parse_template(opt.template_text, sig);
  std::size_t m = permissiveness(tmpl);
  guard_table_size(opt, std::max(opt.size, opt.extrapolation_size));

  std::vector<std::size_t> sizes;
  std::size_t floor = tmpl.size(sig) + sig.min_formula_size();
  for (std::size_t n : {opt.size / 4, opt.size / 2, opt.size}) {
    if (n >= floor && (sizes.empty() || sizes.back() != n)) sizes.push_back(n);
  }
  if (sizes.empty()) throw DataError("size is below template size plus the smallest formula");

  std::optional<CountTable> table;
  std::optional<SingularityData> sd;
  if (opt.limit) {
    sd = full_analysis(sig, std::max(opt.size, opt.extrapolation_size), m, opt, table);
  } else {
    table.emplace(count_m_open(opt.size, sig, CountOptions{m}));
  }
  DensityReport report = density_report(tmpl, *table, sizes, sd ? &*sd : nullptr);
  if (json_output(opt)) {
    out << report.to_json() << '\n';
    return kOk;
  }
  out << "n\texact\tdecimal" << (opt.limit ? "\tlimit\tresidual" : "") << '\n';
  for (std::size_t i = 0; i < report.exact.size(); ++i) {
    const auto& [n, value] = report.exact[i];
    out << n << '\t' << value.get_str() << '\t' << to_decimal(value);
    if (opt.limit) out << '\t' << format_real(report.limit) << '\t' << format_real(report.residuals[i]);
    out << '\n';
  }
  return kOk;
}

int cmd_bounds(const Options& opt, std::ostream& out) {
  Signature sig = load_signature(opt);
  Formula tautology = parse_formula(opt.tautology, sig);
  SingularityData sd = singularity_data(sig, opt.tol);
  TautologyBounds bounds = tautology_bounds(tautology, sig, sd, opt.names);
  std::optional<IndependenceBound> independence;
  if (!opt.phi.empty()) {
    Formula phi = parse_formula(opt.phi, sig);
    independence = independence_density_bound(
        phi, tautology, sig, sd, opt.names,
        opt.native_implies ? ImplicationMode::RequireNative : ImplicationMode::PreferNative);
  }
  if (json_output(opt)) {
    json doc;
    doc["rho"] = round_significant(sd.rho);
    doc["tautology_size"] = size(tautology, sig);
    doc["lower"] = round_significant(bounds.lower);
    doc["upper"] = round_significant(bounds.upper);
    doc["upper_complement"] = round_significant(1.0 - bounds.upper);
    doc["lower_template"] = render(bounds.lower_template);
    doc["upper_template"] = render(bounds.upper_template);
    if (independence) {
      doc["independence"] = {{"density", round_significant(independence->density)},
                             {"template", render(independence->tmpl)},
                             {"template_size", independence->template_size},
                             {"native_implication", independence->native_implication}};
    }
    out << doc.dump(2) << '\n';
    return kOk;
  }
  std::vector<std::pair<std::string, std::string>> rows = {
      {"rho", format_real(sd.rho)},
      {"tautology_size", std::to_string(size(tautology, sig))},
      {"lower", format_real(bounds.lower)},
      {"upper", format_real(bounds.upper)},
      {"upper_complement", format_real(1.0 - bounds.upper)},
      {"lower_template", render(bounds.lower_template)},
      {"upper_template", render(bounds.upper_template)},
  };
  if (independence) {
    rows.emplace_back("independence_density", format_real(independence->density));
    rows.emplace_back("independence_template", render(independence->tmpl));
    rows.emplace_back("independence_template_size", std::to_string(independence->template_size));
    rows.emplace_back("native_implication", independence->native_implication ? "true" : "false");
  }
  write_pairs(out, rows);
  return kOk;
}

int cmd_sample(const Options& opt, std::ostream& out) {
  Signature sig = load_signature(opt);
  OpenBound m = selected_bound(opt, std::size_t{0});
  guard_table_size(opt, opt.size);
  CountTable table = count_m_open(opt.size, sig);
  Sampler sampler(table, opt.seed);
  out << sample_dump(sampler, opt.size, m, opt.count);
  return kOk;
}

int cmd_check(const Options& opt, std::ostream& out) {
  Signature sig = load_signature(opt);
  Formula formula = parse_formula(opt.formula, sig);
  std::size_t weight = size(formula, sig);
  std::size_t open = openness(formula);
  if (json_output(opt)) {
    json doc = {{"formula", render(formula)},
                {"size", weight},
                {"openness", open},
                {"valid", true},
                {"sentence", open == 0}};
    out << doc.dump(2) << '\n';
    return kOk;
  }
  write_pairs(out, {{"formula", render(formula)},
                    {"size", std::to_string(weight)},
                    {"openness", std::to_string(open)},
                    {"valid", "true"},
                    {"sentence", open == 0 ? "true" : "false"}});
  return kOk;
}

int cmd_enumerate(const Options& opt, std::ostream& out) {
  Signature sig = load_signature(opt);
  OpenBound m = selected_bound(opt, kAnyOpenness);
  std::vector<Formula> formulas = enumerate(opt.size, m, sig);
  out << "# n=" << opt.size << " m=" << bound_label(m) << " count=" << formulas.size() << '\n';
  for (const Formula& f : formulas) out << render(f) << '\n';
  return kOk;
}

void add_common(CLI::App* cmd, Options& opt, bool with_format = true) {
  cmd->add_option("--sig", opt.sig_path, "Signature JSON file (default: $DBD_SIG or {and,or,not})");
  if (with_format) {
    cmd->add_option("--format", opt.format, "Output format")
        ->check(CLI::IsMember({"tsv", "json"}));
  }
}

void add_bound_flags(CLI::App* cmd, Options& opt) {
  cmd->add_option("--open", opt.open, "Restrict to m-open formulae");
  cmd->add_flag("--closed", opt.closed, "Restrict to sentences (m = 0)");
  cmd->add_flag("--all", opt.all, "No openness restriction");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options opt;
  CLI::App app{"Counting and asymptotic density of De Bruijn set-theory formulae", "dbd"};
  app.require_subcommand(1, 1);

  auto* count = app.add_subcommand("count", "Exact counts of m-open formulae by size");
  add_common(count, opt);
  count->add_option("--size", opt.size, "Largest size N")->required();
  add_bound_flags(count, opt);
  count->add_flag("--force", opt.force, "Allow N > 5000");

  auto* asym = app.add_subcommand("asymptotics", "Singularity, Puiseux and C_m constants");
  add_common(asym, opt);
  asym->add_option("--size", opt.size, "Table size used for C_m extrapolation (default 1000)");
  asym->add_option("--max-m", opt.max_m, "Largest m with an estimated C_m");
  asym->add_option("--tol", opt.tol, "Newton residual tolerance")->check(CLI::PositiveNumber);
  asym->add_option("--window", opt.window, "Extrapolation window start as a fraction of N")
      ->check(CLI::Range(0.05, 0.95));
  asym->add_option("--min-size", opt.min_size, "Smallest table accepted for extrapolation");
  asym->add_flag("--force", opt.force, "Allow N > 5000");

  auto* density = app.add_subcommand("density", "Template densities, exact and limiting");
  add_common(density, opt);
  density->add_option("--template", opt.template_text, "Template with one hole '_'")->required();
  density->add_option("--size", opt.size, "Largest size n")->required();
  density->add_flag("--limit", opt.limit, "Also estimate the limiting density");
  density->add_option("--extrapolation-size", opt.extrapolation_size,
                      "Table size used for the limit estimate");
  density->add_option("--min-size", opt.min_size, "Smallest table accepted for extrapolation");
  density->add_flag("--force", opt.force, "Allow tables above 5000");

  auto* bounds = app.add_subcommand("bounds", "Theory-density bounds from a tautology");
  add_common(bounds, opt);
  bounds->add_option("--tautology", opt.tautology, "A sentence used as the tautology")->required();
  bounds->add_option("--phi", opt.phi, "Independent sentence for the extension bound");
  bounds->add_flag("--native-implies", opt.native_implies, "Require a native implication connective");
  bounds->add_option("--and", opt.names.conjunction, "Conjunction connective name");
  bounds->add_option("--or", opt.names.disjunction, "Disjunction connective name");
  bounds->add_option("--not", opt.names.negation, "Negation connective name");
  bounds->add_option("--implies", opt.names.implication, "Implication connective name");

  auto* sample = app.add_subcommand("sample", "Uniform random formulae of a given size");
  add_common(sample, opt, false);
  sample->add_option("--size", opt.size, "Formula size")->required();
  add_bound_flags(sample, opt);
  sample->add_option("--count", opt.count, "Number of samples");
  sample->add_option("--seed", opt.seed, "Generator seed");
  sample->add_flag("--force", opt.force, "Allow sizes above 5000");

  auto* check = app.add_subcommand("check", "Size, openness and validity of a formula");
  add_common(check, opt);
  check->add_option("formula", opt.formula, "Formula text")->required();

  auto* enumerate_cmd = app.add_subcommand("enumerate", "Brute-force list of formulae (n <= 16)");
  add_common(enumerate_cmd, opt, false);
  enumerate_cmd->add_option("--size", opt.size, "Formula size")->required();
  add_bound_flags(enumerate_cmd, opt);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kInvalidArguments;
  }

  try {
    if (*count) return cmd_count(opt, out);
    if (*asym) return cmd_asymptotics(opt, out);
    if (*density) return cmd_density(opt, out);
    if (*bounds) return cmd_bounds(opt, out);
    if (*sample) return cmd_sample(opt, out);
    if (*check) return cmd_check(opt, out);
    if (*enumerate_cmd) return cmd_enumerate(opt, out);
  } catch (const CLI::ValidationError& e) {
    err << "error: " << e.what() << '\n';
    return kInvalidArguments;
  } catch (const SyntaxError& e) {
    err << "syntax error: " << e.what() << '\n';
    return kInvalidArguments;
  } catch (const SignatureError& e) {
    err << "signature error: " << e.what() << '\n';
    return kSignatureError;
  } catch (const NotAdmissibleError& e) {
    err << "not admissible: " << e.what() << '\n';
    return kNotAdmissible;
  } catch (const TemplateError& e) {
    err << "invalid template: " << e.what() << '\n';
    return kInvalidTemplate;
  } catch (const DataError& e) {
    err << "error: " << e.what() << '\n';
    return kInvalidArguments;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kFailure;
  }
  return kInvalidArguments;
}

}  // namespace dbd::cli

#include "dbd/sampler.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <cstdio>
#include <limits>

#include "dbd/error.hpp"
#include "dbd/syntax.hpp"

namespace dbd {

namespace {

constexpr std::size_t kUnboundedKey = std::numeric_limits<std::size_t>::max();

}  // namespace

Sampler::Sampler(const CountTable& table, std::uint64_t seed)
    : table_(&table), seed_(seed), engine_(seed) {}

BigInt Sampler::uniform_below(const BigInt& bound) {
  assert(bound > 0);
  std::size_t bits = mpz_sizeinbase(bound.get_mpz_t(), 2);
  std::size_t words = (bits + 63) / 64;
  std::vector<std::uint64_t> buffer(words);
  BigInt candidate;
  do {
    for (std::uint64_t& word : buffer) word = engine_();
    mpz_import(candidate.get_mpz_t(), words, -1, sizeof(std::uint64_t), 0, 0, buffer.data());
    mpz_fdiv_r_2exp(candidate.get_mpz_t(), candidate.get_mpz_t(), bits);
  } while (candidate >= bound);
  return candidate;
}

const BigInt& Sampler::count(OpenBound m, std::size_t n) const {
  return m ? table_->at(*m, n) : table_->at_infinity(n);
}

const std::vector<std::vector<BigInt>>& Sampler::powers(OpenBound m, std::size_t length) {
  std::size_t key = m.value_or(kUnboundedKey);
  auto it = powers_.find(key);
  if (it != powers_.end() && !it->second.empty() && it->second.front().size() > length) {
    return it->second;
  }
  std::vector<BigInt> row;
  row.reserve(length + 1);
  for (std::size_t n = 0; n <= length; ++n) row.push_back(count(m, n));
  std::size_t max_power = std::max<std::size_t>(table_->signature().max_arity(), 1);
  return powers_[key] = series_powers(row, max_power);
}

Formula Sampler::sample(std::size_t n, OpenBound m) {
  if (count(m, n) == 0) {
    throw DataError("empty class: no " + (m ? std::to_string(*m) + "-open" : std::string("")) +
                    " formula of size " + std::to_string(n));
  }
  return draw(n, m);
}

Formula Sampler::draw(std::size_t n, OpenBound m) {
  // Class m with m >= n is the unrestricted class at every smaller size too.
  if (m && *m >= n) m = kAnyOpenness;
  const Signature& sig = table_->signature();
  BigInt rank = uniform_below(count(m, n));

  BigInt block = atom_count(n, m, sig);
  if (rank < block) return draw_atom(n, m, rank);
  rank -= block;

  std::size_t q = sig.weights().quantifier;
  if (n >= q) {
    OpenBound inner = m ? OpenBound(*m + 1) : kAnyOpenness;
    const BigInt& bodies = count(inner, n - q);
    if (rank < bodies) return Formula::forall(draw(n - q, inner));
    rank -= bodies;
    if (rank < bodies) return Formula::exists(draw(n - q, inner));
    rank -= bodies;
  }

  for (const Connective& c : sig.connectives()) {
    if (n < c.weight) continue;
    std::size_t total = n - c.weight;
    const BigInt& ways = powers(m, total)[c.arity - 1][total];
    if (rank < ways) return draw_children(c, total, m);
    rank -= ways;
  }
  throw Error("sampler ran past the production list; table and signature disagree");
}

Formula Sampler::draw_atom(std::size_t n, OpenBound m, BigInt rank) const {
  const Signature& sig = table_->signature();
  const ConstructorWeights& w = sig.weights();
  std::size_t budget = n - w.membership;
  for (std::uint64_t lhs = 0; sig.index_weight(lhs) + w.zero <= budget; ++lhs) {
    std::size_t rest = budget - sig.index_weight(lhs);
    if ((rest - w.zero) % w.succ != 0) continue;
    std::uint64_t rhs = (rest - w.zero) / w.succ;
    if (m && (lhs >= *m || rhs >= *m)) continue;
    if (rank == 0) return Formula::atom(lhs, rhs);
    --rank;
  }
  throw Error("atom rank out of range");
}

Formula Sampler::draw_children(const Connective& c, std::size_t total, OpenBound m) {
  std::vector<Formula> children;
  children.reserve(c.arity);
  std::size_t remaining = total;
  for (std::size_t slots = c.arity; slots > 1; --slots) {
    const auto& pw = powers(m, remaining);
    const std::vector<BigInt>& row = pw[0];
    const std::vector<BigInt>& rest = pw[slots - 2];
    // Cumulative weights of the first child's size; pick by binary search.
    std::vector<BigInt> cumulative(remaining + 1);
    BigInt running = 0;
    for (std::size_t i = 0; i <= remaining; ++i) {
      if (row[i] != 0 && rest[remaining - i] != 0) running += row[i] * rest[remaining - i];
      cumulative[i] = running;
    }
    BigInt pick = uniform_below(running);
    auto it = std::upper_bound(cumulative.begin(), cumulative.end(), pick);
    std::size_t first = static_cast<std::size_t>(it - cumulative.begin());
    children.push_back(draw(first, m));
    remaining -= first;
  }
  children.push_back(draw(remaining, m));
  return Formula::connective(c.name, std::move(children));
}

bool matches_template(const Formula& formula, const Template& tmpl) {
  std::optional<Formula> filler = match_skeleton(formula, tmpl);
  return filler && filler->hole_count() == 0 && is_m_open(*filler, permissiveness(tmpl));
}

MonteCarloEstimate estimate_density_mc(const Template& tmpl, std::size_t n, std::size_t trials,
                                       Sampler& sampler) {
  if (trials == 0) throw DataError("trials must be at least 1");
  permissiveness(tmpl);
  MonteCarloEstimate out;
  out.trials = trials;
  for (std::size_t t = 0; t < trials; ++t) {
    if (matches_template(sampler.sample(n, std::size_t{0}), tmpl)) ++out.hits;
  }
  double p = static_cast<double>(out.hits) / static_cast<double>(trials);
  out.fraction = p;
  out.standard_error = std::sqrt(p * (1.0 - p) / static_cast<double>(trials));
  return out;
}

std::string sample_dump(Sampler& sampler, std::size_t n, OpenBound m, std::size_t count) {
  char fingerprint[32];
  std::snprintf(fingerprint, sizeof fingerprint, "%016llx",
                static_cast<unsigned long long>(sampler.table().signature().fingerprint()));
  std::string out = "# generator=" + std::string(Sampler::kAlgorithm) +
                    " seed=" + std::to_string(sampler.seed()) + " n=" + std::to_string(n) +
                    " m=" + (m ? std::to_string(*m) : std::string("inf")) +
                    " signature=" + fingerprint + "\n";
  for (std::size_t i = 0; i < count; ++i) {
    out += render(sampler.sample(n, m));
    out += '\n';
  }
  return out;
}

}  // namespace dbd

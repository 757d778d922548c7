#include "dbd/counting.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "dbd/error.hpp"

namespace dbd {

namespace {

// prefix[n][t] = number of atoms of weight n whose larger index value is < t.
// The last entry of prefix[n] is the unrestricted count.
class AtomTable {
 public:
  AtomTable(std::size_t max_size, const Signature& sig) : prefix_(max_size + 1) {
    const ConstructorWeights& w = sig.weights();
    for (std::size_t n = 0; n <= max_size; ++n) {
      std::vector<std::uint64_t> by_max;
      if (n >= sig.min_formula_size()) {
        std::size_t budget = n - w.membership;
        for (std::uint64_t lhs = 0; sig.index_weight(lhs) + w.zero <= budget; ++lhs) {
          std::size_t rest = budget - sig.index_weight(lhs);
          if ((rest - w.zero) % w.succ != 0) continue;
          std::uint64_t rhs = (rest - w.zero) / w.succ;
          std::uint64_t top = std::max(lhs, rhs);
          if (by_max.size() <= top) by_max.resize(top + 1, 0);
          ++by_max[top];
        }
      }
      std::vector<std::uint64_t>& pre = prefix_[n];
      pre.assign(by_max.size() + 1, 0);
      for (std::size_t t = 0; t < by_max.size(); ++t) pre[t + 1] = pre[t] + by_max[t];
    }
  }

  std::uint64_t count(std::size_t n, OpenBound m) const {
    const std::vector<std::uint64_t>& pre = prefix_[n];
    if (!m || *m >= pre.size()) return pre.back();
    return pre[*m];
  }

 private:
  std::vector<std::vector<std::uint64_t>> prefix_;
};

// Connectives grouped by (arity, weight); multiplicity counts the group size.
struct ConnectiveTerm {
  std::size_t arity;
  std::size_t weight;
  unsigned long multiplicity;
};

std::vector<ConnectiveTerm> connective_terms(const Signature& sig) {
  std::map<std::pair<std::size_t, std::size_t>, unsigned long> groups;
  for (const Connective& c : sig.connectives()) ++groups[{c.arity, c.weight}];
  std::vector<ConnectiveTerm> terms;
  for (const auto& [key, count] : groups) terms.push_back({key.first, key.second, count});
  return terms;
}

// Appends [z^n] of row * previous-power. Row entries below `min_size` are zero.
void convolve_entry(const std::vector<BigInt>& left, const std::vector<BigInt>& row, std::size_t n,
                    std::size_t min_size, BigInt& out) {
  out = 0;
  if (n < min_size) return;
  for (std::size_t i = 0; i + min_size <= n; ++i) {
    if (left[i] == 0) continue;
    mpz_addmul(out.get_mpz_t(), left[i].get_mpz_t(), row[n - i].get_mpz_t());
  }
}

void square_entry(const std::vector<BigInt>& row, std::size_t n, std::size_t min_size, BigInt& out) {
  out = 0;
  if (n < 2 * min_size) return;
  std::size_t lo = min_size;
  std::size_t hi = n - min_size;
  while (lo < hi) {
    mpz_addmul(out.get_mpz_t(), row[lo].get_mpz_t(), row[hi].get_mpz_t());
    ++lo;
    --hi;
  }
  out *= 2;
  if (lo == hi) mpz_addmul(out.get_mpz_t(), row[lo].get_mpz_t(), row[lo].get_mpz_t());
}

// One row of the forward recursive system together with the powers of that
// row the connective terms need.
class RowBuilder {
 public:
  RowBuilder(const Signature& sig, const AtomTable& atoms)
      : sig_(sig), atoms_(atoms), terms_(connective_terms(sig)), max_arity_(sig.max_arity()) {}

  // Builds entries 0..length. Entries n <= copy_below come from `seed_values`
  // and `seed_powers` verbatim; the rest follow the recurrence with the
  // quantifier successor looked up through `successor(x)`.
  template <typename Successor>
  void build(std::size_t length, OpenBound m, std::size_t copy_below,
             const std::vector<BigInt>* seed_values,
             const std::vector<std::vector<BigInt>>* seed_powers, Successor successor) {
    values_.assign(length + 1, BigInt(0));
    powers_.assign(max_arity_ >= 2 ? max_arity_ - 1 : 0, std::vector<BigInt>(length + 1));
    std::size_t min_size = sig_.min_formula_size();
    const ConstructorWeights& w = sig_.weights();
    for (std::size_t n = 0; n <= length; ++n) {
      if (seed_values != nullptr && n <= copy_below) {
        values_[n] = (*seed_values)[n];
        for (std::size_t j = 0; j < powers_.size(); ++j) powers_[j][n] = (*seed_powers)[j][n];
        continue;
      }
      BigInt& value = values_[n];
      value = atoms_.count(n, m);
      if (n >= w.quantifier) {
        mpz_addmul_ui(value.get_mpz_t(), successor(n - w.quantifier).get_mpz_t(), 2);
      }
      for (const ConnectiveTerm& term : terms_) {
        if (n < term.weight) continue;
        const BigInt& part = power(term.arity, n - term.weight);
        mpz_addmul_ui(value.get_mpz_t(), part.get_mpz_t(), term.multiplicity);
      }
      if (!powers_.empty()) square_entry(values_, n, min_size, powers_[0][n]);
      for (std::size_t j = 1; j < powers_.size(); ++j) {
        convolve_entry(powers_[j - 1], values_, n, min_size, powers_[j][n]);
      }
    }
  }

  std::vector<BigInt>& values() { return values_; }
  std::vector<std::vector<BigInt>>& powers() { return powers_; }

 private:
  const BigInt& power(std::size_t arity, std::size_t n) const {
    return arity == 1 ? values_[n] : powers_[arity - 2][n];
  }

  const Signature& sig_;
  const AtomTable& atoms_;
  std::vector<ConnectiveTerm> terms_;
  std::size_t max_arity_;
  std::vector<BigInt> values_;
  std::vector<std::vector<BigInt>> powers_;
};

struct InfinityRow {
  std::vector<BigInt> values;
  std::vector<std::vector<BigInt>> powers;
};

InfinityRow build_infinity(std::size_t max_size, const Signature& sig, const AtomTable& atoms) {
  RowBuilder builder(sig, atoms);
  const std::vector<BigInt>* self = &builder.values();
  builder.build(max_size, kAnyOpenness, 0, nullptr, nullptr,
                [self](std::size_t x) -> const BigInt& { return (*self)[x]; });
  return {std::move(builder.values()), std::move(builder.powers())};
}

}  // namespace

BigInt atom_count(std::size_t n, OpenBound m, const Signature& sig) {
  const ConstructorWeights& w = sig.weights();
  if (n < sig.min_formula_size()) return 0;
  std::size_t budget = n - w.membership;
  unsigned long total = 0;
  for (std::uint64_t lhs = 0; sig.index_weight(lhs) + w.zero <= budget; ++lhs) {
    std::size_t rest = budget - sig.index_weight(lhs);
    if ((rest - w.zero) % w.succ != 0) continue;
    std::uint64_t rhs = (rest - w.zero) / w.succ;
    if (!m || (lhs < *m && rhs < *m)) ++total;
  }
  return total;
}

BigInt atom_kernel_gap(std::size_t n, std::size_t m, const Signature& sig) {
  return atom_count(n, kAnyOpenness, sig) - atom_count(n, m, sig);
}

std::vector<BigInt> count_infinity(std::size_t max_size, const Signature& sig) {
  AtomTable atoms(max_size, sig);
  return build_infinity(max_size, sig, atoms).values;
}

CountTable count_m_open(std::size_t max_size, const Signature& sig, const CountOptions& options) {
  const std::size_t kept = std::min(options.kept_rows.value_or(max_size), max_size);
  CountTable table(max_size, kept, sig);
  AtomTable atoms(max_size, sig);
  InfinityRow infinity = build_infinity(max_size, sig, atoms);
  table.infinity_ = infinity.values;
  table.tails_.resize(kept + 1);

  const std::size_t step = sig.weights().quantifier;
  // Length of row k that the stored rows depend on.
  auto needed = [&](std::size_t k) -> std::size_t {
    if (k <= kept) return max_size;
    std::size_t drop = (k - kept) * step;
    return drop >= max_size ? 0 : max_size - drop;
  };
  // Rows at or above `top` agree with the unrestricted row on their needed range.
  std::size_t top = 0;
  while (needed(top) > top) ++top;

  RowBuilder builder(sig, atoms);
  std::vector<BigInt> successor_row;  // row k + 1, entries 0..needed(k + 1)
  bool successor_is_infinity = true;
  for (std::size_t k = top; k-- > 0;) {
    const std::size_t length = needed(k);
    const std::size_t next_m = k + 1;
    auto successor = [&](std::size_t x) -> const BigInt& {
      if (successor_is_infinity || next_m >= x) return infinity.values[x];
      return successor_row[x];
    };
    builder.build(length, k, std::min(k, length), &infinity.values, &infinity.powers, successor);
    std::vector<BigInt>& values = builder.values();
    if (k <= kept) {
      table.tails_[k].assign(values.begin() + static_cast<std::ptrdiff_t>(std::min(k + 1, values.size())),
                             values.end());
    }
    successor_row = std::move(values);
    successor_is_infinity = false;
  }
  return table;
}

const BigInt& CountTable::at(std::size_t m, std::size_t n) const {
  if (n > max_size_) {
    throw DataError("size " + std::to_string(n) + " exceeds table size " + std::to_string(max_size_));
  }
  if (m >= n) return infinity_[n];
  if (m > kept_rows_) {
    throw DataError("row m = " + std::to_string(m) + " was not kept (kept rows: 0.." +
                    std::to_string(kept_rows_) + ")");
  }
  return tails_[m][n - m - 1];
}

const BigInt& CountTable::at_infinity(std::size_t n) const {
  if (n > max_size_) {
    throw DataError("size " + std::to_string(n) + " exceeds table size " + std::to_string(max_size_));
  }
  return infinity_[n];
}

std::vector<BigInt> CountTable::row(OpenBound m) const {
  std::vector<BigInt> out;
  out.reserve(max_size_ + 1);
  for (std::size_t n = 0; n <= max_size_; ++n) out.push_back(at(m, n));
  return out;
}

std::string CountTable::to_tsv(const std::vector<OpenBound>& rows) const {
  std::ostringstream out;
  out << "m\tn\tcount\n";
  for (const OpenBound& m : rows) {
    std::string label = m ? std::to_string(*m) : "inf";
    for (std::size_t n = 0; n <= max_size_; ++n) {
      out << label << '\t' << n << '\t' << at(m, n).get_str() << '\n';
    }
  }
  return out.str();
}

std::vector<std::vector<BigInt>> series_powers(std::span<const BigInt> row, std::size_t max_power) {
  std::vector<std::vector<BigInt>> powers;
  if (max_power == 0) return powers;
  powers.emplace_back(row.begin(), row.end());
  std::size_t length = row.size();
  for (std::size_t k = 2; k <= max_power; ++k) {
    const std::vector<BigInt>& prev = powers.back();
    std::vector<BigInt> next(length, BigInt(0));
    for (std::size_t n = 0; n < length; ++n) {
      for (std::size_t i = 0; i <= n; ++i) {
        if (prev[i] == 0 || row[n - i] == 0) continue;
        mpz_addmul(next[n].get_mpz_t(), prev[i].get_mpz_t(), row[n - i].get_mpz_t());
      }
    }
    powers.push_back(std::move(next));
  }
  return powers;
}

}  // namespace dbd

#ifndef DBD_COUNTING_HPP
#define DBD_COUNTING_HPP

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "dbd/enumerate.hpp"
#include "dbd/signature.hpp"

namespace dbd {

using BigInt = mpz_class;

// Number of atoms of weight n whose two indices both have value < m
// (unrestricted when m is nullopt).
BigInt atom_count(std::size_t n, OpenBound m, const Signature& sig);

// atom_count(n, ∞) - atom_count(n, m). Under unit weights this never exceeds
// 2 * max(0, n - m - 2).
BigInt atom_kernel_gap(std::size_t n, std::size_t m, const Signature& sig);

// a[n] = number of formulae of weight n, for 0 <= n <= max_size.
std::vector<BigInt> count_infinity(std::size_t max_size, const Signature& sig);

struct CountOptions {
  // Rows m = 0..kept_rows are stored; nullopt keeps every row. Rows above are
  // computed only as far as the stored rows need them and then dropped.
  std::optional<std::size_t> kept_rows;
};

// c[m][n] = number of m-open formulae of weight n, 0 <= n <= N.
//
// Rows with m >= n coincide with the unrestricted row and are not stored
// separately. Immutable once built.
class CountTable {
 public:
  std::size_t max_size() const noexcept { return max_size_; }
  // Largest m with a stored row (m > kept_rows() is only answered when m >= n).
  std::size_t kept_rows() const noexcept { return kept_rows_; }
  const Signature& signature() const noexcept { return sig_; }

  bool has(std::size_t m, std::size_t n) const noexcept {
    return n <= max_size_ && (m >= n || m <= kept_rows_);
  }

  // Throws DataError when (m, n) lies outside the table.
  const BigInt& at(std::size_t m, std::size_t n) const;
  const BigInt& at(OpenBound m, std::size_t n) const { return m ? at(*m, n) : at_infinity(n); }
  const BigInt& at_infinity(std::size_t n) const;

  std::span<const BigInt> infinity_row() const noexcept { return infinity_; }
  // Dense copy of row m for n = 0..N.
  std::vector<BigInt> row(OpenBound m) const;

  // "m\tn\tcount" header, one line per (m, n); m = "inf" for the unrestricted row.
  std::string to_tsv(const std::vector<OpenBound>& rows) const;

 private:
  friend CountTable count_m_open(std::size_t, const Signature&, const CountOptions&);
  CountTable(std::size_t max_size, std::size_t kept_rows, Signature sig)
      : max_size_(max_size), kept_rows_(kept_rows), sig_(std::move(sig)) {}

  std::size_t max_size_;
  std::size_t kept_rows_;
  Signature sig_;
  std::vector<BigInt> infinity_;
  // tails_[m][k] holds c[m][m + 1 + k]; entries with n <= m live in infinity_.
  std::vector<std::vector<BigInt>> tails_;
};

CountTable count_m_open(std::size_t max_size, const Signature& sig, const CountOptions& options = {});

// Power series of row^k for k = 1..max_power, truncated at length row.size().
// powers[k - 1][n] = [z^n] (sum_i row[i] z^i)^k.
std::vector<std::vector<BigInt>> series_powers(std::span<const BigInt> row, std::size_t max_power);

}  // namespace dbd

#endif  // DBD_COUNTING_HPP

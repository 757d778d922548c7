#ifndef DBD_SAMPLER_HPP
#define DBD_SAMPLER_HPP

#include <cstddef>
#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "dbd/counting.hpp"
#include "dbd/formula.hpp"

namespace dbd {

// Exact-size uniform generator (recursive method) over a frozen CountTable.
//
// The table must outlive the sampler and must keep every row the requested
// sizes reach; a table built with all rows kept always does. One sampler is
// one random stream: do not share it between threads.
class Sampler {
 public:
  static constexpr std::string_view kAlgorithm = "mt19937_64";

  Sampler(const CountTable& table, std::uint64_t seed);

  std::uint64_t seed() const noexcept { return seed_; }
  const CountTable& table() const noexcept { return *table_; }

  // Uniform over the m-open formulae of weight n (m unbounded when nullopt).
  // Throws DataError if that class is empty.
  Formula sample(std::size_t n, OpenBound m);

  // Uniform integer in [0, bound), bound > 0.
  BigInt uniform_below(const BigInt& bound);

 private:
  const BigInt& count(OpenBound m, std::size_t n) const;
  const std::vector<std::vector<BigInt>>& powers(OpenBound m, std::size_t length);
  Formula draw(std::size_t n, OpenBound m);
  Formula draw_atom(std::size_t n, OpenBound m, BigInt rank) const;
  Formula draw_children(const Connective& c, std::size_t total, OpenBound m);

  const CountTable* table_;
  std::uint64_t seed_;
  std::mt19937_64 engine_;
  // Keyed by m, with SIZE_MAX for the unrestricted row.
  std::map<std::size_t, std::vector<std::vector<BigInt>>> powers_;
};

inline Formula sample_uniform(std::size_t n, OpenBound m, Sampler& sampler) {
  return sampler.sample(n, m);
}

// formula == C[phi] for some phi that is permissiveness(C)-open.
bool matches_template(const Formula& formula, const Template& tmpl);

struct MonteCarloEstimate {
  std::size_t trials = 0;
  std::size_t hits = 0;
  double fraction = 0.0;
  double standard_error = 0.0;  // sqrt(p (1 - p) / trials)
};

// Fraction of uniform sentences of weight n that match the template.
MonteCarloEstimate estimate_density_mc(const Template& tmpl, std::size_t n, std::size_t trials,
                                       Sampler& sampler);

// "# ..." header recording generator, seed, n, m and signature fingerprint,
// followed by one rendered formula per line.
std::string sample_dump(Sampler& sampler, std::size_t n, OpenBound m, std::size_t count);

}  // namespace dbd

#endif  // DBD_SAMPLER_HPP

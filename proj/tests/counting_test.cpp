#include "dbd/counting.hpp"

#include <gtest/gtest.h>

#include "dbd/enumerate.hpp"
#include "dbd/error.hpp"
#include "test_support.hpp"

namespace dbd {
namespace {

std::size_t oracle(std::size_t n, OpenBound m, const Signature& sig) {
  return enumerate(n, m, sig).size();
}

// Frozen from the enumeration oracle; OracleAgreesWithFrozenValues re-derives them.
const std::vector<unsigned> kAllFormulae = {0, 0, 0, 1, 5, 18, 58, 181};
const std::vector<unsigned> kSentences = {0, 0, 0, 0, 2, 8, 34, 124};

TEST(CountingTest, OracleAgreesWithFrozenValues) {
  Signature sig = Signature::standard();
  for (std::size_t n = 0; n < kAllFormulae.size(); ++n) {
    EXPECT_EQ(oracle(n, kAnyOpenness, sig), kAllFormulae[n]) << n;
    EXPECT_EQ(oracle(n, std::size_t{0}, sig), kSentences[n]) << n;
  }
  EXPECT_EQ(oracle(4, std::size_t{1}, sig), 3u);
  EXPECT_EQ(oracle(4, std::size_t{2}, sig), 5u);
  EXPECT_EQ(oracle(5, std::size_t{2}, sig), 16u);
}

TEST(CountingTest, CountInfinityMatchesFrozenValues) {
  std::vector<BigInt> a = count_infinity(7, Signature::standard());
  ASSERT_EQ(a.size(), 8u);
  for (std::size_t n = 0; n < a.size(); ++n) EXPECT_EQ(a[n], kAllFormulae[n]) << n;
}

TEST(CountingTest, CountMOpenMatchesFrozenValues) {
  CountTable table = count_m_open(7, Signature::standard());
  for (std::size_t n = 0; n <= 7; ++n) EXPECT_EQ(table.at(std::size_t{0}, n), kSentences[n]) << n;
  EXPECT_EQ(table.at(std::size_t{1}, 4), 3);
  EXPECT_EQ(table.at(std::size_t{2}, 4), 5);
  EXPECT_EQ(table.at(std::size_t{2}, 5), 16);
  EXPECT_EQ(table.at(kAnyOpenness, 7), 181);
}

class OracleEquivalence : public ::testing::TestWithParam<std::pair<const char*, std::size_t>> {};

TEST_P(OracleEquivalence, DpEqualsEnumeration) {
  auto [name, max_n] = GetParam();
  Signature sig = std::string(name) == "standard" ? Signature::standard()
                  : std::string(name) == "nand"   ? testing::nand_signature()
                                                  : testing::weighted_signature();
  CountTable table = count_m_open(max_n, sig);
  std::vector<BigInt> a = count_infinity(max_n, sig);
  for (std::size_t n = 0; n <= max_n; ++n) {
    std::vector<Formula> all = enumerate(n, kAnyOpenness, sig);
    ASSERT_EQ(a[n], all.size()) << name << " n=" << n;
    ASSERT_EQ(table.at_infinity(n), all.size());
    for (std::size_t m : {0, 1, 2, 3, 4}) {
      std::size_t expected = 0;
      for (const Formula& f : all) expected += is_m_open(f, m) ? 1 : 0;
      ASSERT_EQ(table.at(m, n), expected) << name << " m=" << m << " n=" << n;
    }
  }
}

INSTANTIATE_TEST_SUITE_P(Signatures, OracleEquivalence,
                         ::testing::Values(std::make_pair("standard", 12),
                                           std::make_pair("nand", 12),
                                           std::make_pair("weighted", 13)));

TEST(CountingTest, TruncationAndMonotonicity) {
  for (const Signature& sig : {Signature::standard(), testing::weighted_signature()}) {
    constexpr std::size_t N = 100;
    CountTable table = count_m_open(N, sig);
    for (std::size_t n = 0; n <= N; ++n) {
      for (std::size_t m = 0; m <= N; ++m) {
        ASSERT_LE(table.at(m, n), table.at(m + 1, n));
        ASSERT_LE(table.at(m, n), table.at_infinity(n));
        if (m >= n) ASSERT_EQ(table.at(m, n), table.at_infinity(n));
      }
    }
  }
}

TEST(CountingTest, KeptRowsAgreeWithFullTable) {
  Signature sig = Signature::standard();
  CountTable full = count_m_open(60, sig);
  CountTable partial = count_m_open(60, sig, CountOptions{std::size_t{3}});
  EXPECT_EQ(partial.kept_rows(), 3u);
  for (std::size_t n = 0; n <= 60; ++n) {
    for (std::size_t m = 0; m <= 3; ++m) ASSERT_EQ(partial.at(m, n), full.at(m, n));
  }
  EXPECT_TRUE(partial.has(59, 59));
  EXPECT_FALSE(partial.has(4, 60));
  EXPECT_THROW(partial.at(std::size_t{4}, 60), DataError);
  EXPECT_THROW(full.at(std::size_t{0}, 61), DataError);
}

TEST(CountingTest, ZeroSizeTable) {
  CountTable table = count_m_open(0, Signature::standard());
  EXPECT_EQ(table.at_infinity(0), 0);
  EXPECT_EQ(table.at(std::size_t{0}, 0), 0);
  EXPECT_EQ(count_infinity(0, Signature::standard()).size(), 1u);
}

TEST(CountingTest, AtomKernelGap) {
  Signature sig = Signature::standard();
  EXPECT_EQ(atom_kernel_gap(5, 3, sig), 0);
  EXPECT_EQ(atom_kernel_gap(5, 1, sig), 3);
  EXPECT_EQ(atom_kernel_gap(3, 1, sig), 0);
  EXPECT_EQ(atom_count(5, kAnyOpenness, sig), 3);
  EXPECT_EQ(atom_count(5, std::size_t{1}, sig), 0);
  for (std::size_t n = 0; n <= 200; ++n) {
    for (std::size_t m = 0; m <= 200; ++m) {
      BigInt gap = atom_kernel_gap(n, m, sig);
      long bound = 2 * std::max<long>(0, static_cast<long>(n) - static_cast<long>(m) - 2);
      ASSERT_GE(gap, 0);
      ASSERT_LE(gap, bound) << n << ' ' << m;
    }
  }
}

TEST(CountingTest, AtomCountUnitWeightsClosedForm) {
  Signature sig = Signature::standard();
  for (std::size_t n = 3; n < 50; ++n) EXPECT_EQ(atom_count(n, kAnyOpenness, sig), n - 2);
}

TEST(CountingTest, TsvExport) {
  CountTable table = count_m_open(4, Signature::standard());
  std::string tsv = table.to_tsv({std::size_t{0}, kAnyOpenness});
  EXPECT_EQ(tsv,
            "m\tn\tcount\n"
            "0\t0\t0\n0\t1\t0\n0\t2\t0\n0\t3\t0\n0\t4\t2\n"
            "inf\t0\t0\ninf\t1\t0\ninf\t2\t0\ninf\t3\t1\ninf\t4\t5\n");
}

TEST(CountingTest, SeriesPowers) {
  std::vector<BigInt> row = {0, 1, 2, 3};
  auto powers = series_powers(row, 3);
  ASSERT_EQ(powers.size(), 3u);
  EXPECT_EQ(powers[1], (std::vector<BigInt>{0, 0, 1, 4}));
  EXPECT_EQ(powers[2], (std::vector<BigInt>{0, 0, 0, 1}));
}

TEST(CountingTest, ExceedsMachineWords) {
  std::vector<BigInt> a = count_infinity(60, Signature::standard());
  EXPECT_GT(a[60], BigInt("18446744073709551615"));
  CountTable table = count_m_open(60, Signature::standard(), CountOptions{std::size_t{0}});
  EXPECT_EQ(table.at_infinity(60), a[60]);
}

}  // namespace
}  // namespace dbd

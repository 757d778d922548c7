#ifndef DBD_TESTS_TEST_SUPPORT_HPP
#define DBD_TESTS_TEST_SUPPORT_HPP

#include "dbd/formula.hpp"
#include "dbd/signature.hpp"

namespace dbd::testing {

inline Signature nand_signature() { return Signature({{"nand", 2, 1}}); }

inline Signature and_not_signature() { return Signature({{"and", 2, 1}, {"not", 1, 1}}); }

inline Signature implies_signature() {
  return Signature({{"and", 2, 1}, {"or", 2, 1}, {"not", 1, 1}, {"implies", 2, 1}});
}

// Mixed weights and a ternary connective; exercises every offset in the DP.
inline Signature weighted_signature() {
  return Signature({{"and", 2, 2}, {"not", 1, 1}, {"ite", 3, 1}},
                   ConstructorWeights{.quantifier = 2, .membership = 1, .zero = 1, .succ = 2});
}

// ∃∀(0 ∉ 1)
inline Formula empty_set_axiom() {
  return Formula::exists(Formula::forall(Formula::connective("not", {Formula::atom(0, 1)})));
}

}  // namespace dbd::testing

#endif  // DBD_TESTS_TEST_SUPPORT_HPP

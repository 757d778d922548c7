#ifndef DBD_ENUMERATE_HPP
#define DBD_ENUMERATE_HPP

#include <cstddef>
#include <optional>
#include <vector>

#include "dbd/formula.hpp"
#include "dbd/signature.hpp"

namespace dbd {

// Upper bound on openness; nullopt means unconstrained.
using OpenBound = std::optional<std::size_t>;
inline constexpr OpenBound kAnyOpenness = std::nullopt;

inline constexpr std::size_t kDefaultEnumerationLimit = 16;

// Brute-force list of every formula of exactly `n` weight that is m-open.
// Generation order: atoms by (lhs, rhs), then forall, exists, then connectives
// in signature order with child sizes and children in lexicographic order.
// Throws DataError when n exceeds `limit`.
std::vector<Formula> enumerate(std::size_t n, OpenBound m, const Signature& sig,
                               std::size_t limit = kDefaultEnumerationLimit);

}  // namespace dbd

#endif  // DBD_ENUMERATE_HPP

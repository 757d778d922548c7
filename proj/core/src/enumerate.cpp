#include "dbd/enumerate.hpp"

#include <functional>

#include "dbd/error.hpp"

namespace dbd {

namespace {

class Enumerator {
 public:
  explicit Enumerator(const Signature& sig) : sig_(sig) {}

  const std::vector<Formula>& all(std::size_t n) {
    if (n < cache_.size() && cache_[n]) return *cache_[n];
    if (cache_.size() <= n) cache_.resize(n + 1);
    std::vector<Formula> out;
    build(n, out);
    cache_[n] = std::move(out);
    return *cache_[n];
  }

 private:
  void build(std::size_t n, std::vector<Formula>& out) {
    const ConstructorWeights& w = sig_.weights();
    if (n < sig_.min_formula_size()) return;

    // Atoms: index weights must sum to n - membership.
    std::size_t budget = n - w.membership;
    for (std::uint64_t lhs = 0; sig_.index_weight(lhs) + w.zero <= budget; ++lhs) {
      std::size_t rest = budget - sig_.index_weight(lhs);
      if ((rest - w.zero) % w.succ != 0) continue;
      out.push_back(Formula::atom(lhs, (rest - w.zero) / w.succ));
    }

    if (n >= w.quantifier) {
      const std::vector<Formula>& bodies = all(n - w.quantifier);
      for (const Formula& body : bodies) out.push_back(Formula::forall(body));
      for (const Formula& body : bodies) out.push_back(Formula::exists(body));
    }

    for (const Connective& c : sig_.connectives()) {
      if (n < c.weight) continue;
      std::vector<Formula> children;
      children.reserve(c.arity);
      emit_children(c, n - c.weight, children, out);
    }
  }

  // Fill the remaining argument slots with total weight `remaining`.
  void emit_children(const Connective& c, std::size_t remaining, std::vector<Formula>& children,
                     std::vector<Formula>& out) {
    std::size_t slots_left = c.arity - children.size();
    std::size_t min_size = sig_.min_formula_size();
    if (slots_left == 1) {
      for (const Formula& last : all(remaining)) {
        children.push_back(last);
        out.push_back(Formula::connective(c.name, children));
        children.pop_back();
      }
      return;
    }
    if (remaining < slots_left * min_size) return;
    std::size_t reserve = (slots_left - 1) * min_size;
    for (std::size_t first = min_size; first + reserve <= remaining; ++first) {
      // Copy: all() may reallocate the cache while we recurse.
      std::vector<Formula> candidates = all(first);
      for (const Formula& child : candidates) {
        children.push_back(child);
        emit_children(c, remaining - first, children, out);
        children.pop_back();
      }
    }
  }

  const Signature& sig_;
  std::vector<std::optional<std::vector<Formula>>> cache_;
};

}  // namespace

std::vector<Formula> enumerate(std::size_t n, OpenBound m, const Signature& sig, std::size_t limit) {
  if (n > limit) {
    throw DataError("enumeration size " + std::to_string(n) + " exceeds the limit of " +
                    std::to_string(limit));
  }
  Enumerator enumerator(sig);
  std::vector<Formula> every = enumerator.all(n);
  if (!m) return every;
  std::vector<Formula> out;
  for (const Formula& f : every) {
    if (is_m_open(f, *m)) out.push_back(f);
  }
  return out;
}

}  // namespace dbd

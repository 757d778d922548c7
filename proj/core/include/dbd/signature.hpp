#ifndef DBD_SIGNATURE_HPP
#define DBD_SIGNATURE_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace dbd {

struct Connective {
  std::string name;
  std::size_t arity = 1;
  std::size_t weight = 1;

  friend bool operator==(const Connective&, const Connective&) = default;
};

// Weights of the fixed constructors: both quantifiers, membership, index zero
// and index successor. An index of value v weighs zero + v * succ.
struct ConstructorWeights {
  std::size_t quantifier = 1;
  std::size_t membership = 1;
  std::size_t zero = 1;
  std::size_t succ = 1;

  friend bool operator==(const ConstructorWeights&, const ConstructorWeights&) = default;
};

// The connective set together with all constructor weights. Immutable once
// built; the constructor validates names, arities and weights.
class Signature {
 public:
  explicit Signature(std::vector<Connective> connectives, ConstructorWeights weights = {});

  // {and/2, or/2, not/1} with unit weights.
  static Signature standard();

  // JSON: {"connectives": [{"name", "arity", "weight"?}], "quantifier_weight"?, ...}
  static Signature from_json(std::string_view text);
  static Signature from_file(const std::string& path);
  std::string to_json() const;

  const std::vector<Connective>& connectives() const noexcept { return connectives_; }
  const ConstructorWeights& weights() const noexcept { return weights_; }

  const Connective* find(std::string_view name) const noexcept;
  std::optional<std::size_t> index_of(std::string_view name) const noexcept;

  std::size_t max_arity() const noexcept;

  // At least one connective of arity >= 2.
  bool admissible_for_asymptotics() const noexcept { return max_arity() >= 2; }

  // Weight of an index with value v.
  std::size_t index_weight(std::uint64_t value) const noexcept {
    return weights_.zero + static_cast<std::size_t>(value) * weights_.succ;
  }

  // Smallest formula: an atom over two zero indices.
  std::size_t min_formula_size() const noexcept { return weights_.membership + 2 * weights_.zero; }

  // FNV-1a over the canonical JSON form; stable across platforms.
  std::uint64_t fingerprint() const;

  friend bool operator==(const Signature&, const Signature&) = default;

 private:
  std::vector<Connective> connectives_;
  ConstructorWeights weights_;
};

}  // namespace dbd

#endif  // DBD_SIGNATURE_HPP

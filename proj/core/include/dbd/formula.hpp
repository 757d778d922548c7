#ifndef DBD_FORMULA_HPP
#define DBD_FORMULA_HPP

#include <compare>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "dbd/signature.hpp"

namespace dbd {

enum class NodeKind : std::uint8_t { Atom, Forall, Exists, Connective, Hole };

// Immutable De Bruijn formula. Copies share structure; all members are const.
//
// Atom(i, j) stands for (i ∈ j) where i and j are index values. A Hole only
// occurs inside template skeletons.
class Formula {
 public:
  static Formula atom(std::uint64_t lhs, std::uint64_t rhs);
  static Formula forall(Formula body);
  static Formula exists(Formula body);
  static Formula connective(std::string name, std::vector<Formula> children);
  static Formula hole();

  NodeKind kind() const noexcept;
  bool is_quantifier() const noexcept {
    return kind() == NodeKind::Forall || kind() == NodeKind::Exists;
  }

  // Atom only.
  std::uint64_t lhs() const noexcept;
  std::uint64_t rhs() const noexcept;
  // Connective only.
  const std::string& name() const noexcept;
  // Quantifier bodies appear as a single child.
  std::span<const Formula> children() const noexcept;
  const Formula& body() const;

  std::size_t hole_count() const noexcept;

  friend bool operator==(const Formula& a, const Formula& b) noexcept;
  friend std::strong_ordering operator<=>(const Formula& a, const Formula& b) noexcept;

 private:
  struct Node;
  explicit Formula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

  std::shared_ptr<const Node> node_;
};

// Total constructor weight; a hole weighs zero.
std::size_t size(const Formula& formula, const Signature& sig);

// Least m such that prefixing m quantifiers closes the formula.
std::size_t openness(const Formula& formula);

inline bool is_m_open(const Formula& formula, std::size_t m) { return openness(formula) <= m; }
inline bool is_sentence(const Formula& formula) { return openness(formula) == 0; }

// Throws SignatureError on unknown connectives or wrong child counts.
void validate(const Formula& formula, const Signature& sig);

// A formula with exactly one hole.
class Template {
 public:
  // Throws TemplateError unless the skeleton has exactly one hole.
  explicit Template(Formula skeleton);

  const Formula& skeleton() const noexcept { return skeleton_; }
  // Quantifiers strictly above the hole.
  std::size_t hole_depth() const noexcept { return hole_depth_; }
  // Root-to-hole child positions.
  const std::vector<std::size_t>& hole_path() const noexcept { return hole_path_; }
  // Total weight with the hole counted as zero.
  std::size_t size(const Signature& sig) const { return dbd::size(skeleton_, sig); }

  friend bool operator==(const Template& a, const Template& b) noexcept {
    return a.skeleton_ == b.skeleton_;
  }

 private:
  Formula skeleton_;
  std::size_t hole_depth_ = 0;
  std::vector<std::size_t> hole_path_;
};

// Largest m for which every m-open filler yields a sentence (the hole depth).
// Throws TemplateError when the skeleton has free indices outside the hole.
std::size_t permissiveness(const Template& tmpl);

Formula substitute(const Template& tmpl, const Formula& filler);

// The subformula sitting at the template's hole position, if `formula` agrees
// with the skeleton everywhere else.
std::optional<Formula> match_skeleton(const Formula& formula, const Template& tmpl);

}  // namespace dbd

#endif  // DBD_FORMULA_HPP

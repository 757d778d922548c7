#include "dbd/formula.hpp"

#include <algorithm>
#include <cassert>

#include "dbd/error.hpp"

namespace dbd {

struct Formula::Node {
  NodeKind kind;
  std::uint64_t lhs = 0;
  std::uint64_t rhs = 0;
  std::string name;
  std::vector<Formula> children;
  std::size_t holes = 0;
};

namespace {

std::size_t count_holes(const std::vector<Formula>& children) {
  std::size_t total = 0;
  for (const Formula& child : children) total += child.hole_count();
  return total;
}

}  // namespace

Formula Formula::atom(std::uint64_t lhs, std::uint64_t rhs) {
  return Formula(std::make_shared<const Node>(Node{NodeKind::Atom, lhs, rhs, {}, {}, 0}));
}

Formula Formula::forall(Formula body) {
  std::size_t holes = body.hole_count();
  return Formula(std::make_shared<const Node>(
      Node{NodeKind::Forall, 0, 0, {}, {std::move(body)}, holes}));
}

Formula Formula::exists(Formula body) {
  std::size_t holes = body.hole_count();
  return Formula(std::make_shared<const Node>(
      Node{NodeKind::Exists, 0, 0, {}, {std::move(body)}, holes}));
}

Formula Formula::connective(std::string name, std::vector<Formula> children) {
  std::size_t holes = count_holes(children);
  return Formula(std::make_shared<const Node>(
      Node{NodeKind::Connective, 0, 0, std::move(name), std::move(children), holes}));
}

Formula Formula::hole() {
  return Formula(std::make_shared<const Node>(Node{NodeKind::Hole, 0, 0, {}, {}, 1}));
}

NodeKind Formula::kind() const noexcept { return node_->kind; }
std::uint64_t Formula::lhs() const noexcept { return node_->lhs; }
std::uint64_t Formula::rhs() const noexcept { return node_->rhs; }
const std::string& Formula::name() const noexcept { return node_->name; }
std::span<const Formula> Formula::children() const noexcept { return node_->children; }
std::size_t Formula::hole_count() const noexcept { return node_->holes; }

const Formula& Formula::body() const {
  if (!is_quantifier()) throw Error("body() called on a non-quantifier node");
  return node_->children.front();
}

bool operator==(const Formula& a, const Formula& b) noexcept {
  return (a <=> b) == std::strong_ordering::equal;
}

std::strong_ordering operator<=>(const Formula& a, const Formula& b) noexcept {
  if (a.node_ == b.node_) return std::strong_ordering::equal;
  const Formula::Node& x = *a.node_;
  const Formula::Node& y = *b.node_;
  if (auto c = x.kind <=> y.kind; c != 0) return c;
  if (auto c = x.lhs <=> y.lhs; c != 0) return c;
  if (auto c = x.rhs <=> y.rhs; c != 0) return c;
  if (auto c = x.name.compare(y.name) <=> 0; c != 0) return c;
  return std::lexicographical_compare_three_way(x.children.begin(), x.children.end(),
                                                y.children.begin(), y.children.end());
}

std::size_t size(const Formula& formula, const Signature& sig) {
  const ConstructorWeights& w = sig.weights();
  switch (formula.kind()) {
    case NodeKind::Atom:
      return w.membership + sig.index_weight(formula.lhs()) + sig.index_weight(formula.rhs());
    case NodeKind::Forall:
    case NodeKind::Exists:
      return w.quantifier + size(formula.body(), sig);
    case NodeKind::Connective: {
      const Connective* c = sig.find(formula.name());
      if (c == nullptr) throw SignatureError("unknown connective '" + formula.name() + "'");
      std::size_t total = c->weight;
      for (const Formula& child : formula.children()) total += size(child, sig);
      return total;
    }
    case NodeKind::Hole:
      return 0;
  }
  return 0;
}

namespace {

// Largest (index + 1 - depth) over all index occurrences, or 0.
std::uint64_t openness_at(const Formula& formula, std::uint64_t depth) {
  switch (formula.kind()) {
    case NodeKind::Atom: {
      std::uint64_t top = std::max(formula.lhs(), formula.rhs()) + 1;
      return top > depth ? top - depth : 0;
    }
    case NodeKind::Forall:
    case NodeKind::Exists:
      return openness_at(formula.body(), depth + 1);
    case NodeKind::Connective: {
      std::uint64_t best = 0;
      for (const Formula& child : formula.children()) best = std::max(best, openness_at(child, depth));
      return best;
    }
    case NodeKind::Hole:
      return 0;
  }
  return 0;
}

bool find_hole(const Formula& formula, std::size_t depth, std::vector<std::size_t>& path,
               std::size_t& hole_depth) {
  if (formula.kind() == NodeKind::Hole) {
    hole_depth = depth;
    return true;
  }
  std::size_t next_depth = formula.is_quantifier() ? depth + 1 : depth;
  auto children = formula.children();
  for (std::size_t i = 0; i < children.size(); ++i) {
    if (children[i].hole_count() == 0) continue;
    path.push_back(i);
    if (find_hole(children[i], next_depth, path, hole_depth)) return true;
    path.pop_back();
  }
  return false;
}

Formula rebuild_with(const Formula& node, std::size_t child_index, Formula replacement) {
  switch (node.kind()) {
    case NodeKind::Forall:
      return Formula::forall(std::move(replacement));
    case NodeKind::Exists:
      return Formula::exists(std::move(replacement));
    case NodeKind::Connective: {
      std::vector<Formula> children(node.children().begin(), node.children().end());
      children[child_index] = std::move(replacement);
      return Formula::connective(node.name(), std::move(children));
    }
    default:
      assert(false && "leaf nodes have no children");
      return node;
  }
}

Formula replace_along(const Formula& node, std::span<const std::size_t> path,
                      const Formula& filler) {
  if (path.empty()) return filler;
  const Formula& child = node.children()[path.front()];
  return rebuild_with(node, path.front(), replace_along(child, path.subspan(1), filler));
}

}  // namespace

std::size_t openness(const Formula& formula) {
  return static_cast<std::size_t>(openness_at(formula, 0));
}

void validate(const Formula& formula, const Signature& sig) {
  if (formula.kind() == NodeKind::Connective) {
    const Connective* c = sig.find(formula.name());
    if (c == nullptr) throw SignatureError("unknown connective '" + formula.name() + "'");
    if (c->arity != formula.children().size()) {
      throw SignatureError("connective '" + c->name + "' expects " + std::to_string(c->arity) +
                           " argument(s), got " + std::to_string(formula.children().size()));
    }
  }
  for (const Formula& child : formula.children()) validate(child, sig);
}

Template::Template(Formula skeleton) : skeleton_(std::move(skeleton)) {
  if (skeleton_.hole_count() != 1) {
    throw TemplateError("template must contain exactly one hole, found " +
                        std::to_string(skeleton_.hole_count()));
  }
  find_hole(skeleton_, 0, hole_path_, hole_depth_);
}

std::size_t permissiveness(const Template& tmpl) {
  if (openness(tmpl.skeleton()) != 0) {
    throw TemplateError("template skeleton has free indices outside the hole");
  }
  return tmpl.hole_depth();
}

Formula substitute(const Template& tmpl, const Formula& filler) {
  return replace_along(tmpl.skeleton(), tmpl.hole_path(), filler);
}

std::optional<Formula> match_skeleton(const Formula& formula, const Template& tmpl) {
  const Formula* current = &formula;
  const Formula* pattern = &tmpl.skeleton();
  for (std::size_t step : tmpl.hole_path()) {
    if (current->kind() != pattern->kind() || current->name() != pattern->name() ||
        current->children().size() != pattern->children().size()) {
      return std::nullopt;
    }
    auto have = current->children();
    auto want = pattern->children();
    for (std::size_t i = 0; i < have.size(); ++i) {
      if (i != step && have[i] != want[i]) return std::nullopt;
    }
    current = &have[step];
    pattern = &want[step];
  }
  return *current;
}

}  // namespace dbd

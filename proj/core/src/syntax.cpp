#include "dbd/syntax.hpp"

#include <cctype>
#include <limits>

#include "dbd/error.hpp"

namespace dbd {

namespace {

class Parser {
 public:
  Parser(std::string_view text, const Signature& sig, bool allow_hole)
      : text_(text), sig_(sig), allow_hole_(allow_hole) {}

  Formula parse_all() {
    Formula result = parse();
    skip_space();
    if (pos_ != text_.size()) fail("trailing input");
    return result;
  }

 private:
  [[noreturn]] void fail(const std::string& message) const { throw SyntaxError(message, pos_); }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool at_end() {
    skip_space();
    return pos_ >= text_.size();
  }

  char peek() {
    skip_space();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }

  void expect(char ch) {
    if (peek() != ch) fail(std::string("expected '") + ch + "'");
    ++pos_;
  }

  static bool word_char(char ch) {
    return std::isalnum(static_cast<unsigned char>(ch)) || ch == '_' || ch == '-';
  }

  std::string word() {
    skip_space();
    std::size_t start = pos_;
    while (pos_ < text_.size() && word_char(text_[pos_])) ++pos_;
    if (start == pos_) fail("expected a name");
    return std::string(text_.substr(start, pos_ - start));
  }

  std::uint64_t natural() {
    skip_space();
    std::size_t start = pos_;
    std::uint64_t value = 0;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      std::uint64_t digit = static_cast<std::uint64_t>(text_[pos_] - '0');
      if (value > (std::numeric_limits<std::uint64_t>::max() - digit) / 10) {
        pos_ = start;
        fail("index out of range");
      }
      value = value * 10 + digit;
      ++pos_;
    }
    if (start == pos_) fail("expected an index");
    if (pos_ < text_.size() && word_char(text_[pos_])) fail("malformed index");
    return value;
  }

  Formula parse() {
    char ch = peek();
    if (ch == '_') {
      std::size_t at = pos_;
      ++pos_;
      if (pos_ < text_.size() && word_char(text_[pos_])) {
        pos_ = at;
        fail("unexpected name starting with '_'");
      }
      if (!allow_hole_) {
        pos_ = at;
        fail("hole '_' is only allowed in templates");
      }
      return Formula::hole();
    }
    if (ch != '(') fail(at_end() ? "unexpected end of input" : "expected '('");
    ++pos_;
    std::size_t head_pos = (skip_space(), pos_);
    std::string head = word();
    if (head == "in") {
      std::uint64_t lhs = natural();
      std::uint64_t rhs = natural();
      expect(')');
      return Formula::atom(lhs, rhs);
    }
    if (head == "forall" || head == "exists") {
      Formula body = parse();
      expect(')');
      return head == "forall" ? Formula::forall(std::move(body)) : Formula::exists(std::move(body));
    }
    const Connective* c = sig_.find(head);
    if (c == nullptr) {
      pos_ = head_pos;
      fail("unknown connective '" + head + "'");
    }
    std::vector<Formula> children;
    while (peek() != ')') {
      if (at_end()) fail("unexpected end of input");
      children.push_back(parse());
    }
    if (children.size() != c->arity) {
      pos_ = head_pos;
      fail("arity mismatch: '" + head + "' expects " + std::to_string(c->arity) +
           " argument(s), got " + std::to_string(children.size()));
    }
    ++pos_;
    return Formula::connective(std::move(head), std::move(children));
  }

  std::string_view text_;
  const Signature& sig_;
  bool allow_hole_;
  std::size_t pos_ = 0;
};

void render_into(const Formula& formula, std::string& out) {
  switch (formula.kind()) {
    case NodeKind::Atom:
      out += "(in ";
      out += std::to_string(formula.lhs());
      out += ' ';
      out += std::to_string(formula.rhs());
      out += ')';
      return;
    case NodeKind::Forall:
    case NodeKind::Exists:
      out += formula.kind() == NodeKind::Forall ? "(forall " : "(exists ";
      render_into(formula.body(), out);
      out += ')';
      return;
    case NodeKind::Connective:
      out += '(';
      out += formula.name();
      for (const Formula& child : formula.children()) {
        out += ' ';
        render_into(child, out);
      }
      out += ')';
      return;
    case NodeKind::Hole:
      out += '_';
      return;
  }
}

}  // namespace

Formula parse_formula(std::string_view text, const Signature& sig) {
  return Parser(text, sig, false).parse_all();
}

Template parse_template(std::string_view text, const Signature& sig) {
  Formula skeleton = Parser(text, sig, true).parse_all();
  return Template(std::move(skeleton));
}

std::string render(const Formula& formula) {
  std::string out;
  render_into(formula, out);
  return out;
}

}  // namespace dbd

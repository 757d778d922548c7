#ifndef DBD_SYNTAX_HPP
#define DBD_SYNTAX_HPP

#include <string>
#include <string_view>

#include "dbd/formula.hpp"
#include "dbd/signature.hpp"

namespace dbd {

// S-expression syntax:
//
//   formula := "(" "in" nat nat ")"
//            | "(" "forall" formula ")" | "(" "exists" formula ")"
//            | "(" name formula+ ")"
//   hole    := "_"            (templates only, wherever a formula may appear)
//
// Indices are written in decimal but still weigh zero + value * succ.
// Errors (bad tokens, unknown connective, wrong arity) raise SyntaxError.
Formula parse_formula(std::string_view text, const Signature& sig);
Template parse_template(std::string_view text, const Signature& sig);

std::string render(const Formula& formula);
inline std::string render(const Template& tmpl) { return render(tmpl.skeleton()); }

}  // namespace dbd

#endif  // DBD_SYNTAX_HPP

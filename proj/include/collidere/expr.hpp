#pragma once

#include <string>
#include <vector>

#include "collidere/types.hpp"

namespace collidere {

// Multiset of types written as `expr := term ("+" term)*`,
// `term := [count] name | [count] "@" graph-file-path`. Names follow the
// registry grammar; counts default to 1.
struct TypeExpression {
    std::string text;
    std::vector<SingularityType> types;  // expanded and normalized
};

// Throws SyntaxError (with the offending offset in args), the registry's
// SingularBranchType / UnknownName, or IoError for an unreadable graph file.
TypeExpression parse_expression(const std::string& text);

// Compact canonical form, e.g. "2A_7+4A_1". parse . print is the identity
// on expressions built from registry names.
std::string print_expression(const std::vector<SingularityType>& types);

// Report form with spaces, e.g. "2A_7 + 4A_1".
std::string print_expression_spaced(const std::vector<SingularityType>& types);

}  // namespace collidere

#ifndef RXO_PARSER_HPP_
#define RXO_PARSER_HPP_

#include <string>
#include <vector>

#include "rxo/ast.hpp"
#include "rxo/token.hpp"

namespace rxo {

// Parses a whole script into statements, in source order. The first error
// aborts with Error(ParseError) or Error(LexError); there is no recovery.
std::vector<Statement> parse_script(const std::string& source);

// Parses a source containing exactly one statement.
Statement parse_statement(const std::string& source);

// Parses a single expression (used for literals in snapshots and tools).
ExprPtr parse_expression(const std::string& source);

}  // namespace rxo

#endif  // RXO_PARSER_HPP_

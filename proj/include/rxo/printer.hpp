#ifndef RXO_PRINTER_HPP_
#define RXO_PRINTER_HPP_

#include <string>

#include "rxo/ast.hpp"

namespace rxo {

// Canonical text forms. format_statement(s) re-parses to a Statement that is
// structurally equal to s.
std::string format_statement(const Statement& stmt);
std::string format_query(const QueryExpr& q);
std::string format_expr(const Expr& e);
std::string format_valuable_type(const ValuableType& t, int indent = 0);

// Renders a double so that it reparses to the same value (shortest form).
std::string format_double(double v);

// Single-quoted string literal with '' escaping.
std::string quote_string(const std::string& s);

}  // namespace rxo

#endif  // RXO_PRINTER_HPP_

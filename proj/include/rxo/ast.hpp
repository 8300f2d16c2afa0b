#ifndef RXO_AST_HPP_
#define RXO_AST_HPP_

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "rxo/error.hpp"
#include "rxo/types.hpp"

namespace rxo {

// ---------------------------------------------------------------------------
// Expressions

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

// A literal as written. String literals double as datetime literals; the
// distinction is made from the expected type where the literal is used.
struct Literal {
  enum class Kind { Int, Float, Str, Bool, OidRef, RelationLit, TupleLit };
  Kind kind = Kind::Int;
  int64_t int_value = 0;
  double float_value = 0.0;
  std::string str_value;
  bool bool_value = false;
  uint64_t oid_value = 0;                    // OidRef: #N
  std::vector<std::vector<ExprPtr>> rows;    // RelationLit
  std::vector<ExprPtr> elems;                // TupleLit
  bool datetime_shaped = false;              // Str that lexed as a datetime
};

enum class BinaryOp { Add, Sub, Mul, Div, Eq, Ne, Lt, Le, Gt, Ge, And, Or };
enum class UnaryOp { Neg, Not };

struct PathRef {
  std::vector<std::string> segments;  // at least one

  std::string dotted() const;
};

struct Expr {
  struct Lit { Literal value; };
  struct Path { PathRef ref; };
  struct Unary { UnaryOp op; ExprPtr operand; };
  struct Binary { BinaryOp op; ExprPtr lhs, rhs; };

  std::variant<Lit, Path, Unary, Binary> node;
  SourcePos span;
};

ExprPtr make_literal(Literal v, SourcePos span = {});
ExprPtr make_path(PathRef ref, SourcePos span = {});
ExprPtr make_unary(UnaryOp op, ExprPtr operand, SourcePos span = {});
ExprPtr make_binary(BinaryOp op, ExprPtr lhs, ExprPtr rhs, SourcePos span = {});

// ---------------------------------------------------------------------------
// Queries

enum class AggKind { Sum, Count, Min, Max, Avg };

struct Projection {
  std::optional<AggKind> agg;
  PathRef path;
  std::optional<std::string> out_name;  // AS name
};

struct QuerySource {
  PathRef relation;                    // component, derived relation, or view
  std::optional<std::string> alias;
};

struct QueryExpr {
  std::vector<Projection> projections;
  std::vector<QuerySource> sources;
  ExprPtr predicate;                   // null when absent
  std::vector<PathRef> group_by;
};

// ---------------------------------------------------------------------------
// Procedure bodies

struct BodyStmt {
  struct SetComp { std::string component; ExprPtr value; };
  struct Insert { std::string component; std::vector<std::vector<ExprPtr>> rows; };
  struct DeleteRows { std::string component; ExprPtr predicate; };
  struct Return { ExprPtr value; };

  std::variant<SetComp, Insert, DeleteRows, Return> node;
  SourcePos span;
};

struct Param {
  std::string name;
  ScalarType type;
};

// ---------------------------------------------------------------------------
// Statements

struct ComponentSpec {
  std::string name;
  ValuableType type;            // for methods: the scalar return type
  bool is_method = false;
  std::vector<Param> params;    // methods only
  SourcePos span;
};

struct CreateClass {
  std::string name;
  std::optional<std::string> parent;
  std::vector<ComponentSpec> components;
};

struct RealizationSpec {
  enum class Kind { Stored, Query, Procedure };
  Kind kind = Kind::Stored;
  QueryExpr query;                       // Kind::Query
  std::vector<BodyStmt> body;            // Kind::Procedure
};

struct AlterRealize {
  std::string class_name;
  std::string component;
  // Optional restated signature, e.g. REALIZE DoShip(D DATETIME) BOOL.
  std::optional<std::vector<Param>> params;
  std::optional<ScalarType> return_type;
  RealizationSpec realization;
};

struct CreateView {
  std::string name;
  QueryExpr query;
};

struct CreateObjects {
  std::string class_name;
  std::vector<std::pair<std::string, ExprPtr>> initializers;
  uint64_t count = 1;
};

struct DeleteObjects {
  std::string class_name;
  ExprPtr predicate;  // null when absent
};

struct SelectStmt {
  QueryExpr query;
};

struct GroupCall {
  std::string class_name;
  std::string method;
  std::vector<ExprPtr> args;
  ExprPtr predicate;  // null when absent
};

struct GroupUpdate {
  PathRef relation;
  std::vector<std::pair<PathRef, ExprPtr>> assignments;
  ExprPtr predicate;  // null when absent
};

struct Statement {
  std::variant<CreateClass, AlterRealize, CreateView, CreateObjects,
               DeleteObjects, SelectStmt, GroupCall, GroupUpdate>
      node;
  SourcePos span;  // span of the first token
};

// Structural equality, ignoring spans. Used by the round-trip tests.
bool ast_equal(const Expr& a, const Expr& b);
bool ast_equal(const ExprPtr& a, const ExprPtr& b);
bool ast_equal(const QueryExpr& a, const QueryExpr& b);
bool ast_equal(const Statement& a, const Statement& b);
bool ast_equal(const BodyStmt& a, const BodyStmt& b);

}  // namespace rxo

#endif  // RXO_AST_HPP_

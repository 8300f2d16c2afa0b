#ifndef RXO_EVAL_HPP_
#define RXO_EVAL_HPP_

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "rxo/ast.hpp"
#include "rxo/database.hpp"
#include "rxo/paths.hpp"
#include "rxo/value.hpp"

namespace rxo {

// Evaluation context: global, or local to one object where component names
// resolve against the object's own components before global names.
struct EvalContext {
  static EvalContext global() { return {}; }
  static EvalContext object_local(uint64_t oid) {
    EvalContext ctx;
    ctx.local_oid = oid;
    return ctx;
  }
  std::optional<uint64_t> local_oid;
};

// Evaluates one component of one object, dispatching on the most-derived
// realization for the object's actual class.
Value eval_component(const Database& db, const Oid& oid,
                     const std::string& component);

// One derived relation: implicit UNION over all objects of the root class
// and its descendants, flattened along the relation's path prefix.
Relation eval_derived_relation(const Database& db,
                               const std::string& relation_name);

Relation eval_select(const Database& db, const QueryExpr& q,
                     const EvalContext& ctx);

Database create_view(const Database& db, const std::string& name,
                     const QueryExpr& q);
Relation eval_view(const Database& db, const std::string& name);

// --- shared evaluation helpers (also used by group execution) --------------

using PathLookup = std::function<Value(const PathRef&)>;

// Expression evaluation. Comparisons involving NULL yield FALSE; arithmetic
// involving NULL yields NULL; NULL in a boolean position counts as FALSE.
Value eval_expr(const Expr& e, const PathLookup& lookup);

// Missing predicate counts as TRUE.
bool predicate_true(const ExprPtr& predicate, const PathLookup& lookup);

// Coerces a value to a scalar type (integer widening to FLOAT, strings to
// DATETIME); throws TypeMismatch when impossible.
Value coerce_scalar(const Value& v, const ScalarType& type,
                    const std::string& where);

// Builds a value of the declared type from an expression whose leaves are
// literals or paths resolved through `lookup`. Relation and tuple literals
// are typed by the declared heading.
Value value_from_expr(const Database& db, const Expr& e,
                      const ValuableType& type, const PathLookup& lookup,
                      const std::string& where);

// A single object's flattened rows for one derived relation.
struct FlattenedRow {
  std::vector<Value> values;  // aligned with schema.heading()
  // When the relation's prefix is exactly one relation-valued component:
  // index of the element tuple this row was built from.
  std::optional<size_t> element;
};

std::vector<FlattenedRow> flatten_object(const Database& db,
                                         const DerivedRelationSchema& schema,
                                         const Oid& root);

// Navigates a non-multiplying path (no relation-valued steps) from an
// object: scalar components, dereferenced references, tuple fields. The root
// class name itself resolves to a reference to the object.
Value navigate_single(const Database& db, const Oid& oid,
                      const PathRef& path);

}  // namespace rxo

#endif  // RXO_EVAL_HPP_

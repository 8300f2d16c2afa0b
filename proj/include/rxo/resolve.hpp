#ifndef RXO_RESOLVE_HPP_
#define RXO_RESOLVE_HPP_

#include <optional>
#include <string>
#include <vector>

#include "rxo/ast.hpp"
#include "rxo/catalog.hpp"
#include "rxo/types.hpp"

namespace rxo {

// Static name-resolution scope: the global namespace, optionally preceded by
// an object-local class whose components shadow global names.
struct QueryScope {
  const Catalog& catalog;
  const std::string* local_class = nullptr;
};

struct ResolvedSource {
  enum class Kind { LocalComponent, DerivedRelation, View };
  Kind kind = Kind::DerivedRelation;
  std::string name;                 // component / relation / view name
  std::optional<std::string> alias;
  Heading heading;
};

struct ColumnRef {
  size_t source = 0;
  size_t attr = 0;
};

struct ResolvedQuery {
  std::vector<ResolvedSource> sources;
  std::vector<ColumnRef> projection_columns;  // aligned with projections
  std::vector<ColumnRef> group_columns;       // aligned with group_by
  Heading output;
  bool has_aggregates = false;
};

// Resolves every name in the query, checks aggregate/grouping rules, and
// infers the output heading. Throws UnknownRelation, UnknownAttribute,
// AmbiguousAttribute, AggregateMisuse or TypeMismatch.
ResolvedQuery resolve_query(const QueryExpr& q, const QueryScope& scope);

// Resolves one attribute path against the sources (alias-qualified or bare).
ColumnRef resolve_attribute(const std::vector<ResolvedSource>& sources,
                            const PathRef& path);

// Checks a Query realization against the declared component type; throws
// HeadingMismatch when the inferred heading is not assignment-compatible.
void check_realization_heading(const Catalog& catalog,
                               const std::string& class_name,
                               const ComponentDef& component,
                               const QueryExpr& query);

}  // namespace rxo

#endif  // RXO_RESOLVE_HPP_

#include "rxo/resolve.hpp"

#include <set>

#include "rxo/error.hpp"
#include "rxo/paths.hpp"

namespace rxo {

namespace {

bool numeric(const ScalarType& t) {
  return t.kind == ScalarType::Kind::Base &&
         (t.base == BaseType::Integer || t.base == BaseType::Float);
}

// Heading of a relation-typed component value; every field must be scalar.
Heading component_heading(const ComponentDef& comp) {
  Heading h;
  for (const Field& f : comp.type.fields) {
    if (!f.field_type().is_scalar())
      fail(ErrorCode::TypeMismatch,
           "component '" + comp.name + "' has a non-scalar field '" + f.name +
               "' and cannot be queried");
    h.push_back({f.name, f.field_type().scalar});
  }
  return h;
}

ResolvedSource resolve_source(const QuerySource& src, const QueryScope& scope,
                              const NamespaceIndex& index) {
  ResolvedSource out;
  out.alias = src.alias;
  const std::string name = src.relation.dotted();

  if (scope.local_class && src.relation.segments.size() == 1) {
    // Object-local names win over global ones.
    const ClassDef* cls = scope.catalog.find_class(*scope.local_class);
    if (cls) {
      for (const ComponentDef& comp :
           effective_components(scope.catalog, *scope.local_class)) {
        if (comp.name != name) continue;
        if (!comp.type.is_relation())
          fail(ErrorCode::UnknownRelation,
               "component '" + name + "' is not relation-typed");
        out.kind = ResolvedSource::Kind::LocalComponent;
        out.name = name;
        out.heading = component_heading(comp);
        return out;
      }
    }
  }

  if (const DerivedRelationSchema* schema = index.find(name)) {
    out.kind = ResolvedSource::Kind::DerivedRelation;
    out.name = name;
    out.heading = schema->heading();
    return out;
  }

  if (const ViewDef* view = scope.catalog.find_view(name)) {
    out.kind = ResolvedSource::Kind::View;
    out.name = name;
    QueryScope global{scope.catalog, nullptr};
    out.heading = resolve_query(view->query, global).output;
    return out;
  }

  fail(ErrorCode::UnknownRelation, "unknown relation '" + name + "'");
}

void resolve_predicate_paths(const Expr& e,
                             const std::vector<ResolvedSource>& sources) {
  if (const auto* p = std::get_if<Expr::Path>(&e.node)) {
    resolve_attribute(sources, p->ref);
    return;
  }
  if (const auto* u = std::get_if<Expr::Unary>(&e.node)) {
    resolve_predicate_paths(*u->operand, sources);
    return;
  }
  if (const auto* b = std::get_if<Expr::Binary>(&e.node)) {
    resolve_predicate_paths(*b->lhs, sources);
    resolve_predicate_paths(*b->rhs, sources);
    return;
  }
}

}  // namespace

ColumnRef resolve_attribute(const std::vector<ResolvedSource>& sources,
                            const PathRef& path) {
  std::vector<ColumnRef> candidates;
  const std::string full = path.dotted();

  for (size_t s = 0; s < sources.size(); ++s) {
    const ResolvedSource& src = sources[s];
    // Qualified by alias (or by name, for single-ident sources without alias).
    if (path.segments.size() >= 2) {
      std::string qualifier = src.alias ? *src.alias : src.name;
      if (path.segments[0] == qualifier) {
        std::string rest = full.substr(qualifier.size() + 1);
        for (size_t a = 0; a < src.heading.size(); ++a)
          if (src.heading[a].name == rest) candidates.push_back({s, a});
      }
    }
    // Bare attribute name (may itself be dotted).
    for (size_t a = 0; a < src.heading.size(); ++a)
      if (src.heading[a].name == full) candidates.push_back({s, a});
  }

  if (candidates.empty())
    fail(ErrorCode::UnknownAttribute, "unknown attribute '" + full + "'");
  if (candidates.size() > 1)
    fail(ErrorCode::AmbiguousAttribute,
         "attribute '" + full + "' resolves against more than one source");
  return candidates.front();
}

ResolvedQuery resolve_query(const QueryExpr& q, const QueryScope& scope) {
  ResolvedQuery out;
  NamespaceIndex index = build_namespace(scope.catalog);

  std::set<std::string> qualifiers;
  for (const QuerySource& src : q.sources) {
    ResolvedSource rs = resolve_source(src, scope, index);
    std::string qualifier = rs.alias ? *rs.alias : rs.name;
    if (!qualifiers.insert(qualifier).second)
      fail(ErrorCode::AmbiguousAttribute,
           "duplicate source name or alias '" + qualifier + "'");
    out.sources.push_back(std::move(rs));
  }

  for (const PathRef& g : q.group_by)
    out.group_columns.push_back(resolve_attribute(out.sources, g));

  auto column_type = [&](ColumnRef c) {
    return out.sources[c.source].heading[c.attr].type;
  };

  std::set<std::string> out_names;
  for (const Projection& p : q.projections) {
    ColumnRef col = resolve_attribute(out.sources, p.path);
    out.projection_columns.push_back(col);
    ScalarType type = column_type(col);

    if (p.agg) {
      out.has_aggregates = true;
      switch (*p.agg) {
        case AggKind::Sum:
          if (!numeric(type))
            fail(ErrorCode::AggregateMisuse, "SUM requires a numeric attribute");
          break;
        case AggKind::Avg:
          if (!numeric(type))
            fail(ErrorCode::AggregateMisuse, "AVG requires a numeric attribute");
          type = ScalarType::of(BaseType::Float);
          break;
        case AggKind::Count:
          type = ScalarType::of(BaseType::Integer);
          break;
        case AggKind::Min:
        case AggKind::Max:
          if (type.is_reference())
            fail(ErrorCode::AggregateMisuse,
                 "MIN/MAX are not defined for references");
          break;
      }
      if (*p.agg == AggKind::Avg) type = ScalarType::of(BaseType::Float);
    }

    std::string name = p.out_name ? *p.out_name : p.path.segments.back();
    if (!out_names.insert(name).second)
      fail(ErrorCode::AmbiguousAttribute,
           "duplicate output attribute '" + name + "'");
    out.output.push_back({std::move(name), type});
  }

  if (out.has_aggregates) {
    for (size_t i = 0; i < q.projections.size(); ++i) {
      if (q.projections[i].agg) continue;
      ColumnRef col = out.projection_columns[i];
      bool grouped = false;
      for (ColumnRef g : out.group_columns)
        if (g.source == col.source && g.attr == col.attr) grouped = true;
      if (!grouped)
        fail(ErrorCode::AggregateMisuse,
             "non-aggregate projection '" + q.projections[i].path.dotted() +
                 "' must appear in GROUP BY");
    }
  }

  if (q.predicate) resolve_predicate_paths(*q.predicate, out.sources);
  return out;
}

void check_realization_heading(const Catalog& catalog,
                               const std::string& class_name,
                               const ComponentDef& component,
                               const QueryExpr& query) {
  QueryScope scope{catalog, &class_name};
  Heading actual = resolve_query(query, scope).output;

  auto mismatch = [&](const std::string& detail) {
    std::string expected;
    if (component.type.is_relation()) {
      for (const Field& f : component.type.fields) {
        if (!expected.empty()) expected += ", ";
        expected += f.name + " " +
                    (f.field_type().is_scalar()
                         ? scalar_type_name(f.field_type().scalar)
                         : std::string("<non-scalar>"));
      }
    } else if (component.type.is_scalar()) {
      expected = scalar_type_name(component.type.scalar);
    }
    std::string got;
    for (const Attribute& a : actual) {
      if (!got.empty()) got += ", ";
      got += a.name + " " + scalar_type_name(a.type);
    }
    fail(ErrorCode::HeadingMismatch,
         "query result (" + got + ") does not match component '" +
             component.name + "' (" + expected + "): " + detail);
  };

  if (component.type.is_relation()) {
    if (actual.size() != component.type.fields.size())
      mismatch("attribute count differs");
    for (size_t i = 0; i < actual.size(); ++i) {
      const Field& f = component.type.fields[i];
      if (!f.field_type().is_scalar()) mismatch("non-scalar declared field");
      if (actual[i].name != f.name) mismatch("attribute name differs");
      if (actual[i].type != f.field_type().scalar)
        mismatch("attribute type differs");
    }
    return;
  }
  if (component.type.is_scalar()) {
    if (actual.size() != 1) mismatch("scalar component needs one attribute");
    if (actual[0].type != component.type.scalar) mismatch("type differs");
    return;
  }
  mismatch("tuple components cannot be query-realized");
}

}  // namespace rxo

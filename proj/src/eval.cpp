#include "rxo/eval.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "rxo/error.hpp"
#include "rxo/printer.hpp"
#include "rxo/resolve.hpp"

namespace rxo {

namespace {

// Guards against query realizations that read themselves.
struct EvalGuard {
  static thread_local std::vector<std::pair<uint64_t, std::string>> stack;

  EvalGuard(uint64_t oid, const std::string& comp) {
    for (const auto& [o, c] : stack)
      if (o == oid && c == comp)
        fail(ErrorCode::EvaluationError,
             "cyclic realization: component '" + comp + "' of object #" +
                 std::to_string(oid) + " depends on itself");
    stack.emplace_back(oid, comp);
  }
  ~EvalGuard() { stack.pop_back(); }
};

thread_local std::vector<std::pair<uint64_t, std::string>> EvalGuard::stack;

Value convert_query_result(const Relation& result, const ComponentDef& comp,
                           const Oid& oid) {
  if (comp.type.is_relation()) {
    Relation out;
    for (const Field& f : comp.type.fields)
      out.heading.push_back({f.name, f.field_type().scalar});
    out.rows = result.rows;
    out.canonicalize();
    return Value::relation(std::move(out));
  }
  if (comp.type.is_scalar()) {
    if (result.heading.size() != 1 || result.rows.size() != 1)
      fail(ErrorCode::EvaluationError,
           "query realization of scalar component '" + comp.name +
               "' of object #" + std::to_string(oid.value) +
               " did not produce exactly one value");
    const Value& v = result.rows[0][0];
    if (v.is_null())
      fail(ErrorCode::EvaluationError,
           "query realization of scalar component '" + comp.name +
               "' produced NULL");
    return v;
  }
  fail(ErrorCode::EvaluationError,
       "tuple component '" + comp.name + "' cannot be query-realized");
}

// --- flattening -------------------------------------------------------------

// Ordered tree over the attribute suffixes of one derived relation.
struct SuffixNode {
  bool terminal = false;                 // a path ends here
  std::string attr_name;                 // full dotted name when terminal
  std::vector<std::pair<std::string, SuffixNode>> children;

  SuffixNode& child(const std::string& seg) {
    for (auto& [name, node] : children)
      if (name == seg) return node;
    children.emplace_back(seg, SuffixNode{});
    return children.back().second;
  }
};

SuffixNode build_suffix_tree(const DerivedRelationSchema& schema) {
  SuffixNode root;
  for (const DerivedAttribute& attr : schema.attributes) {
    std::vector<std::string> segs;
    size_t start = 0;
    for (size_t i = 0; i <= attr.name.size(); ++i) {
      if (i == attr.name.size() || attr.name[i] == '.') {
        segs.push_back(attr.name.substr(start, i - start));
        start = i + 1;
      }
    }
    SuffixNode* node = &root;
    for (const std::string& seg : segs) node = &node->child(seg);
    node->terminal = true;
    node->attr_name = attr.name;
  }
  return root;
}

void collect_attr_names(const SuffixNode& node, std::vector<std::string>& out) {
  if (node.terminal) out.push_back(node.attr_name);
  for (const auto& [seg, child] : node.children) collect_attr_names(child, out);
}

// Position reached while flattening: an object, one tuple of a relation
// value, or a tuple value.
struct FlattenCtx {
  enum class Kind { Object, Row, Tuple } kind = Kind::Object;
  uint64_t oid = 0;                                      // Object
  std::vector<std::pair<std::string, Value>> fields;     // Row / Tuple
};

using PartialRow = std::map<std::string, Value>;

Value read_in_ctx(const Database& db, const FlattenCtx& ctx,
                  const std::string& name) {
  if (ctx.kind == FlattenCtx::Kind::Object)
    return eval_component(db, db.object(ctx.oid).oid, name);
  for (const auto& [fname, fvalue] : ctx.fields)
    if (fname == name) return fvalue;
  fail(ErrorCode::EvaluationError, "no field '" + name + "' at this position");
}

std::vector<PartialRow> cross_partials(std::vector<PartialRow> acc,
                                       const std::vector<PartialRow>& next) {
  std::vector<PartialRow> out;
  out.reserve(acc.size() * next.size());
  for (const PartialRow& a : acc) {
    for (const PartialRow& b : next) {
      PartialRow merged = a;
      merged.insert(b.begin(), b.end());
      out.push_back(std::move(merged));
    }
  }
  return out;
}

PartialRow null_padded(const SuffixNode& node) {
  std::vector<std::string> names;
  collect_attr_names(node, names);
  PartialRow row;
  for (const std::string& n : names) row.emplace(n, Value::null());
  return row;
}

FlattenCtx row_ctx(const Relation& rel, size_t row) {
  FlattenCtx ctx;
  ctx.kind = FlattenCtx::Kind::Row;
  for (size_t i = 0; i < rel.heading.size(); ++i)
    ctx.fields.emplace_back(rel.heading[i].name, rel.rows[row][i]);
  return ctx;
}

FlattenCtx tuple_ctx(const TupleValue& t) {
  FlattenCtx ctx;
  ctx.kind = FlattenCtx::Kind::Tuple;
  ctx.fields = t.fields;
  return ctx;
}

// Expands the suffix tree at one position; independent branches combine by
// cross product, an empty relation branch pads its attributes with NULL.
std::vector<PartialRow> expand(const Database& db, const FlattenCtx& ctx,
                               const SuffixNode& node) {
  std::vector<PartialRow> acc{PartialRow{}};
  for (const auto& [seg, child] : node.children) {
    Value v = read_in_ctx(db, ctx, seg);
    std::vector<PartialRow> branch;

    if (v.is_null()) {
      // Only reachable through NULLs produced by flattening artifacts.
      branch.push_back(null_padded(child));
    } else if (!child.children.empty()) {
      switch (v.kind()) {
        case ValueKind::Ref: {
          FlattenCtx target;
          target.kind = FlattenCtx::Kind::Object;
          target.oid = v.as_ref().value;
          branch = expand(db, target, child);
          if (child.terminal)
            for (PartialRow& r : branch) r.emplace(child.attr_name, v);
          break;
        }
        case ValueKind::Relation: {
          const Relation& rel = v.as_relation();
          if (rel.rows.empty()) {
            branch.push_back(null_padded(child));
          } else {
            for (size_t i = 0; i < rel.rows.size(); ++i) {
              std::vector<PartialRow> rows = expand(db, row_ctx(rel, i), child);
              branch.insert(branch.end(), rows.begin(), rows.end());
            }
          }
          break;
        }
        case ValueKind::Tuple:
          branch = expand(db, tuple_ctx(v.as_tuple()), child);
          break;
        default:
          fail(ErrorCode::EvaluationError,
               "path segment '" + seg + "' reaches a scalar but expects a "
               "structured value");
      }
    } else {
      PartialRow single;
      single.emplace(child.attr_name, v);
      branch.push_back(std::move(single));
    }
    acc = cross_partials(std::move(acc), branch);
  }
  return acc;
}

}  // namespace

Value eval_component(const Database& db, const Oid& oid,
                     const std::string& component) {
  const ObjectState& state = db.object(oid.value);
  ComponentDef comp =
      effective_component(db.catalog(), state.oid.cls, component);
  if (comp.is_method)
    fail(ErrorCode::EvaluationError,
         "component '" + component + "' is a method; methods are invoked, "
         "not read");
  switch (comp.realization.kind) {
    case Realization::Kind::Unrealized:
      fail(ErrorCode::UnrealizedComponent,
           "component '" + component + "' of class '" + state.oid.cls +
               "' has no realization");
    case Realization::Kind::Stored: {
      const Value* v = state.find(component);
      if (!v)
        fail(ErrorCode::EvaluationError,
             "object #" + std::to_string(oid.value) + " stores no '" +
                 component + "'");
      return *v;
    }
    case Realization::Kind::Query: {
      EvalGuard guard(oid.value, component);
      Relation result = eval_select(db, comp.realization.query,
                                    EvalContext::object_local(oid.value));
      return convert_query_result(result, comp, state.oid);
    }
    case Realization::Kind::Procedure:
      fail(ErrorCode::EvaluationError,
           "component '" + component + "' is procedure-realized; it is "
           "invoked, not read");
  }
  fail(ErrorCode::EvaluationError, "unreachable realization kind");
}

std::vector<FlattenedRow> flatten_object(const Database& db,
                                         const DerivedRelationSchema& schema,
                                         const Oid& root) {
  SuffixNode tree = build_suffix_tree(schema);

  // Navigate the relation's path prefix. Each step multiplies on
  // relation-valued components and dereferences references.
  struct Anchor {
    FlattenCtx ctx;
    std::optional<size_t> element;
  };
  std::vector<Anchor> anchors;
  {
    FlattenCtx start;
    start.kind = FlattenCtx::Kind::Object;
    start.oid = root.value;
    anchors.push_back({std::move(start), std::nullopt});
  }
  const bool single_relation_prefix = schema.prefix.size() == 1;

  for (size_t step = 0; step < schema.prefix.size(); ++step) {
    const std::string& seg = schema.prefix[step];
    std::vector<Anchor> next;
    for (const Anchor& a : anchors) {
      Value v = read_in_ctx(db, a.ctx, seg);
      switch (v.kind()) {
        case ValueKind::Ref: {
          FlattenCtx target;
          target.kind = FlattenCtx::Kind::Object;
          target.oid = v.as_ref().value;
          next.push_back({std::move(target), a.element});
          break;
        }
        case ValueKind::Relation: {
          const Relation& rel = v.as_relation();
          for (size_t i = 0; i < rel.rows.size(); ++i) {
            std::optional<size_t> element =
                single_relation_prefix && step == 0 ? std::optional<size_t>(i)
                                                    : a.element;
            next.push_back({row_ctx(rel, i), element});
          }
          break;
        }
        case ValueKind::Tuple:
          next.push_back({tuple_ctx(v.as_tuple()), a.element});
          break;
        case ValueKind::Null:
          // An empty upstream flattening artifact; contributes nothing.
          break;
        default:
          fail(ErrorCode::EvaluationError,
               "prefix segment '" + seg + "' of relation '" + schema.name +
                   "' does not reach a structured value");
      }
    }
    anchors = std::move(next);
  }

  std::vector<FlattenedRow> out;
  for (const Anchor& a : anchors) {
    for (PartialRow& partial : expand(db, a.ctx, tree)) {
      FlattenedRow row;
      row.element = a.element;
      row.values.push_back(Value::ref(root));
      for (const DerivedAttribute& attr : schema.attributes) {
        auto it = partial.find(attr.name);
        row.values.push_back(it == partial.end() ? Value::null() : it->second);
      }
      out.push_back(std::move(row));
    }
  }
  return out;
}

Relation eval_derived_relation(const Database& db,
                               const std::string& relation_name) {
  NamespaceIndex index = build_namespace(db.catalog());
  const DerivedRelationSchema* schema = index.find(relation_name);
  if (!schema)
    fail(ErrorCode::UnknownRelation,
         "unknown relation '" + relation_name + "'");

  Relation out;
  out.heading = schema->heading();
  for (const Oid& oid : extent(db, schema->root_class, true)) {
    for (FlattenedRow& row : flatten_object(db, *schema, oid))
      out.rows.push_back(std::move(row.values));
  }
  out.canonicalize();
  return out;
}

// --- expressions ------------------------------------------------------------

namespace {

[[noreturn]] void type_error(const std::string& what) {
  fail(ErrorCode::TypeMismatch, what);
}

bool is_numeric_kind(ValueKind k) {
  return k == ValueKind::Int || k == ValueKind::Float;
}

// Comparable pair: equal kinds, numeric mix, or datetime/string coercion.
std::pair<Value, Value> align_operands(Value a, Value b) {
  if (a.kind() == b.kind()) return {std::move(a), std::move(b)};
  if (is_numeric_kind(a.kind()) && is_numeric_kind(b.kind()))
    return {Value::real(a.numeric()), Value::real(b.numeric())};
  if (a.kind() == ValueKind::Datetime && b.kind() == ValueKind::Str)
    return {std::move(a), Value::datetime(b.as_str())};
  if (a.kind() == ValueKind::Str && b.kind() == ValueKind::Datetime)
    return {Value::datetime(a.as_str()), std::move(b)};
  type_error("cannot compare " + format_value(a) + " with " + format_value(b));
}

bool truthy(const Value& v) {
  if (v.is_null()) return false;  // NULL counts as FALSE in boolean position
  if (v.kind() != ValueKind::Bool)
    type_error("expected a BOOL value, got " + format_value(v));
  return v.as_bool();
}

Value eval_literal(const Literal& lit) {
  switch (lit.kind) {
    case Literal::Kind::Int: return Value::integer(lit.int_value);
    case Literal::Kind::Float: return Value::real(lit.float_value);
    case Literal::Kind::Str: return Value::str(lit.str_value);
    case Literal::Kind::Bool: return Value::boolean(lit.bool_value);
    case Literal::Kind::OidRef: return Value::ref(Oid{lit.oid_value, ""});
    case Literal::Kind::RelationLit:
    case Literal::Kind::TupleLit:
      fail(ErrorCode::EvaluationError,
           "relation and tuple literals are only valid where a declared "
           "type is known");
  }
  return Value::null();
}

Value arith(BinaryOp op, const Value& a, const Value& b) {
  if (a.is_null() || b.is_null()) return Value::null();
  if (!is_numeric_kind(a.kind()) || !is_numeric_kind(b.kind()))
    type_error("arithmetic needs numeric operands");
  if (a.kind() == ValueKind::Int && b.kind() == ValueKind::Int) {
    int64_t x = a.as_int(), y = b.as_int();
    switch (op) {
      case BinaryOp::Add: return Value::integer(x + y);
      case BinaryOp::Sub: return Value::integer(x - y);
      case BinaryOp::Mul: return Value::integer(x * y);
      case BinaryOp::Div:
        if (y == 0) fail(ErrorCode::EvaluationError, "division by zero");
        return Value::integer(x / y);
      default: break;
    }
  }
  double x = a.numeric(), y = b.numeric();
  switch (op) {
    case BinaryOp::Add: return Value::real(x + y);
    case BinaryOp::Sub: return Value::real(x - y);
    case BinaryOp::Mul: return Value::real(x * y);
    case BinaryOp::Div:
      if (y == 0.0) fail(ErrorCode::EvaluationError, "division by zero");
      return Value::real(x / y);
    default: break;
  }
  type_error("bad arithmetic operator");
}

Value compare(BinaryOp op, const Value& ra, const Value& rb) {
  // Any comparison touching NULL is FALSE.
  if (ra.is_null() || rb.is_null()) return Value::boolean(false);
  auto [a, b] = align_operands(ra, rb);
  if (op == BinaryOp::Eq || op == BinaryOp::Ne) {
    bool eq = compare_values(a, b) == 0;
    return Value::boolean(op == BinaryOp::Eq ? eq : !eq);
  }
  if (a.kind() == ValueKind::Ref)
    type_error("references support only equality comparison");
  int c = compare_values(a, b);
  switch (op) {
    case BinaryOp::Lt: return Value::boolean(c < 0);
    case BinaryOp::Le: return Value::boolean(c <= 0);
    case BinaryOp::Gt: return Value::boolean(c > 0);
    case BinaryOp::Ge: return Value::boolean(c >= 0);
    default: break;
  }
  type_error("bad comparison operator");
}

}  // namespace

Value eval_expr(const Expr& e, const PathLookup& lookup) {
  if (const auto* lit = std::get_if<Expr::Lit>(&e.node))
    return eval_literal(lit->value);
  if (const auto* p = std::get_if<Expr::Path>(&e.node)) return lookup(p->ref);
  if (const auto* u = std::get_if<Expr::Unary>(&e.node)) {
    Value v = eval_expr(*u->operand, lookup);
    if (u->op == UnaryOp::Not) return Value::boolean(!truthy(v));
    if (v.is_null()) return Value::null();
    if (v.kind() == ValueKind::Int) return Value::integer(-v.as_int());
    if (v.kind() == ValueKind::Float) return Value::real(-v.as_float());
    type_error("negation needs a numeric operand");
  }
  const auto& b = std::get<Expr::Binary>(e.node);
  switch (b.op) {
    case BinaryOp::And: {
      if (!truthy(eval_expr(*b.lhs, lookup))) return Value::boolean(false);
      return Value::boolean(truthy(eval_expr(*b.rhs, lookup)));
    }
    case BinaryOp::Or: {
      if (truthy(eval_expr(*b.lhs, lookup))) return Value::boolean(true);
      return Value::boolean(truthy(eval_expr(*b.rhs, lookup)));
    }
    case BinaryOp::Add:
    case BinaryOp::Sub:
    case BinaryOp::Mul:
    case BinaryOp::Div:
      return arith(b.op, eval_expr(*b.lhs, lookup), eval_expr(*b.rhs, lookup));
    default:
      return compare(b.op, eval_expr(*b.lhs, lookup), eval_expr(*b.rhs, lookup));
  }
}

bool predicate_true(const ExprPtr& predicate, const PathLookup& lookup) {
  if (!predicate) return true;
  return truthy(eval_expr(*predicate, lookup));
}

Value coerce_scalar(const Value& v, const ScalarType& type,
                    const std::string& where) {
  if (v.kind() == kind_for(type)) return v;
  if (!type.is_reference()) {
    if (type.base == BaseType::Float && v.kind() == ValueKind::Int)
      return Value::real(static_cast<double>(v.as_int()));
    if (type.base == BaseType::Datetime && v.kind() == ValueKind::Str)
      return Value::datetime(v.as_str());
  }
  type_error("value " + format_value(v) + " does not conform to " +
             scalar_type_name(type) + " in " + where);
}

Value value_from_expr(const Database& db, const Expr& e,
                      const ValuableType& type, const PathLookup& lookup,
                      const std::string& where) {
  if (type.is_scalar()) {
    Value v = coerce_scalar(eval_expr(e, lookup), type.scalar, where);
    if (type.scalar.is_reference() && v.kind() == ValueKind::Ref) {
      // Fill in the referenced class from the live object.
      Oid o = v.as_ref();
      if (!db.has_object(o.value))
        fail(ErrorCode::DanglingReference,
             "reference to missing object #" + std::to_string(o.value) +
                 " in " + where);
      o.cls = db.object(o.value).oid.cls;
      return Value::ref(std::move(o));
    }
    return v;
  }

  const auto* lit = std::get_if<Expr::Lit>(&e.node);
  if (type.is_relation()) {
    if (!lit || lit->value.kind != Literal::Kind::RelationLit)
      type_error("expected a relation literal in " + where);
    Relation rel;
    for (const Field& f : type.fields) {
      if (!f.field_type().is_scalar())
        type_error("relation field '" + f.name +
                   "' has a non-scalar type and admits no value in " + where);
      rel.heading.push_back({f.name, f.field_type().scalar});
    }
    for (const auto& row_exprs : lit->value.rows) {
      if (row_exprs.size() != type.fields.size())
        type_error("row width mismatch in " + where);
      std::vector<Value> row;
      for (size_t i = 0; i < row_exprs.size(); ++i)
        row.push_back(value_from_expr(db, *row_exprs[i],
                                      type.fields[i].field_type(), lookup,
                                      where + "." + type.fields[i].name));
      rel.rows.push_back(std::move(row));
    }
    rel.canonicalize();
    return Value::relation(std::move(rel));
  }

  // Tuple type.
  if (!lit || lit->value.kind != Literal::Kind::TupleLit)
    type_error("expected a tuple literal in " + where);
  if (lit->value.elems.size() != type.fields.size())
    type_error("tuple width mismatch in " + where);
  TupleValue t;
  for (size_t i = 0; i < type.fields.size(); ++i)
    t.fields.emplace_back(
        type.fields[i].name,
        value_from_expr(db, *lit->value.elems[i], type.fields[i].field_type(),
                        lookup, where + "." + type.fields[i].name));
  return Value::tuple(std::move(t));
}

// --- SELECT -----------------------------------------------------------------

namespace {

struct JoinedRows {
  std::vector<ResolvedSource> sources;
  std::vector<size_t> offsets;  // column offset per source
  Heading columns;
  std::vector<std::vector<Value>> rows;
};

JoinedRows materialize_sources(const Database& db, const QueryExpr& q,
                               const EvalContext& ctx,
                               const ResolvedQuery& resolved) {
  JoinedRows joined;
  joined.sources = resolved.sources;

  std::vector<Relation> relations;
  for (const ResolvedSource& src : resolved.sources) {
    switch (src.kind) {
      case ResolvedSource::Kind::LocalComponent: {
        const Oid& oid = db.object(*ctx.local_oid).oid;
        Value v = eval_component(db, oid, src.name);
        relations.push_back(v.as_relation());
        break;
      }
      case ResolvedSource::Kind::DerivedRelation:
        relations.push_back(eval_derived_relation(db, src.name));
        break;
      case ResolvedSource::Kind::View:
        relations.push_back(eval_view(db, src.name));
        break;
    }
  }

  size_t offset = 0;
  for (size_t s = 0; s < relations.size(); ++s) {
    joined.offsets.push_back(offset);
    offset += relations[s].heading.size();
    for (const Attribute& a : relations[s].heading)
      joined.columns.push_back(a);
  }

  // Cross product of all sources.
  std::vector<std::vector<Value>> rows{{}};
  for (const Relation& rel : relations) {
    std::vector<std::vector<Value>> next;
    next.reserve(rows.size() * rel.rows.size());
    for (const auto& prefix : rows) {
      for (const auto& row : rel.rows) {
        std::vector<Value> combined = prefix;
        combined.insert(combined.end(), row.begin(), row.end());
        next.push_back(std::move(combined));
      }
    }
    rows = std::move(next);
  }
  if (!relations.empty()) joined.rows = std::move(rows);
  return joined;
}

struct RowLess {
  bool operator()(const std::vector<Value>& a,
                  const std::vector<Value>& b) const {
    for (size_t i = 0; i < a.size() && i < b.size(); ++i)
      if (int c = compare_values(a[i], b[i])) return c < 0;
    return a.size() < b.size();
  }
};

Value aggregate(AggKind agg, const std::vector<Value>& values,
                const ScalarType& column_type) {
  std::vector<const Value*> present;
  for (const Value& v : values)
    if (!v.is_null()) present.push_back(&v);

  switch (agg) {
    case AggKind::Count:
      return Value::integer(static_cast<int64_t>(present.size()));
    case AggKind::Sum: {
      if (present.empty()) return Value::null();
      if (column_type.kind == ScalarType::Kind::Base &&
          column_type.base == BaseType::Integer) {
        int64_t sum = 0;
        for (const Value* v : present) sum += v->as_int();
        return Value::integer(sum);
      }
      double sum = 0;
      for (const Value* v : present) sum += v->numeric();
      return Value::real(sum);
    }
    case AggKind::Avg: {
      if (present.empty()) return Value::null();
      double sum = 0;
      for (const Value* v : present) sum += v->numeric();
      return Value::real(sum / static_cast<double>(present.size()));
    }
    case AggKind::Min:
    case AggKind::Max: {
      if (present.empty()) return Value::null();
      const Value* best = present[0];
      for (const Value* v : present) {
        int c = compare_values(*v, *best);
        if ((agg == AggKind::Min && c < 0) || (agg == AggKind::Max && c > 0))
          best = v;
      }
      return *best;
    }
  }
  return Value::null();
}

}  // namespace

Relation eval_select(const Database& db, const QueryExpr& q,
                     const EvalContext& ctx) {
  std::string local_class;
  QueryScope scope{db.catalog(), nullptr};
  if (ctx.local_oid) {
    local_class = db.object(*ctx.local_oid).oid.cls;
    scope.local_class = &local_class;
  }
  ResolvedQuery resolved = resolve_query(q, scope);
  JoinedRows joined = materialize_sources(db, q, ctx, resolved);

  auto column_offset = [&](ColumnRef c) {
    return joined.offsets[c.source] + c.attr;
  };
  auto row_lookup = [&](const std::vector<Value>& row) {
    return [&](const PathRef& path) {
      ColumnRef c = resolve_attribute(resolved.sources, path);
      return row[column_offset(c)];
    };
  };

  // Restriction.
  std::vector<std::vector<Value>> selected;
  for (const auto& row : joined.rows)
    if (predicate_true(q.predicate, row_lookup(row)))
      selected.push_back(row);

  Relation out;
  out.heading = resolved.output;

  if (resolved.has_aggregates || !q.group_by.empty()) {
    std::map<std::vector<Value>, std::vector<std::vector<Value>>, RowLess>
        groups;
    for (auto& row : selected) {
      std::vector<Value> key;
      for (ColumnRef g : resolved.group_columns)
        key.push_back(row[column_offset(g)]);
      groups[std::move(key)].push_back(std::move(row));
    }
    if (groups.empty() && resolved.has_aggregates && q.group_by.empty()) {
      // Aggregate over an empty input: a single row.
      groups.emplace(std::vector<Value>{}, std::vector<std::vector<Value>>{});
    }
    for (const auto& [key, rows] : groups) {
      (void)key;
      std::vector<Value> out_row;
      for (size_t i = 0; i < q.projections.size(); ++i) {
        ColumnRef c = resolved.projection_columns[i];
        if (q.projections[i].agg) {
          std::vector<Value> column;
          for (const auto& row : rows) column.push_back(row[column_offset(c)]);
          out_row.push_back(
              aggregate(*q.projections[i].agg, column,
                        resolved.sources[c.source].heading[c.attr].type));
        } else {
          out_row.push_back(rows.front()[column_offset(c)]);
        }
      }
      out.rows.push_back(std::move(out_row));
    }
  } else {
    for (const auto& row : selected) {
      std::vector<Value> out_row;
      for (ColumnRef c : resolved.projection_columns)
        out_row.push_back(row[column_offset(c)]);
      out.rows.push_back(std::move(out_row));
    }
  }

  out.canonicalize();
  return out;
}

Database create_view(const Database& db, const std::string& name,
                     const QueryExpr& q) {
  QueryScope scope{db.catalog(), nullptr};
  resolve_query(q, scope);  // validates against the current namespace
  Database next = db;
  next.set_catalog(add_view(db.catalog(), name, q));
  return next;
}

Relation eval_view(const Database& db, const std::string& name) {
  const ViewDef* view = db.catalog().find_view(name);
  if (!view) fail(ErrorCode::UnknownView, "unknown view '" + name + "'");
  try {
    return eval_select(db, view->query, EvalContext::global());
  } catch (const Error& e) {
    throw Error(e.code(), "view '" + name + "': " + e.message());
  }
}

Value navigate_single(const Database& db, const Oid& oid,
                      const PathRef& path) {
  const ObjectState& state = db.object(oid.value);
  if (path.segments.size() == 1 && path.segments[0] == state.oid.cls)
    return Value::ref(state.oid);
  // Also allow the extent root's class name for subclass objects.
  if (path.segments.size() == 1 &&
      db.catalog().has_class(path.segments[0]) &&
      db.catalog().is_subclass_of(state.oid.cls, path.segments[0]))
    return Value::ref(state.oid);

  Value cur = Value::ref(state.oid);
  for (size_t i = 0; i < path.segments.size(); ++i) {
    const std::string& seg = path.segments[i];
    switch (cur.kind()) {
      case ValueKind::Ref:
        cur = eval_component(db, db.object(cur.as_ref().value).oid, seg);
        break;
      case ValueKind::Tuple: {
        const TupleValue& t = cur.as_tuple();
        bool found = false;
        for (const auto& [name, value] : t.fields) {
          if (name == seg) {
            cur = value;
            found = true;
            break;
          }
        }
        if (!found)
          fail(ErrorCode::UnknownAttribute, "no tuple field '" + seg + "'");
        break;
      }
      case ValueKind::Relation:
        fail(ErrorCode::EvaluationError,
             "path '" + path.dotted() +
                 "' crosses a relation-valued component and is not "
                 "single-valued");
      default:
        fail(ErrorCode::EvaluationError,
             "path '" + path.dotted() + "' descends through a scalar");
    }
  }
  if (cur.kind() == ValueKind::Relation || cur.kind() == ValueKind::Tuple)
    fail(ErrorCode::EvaluationError,
         "path '" + path.dotted() + "' does not end at a scalar");
  return cur;
}

}  // namespace rxo

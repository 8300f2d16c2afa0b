#include "rxo/group.hpp"

#include <algorithm>

#include "rxo/error.hpp"
#include "rxo/paths.hpp"

namespace rxo {

namespace {

std::vector<std::string> split_dotted(const std::string& s) {
  std::vector<std::string> out;
  size_t start = 0;
  for (size_t i = 0; i <= s.size(); ++i) {
    if (i == s.size() || s[i] == '.') {
      out.push_back(s.substr(start, i - start));
      start = i + 1;
    }
  }
  return out;
}

// Runs one procedure body against one object. Reads and writes touch only the
// receiving object's stored components; parameters shadow nothing (body names
// resolve to parameters first, then stored components).
Value run_body(Database& db, const Oid& oid, const ComponentDef& method,
               const std::vector<BodyStmt>& body,
               const std::vector<Value>& args) {
  auto lookup = [&](const PathRef& path) -> Value {
    if (path.segments.size() != 1)
      fail(ErrorCode::EvaluationError,
           "procedure bodies may only use parameters and own stored "
           "components; '" + path.dotted() + "' is not allowed");
    const std::string& name = path.segments[0];
    for (size_t i = 0; i < method.params.size(); ++i)
      if (method.params[i].name == name) return args[i];
    if (const Value* v = db.object(oid.value).find(name)) return *v;
    fail(ErrorCode::EvaluationError,
         "'" + name + "' names neither a parameter nor a stored component");
  };

  const std::string& cls = db.object(oid.value).oid.cls;
  for (const BodyStmt& stmt : body) {
    if (const auto* sc = std::get_if<BodyStmt::SetComp>(&stmt.node)) {
      ComponentDef comp = effective_component(db.catalog(), cls, sc->component);
      Value v = value_from_expr(db, *sc->value, comp.type, lookup,
                                cls + "." + sc->component);
      db.replace_stored(oid.value, sc->component, std::move(v));
    } else if (const auto* ins = std::get_if<BodyStmt::Insert>(&stmt.node)) {
      ComponentDef comp = effective_component(db.catalog(), cls, ins->component);
      const Value* cur = db.object(oid.value).find(ins->component);
      if (!cur)
        fail(ErrorCode::NotUpdatable,
             "component '" + ins->component + "' is not stored for class '" +
                 cls + "'");
      Relation rel = cur->as_relation();
      for (const auto& row_exprs : ins->rows) {
        std::vector<Value> row;
        for (size_t i = 0; i < row_exprs.size(); ++i) {
          const Field& f = comp.type.fields[i];
          row.push_back(value_from_expr(db, *row_exprs[i], f.field_type(),
                                        lookup,
                                        ins->component + "." + f.name));
        }
        rel.rows.push_back(std::move(row));
      }
      rel.canonicalize();
      db.replace_stored(oid.value, ins->component, Value::relation(std::move(rel)));
    } else if (const auto* del = std::get_if<BodyStmt::DeleteRows>(&stmt.node)) {
      const Value* cur = db.object(oid.value).find(del->component);
      if (!cur)
        fail(ErrorCode::NotUpdatable,
             "component '" + del->component + "' is not stored for class '" +
                 cls + "'");
      Relation rel = cur->as_relation();
      std::vector<std::vector<Value>> kept;
      for (const auto& row : rel.rows) {
        auto cell_lookup = [&](const PathRef& path) -> Value {
          if (path.segments.size() == 1) {
            for (size_t i = 0; i < rel.heading.size(); ++i)
              if (rel.heading[i].name == path.segments[0]) return row[i];
          }
          return lookup(path);
        };
        if (!predicate_true(del->predicate, cell_lookup))
          kept.push_back(row);
      }
      rel.rows = std::move(kept);
      db.replace_stored(oid.value, del->component, Value::relation(std::move(rel)));
    } else {
      const auto& ret = std::get<BodyStmt::Return>(stmt.node);
      Value v = eval_expr(*ret.value, lookup);
      return coerce_scalar(v, method.type.scalar, "RETURN of " + method.name);
    }
  }
  fail(ErrorCode::EvaluationError,
       "procedure body of '" + method.name + "' finished without RETURN");
}

}  // namespace

std::vector<Oid> resolve_target_set(const Database& db, const TargetSet& target) {
  std::vector<Oid> all = extent(db, target.class_name, true);
  if (!target.predicate) return all;
  std::vector<Oid> out;
  for (const Oid& oid : all) {
    auto lookup = [&](const PathRef& path) {
      return navigate_single(db, oid, path);
    };
    if (predicate_true(target.predicate, lookup)) out.push_back(oid);
  }
  return out;
}

std::pair<Database, ExecutionReport> exec_group_call(
    const Database& db, const TargetSet& target, const std::string& method,
    const std::vector<Value>& args) {
  ComponentDef decl = [&]() {
    try {
      return effective_component(db.catalog(), target.class_name, method);
    } catch (const Error& e) {
      if (e.code() == ErrorCode::UnknownComponent)
        fail(ErrorCode::UnknownMethod, e.message());
      throw;
    }
  }();
  if (!decl.is_method)
    fail(ErrorCode::NotAProcedure,
         "component '" + method + "' of '" + target.class_name +
             "' is not a method");
  if (args.size() != decl.params.size())
    fail(ErrorCode::ArityMismatch,
         "method '" + method + "' expects " +
             std::to_string(decl.params.size()) + " arguments, got " +
             std::to_string(args.size()));
  std::vector<Value> coerced;
  for (size_t i = 0; i < args.size(); ++i)
    coerced.push_back(coerce_scalar(args[i], decl.params[i].type,
                                    "argument '" + decl.params[i].name + "'"));

  std::vector<Oid> targets = resolve_target_set(db, target);
  ExecutionReport report;
  report.targeted = targets.size();

  Database scratch = db;
  for (const Oid& oid : targets) {
    ComponentDef dispatched =
        effective_component(scratch.catalog(), oid.cls, method);
    if (dispatched.realization.kind != Realization::Kind::Procedure) {
      report.failures.emplace_back(
          oid, "method '" + method + "' has no procedure realization for "
               "class '" + oid.cls + "'");
      continue;
    }
    ObjectState saved = scratch.object(oid.value);
    try {
      Value result =
          run_body(scratch, oid, decl, dispatched.realization.body, coerced);
      report.returned.emplace_back(oid, std::move(result));
      ++report.succeeded;
    } catch (const Error& e) {
      scratch.restore_object(std::move(saved));
      report.failures.emplace_back(oid, e.what());
    }
  }

  if (!report.failures.empty()) return {db, report};  // rolled back
  return {std::move(scratch), report};
}

namespace {

struct UpdateRow {
  std::vector<Value> values;
  std::optional<size_t> element;
};

bool row_less(const UpdateRow& a, const UpdateRow& b) {
  for (size_t i = 0; i < a.values.size() && i < b.values.size(); ++i)
    if (int c = compare_values(a.values[i], b.values[i])) return c < 0;
  return false;
}

// Writes one scalar slot of the root object: a scalar component, or a field
// chain through tuple-valued components. Relation and reference crossings are
// not updatable in place.
void write_object_slot(Database& db, const Oid& oid,
                       const std::vector<std::string>& path, Value v,
                       const std::string& relation_name) {
  ComponentDef comp = effective_component(db.catalog(), oid.cls, path[0]);
  if (path.size() == 1) {
    if (!comp.type.is_scalar())
      fail(ErrorCode::NotUpdatable,
           "attribute '" + path[0] + "' of '" + relation_name +
               "' does not name a scalar slot of class '" + oid.cls + "'");
    db.replace_stored(oid.value, path[0], std::move(v));
    return;
  }
  if (!comp.type.is_tuple())
    fail(ErrorCode::NotUpdatable,
         "assignment through '" + path[0] + "' of class '" + oid.cls +
             "' is not an in-place stored slot");
  const Value* cur = db.object(oid.value).find(path[0]);
  if (!cur)
    fail(ErrorCode::NotUpdatable,
         "component '" + path[0] + "' is not stored for class '" + oid.cls + "'");
  TupleValue t = cur->as_tuple();
  bool written = false;
  for (auto& [name, field] : t.fields) {
    if (name == path[1] && path.size() == 2) {
      field = std::move(v);
      written = true;
      break;
    }
  }
  if (!written)
    fail(ErrorCode::NotUpdatable,
         "no tuple field '" + path[1] + "' under '" + path[0] + "'");
  db.replace_stored(oid.value, path[0], Value::tuple(std::move(t)));
}

}  // namespace

std::pair<Database, ExecutionReport> exec_group_update(
    const Database& db, const PathRef& relation,
    const std::vector<std::pair<PathRef, ExprPtr>>& assignments,
    const ExprPtr& predicate) {
  NamespaceIndex index = build_namespace(db.catalog());
  const DerivedRelationSchema* schema = index.find(relation.dotted());
  if (!schema)
    fail(ErrorCode::UnknownRelation, "unknown relation '" + relation.dotted() + "'");

  Heading heading = schema->heading();
  auto attr_position = [&](const std::string& name) -> size_t {
    for (size_t i = 0; i < heading.size(); ++i)
      if (heading[i].name == name) return i;
    fail(ErrorCode::UnknownAttribute,
         "relation '" + schema->name + "' has no attribute '" + name + "'");
  };

  struct PlannedAssignment {
    std::vector<std::string> suffix;  // segments within the root object
    size_t position;                  // column in the flattened row
    ScalarType type;
    const Expr* value;
  };
  std::vector<PlannedAssignment> plan;
  for (const auto& [attr, expr] : assignments) {
    std::string name = attr.dotted();
    if (name == schema->ref_attribute)
      fail(ErrorCode::NotUpdatable, "the reference attribute is not assignable");
    size_t pos = attr_position(name);
    plan.push_back({split_dotted(name), pos, heading[pos].type, expr.get()});
  }

  ExecutionReport report;
  Database scratch = db;

  for (const Oid& oid : extent(db, schema->root_class, true)) {
    std::vector<UpdateRow> rows;
    for (FlattenedRow& fr : flatten_object(scratch, *schema, oid))
      rows.push_back({std::move(fr.values), fr.element});
    std::sort(rows.begin(), rows.end(), row_less);

    std::vector<const UpdateRow*> matching;
    for (const UpdateRow& row : rows) {
      auto lookup = [&](const PathRef& path) -> Value {
        std::string name = path.dotted();
        return row.values[attr_position(name)];
      };
      if (predicate_true(predicate, lookup)) matching.push_back(&row);
    }
    if (matching.empty()) continue;
    report.targeted += matching.size();

    // Updatability for this object's concrete class.
    if (schema->prefix.size() > 1)
      fail(ErrorCode::NotUpdatable,
           "relation '" + schema->name + "' does not map onto one stored "
           "component (nested prefix)");

    if (schema->prefix.size() == 1) {
      ComponentDef comp =
          effective_component(scratch.catalog(), oid.cls, schema->prefix[0]);
      if (comp.realization.kind != Realization::Kind::Stored)
        fail(ErrorCode::NotUpdatable,
             "component '" + schema->prefix[0] + "' of class '" + oid.cls +
                 "' is computed, not stored (object #" +
                 std::to_string(oid.value) + ")");
      const Value* stored = scratch.object(oid.value).find(schema->prefix[0]);
      Relation working = stored->as_relation();

      for (const PlannedAssignment& pa : plan) {
        if (pa.suffix.size() != 1)
          fail(ErrorCode::NotUpdatable,
               "attribute '" + heading[pa.position].name +
                   "' reaches beyond the stored tuples of '" + schema->name +
                   "'");
        working.attr_index(pa.suffix[0]);  // must be a heading field
      }

      for (const UpdateRow* row : matching) {
        if (!row->element)
          fail(ErrorCode::NotUpdatable,
               "row of '" + schema->name + "' has no underlying stored tuple");
        auto lookup = [&](const PathRef& path) -> Value {
          return row->values[attr_position(path.dotted())];
        };
        for (const PlannedAssignment& pa : plan) {
          Value v = coerce_scalar(eval_expr(*pa.value, lookup), pa.type,
                                  "assignment to '" +
                                      heading[pa.position].name + "'");
          working.rows[*row->element][working.attr_index(pa.suffix[0])] =
              std::move(v);
        }
      }
      working.canonicalize();
      scratch.replace_stored(oid.value, schema->prefix[0],
                             Value::relation(std::move(working)));
    } else {
      // Bare root relation: assignments write scalar/tuple slots.
      for (const UpdateRow* row : matching) {
        auto lookup = [&](const PathRef& path) -> Value {
          return row->values[attr_position(path.dotted())];
        };
        for (const PlannedAssignment& pa : plan) {
          Value v = coerce_scalar(eval_expr(*pa.value, lookup), pa.type,
                                  "assignment to '" +
                                      heading[pa.position].name + "'");
          write_object_slot(scratch, oid, pa.suffix, std::move(v),
                            schema->name);
        }
      }
    }
  }

  report.succeeded = report.targeted;
  return {std::move(scratch), report};
}

std::pair<Database, ExecutionReport> exec_create_objects(
    const Database& db, const CreateObjects& stmt) {
  if (!db.catalog().has_class(stmt.class_name))
    fail(ErrorCode::UnknownClass, "unknown class '" + stmt.class_name + "'");
  auto no_paths = [](const PathRef& path) -> Value {
    fail(ErrorCode::EvaluationError,
         "object initializers must be literal; '" + path.dotted() +
             "' is not allowed");
  };

  ExecutionReport report;
  report.targeted = stmt.count;
  Database scratch = db;
  for (uint64_t n = 0; n < stmt.count; ++n) {
    std::vector<std::pair<std::string, Value>> initial;
    for (const auto& [name, expr] : stmt.initializers) {
      ComponentDef comp =
          effective_component(scratch.catalog(), stmt.class_name, name);
      initial.emplace_back(name,
                           value_from_expr(scratch, *expr, comp.type, no_paths,
                                           stmt.class_name + "." + name));
    }
    Oid oid = scratch.insert_object(stmt.class_name, initial);
    report.created.push_back(oid);
    ++report.succeeded;
  }
  return {std::move(scratch), report};
}

std::pair<Database, ExecutionReport> exec_delete_objects(
    const Database& db, const DeleteObjects& stmt) {
  TargetSet target{stmt.class_name, stmt.predicate};
  std::vector<Oid> targets = resolve_target_set(db, target);

  ExecutionReport report;
  report.targeted = targets.size();
  Database scratch = db;
  for (const Oid& oid : targets) {
    scratch.erase_object(oid.value);  // throws on referenced objects
    ++report.succeeded;
  }
  return {std::move(scratch), report};
}

}  // namespace rxo

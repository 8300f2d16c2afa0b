#include "rxo/snapshot.hpp"

#include <fstream>
#include <sstream>

#include "rxo/error.hpp"
#include "rxo/parser.hpp"
#include "rxo/printer.hpp"

namespace rxo {

namespace {

constexpr int kFormatVersion = 1;

[[noreturn]] void corrupt(size_t line, const std::string& reason) {
  fail(ErrorCode::CorruptSnapshot,
       "line " + std::to_string(line) + ": " + reason);
}

std::string stored_value_literal(const Value& v) { return format_value(v); }

// Rewrites references to carry the class of the object they point at.
Value fix_ref_classes(const Database& db, const Value& v) {
  switch (v.kind()) {
    case ValueKind::Ref: {
      Oid o = v.as_ref();
      o.cls = db.object(o.value).oid.cls;
      return Value::ref(std::move(o));
    }
    case ValueKind::Tuple: {
      TupleValue t = v.as_tuple();
      for (auto& [name, field] : t.fields) field = fix_ref_classes(db, field);
      return Value::tuple(std::move(t));
    }
    case ValueKind::Relation: {
      Relation rel = v.as_relation();
      for (auto& row : rel.rows)
        for (Value& cell : row) cell = fix_ref_classes(db, cell);
      return Value::relation(std::move(rel));
    }
    default:
      return v;
  }
}

// Rebuilds a Value from a parsed literal expression, guided by the declared
// type (strings become datetimes where DATETIME is expected).
Value value_from_literal(const Expr& e, const ValuableType& type, size_t line);

Value scalar_from_literal(const Expr& e, const ScalarType& st, size_t line) {
  const auto* lit = std::get_if<Expr::Lit>(&e.node);
  if (!lit) {
    if (const auto* u = std::get_if<Expr::Unary>(&e.node)) {
      if (u->op == UnaryOp::Neg) {
        Value inner = scalar_from_literal(*u->operand, st, line);
        if (inner.kind() == ValueKind::Int) return Value::integer(-inner.as_int());
        if (inner.kind() == ValueKind::Float) return Value::real(-inner.as_float());
      }
    }
    corrupt(line, "expected a literal value");
  }
  const Literal& v = lit->value;
  switch (v.kind) {
    case Literal::Kind::Int:
      if (st.kind == ScalarType::Kind::Base && st.base == BaseType::Integer)
        return Value::integer(v.int_value);
      if (st.kind == ScalarType::Kind::Base && st.base == BaseType::Float)
        return Value::real(static_cast<double>(v.int_value));
      break;
    case Literal::Kind::Float:
      if (st.kind == ScalarType::Kind::Base && st.base == BaseType::Float)
        return Value::real(v.float_value);
      break;
    case Literal::Kind::Str:
      if (st.kind == ScalarType::Kind::Base && st.base == BaseType::String)
        return Value::str(v.str_value);
      if (st.kind == ScalarType::Kind::Base && st.base == BaseType::Datetime)
        return Value::datetime(v.str_value);
      break;
    case Literal::Kind::Bool:
      if (st.kind == ScalarType::Kind::Base && st.base == BaseType::Bool)
        return Value::boolean(v.bool_value);
      break;
    case Literal::Kind::OidRef:
      if (st.is_reference()) return Value::ref(Oid{v.oid_value, ""});
      break;
    default:
      break;
  }
  corrupt(line, "literal does not conform to " + scalar_type_name(st));
}

Value value_from_literal(const Expr& e, const ValuableType& type, size_t line) {
  switch (type.kind) {
    case ValuableType::Kind::Scalar:
      return scalar_from_literal(e, type.scalar, line);
    case ValuableType::Kind::Tuple: {
      const auto* lit = std::get_if<Expr::Lit>(&e.node);
      if (!lit || lit->value.kind != Literal::Kind::TupleLit)
        corrupt(line, "expected a tuple literal");
      if (lit->value.elems.size() != type.fields.size())
        corrupt(line, "tuple literal width mismatch");
      TupleValue t;
      for (size_t i = 0; i < type.fields.size(); ++i) {
        const Field& f = type.fields[i];
        if (!f.field_type().is_scalar()) corrupt(line, "non-scalar tuple field");
        t.fields.emplace_back(
            f.name, scalar_from_literal(*lit->value.elems[i],
                                        f.field_type().scalar, line));
      }
      return Value::tuple(std::move(t));
    }
    case ValuableType::Kind::Relation: {
      const auto* lit = std::get_if<Expr::Lit>(&e.node);
      if (!lit || lit->value.kind != Literal::Kind::RelationLit)
        corrupt(line, "expected a relation literal");
      Relation rel;
      for (const Field& f : type.fields) {
        if (!f.field_type().is_scalar()) corrupt(line, "non-scalar heading field");
        rel.heading.push_back({f.name, f.field_type().scalar});
      }
      for (const auto& row_exprs : lit->value.rows) {
        if (row_exprs.size() != type.fields.size())
          corrupt(line, "relation literal row width mismatch");
        std::vector<Value> row;
        for (size_t i = 0; i < row_exprs.size(); ++i)
          row.push_back(scalar_from_literal(*row_exprs[i],
                                            type.fields[i].field_type().scalar,
                                            line));
        rel.rows.push_back(std::move(row));
      }
      rel.canonicalize();
      return Value::relation(std::move(rel));
    }
  }
  corrupt(line, "unsupported stored type");
}

}  // namespace

std::string snapshot_save(const Database& db) {
  std::string out = "RXODB " + std::to_string(kFormatVersion) + "\n";
  out += "NEXTOID " + std::to_string(db.next_oid()) + "\n";

  std::string dump = catalog_dump(db.catalog());
  size_t dump_lines = 0;
  for (char c : dump)
    if (c == '\n') ++dump_lines;
  out += "CATALOG " + std::to_string(dump_lines) + "\n";
  out += dump;

  out += "OBJECTS " + std::to_string(db.objects().size()) + "\n";
  for (const auto& [oid, state] : db.objects()) {
    out += "OBJECT " + std::to_string(oid) + " " + state.oid.cls + "\n";
    for (const auto& [name, value] : state.stored)
      out += name + " := " + stored_value_literal(value) + "\n";
  }
  out += "END\n";
  return out;
}

Database snapshot_load(const std::string& stream) {
  std::vector<std::string> lines;
  {
    std::string cur;
    for (char c : stream) {
      if (c == '\n') {
        lines.push_back(cur);
        cur.clear();
      } else {
        cur += c;
      }
    }
    if (!cur.empty()) lines.push_back(cur);
  }
  size_t at = 0;
  auto next_line = [&]() -> const std::string& {
    if (at >= lines.size()) corrupt(at + 1, "unexpected end of snapshot");
    return lines[at++];
  };

  // Header
  {
    std::istringstream head(next_line());
    std::string magic;
    int version = -1;
    head >> magic >> version;
    if (magic != "RXODB") corrupt(1, "not an RXODB snapshot");
    if (version != kFormatVersion)
      fail(ErrorCode::VersionMismatch,
           "snapshot format version " + std::to_string(version) +
               ", expected " + std::to_string(kFormatVersion));
  }
  uint64_t next_oid = 0;
  {
    std::istringstream l(next_line());
    std::string tag;
    l >> tag >> next_oid;
    if (tag != "NEXTOID" || next_oid == 0) corrupt(2, "bad NEXTOID line");
  }

  size_t catalog_lines = 0;
  {
    std::istringstream l(next_line());
    std::string tag;
    l >> tag >> catalog_lines;
    if (tag != "CATALOG") corrupt(3, "bad CATALOG line");
  }
  std::string ddl;
  for (size_t i = 0; i < catalog_lines; ++i) {
    ddl += next_line();
    ddl += "\n";
  }

  Catalog catalog;
  try {
    for (const Statement& stmt : parse_script(ddl)) {
      if (const auto* cc = std::get_if<CreateClass>(&stmt.node)) {
        catalog = define_class(catalog, *cc);
      } else if (const auto* ar = std::get_if<AlterRealize>(&stmt.node)) {
        catalog = alter_realize(catalog, *ar);
      } else if (const auto* cv = std::get_if<CreateView>(&stmt.node)) {
        catalog = add_view(catalog, cv->name, cv->query);
      } else {
        corrupt(4, "unexpected statement in catalog section");
      }
    }
  } catch (const Error& e) {
    if (e.code() == ErrorCode::CorruptSnapshot) throw;
    fail(ErrorCode::CorruptSnapshot,
         std::string("catalog section does not replay: ") + e.what());
  }

  Database db(catalog);

  size_t object_count = 0;
  size_t objects_line = at + 1;
  {
    std::istringstream l(next_line());
    std::string tag;
    l >> tag >> object_count;
    if (tag != "OBJECTS") corrupt(objects_line, "bad OBJECTS line");
  }

  for (size_t n = 0; n < object_count; ++n) {
    size_t obj_line = at + 1;
    std::istringstream l(next_line());
    std::string tag, cls;
    uint64_t oid = 0;
    l >> tag >> oid >> cls;
    if (tag != "OBJECT" || oid == 0) corrupt(obj_line, "bad OBJECT line");
    if (!catalog.has_class(cls))
      corrupt(obj_line, "object of unknown class '" + cls + "'");
    if (oid >= next_oid) corrupt(obj_line, "oid exceeds NEXTOID");

    ObjectState state;
    state.oid = Oid{oid, cls};

    std::vector<ComponentDef> comps = effective_components(catalog, cls);
    for (const ComponentDef& comp : comps) {
      if (comp.is_method || comp.realization.kind != Realization::Kind::Stored)
        continue;
      size_t val_line = at + 1;
      const std::string& line = next_line();
      size_t sep = line.find(" := ");
      if (sep == std::string::npos) corrupt(val_line, "expected 'name := value'");
      std::string name = line.substr(0, sep);
      if (name != comp.name)
        corrupt(val_line, "expected component '" + comp.name + "', found '" +
                              name + "'");
      std::string literal_text = line.substr(sep + 4);
      ExprPtr parsed;
      try {
        parsed = parse_expression(literal_text);
      } catch (const Error&) {
        corrupt(val_line, "unparsable literal");
      }
      state.stored.emplace_back(
          name, value_from_literal(*parsed, comp.type, val_line));
    }
    db.restore_object(std::move(state));
  }

  {
    size_t end_line = at + 1;
    if (next_line() != "END") corrupt(end_line, "missing END sentinel");
    if (at != lines.size()) corrupt(at + 1, "trailing data after END");
  }

  db.restore_next_oid(next_oid);

  // Post-validation: resolve reference classes and re-check conformance.
  for (const auto& [oid, state] : db.objects()) {
    (void)oid;
    for (const auto& [name, value] : state.stored) {
      std::vector<uint64_t> refs;
      collect_refs(value, refs);
      for (uint64_t r : refs)
        if (!db.has_object(r))
          fail(ErrorCode::CorruptSnapshot,
               "object #" + std::to_string(state.oid.value) +
                   " references missing object #" + std::to_string(r));
    }
  }
  // Fill in referenced classes now that every object is present.
  Database rebuilt(catalog);
  rebuilt.restore_next_oid(next_oid);
  for (const auto& [oid, state] : db.objects()) {
    (void)oid;
    ObjectState fixed = state;
    for (auto& [name, value] : fixed.stored)
      value = fix_ref_classes(db, value);
    rebuilt.restore_object(std::move(fixed));
  }

  // Full conformance pass (types, keys, reference classes).
  for (const auto& [oid, state] : rebuilt.objects()) {
    std::vector<ComponentDef> comps = effective_components(catalog, state.oid.cls);
    for (const auto& [name, value] : state.stored) {
      for (const ComponentDef& comp : comps) {
        if (comp.name != name) continue;
        try {
          check_conforms(rebuilt, value, comp.type,
                         state.oid.cls + "." + name);
        } catch (const Error& e) {
          fail(ErrorCode::CorruptSnapshot,
               "object #" + std::to_string(oid) + ": " + e.what());
        }
      }
    }
  }
  return rebuilt;
}

void snapshot_write_file(const Database& db, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorCode::IoError, "cannot write '" + path + "'");
  out << snapshot_save(db);
}

Database snapshot_read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::IoError, "cannot read '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return snapshot_load(buf.str());
}

}  // namespace rxo

#include "rxo/printer.hpp"

#include <charconv>

namespace rxo {

namespace {

int binary_prec(BinaryOp op) {
  switch (op) {
    case BinaryOp::Or: return 1;
    case BinaryOp::And: return 2;
    case BinaryOp::Eq: case BinaryOp::Ne: case BinaryOp::Lt:
    case BinaryOp::Le: case BinaryOp::Gt: case BinaryOp::Ge: return 4;
    case BinaryOp::Add: case BinaryOp::Sub: return 5;
    case BinaryOp::Mul: case BinaryOp::Div: return 6;
  }
  return 0;
}

const char* binary_sym(BinaryOp op) {
  switch (op) {
    case BinaryOp::Add: return "+";
    case BinaryOp::Sub: return "-";
    case BinaryOp::Mul: return "*";
    case BinaryOp::Div: return "/";
    case BinaryOp::Eq: return "=";
    case BinaryOp::Ne: return "<>";
    case BinaryOp::Lt: return "<";
    case BinaryOp::Le: return "<=";
    case BinaryOp::Gt: return ">";
    case BinaryOp::Ge: return ">=";
    case BinaryOp::And: return "AND";
    case BinaryOp::Or: return "OR";
  }
  return "?";
}

const char* agg_name(AggKind k) {
  switch (k) {
    case AggKind::Sum: return "SUM";
    case AggKind::Count: return "COUNT";
    case AggKind::Min: return "MIN";
    case AggKind::Max: return "MAX";
    case AggKind::Avg: return "AVG";
  }
  return "?";
}

void print_expr(const Expr& e, int parent_prec, std::string& out);

void print_literal(const Literal& lit, std::string& out) {
  switch (lit.kind) {
    case Literal::Kind::Int:
      out += std::to_string(lit.int_value);
      break;
    case Literal::Kind::Float:
      out += format_double(lit.float_value);
      break;
    case Literal::Kind::Str:
      out += quote_string(lit.str_value);
      break;
    case Literal::Kind::Bool:
      out += lit.bool_value ? "TRUE" : "FALSE";
      break;
    case Literal::Kind::OidRef:
      out += "#";
      out += std::to_string(lit.oid_value);
      break;
    case Literal::Kind::RelationLit: {
      out += "{";
      for (size_t i = 0; i < lit.rows.size(); ++i) {
        if (i) out += ", ";
        out += "(";
        for (size_t j = 0; j < lit.rows[i].size(); ++j) {
          if (j) out += ", ";
          print_expr(*lit.rows[i][j], 0, out);
        }
        out += ")";
      }
      out += "}";
      break;
    }
    case Literal::Kind::TupleLit: {
      out += "(";
      for (size_t i = 0; i < lit.elems.size(); ++i) {
        if (i) out += ", ";
        print_expr(*lit.elems[i], 0, out);
      }
      out += ")";
      break;
    }
  }
}

void print_expr(const Expr& e, int parent_prec, std::string& out) {
  if (const auto* lit = std::get_if<Expr::Lit>(&e.node)) {
    print_literal(lit->value, out);
    return;
  }
  if (const auto* p = std::get_if<Expr::Path>(&e.node)) {
    out += p->ref.dotted();
    return;
  }
  if (const auto* u = std::get_if<Expr::Unary>(&e.node)) {
    const int prec = u->op == UnaryOp::Not ? 3 : 7;
    bool parens = prec < parent_prec;
    if (parens) out += "(";
    out += u->op == UnaryOp::Not ? "NOT " : "-";
    print_expr(*u->operand, prec + 1, out);
    if (parens) out += ")";
    return;
  }
  const auto& b = std::get<Expr::Binary>(e.node);
  const int prec = binary_prec(b.op);
  bool parens = prec < parent_prec;
  if (parens) out += "(";
  print_expr(*b.lhs, prec, out);
  out += " ";
  out += binary_sym(b.op);
  out += " ";
  print_expr(*b.rhs, prec + 1, out);
  if (parens) out += ")";
}

void print_params(const std::vector<Param>& params, std::string& out) {
  out += "(";
  for (size_t i = 0; i < params.size(); ++i) {
    if (i) out += ", ";
    out += params[i].name;
    out += " ";
    out += scalar_type_name(params[i].type);
  }
  out += ")";
}

void print_query(const QueryExpr& q, std::string& out) {
  out += "SELECT ";
  for (size_t i = 0; i < q.projections.size(); ++i) {
    if (i) out += ", ";
    const Projection& p = q.projections[i];
    if (p.agg) {
      out += agg_name(*p.agg);
      out += "(";
      out += p.path.dotted();
      out += ")";
    } else {
      out += p.path.dotted();
    }
    if (p.out_name) {
      out += " AS ";
      out += *p.out_name;
    }
  }
  out += "\nFROM ";
  for (size_t i = 0; i < q.sources.size(); ++i) {
    if (i) out += ", ";
    out += q.sources[i].relation.dotted();
    if (q.sources[i].alias) {
      out += " ";
      out += *q.sources[i].alias;
    }
  }
  if (q.predicate) {
    out += "\nWHERE ";
    print_expr(*q.predicate, 0, out);
  }
  if (!q.group_by.empty()) {
    out += "\nGROUP BY ";
    for (size_t i = 0; i < q.group_by.size(); ++i) {
      if (i) out += ", ";
      out += q.group_by[i].dotted();
    }
  }
}

void print_body(const std::vector<BodyStmt>& body, std::string& out) {
  out += "BEGIN\n";
  for (const BodyStmt& b : body) {
    out += "  ";
    if (const auto* sc = std::get_if<BodyStmt::SetComp>(&b.node)) {
      out += "SET ";
      out += sc->component;
      out += " := ";
      print_expr(*sc->value, 0, out);
    } else if (const auto* ins = std::get_if<BodyStmt::Insert>(&b.node)) {
      out += "INSERT INTO ";
      out += ins->component;
      out += " VALUES ";
      for (size_t i = 0; i < ins->rows.size(); ++i) {
        if (i) out += ", ";
        out += "(";
        for (size_t j = 0; j < ins->rows[i].size(); ++j) {
          if (j) out += ", ";
          print_expr(*ins->rows[i][j], 0, out);
        }
        out += ")";
      }
    } else if (const auto* del = std::get_if<BodyStmt::DeleteRows>(&b.node)) {
      out += "DELETE FROM ";
      out += del->component;
      out += " WHERE ";
      print_expr(*del->predicate, 0, out);
    } else {
      const auto& ret = std::get<BodyStmt::Return>(b.node);
      out += "RETURN ";
      print_expr(*ret.value, 0, out);
    }
    out += ";\n";
  }
  out += "END";
}

void indent_to(std::string& out, int indent) {
  out.append(static_cast<size_t>(indent), ' ');
}

void print_fields(const std::vector<Field>& fields,
                  const std::vector<std::string>& key, int indent,
                  std::string& out) {
  out += "{\n";
  for (const Field& f : fields) {
    indent_to(out, indent + 2);
    out += f.name;
    out += " ";
    out += format_valuable_type(f.field_type(), indent + 2);
    out += ";\n";
  }
  if (!key.empty()) {
    indent_to(out, indent + 2);
    out += "KEY (";
    for (size_t i = 0; i < key.size(); ++i) {
      if (i) out += ", ";
      out += key[i];
    }
    out += ");\n";
  }
  indent_to(out, indent);
  out += "}";
}

}  // namespace

std::string format_double(double v) {
  char buf[64];
  auto [p, ec] = std::to_chars(buf, buf + sizeof buf, v);
  std::string s(buf, p);
  // Keep the literal float-shaped so it reparses as FLOAT.
  if (s.find('.') == std::string::npos && s.find('e') == std::string::npos &&
      s.find("inf") == std::string::npos && s.find("nan") == std::string::npos)
    s += ".0";
  return s;
}

std::string quote_string(const std::string& s) {
  std::string out = "'";
  for (char c : s) {
    out += c;
    if (c == '\'') out += '\'';
  }
  out += "'";
  return out;
}

std::string format_valuable_type(const ValuableType& t, int indent) {
  std::string out;
  switch (t.kind) {
    case ValuableType::Kind::Scalar:
      out += scalar_type_name(t.scalar);
      break;
    case ValuableType::Kind::Relation:
      out += "SET OF\n";
      indent_to(out, indent);
      print_fields(t.fields, t.key, indent, out);
      break;
    case ValuableType::Kind::Tuple:
      out += "TUPLE OF\n";
      indent_to(out, indent);
      print_fields(t.fields, {}, indent, out);
      break;
  }
  return out;
}

std::string format_expr(const Expr& e) {
  std::string out;
  print_expr(e, 0, out);
  return out;
}

std::string format_query(const QueryExpr& q) {
  std::string out;
  print_query(q, out);
  return out;
}

std::string format_statement(const Statement& stmt) {
  std::string out;
  if (const auto* cc = std::get_if<CreateClass>(&stmt.node)) {
    out += "CREATE CLASS ";
    out += cc->name;
    if (cc->parent) {
      out += " EXTEND ";
      out += *cc->parent;
    }
    out += "\n{\n";
    for (const ComponentSpec& comp : cc->components) {
      out += "  ";
      out += comp.name;
      if (comp.is_method) {
        print_params(comp.params, out);
        out += " ";
        out += scalar_type_name(comp.type.scalar);
      } else {
        out += " ";
        out += format_valuable_type(comp.type, 2);
      }
      out += ";\n";
    }
    out += "};";
  } else if (const auto* ar = std::get_if<AlterRealize>(&stmt.node)) {
    out += "ALTER CLASS ";
    out += ar->class_name;
    out += "\nREALIZE ";
    out += ar->component;
    if (ar->params) {
      print_params(*ar->params, out);
      out += " ";
      out += scalar_type_name(*ar->return_type);
    }
    out += "\nAS ";
    switch (ar->realization.kind) {
      case RealizationSpec::Kind::Stored:
        out += "STORED;";
        break;
      case RealizationSpec::Kind::Query:
        out += "\n";
        print_query(ar->realization.query, out);
        out += ";";
        break;
      case RealizationSpec::Kind::Procedure:
        out += "\n";
        print_body(ar->realization.body, out);
        out += ";";
        break;
    }
  } else if (const auto* cv = std::get_if<CreateView>(&stmt.node)) {
    out += "CREATE ";
    out += cv->name;
    out += " AS\n";
    print_query(cv->query, out);
    out += ";";
  } else if (const auto* co = std::get_if<CreateObjects>(&stmt.node)) {
    out += "CREATE OBJECT ";
    out += co->class_name;
    out += " (";
    for (size_t i = 0; i < co->initializers.size(); ++i) {
      if (i) out += ", ";
      out += co->initializers[i].first;
      out += " := ";
      print_expr(*co->initializers[i].second, 0, out);
    }
    out += ")";
    if (co->count != 1) {
      out += " COUNT ";
      out += std::to_string(co->count);
    }
    out += ";";
  } else if (const auto* del = std::get_if<DeleteObjects>(&stmt.node)) {
    out += "DELETE ";
    out += del->class_name;
    if (del->predicate) {
      out += " WHERE ";
      print_expr(*del->predicate, 0, out);
    }
    out += ";";
  } else if (const auto* sel = std::get_if<SelectStmt>(&stmt.node)) {
    print_query(sel->query, out);
    out += ";";
  } else if (const auto* gc = std::get_if<GroupCall>(&stmt.node)) {
    out += "CALL ";
    out += gc->class_name;
    out += ".";
    out += gc->method;
    out += "(";
    for (size_t i = 0; i < gc->args.size(); ++i) {
      if (i) out += ", ";
      print_expr(*gc->args[i], 0, out);
    }
    out += ")";
    if (gc->predicate) {
      out += " WHERE ";
      print_expr(*gc->predicate, 0, out);
    }
    out += ";";
  } else {
    const auto& gu = std::get<GroupUpdate>(stmt.node);
    out += "UPDATE ";
    out += gu.relation.dotted();
    out += " SET ";
    for (size_t i = 0; i < gu.assignments.size(); ++i) {
      if (i) out += ", ";
      out += gu.assignments[i].first.dotted();
      out += " = ";
      print_expr(*gu.assignments[i].second, 0, out);
    }
    if (gu.predicate) {
      out += " WHERE ";
      print_expr(*gu.predicate, 0, out);
    }
    out += ";";
  }
  return out;
}

}  // namespace rxo

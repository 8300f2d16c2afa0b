#include "rxo/parser.hpp"

#include <charconv>
#include <set>

namespace rxo {

namespace {

class Parser {
 public:
  explicit Parser(const std::string& source) : tokens_(tokenize(source)) {}

  std::vector<Statement> script() {
    std::vector<Statement> out;
    while (!at_end()) out.push_back(statement());
    return out;
  }

  ExprPtr whole_expr() {
    ExprPtr e = expr();
    if (!at_end()) unexpected("end of input");
    return e;
  }

 private:
  // --- token plumbing -------------------------------------------------------

  const Token& cur() const { return tokens_[i_]; }
  const Token& peek(size_t ahead = 1) const {
    size_t k = i_ + ahead;
    return k < tokens_.size() ? tokens_[k] : tokens_.back();
  }
  bool at_end() const { return cur().kind == TokenKind::EndOfInput; }

  Token advance() { return tokens_[i_++]; }

  bool accept_symbol(const char* s) {
    if (cur().is_symbol(s)) {
      advance();
      return true;
    }
    return false;
  }

  bool accept_keyword(const char* kw) {
    if (cur().is_keyword(kw)) {
      advance();
      return true;
    }
    return false;
  }

  [[noreturn]] void unexpected(const std::string& expected) {
    std::string found = cur().kind == TokenKind::EndOfInput
                            ? "end of input"
                            : "'" + cur().lexeme + "'";
    fail(ErrorCode::ParseError, "expected " + expected + ", found " + found,
         cur().span);
  }

  Token expect_symbol(const char* s) {
    if (!cur().is_symbol(s)) unexpected(std::string("'") + s + "'");
    return advance();
  }

  Token expect_keyword(const char* kw) {
    if (!cur().is_keyword(kw)) unexpected(std::string(kw));
    return advance();
  }

  std::string expect_ident() {
    if (cur().kind != TokenKind::Identifier) unexpected("identifier");
    return advance().lexeme;
  }

  // Statement or block terminator: ';' or '..'. Required unless `optional`.
  void terminator(bool optional) {
    if (accept_symbol(";") || accept_symbol("..")) return;
    if (!optional) unexpected("';' or '..'");
  }

  int64_t integer_token() {
    const Token& t = cur();
    int64_t value = 0;
    auto [p, ec] = std::from_chars(t.lexeme.data(),
                                   t.lexeme.data() + t.lexeme.size(), value);
    if (ec != std::errc() || p != t.lexeme.data() + t.lexeme.size())
      fail(ErrorCode::ParseError, "integer literal out of range", t.span);
    advance();
    return value;
  }

  // A path: single identifier or dotted-path token.
  PathRef path_ref() {
    PathRef p;
    if (cur().kind == TokenKind::Identifier) {
      p.segments.push_back(advance().lexeme);
      return p;
    }
    if (cur().kind == TokenKind::DottedPath) {
      const std::string s = advance().lexeme;
      size_t start = 0;
      for (size_t k = 0; k <= s.size(); ++k) {
        if (k == s.size() || s[k] == '.') {
          p.segments.push_back(s.substr(start, k - start));
          start = k + 1;
        }
      }
      return p;
    }
    unexpected("name or path");
  }

  // --- statements -----------------------------------------------------------

  Statement statement() {
    SourcePos at = cur().span;
    Statement s;
    if (cur().is_keyword("CREATE")) {
      if (peek().is_keyword("CLASS")) {
        s.node = create_class();
      } else if (peek().is_keyword("OBJECT")) {
        s.node = create_objects();
      } else {
        s.node = create_view();
      }
    } else if (cur().is_keyword("ALTER")) {
      s.node = alter_realize();
    } else if (cur().is_keyword("SELECT")) {
      SelectStmt sel;
      sel.query = query_expr();
      terminator(false);
      s.node = std::move(sel);
    } else if (cur().is_keyword("CALL")) {
      s.node = group_call();
    } else if (cur().is_keyword("UPDATE")) {
      s.node = group_update();
    } else if (cur().is_keyword("DELETE")) {
      s.node = delete_objects();
    } else {
      unexpected("a statement (CREATE, ALTER, SELECT, CALL, UPDATE or DELETE)");
    }
    s.span = at;
    return s;
  }

  CreateClass create_class() {
    expect_keyword("CREATE");
    expect_keyword("CLASS");
    CreateClass cc;
    cc.name = expect_ident();
    if (accept_keyword("EXTEND")) cc.parent = expect_ident();
    expect_symbol("{");
    std::set<std::string> seen;
    while (!cur().is_symbol("}")) {
      ComponentSpec comp = component_spec();
      if (!seen.insert(comp.name).second)
        fail(ErrorCode::ParseError,
             "duplicate component '" + comp.name + "' in class '" + cc.name + "'",
             comp.span);
      cc.components.push_back(std::move(comp));
    }
    expect_symbol("}");
    terminator(true);
    return cc;
  }

  ComponentSpec component_spec() {
    ComponentSpec comp;
    comp.span = cur().span;
    comp.name = expect_ident();
    if (cur().is_symbol("(")) {
      comp.is_method = true;
      comp.params = param_list();
      comp.type = ValuableType::of_scalar(scalar_type());
    } else {
      comp.type = type_spec();
    }
    terminator(true);
    return comp;
  }

  std::vector<Param> param_list() {
    expect_symbol("(");
    std::vector<Param> params;
    if (!cur().is_symbol(")")) {
      for (;;) {
        Param p;
        p.name = expect_ident();
        p.type = scalar_type();
        params.push_back(std::move(p));
        if (!accept_symbol(",")) break;
      }
    }
    expect_symbol(")");
    return params;
  }

  // INTEGER | FLOAT | STRING | BOOL | DATETIME | <class name>
  ScalarType scalar_type() {
    if (cur().kind == TokenKind::Keyword) {
      if (accept_keyword("INTEGER")) return ScalarType::of(BaseType::Integer);
      if (accept_keyword("FLOAT")) return ScalarType::of(BaseType::Float);
      if (accept_keyword("STRING")) return ScalarType::of(BaseType::String);
      if (accept_keyword("BOOL")) return ScalarType::of(BaseType::Bool);
      if (accept_keyword("DATETIME")) return ScalarType::of(BaseType::Datetime);
      unexpected("a type");
    }
    if (cur().kind == TokenKind::Identifier)
      return ScalarType::reference(advance().lexeme);
    unexpected("a type");
  }

  ValuableType type_spec() {
    if (cur().is_keyword("SET")) {
      advance();
      expect_keyword("OF");
      return relation_body();
    }
    if (cur().is_keyword("TUPLE")) {
      advance();
      expect_keyword("OF");
      return tuple_body();
    }
    return ValuableType::of_scalar(scalar_type());
  }

  ValuableType relation_body() {
    expect_symbol("{");
    std::vector<Field> fields;
    std::vector<std::string> key;
    std::set<std::string> seen;
    while (!cur().is_symbol("}")) {
      if (cur().is_keyword("KEY")) {
        advance();
        expect_symbol("(");
        for (;;) {
          key.push_back(expect_ident());
          if (!accept_symbol(",")) break;
        }
        expect_symbol(")");
        terminator(true);
        continue;
      }
      SourcePos at = cur().span;
      std::string name = expect_ident();
      ValuableType ftype = type_spec();
      if (!seen.insert(name).second)
        fail(ErrorCode::ParseError, "duplicate field '" + name + "'", at);
      fields.push_back(make_field(std::move(name), std::move(ftype)));
      terminator(true);
    }
    expect_symbol("}");
    terminator(true);
    return ValuableType::relation(std::move(fields), std::move(key));
  }

  ValuableType tuple_body() {
    expect_symbol("{");
    std::vector<Field> fields;
    std::set<std::string> seen;
    while (!cur().is_symbol("}")) {
      SourcePos at = cur().span;
      std::string name = expect_ident();
      ScalarType ftype = scalar_type();
      if (!seen.insert(name).second)
        fail(ErrorCode::ParseError, "duplicate field '" + name + "'", at);
      fields.push_back(make_field(std::move(name), ValuableType::of_scalar(ftype)));
      terminator(true);
    }
    expect_symbol("}");
    terminator(true);
    return ValuableType::tuple(std::move(fields));
  }

  AlterRealize alter_realize() {
    expect_keyword("ALTER");
    expect_keyword("CLASS");
    AlterRealize ar;
    ar.class_name = expect_ident();
    expect_keyword("REALIZE");
    ar.component = expect_ident();
    if (cur().is_symbol("(")) {
      ar.params = param_list();
      ar.return_type = scalar_type();
    }
    expect_keyword("AS");
    if (accept_keyword("STORED")) {
      ar.realization.kind = RealizationSpec::Kind::Stored;
      terminator(false);
    } else if (cur().is_keyword("SELECT")) {
      ar.realization.kind = RealizationSpec::Kind::Query;
      ar.realization.query = query_expr();
      terminator(false);
    } else if (cur().is_keyword("BEGIN")) {
      ar.realization.kind = RealizationSpec::Kind::Procedure;
      ar.realization.body = procedure_body();
      terminator(false);
    } else {
      unexpected("STORED, SELECT or BEGIN");
    }
    return ar;
  }

  std::vector<BodyStmt> procedure_body() {
    expect_keyword("BEGIN");
    std::vector<BodyStmt> body;
    while (!cur().is_keyword("END")) {
      BodyStmt b;
      b.span = cur().span;
      if (accept_keyword("SET")) {
        BodyStmt::SetComp sc;
        sc.component = expect_ident();
        expect_symbol(":=");
        sc.value = expr();
        b.node = std::move(sc);
      } else if (accept_keyword("INSERT")) {
        expect_keyword("INTO");
        BodyStmt::Insert ins;
        ins.component = expect_ident();
        expect_keyword("VALUES");
        for (;;) {
          ins.rows.push_back(tuple_values());
          if (!accept_symbol(",")) break;
        }
        b.node = std::move(ins);
      } else if (accept_keyword("DELETE")) {
        expect_keyword("FROM");
        BodyStmt::DeleteRows del;
        del.component = expect_ident();
        expect_keyword("WHERE");
        del.predicate = expr();
        b.node = std::move(del);
      } else if (accept_keyword("RETURN")) {
        BodyStmt::Return ret;
        ret.value = expr();
        b.node = std::move(ret);
      } else {
        unexpected("SET, INSERT, DELETE, RETURN or END");
      }
      expect_symbol(";");
      body.push_back(std::move(b));
    }
    expect_keyword("END");
    return body;
  }

  std::vector<ExprPtr> tuple_values() {
    expect_symbol("(");
    std::vector<ExprPtr> vals;
    for (;;) {
      vals.push_back(expr());
      if (!accept_symbol(",")) break;
    }
    expect_symbol(")");
    return vals;
  }

  CreateView create_view() {
    expect_keyword("CREATE");
    CreateView cv;
    cv.name = expect_ident();
    expect_keyword("AS");
    cv.query = query_expr();
    terminator(false);
    return cv;
  }

  CreateObjects create_objects() {
    expect_keyword("CREATE");
    expect_keyword("OBJECT");
    CreateObjects co;
    co.class_name = expect_ident();
    expect_symbol("(");
    if (!cur().is_symbol(")")) {
      std::set<std::string> seen;
      for (;;) {
        SourcePos at = cur().span;
        std::string name = expect_ident();
        expect_symbol(":=");
        ExprPtr value = expr();
        if (!seen.insert(name).second)
          fail(ErrorCode::ParseError, "duplicate initializer '" + name + "'", at);
        co.initializers.emplace_back(std::move(name), std::move(value));
        if (!accept_symbol(",")) break;
      }
    }
    expect_symbol(")");
    if (accept_keyword("COUNT")) {
      if (cur().kind != TokenKind::IntegerLiteral) unexpected("object count");
      SourcePos at = cur().span;
      co.count = static_cast<uint64_t>(integer_token());
      if (co.count == 0)
        fail(ErrorCode::ParseError, "COUNT must be positive", at);
    }
    terminator(false);
    return co;
  }

  DeleteObjects delete_objects() {
    expect_keyword("DELETE");
    DeleteObjects del;
    del.class_name = expect_ident();
    if (accept_keyword("WHERE")) del.predicate = expr();
    terminator(false);
    return del;
  }

  GroupCall group_call() {
    expect_keyword("CALL");
    GroupCall gc;
    PathRef target = path_ref();
    if (target.segments.size() != 2)
      fail(ErrorCode::ParseError, "expected <Class>.<Method> after CALL",
           cur().span);
    gc.class_name = target.segments[0];
    gc.method = target.segments[1];
    expect_symbol("(");
    if (!cur().is_symbol(")")) {
      for (;;) {
        gc.args.push_back(expr());
        if (!accept_symbol(",")) break;
      }
    }
    expect_symbol(")");
    if (accept_keyword("WHERE")) gc.predicate = expr();
    terminator(false);
    return gc;
  }

  GroupUpdate group_update() {
    expect_keyword("UPDATE");
    GroupUpdate gu;
    gu.relation = path_ref();
    expect_keyword("SET");
    for (;;) {
      PathRef attr = path_ref();
      expect_symbol("=");
      ExprPtr value = expr();
      gu.assignments.emplace_back(std::move(attr), std::move(value));
      if (!accept_symbol(",")) break;
    }
    if (accept_keyword("WHERE")) gu.predicate = expr();
    terminator(false);
    return gu;
  }

  // --- queries --------------------------------------------------------------

  QueryExpr query_expr() {
    expect_keyword("SELECT");
    QueryExpr q;
    for (;;) {
      q.projections.push_back(projection());
      if (!accept_symbol(",")) break;
    }
    expect_keyword("FROM");
    for (;;) {
      QuerySource src;
      src.relation = path_ref();
      if (cur().kind == TokenKind::Identifier) src.alias = advance().lexeme;
      q.sources.push_back(std::move(src));
      if (!accept_symbol(",")) break;
    }
    if (accept_keyword("WHERE")) q.predicate = expr();
    if (cur().is_keyword("GROUP")) {
      advance();
      expect_keyword("BY");
      for (;;) {
        q.group_by.push_back(path_ref());
        if (!accept_symbol(",")) break;
      }
    }
    return q;
  }

  Projection projection() {
    Projection p;
    if (cur().kind == TokenKind::Keyword) {
      if (accept_keyword("SUM")) p.agg = AggKind::Sum;
      else if (accept_keyword("COUNT")) p.agg = AggKind::Count;
      else if (accept_keyword("MIN")) p.agg = AggKind::Min;
      else if (accept_keyword("MAX")) p.agg = AggKind::Max;
      else if (accept_keyword("AVG")) p.agg = AggKind::Avg;
      else unexpected("a projection");
      expect_symbol("(");
      p.path = path_ref();
      expect_symbol(")");
    } else {
      p.path = path_ref();
    }
    if (accept_keyword("AS")) p.out_name = expect_ident();
    return p;
  }

  // --- expressions ----------------------------------------------------------

  ExprPtr expr() { return or_expr(); }

  ExprPtr or_expr() {
    ExprPtr e = and_expr();
    while (cur().is_keyword("OR")) {
      SourcePos at = advance().span;
      e = make_binary(BinaryOp::Or, e, and_expr(), at);
    }
    return e;
  }

  ExprPtr and_expr() {
    ExprPtr e = not_expr();
    while (cur().is_keyword("AND")) {
      SourcePos at = advance().span;
      e = make_binary(BinaryOp::And, e, not_expr(), at);
    }
    return e;
  }

  ExprPtr not_expr() {
    if (cur().is_keyword("NOT")) {
      SourcePos at = advance().span;
      return make_unary(UnaryOp::Not, not_expr(), at);
    }
    return cmp_expr();
  }

  ExprPtr cmp_expr() {
    ExprPtr e = add_expr();
    static const std::pair<const char*, BinaryOp> ops[] = {
        {"=", BinaryOp::Eq},  {"<>", BinaryOp::Ne}, {"<=", BinaryOp::Le},
        {">=", BinaryOp::Ge}, {"<", BinaryOp::Lt},  {">", BinaryOp::Gt},
    };
    for (const auto& [sym, op] : ops) {
      if (cur().is_symbol(sym)) {
        SourcePos at = advance().span;
        return make_binary(op, e, add_expr(), at);
      }
    }
    return e;
  }

  ExprPtr add_expr() {
    ExprPtr e = mul_expr();
    for (;;) {
      if (cur().is_symbol("+")) {
        SourcePos at = advance().span;
        e = make_binary(BinaryOp::Add, e, mul_expr(), at);
      } else if (cur().is_symbol("-")) {
        SourcePos at = advance().span;
        e = make_binary(BinaryOp::Sub, e, mul_expr(), at);
      } else {
        return e;
      }
    }
  }

  ExprPtr mul_expr() {
    ExprPtr e = unary_expr();
    for (;;) {
      if (cur().is_symbol("*")) {
        SourcePos at = advance().span;
        e = make_binary(BinaryOp::Mul, e, unary_expr(), at);
      } else if (cur().is_symbol("/")) {
        SourcePos at = advance().span;
        e = make_binary(BinaryOp::Div, e, unary_expr(), at);
      } else {
        return e;
      }
    }
  }

  ExprPtr unary_expr() {
    if (cur().is_symbol("-")) {
      SourcePos at = advance().span;
      return make_unary(UnaryOp::Neg, unary_expr(), at);
    }
    return primary();
  }

  ExprPtr primary() {
    SourcePos at = cur().span;
    switch (cur().kind) {
      case TokenKind::IntegerLiteral: {
        Literal lit;
        lit.kind = Literal::Kind::Int;
        lit.int_value = integer_token();
        return make_literal(std::move(lit), at);
      }
      case TokenKind::FloatLiteral: {
        Literal lit;
        lit.kind = Literal::Kind::Float;
        lit.float_value = std::stod(advance().lexeme);
        return make_literal(std::move(lit), at);
      }
      case TokenKind::StringLiteral:
      case TokenKind::DatetimeLiteral: {
        Literal lit;
        lit.kind = Literal::Kind::Str;
        lit.datetime_shaped = cur().kind == TokenKind::DatetimeLiteral;
        lit.str_value = advance().lexeme;
        return make_literal(std::move(lit), at);
      }
      case TokenKind::BoolLiteral: {
        Literal lit;
        lit.kind = Literal::Kind::Bool;
        lit.bool_value = to_upper_ascii(advance().lexeme) == "TRUE";
        return make_literal(std::move(lit), at);
      }
      case TokenKind::Identifier:
      case TokenKind::DottedPath:
        return make_path(path_ref(), at);
      case TokenKind::Symbol:
        if (cur().is_symbol("#")) {
          advance();
          if (cur().kind != TokenKind::IntegerLiteral)
            unexpected("object id after '#'");
          Literal lit;
          lit.kind = Literal::Kind::OidRef;
          lit.oid_value = static_cast<uint64_t>(integer_token());
          return make_literal(std::move(lit), at);
        }
        if (cur().is_symbol("{")) return relation_literal(at);
        if (cur().is_symbol("(")) {
          advance();
          ExprPtr first = expr();
          if (accept_symbol(")")) return first;
          // A comma makes this a tuple literal.
          if (cur().is_symbol(",")) {
            Literal lit;
            lit.kind = Literal::Kind::TupleLit;
            lit.elems.push_back(first);
            while (accept_symbol(",")) lit.elems.push_back(expr());
            expect_symbol(")");
            return make_literal(std::move(lit), at);
          }
          unexpected("')' or ','");
        }
        unexpected("an expression");
      default:
        unexpected("an expression");
    }
  }

  ExprPtr relation_literal(SourcePos at) {
    expect_symbol("{");
    Literal lit;
    lit.kind = Literal::Kind::RelationLit;
    if (!cur().is_symbol("}")) {
      for (;;) {
        lit.rows.push_back(tuple_values());
        if (!accept_symbol(",")) break;
      }
    }
    expect_symbol("}");
    return make_literal(std::move(lit), at);
  }

  std::vector<Token> tokens_;
  size_t i_ = 0;
};

}  // namespace

std::vector<Statement> parse_script(const std::string& source) {
  return Parser(source).script();
}

Statement parse_statement(const std::string& source) {
  std::vector<Statement> all = parse_script(source);
  if (all.size() != 1)
    fail(ErrorCode::ParseError,
         "expected exactly one statement, found " + std::to_string(all.size()));
  return std::move(all.front());
}

ExprPtr parse_expression(const std::string& source) {
  return Parser(source).whole_expr();
}

}  // namespace rxo

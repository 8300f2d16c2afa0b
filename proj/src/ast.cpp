#include "rxo/ast.hpp"

namespace rxo {

std::string PathRef::dotted() const {
  std::string out;
  for (size_t i = 0; i < segments.size(); ++i) {
    if (i) out += '.';
    out += segments[i];
  }
  return out;
}

ExprPtr make_literal(Literal v, SourcePos span) {
  auto e = std::make_shared<Expr>();
  e->node = Expr::Lit{std::move(v)};
  e->span = span;
  return e;
}

ExprPtr make_path(PathRef ref, SourcePos span) {
  auto e = std::make_shared<Expr>();
  e->node = Expr::Path{std::move(ref)};
  e->span = span;
  return e;
}

ExprPtr make_unary(UnaryOp op, ExprPtr operand, SourcePos span) {
  auto e = std::make_shared<Expr>();
  e->node = Expr::Unary{op, std::move(operand)};
  e->span = span;
  return e;
}

ExprPtr make_binary(BinaryOp op, ExprPtr lhs, ExprPtr rhs, SourcePos span) {
  auto e = std::make_shared<Expr>();
  e->node = Expr::Binary{op, std::move(lhs), std::move(rhs)};
  e->span = span;
  return e;
}

namespace {

bool literal_equal(const Literal& a, const Literal& b) {
  if (a.kind != b.kind) return false;
  switch (a.kind) {
    case Literal::Kind::Int: return a.int_value == b.int_value;
    case Literal::Kind::Float: return a.float_value == b.float_value;
    case Literal::Kind::Str: return a.str_value == b.str_value;
    case Literal::Kind::Bool: return a.bool_value == b.bool_value;
    case Literal::Kind::OidRef: return a.oid_value == b.oid_value;
    case Literal::Kind::RelationLit: {
      if (a.rows.size() != b.rows.size()) return false;
      for (size_t i = 0; i < a.rows.size(); ++i) {
        if (a.rows[i].size() != b.rows[i].size()) return false;
        for (size_t j = 0; j < a.rows[i].size(); ++j)
          if (!ast_equal(a.rows[i][j], b.rows[i][j])) return false;
      }
      return true;
    }
    case Literal::Kind::TupleLit: {
      if (a.elems.size() != b.elems.size()) return false;
      for (size_t i = 0; i < a.elems.size(); ++i)
        if (!ast_equal(a.elems[i], b.elems[i])) return false;
      return true;
    }
  }
  return false;
}

bool path_equal(const PathRef& a, const PathRef& b) {
  return a.segments == b.segments;
}

bool query_source_equal(const QuerySource& a, const QuerySource& b) {
  return path_equal(a.relation, b.relation) && a.alias == b.alias;
}

bool projection_equal(const Projection& a, const Projection& b) {
  return a.agg == b.agg && path_equal(a.path, b.path) && a.out_name == b.out_name;
}

bool params_equal(const std::vector<Param>& a, const std::vector<Param>& b) {
  if (a.size() != b.size()) return false;
  for (size_t i = 0; i < a.size(); ++i)
    if (a[i].name != b[i].name || a[i].type != b[i].type) return false;
  return true;
}

bool component_equal(const ComponentSpec& a, const ComponentSpec& b) {
  return a.name == b.name && a.type == b.type && a.is_method == b.is_method &&
         params_equal(a.params, b.params);
}

bool realization_equal(const RealizationSpec& a, const RealizationSpec& b) {
  if (a.kind != b.kind) return false;
  switch (a.kind) {
    case RealizationSpec::Kind::Stored: return true;
    case RealizationSpec::Kind::Query: return ast_equal(a.query, b.query);
    case RealizationSpec::Kind::Procedure: {
      if (a.body.size() != b.body.size()) return false;
      for (size_t i = 0; i < a.body.size(); ++i)
        if (!ast_equal(a.body[i], b.body[i])) return false;
      return true;
    }
  }
  return false;
}

}  // namespace

bool ast_equal(const ExprPtr& a, const ExprPtr& b) {
  if (!a || !b) return !a && !b;
  return ast_equal(*a, *b);
}

bool ast_equal(const Expr& a, const Expr& b) {
  if (a.node.index() != b.node.index()) return false;
  if (const auto* la = std::get_if<Expr::Lit>(&a.node))
    return literal_equal(la->value, std::get<Expr::Lit>(b.node).value);
  if (const auto* pa = std::get_if<Expr::Path>(&a.node))
    return path_equal(pa->ref, std::get<Expr::Path>(b.node).ref);
  if (const auto* ua = std::get_if<Expr::Unary>(&a.node)) {
    const auto& ub = std::get<Expr::Unary>(b.node);
    return ua->op == ub.op && ast_equal(ua->operand, ub.operand);
  }
  const auto& ba = std::get<Expr::Binary>(a.node);
  const auto& bb = std::get<Expr::Binary>(b.node);
  return ba.op == bb.op && ast_equal(ba.lhs, bb.lhs) && ast_equal(ba.rhs, bb.rhs);
}

bool ast_equal(const QueryExpr& a, const QueryExpr& b) {
  if (a.projections.size() != b.projections.size() ||
      a.sources.size() != b.sources.size() ||
      a.group_by.size() != b.group_by.size())
    return false;
  for (size_t i = 0; i < a.projections.size(); ++i)
    if (!projection_equal(a.projections[i], b.projections[i])) return false;
  for (size_t i = 0; i < a.sources.size(); ++i)
    if (!query_source_equal(a.sources[i], b.sources[i])) return false;
  for (size_t i = 0; i < a.group_by.size(); ++i)
    if (!path_equal(a.group_by[i], b.group_by[i])) return false;
  return ast_equal(a.predicate, b.predicate);
}

bool ast_equal(const BodyStmt& a, const BodyStmt& b) {
  if (a.node.index() != b.node.index()) return false;
  if (const auto* sa = std::get_if<BodyStmt::SetComp>(&a.node)) {
    const auto& sb = std::get<BodyStmt::SetComp>(b.node);
    return sa->component == sb.component && ast_equal(sa->value, sb.value);
  }
  if (const auto* ia = std::get_if<BodyStmt::Insert>(&a.node)) {
    const auto& ib = std::get<BodyStmt::Insert>(b.node);
    if (ia->component != ib.component || ia->rows.size() != ib.rows.size())
      return false;
    for (size_t i = 0; i < ia->rows.size(); ++i) {
      if (ia->rows[i].size() != ib.rows[i].size()) return false;
      for (size_t j = 0; j < ia->rows[i].size(); ++j)
        if (!ast_equal(ia->rows[i][j], ib.rows[i][j])) return false;
    }
    return true;
  }
  if (const auto* da = std::get_if<BodyStmt::DeleteRows>(&a.node)) {
    const auto& db = std::get<BodyStmt::DeleteRows>(b.node);
    return da->component == db.component && ast_equal(da->predicate, db.predicate);
  }
  const auto& ra = std::get<BodyStmt::Return>(a.node);
  const auto& rb = std::get<BodyStmt::Return>(b.node);
  return ast_equal(ra.value, rb.value);
}

bool ast_equal(const Statement& a, const Statement& b) {
  if (a.node.index() != b.node.index()) return false;
  if (const auto* ca = std::get_if<CreateClass>(&a.node)) {
    const auto& cb = std::get<CreateClass>(b.node);
    if (ca->name != cb.name || ca->parent != cb.parent ||
        ca->components.size() != cb.components.size())
      return false;
    for (size_t i = 0; i < ca->components.size(); ++i)
      if (!component_equal(ca->components[i], cb.components[i])) return false;
    return true;
  }
  if (const auto* aa = std::get_if<AlterRealize>(&a.node)) {
    const auto& ab = std::get<AlterRealize>(b.node);
    if (aa->class_name != ab.class_name || aa->component != ab.component)
      return false;
    if (aa->params.has_value() != ab.params.has_value()) return false;
    if (aa->params && !params_equal(*aa->params, *ab.params)) return false;
    if (aa->return_type.has_value() != ab.return_type.has_value()) return false;
    if (aa->return_type && *aa->return_type != *ab.return_type) return false;
    return realization_equal(aa->realization, ab.realization);
  }
  if (const auto* va = std::get_if<CreateView>(&a.node)) {
    const auto& vb = std::get<CreateView>(b.node);
    return va->name == vb.name && ast_equal(va->query, vb.query);
  }
  if (const auto* oa = std::get_if<CreateObjects>(&a.node)) {
    const auto& ob = std::get<CreateObjects>(b.node);
    if (oa->class_name != ob.class_name || oa->count != ob.count ||
        oa->initializers.size() != ob.initializers.size())
      return false;
    for (size_t i = 0; i < oa->initializers.size(); ++i) {
      if (oa->initializers[i].first != ob.initializers[i].first) return false;
      if (!ast_equal(oa->initializers[i].second, ob.initializers[i].second))
        return false;
    }
    return true;
  }
  if (const auto* da = std::get_if<DeleteObjects>(&a.node)) {
    const auto& db = std::get<DeleteObjects>(b.node);
    return da->class_name == db.class_name && ast_equal(da->predicate, db.predicate);
  }
  if (const auto* sa = std::get_if<SelectStmt>(&a.node)) {
    return ast_equal(sa->query, std::get<SelectStmt>(b.node).query);
  }
  if (const auto* ga = std::get_if<GroupCall>(&a.node)) {
    const auto& gb = std::get<GroupCall>(b.node);
    if (ga->class_name != gb.class_name || ga->method != gb.method ||
        ga->args.size() != gb.args.size())
      return false;
    for (size_t i = 0; i < ga->args.size(); ++i)
      if (!ast_equal(ga->args[i], gb.args[i])) return false;
    return ast_equal(ga->predicate, gb.predicate);
  }
  const auto& ua = std::get<GroupUpdate>(a.node);
  const auto& ub = std::get<GroupUpdate>(b.node);
  if (!path_equal(ua.relation, ub.relation) ||
      ua.assignments.size() != ub.assignments.size())
    return false;
  for (size_t i = 0; i < ua.assignments.size(); ++i) {
    if (!path_equal(ua.assignments[i].first, ub.assignments[i].first)) return false;
    if (!ast_equal(ua.assignments[i].second, ub.assignments[i].second)) return false;
  }
  return ast_equal(ua.predicate, ub.predicate);
}

}  // namespace rxo

#include "rxo/catalog.hpp"

#include <algorithm>
#include <set>

#include "rxo/error.hpp"
#include "rxo/paths.hpp"
#include "rxo/printer.hpp"
#include "rxo/resolve.hpp"

namespace rxo {

Catalog Catalog::unchecked(std::vector<ClassDef> classes,
                           std::vector<ViewDef> views) {
  Catalog c;
  c.classes_ = std::move(classes);
  c.views_ = std::move(views);
  for (size_t i = 0; i < c.classes_.size(); ++i)
    c.index_.emplace(c.classes_[i].name, i);
  return c;
}

const ComponentDef* ClassDef::find_own(const std::string& comp) const {
  for (const ComponentDef& c : own)
    if (c.name == comp) return &c;
  return nullptr;
}

const Realization* ClassDef::find_override(const std::string& comp) const {
  for (const auto& [name, realization] : overrides)
    if (name == comp) return &realization;
  return nullptr;
}

bool Catalog::has_class(const std::string& name) const {
  return index_.count(name) != 0;
}

const ClassDef* Catalog::find_class(const std::string& name) const {
  auto it = index_.find(name);
  return it == index_.end() ? nullptr : &classes_[it->second];
}

const ClassDef& Catalog::class_def(const std::string& name) const {
  const ClassDef* cls = find_class(name);
  if (!cls) fail(ErrorCode::UnknownClass, "unknown class '" + name + "'");
  return *cls;
}

const ViewDef* Catalog::find_view(const std::string& name) const {
  for (const ViewDef& v : views_)
    if (v.name == name) return &v;
  return nullptr;
}

std::vector<std::string> Catalog::with_descendants(const std::string& name) const {
  std::vector<std::string> out{name};
  for (const ClassDef& cls : classes_) {
    if (cls.name == name) continue;
    if (is_subclass_of(cls.name, name)) out.push_back(cls.name);
  }
  return out;
}

bool Catalog::is_subclass_of(const std::string& cls,
                             const std::string& ancestor) const {
  const ClassDef* cur = find_class(cls);
  while (cur) {
    if (cur->name == ancestor) return true;
    if (!cur->parent) return false;
    cur = find_class(*cur->parent);
  }
  return false;
}

namespace {

// Checks that every reference inside `type` targets a known class.
// `pending` is the class currently being defined (self-references allowed).
void check_reference_targets(const Catalog& catalog, const std::string& pending,
                             const ValuableType& type,
                             const std::string& where) {
  switch (type.kind) {
    case ValuableType::Kind::Scalar:
      if (type.scalar.is_reference() && type.scalar.ref_class != pending &&
          !catalog.has_class(type.scalar.ref_class))
        fail(ErrorCode::UnknownReferenceTarget,
             "reference target '" + type.scalar.ref_class + "' in " + where +
                 " does not name a class");
      break;
    case ValuableType::Kind::Tuple:
    case ValuableType::Kind::Relation:
      for (const Field& f : type.fields)
        check_reference_targets(catalog, pending, f.field_type(),
                                where + "." + f.name);
      if (type.is_relation()) {
        for (const std::string& k : type.key) {
          bool found = false;
          for (const Field& f : type.fields)
            if (f.name == k) found = true;
          if (!found)
            fail(ErrorCode::UnknownComponent,
                 "key attribute '" + k + "' in " + where +
                     " does not name a heading field");
        }
      }
      break;
  }
}

void check_body_names(const Catalog& catalog, const std::string& class_name,
                      const ComponentDef& component,
                      const std::vector<BodyStmt>& body) {
  std::vector<ComponentDef> comps = effective_components(catalog, class_name);
  auto find_comp = [&](const std::string& name) -> const ComponentDef* {
    for (const ComponentDef& c : comps)
      if (c.name == name) return &c;
    return nullptr;
  };
  for (const BodyStmt& b : body) {
    if (const auto* sc = std::get_if<BodyStmt::SetComp>(&b.node)) {
      const ComponentDef* target = find_comp(sc->component);
      if (!target)
        fail(ErrorCode::UnknownComponent,
             "SET target '" + sc->component + "' is not a component of '" +
                 class_name + "'", b.span);
      if (target->is_method)
        fail(ErrorCode::NotUpdatable,
             "SET target '" + sc->component + "' is a method", b.span);
    } else if (const auto* ins = std::get_if<BodyStmt::Insert>(&b.node)) {
      const ComponentDef* target = find_comp(ins->component);
      if (!target || !target->type.is_relation())
        fail(ErrorCode::UnknownComponent,
             "INSERT target '" + ins->component +
                 "' is not a relation component of '" + class_name + "'",
             b.span);
      for (const auto& row : ins->rows)
        if (row.size() != target->type.fields.size())
          fail(ErrorCode::TypeMismatch,
               "INSERT row width does not match heading of '" +
                   ins->component + "'", b.span);
    } else if (const auto* del = std::get_if<BodyStmt::DeleteRows>(&b.node)) {
      const ComponentDef* target = find_comp(del->component);
      if (!target || !target->type.is_relation())
        fail(ErrorCode::UnknownComponent,
             "DELETE target '" + del->component +
                 "' is not a relation component of '" + class_name + "'",
             b.span);
    }
  }
  (void)component;
}

bool params_match(const std::vector<Param>& a, const std::vector<Param>& b) {
  if (a.size() != b.size()) return false;
  for (size_t i = 0; i < a.size(); ++i)
    if (a[i].name != b[i].name || a[i].type != b[i].type) return false;
  return true;
}

}  // namespace

Catalog define_class(const Catalog& catalog, const CreateClass& stmt) {
  if (catalog.has_class(stmt.name))
    fail(ErrorCode::DuplicateClass, "class '" + stmt.name + "' already exists");
  if (catalog.find_view(stmt.name))
    fail(ErrorCode::DuplicateClass,
         "name '" + stmt.name + "' already names a view");
  std::set<std::string> names;
  if (stmt.parent) {
    if (!catalog.has_class(*stmt.parent))
      fail(ErrorCode::UnknownParent, "unknown parent class '" + *stmt.parent + "'");
    for (const ComponentDef& c : effective_components(catalog, *stmt.parent))
      names.insert(c.name);
  }

  ClassDef cls;
  cls.name = stmt.name;
  cls.parent = stmt.parent;
  for (const ComponentSpec& spec : stmt.components) {
    if (!names.insert(spec.name).second)
      fail(ErrorCode::DuplicateComponent,
           "component '" + spec.name + "' already defined in '" + stmt.name +
               "' or an ancestor");
    ComponentDef def;
    def.name = spec.name;
    def.type = spec.type;
    def.is_method = spec.is_method;
    def.params = spec.params;
    def.owner = stmt.name;
    def.realization.kind = Realization::Kind::Unrealized;
    check_reference_targets(catalog, stmt.name, def.type,
                            stmt.name + "." + def.name);
    for (const Param& p : def.params)
      check_reference_targets(catalog, stmt.name,
                              ValuableType::of_scalar(p.type),
                              stmt.name + "." + def.name + "(" + p.name + ")");
    cls.own.push_back(std::move(def));
  }

  Catalog next = catalog;
  next.index_.emplace(cls.name, next.classes_.size());
  next.classes_.push_back(std::move(cls));
  return next;
}

std::vector<ComponentDef> effective_components(const Catalog& catalog,
                                               const std::string& class_name) {
  const ClassDef& leaf = catalog.class_def(class_name);

  // Chain from root to leaf.
  std::vector<const ClassDef*> chain;
  for (const ClassDef* cur = &leaf;;) {
    chain.push_back(cur);
    if (!cur->parent) break;
    cur = &catalog.class_def(*cur->parent);
  }
  std::reverse(chain.begin(), chain.end());

  std::vector<ComponentDef> out;
  for (const ClassDef* cls : chain) {
    for (const ComponentDef& comp : cls->own) {
      ComponentDef effective = comp;
      // Most-derived realization: walk leaf-to-root for an override or a
      // declaration of this component.
      for (auto it = chain.rbegin(); it != chain.rend(); ++it) {
        if (const Realization* o = (*it)->find_override(comp.name)) {
          effective.realization = *o;
          effective.owner = (*it)->name;
          break;
        }
        if (const ComponentDef* d = (*it)->find_own(comp.name)) {
          effective.realization = d->realization;
          effective.owner = (*it)->name;
          break;
        }
      }
      out.push_back(std::move(effective));
    }
  }
  return out;
}

ComponentDef effective_component(const Catalog& catalog,
                                 const std::string& class_name,
                                 const std::string& component) {
  for (ComponentDef& c : effective_components(catalog, class_name))
    if (c.name == component) return std::move(c);
  fail(ErrorCode::UnknownComponent,
       "class '" + class_name + "' has no component '" + component + "'");
}

Catalog alter_realize(const Catalog& catalog, const AlterRealize& stmt) {
  const ClassDef& cls = catalog.class_def(stmt.class_name);
  ComponentDef comp = effective_component(catalog, stmt.class_name, stmt.component);

  if (stmt.params) {
    if (!comp.is_method)
      fail(ErrorCode::ArityMismatch,
           "component '" + comp.name + "' takes no parameters");
    if (!params_match(*stmt.params, comp.params))
      fail(ErrorCode::ArityMismatch,
           "parameter list differs from the specification of '" + comp.name + "'");
    if (stmt.return_type && !comp.type.is_scalar())
      fail(ErrorCode::ArityMismatch, "method return type must be scalar");
    if (stmt.return_type && *stmt.return_type != comp.type.scalar)
      fail(ErrorCode::ArityMismatch,
           "return type differs from the specification of '" + comp.name + "'");
  }

  Realization next_realization;
  switch (stmt.realization.kind) {
    case RealizationSpec::Kind::Stored:
      if (comp.is_method)
        fail(ErrorCode::NotAProcedure,
             "method '" + comp.name + "' cannot be realized as STORED");
      next_realization.kind = Realization::Kind::Stored;
      break;
    case RealizationSpec::Kind::Query:
      if (comp.is_method)
        fail(ErrorCode::NotAProcedure,
             "method '" + comp.name + "' must be realized as a procedure");
      check_realization_heading(catalog, stmt.class_name, comp,
                                stmt.realization.query);
      next_realization.kind = Realization::Kind::Query;
      next_realization.query = stmt.realization.query;
      break;
    case RealizationSpec::Kind::Procedure:
      if (!comp.is_method)
        fail(ErrorCode::NotAProcedure,
             "component '" + comp.name + "' is not a method");
      check_body_names(catalog, stmt.class_name, comp, stmt.realization.body);
      next_realization.kind = Realization::Kind::Procedure;
      next_realization.body = stmt.realization.body;
      break;
  }

  Catalog next = catalog;
  ClassDef& target = next.classes_[next.index_.at(cls.name)];
  for (ComponentDef& own : target.own) {
    if (own.name == stmt.component) {
      own.realization = std::move(next_realization);
      return next;
    }
  }
  for (auto& [name, realization] : target.overrides) {
    if (name == stmt.component) {
      realization = std::move(next_realization);
      return next;
    }
  }
  target.overrides.emplace_back(stmt.component, std::move(next_realization));
  return next;
}

Catalog add_view(const Catalog& catalog, const std::string& name,
                 const QueryExpr& query) {
  if (catalog.find_view(name))
    fail(ErrorCode::DuplicateView, "view '" + name + "' already exists");
  if (catalog.has_class(name))
    fail(ErrorCode::DuplicateView, "name '" + name + "' already names a class");
  Catalog next = catalog;
  next.views_.push_back(ViewDef{name, query});
  return next;
}

ValidationReport validate_catalog(const Catalog& catalog) {
  ValidationReport report;

  for (const ClassDef& cls : catalog.classes()) {
    // Forest shape: walk to the root, detecting cycles and missing parents.
    bool chain_ok = true;
    std::set<std::string> seen{cls.name};
    const ClassDef* cur = &cls;
    while (cur->parent) {
      const ClassDef* parent = catalog.find_class(*cur->parent);
      if (!parent) {
        report.push_back({cls.name, "", "parent '" + *cur->parent + "' missing"});
        chain_ok = false;
        break;
      }
      if (!seen.insert(parent->name).second) {
        report.push_back({cls.name, "", "inheritance cycle through '" +
                                            parent->name + "'"});
        chain_ok = false;
        break;
      }
      cur = parent;
    }
    if (!chain_ok) continue;  // effective_components would not terminate

    std::set<std::string> names;
    for (const ComponentDef& comp : effective_components(catalog, cls.name)) {
      if (!names.insert(comp.name).second)
        report.push_back({cls.name, comp.name, "duplicate component after merge"});
      try {
        check_reference_targets(catalog, cls.name, comp.type,
                                cls.name + "." + comp.name);
      } catch (const Error& e) {
        report.push_back({cls.name, comp.name, e.message()});
      }
    }

    // The naming rule requires unique attribute names per derived relation;
    // a component named like the root class would collide with the reference
    // attribute.
    try {
      for (const DerivedRelationSchema& schema : derive_relations(catalog, cls.name)) {
        std::set<std::string> attrs{schema.ref_attribute};
        for (const DerivedAttribute& a : schema.attributes)
          if (!attrs.insert(a.name).second)
            report.push_back({cls.name, a.name,
                              "derived relation '" + schema.name +
                                  "' has colliding attribute '" + a.name + "'"});
      }
    } catch (const Error& e) {
      report.push_back({cls.name, "", e.message()});
    }
  }

  for (const ViewDef& view : catalog.views()) {
    if (catalog.has_class(view.name))
      report.push_back({view.name, "", "view name collides with a class"});
    try {
      QueryScope scope{catalog, nullptr};
      resolve_query(view.query, scope);
    } catch (const Error& e) {
      report.push_back({view.name, "", std::string("view does not resolve: ") +
                                           e.message()});
    }
  }
  return report;
}

std::string catalog_dump(const Catalog& catalog) {
  std::string out;

  for (const ClassDef& cls : catalog.classes()) {
    Statement stmt;
    CreateClass cc;
    cc.name = cls.name;
    cc.parent = cls.parent;
    for (const ComponentDef& comp : cls.own) {
      ComponentSpec spec;
      spec.name = comp.name;
      spec.type = comp.type;
      spec.is_method = comp.is_method;
      spec.params = comp.params;
      cc.components.push_back(std::move(spec));
    }
    stmt.node = std::move(cc);
    out += format_statement(stmt);
    out += "\n";
  }

  for (const ClassDef& cls : catalog.classes()) {
    auto emit_alter = [&](const std::string& comp_name, const Realization& r,
                          const ComponentDef& decl) {
      if (r.kind == Realization::Kind::Unrealized) return;
      Statement stmt;
      AlterRealize ar;
      ar.class_name = cls.name;
      ar.component = comp_name;
      if (decl.is_method) {
        ar.params = decl.params;
        ar.return_type = decl.type.scalar;
      }
      switch (r.kind) {
        case Realization::Kind::Stored:
          ar.realization.kind = RealizationSpec::Kind::Stored;
          break;
        case Realization::Kind::Query:
          ar.realization.kind = RealizationSpec::Kind::Query;
          ar.realization.query = r.query;
          break;
        case Realization::Kind::Procedure:
          ar.realization.kind = RealizationSpec::Kind::Procedure;
          ar.realization.body = r.body;
          break;
        case Realization::Kind::Unrealized:
          return;
      }
      stmt.node = std::move(ar);
      out += format_statement(stmt);
      out += "\n";
    };

    for (const ComponentDef& comp : cls.own)
      emit_alter(comp.name, comp.realization, comp);
    for (const auto& [name, realization] : cls.overrides) {
      ComponentDef decl = effective_component(catalog, cls.name, name);
      emit_alter(name, realization, decl);
    }
  }

  for (const ViewDef& view : catalog.views()) {
    Statement stmt;
    stmt.node = CreateView{view.name, view.query};
    out += format_statement(stmt);
    out += "\n";
  }
  return out;
}

}  // namespace rxo

#ifndef RXO_CATALOG_HPP_
#define RXO_CATALOG_HPP_

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "rxo/ast.hpp"
#include "rxo/types.hpp"

namespace rxo {

struct Realization {
  enum class Kind { Unrealized, Stored, Query, Procedure };
  Kind kind = Kind::Unrealized;
  QueryExpr query;             // Kind::Query
  std::vector<BodyStmt> body;  // Kind::Procedure
};

struct ComponentDef {
  std::string name;
  ValuableType type;           // methods: scalar return type
  bool is_method = false;
  std::vector<Param> params;   // methods only
  Realization realization;
  std::string owner;           // class the definition is effective in
};

struct ClassDef {
  std::string name;
  std::optional<std::string> parent;
  std::vector<ComponentDef> own;
  // Re-realizations of inherited components, in the order they were issued.
  std::vector<std::pair<std::string, Realization>> overrides;

  const ComponentDef* find_own(const std::string& comp) const;
  const Realization* find_override(const std::string& comp) const;
};

struct ViewDef {
  std::string name;
  QueryExpr query;  // stored as parsed, never rewritten by later DDL
};

struct Violation {
  std::string class_name;
  std::string component;  // may be empty
  std::string message;
};

using ValidationReport = std::vector<Violation>;

// Immutable snapshot of class and view definitions. DDL operations return a
// new catalog and leave their input unchanged.
class Catalog {
 public:
  Catalog() = default;

  // Builds a catalog without any validation; validate_catalog reports the
  // damage. Intended for checks over hand-assembled definitions.
  static Catalog unchecked(std::vector<ClassDef> classes,
                           std::vector<ViewDef> views = {});

  const std::vector<ClassDef>& classes() const { return classes_; }
  const std::vector<ViewDef>& views() const { return views_; }

  bool has_class(const std::string& name) const;
  const ClassDef& class_def(const std::string& name) const;  // throws UnknownClass
  const ClassDef* find_class(const std::string& name) const;
  const ViewDef* find_view(const std::string& name) const;

  // Direct and transitive subclasses, in definition order. Includes `name`
  // itself first.
  std::vector<std::string> with_descendants(const std::string& name) const;

  // True when `cls` equals `ancestor` or derives from it.
  bool is_subclass_of(const std::string& cls, const std::string& ancestor) const;

 private:
  friend Catalog define_class(const Catalog&, const CreateClass&);
  friend Catalog alter_realize(const Catalog&, const AlterRealize&);
  friend Catalog add_view(const Catalog&, const std::string&, const QueryExpr&);

  std::vector<ClassDef> classes_;
  std::map<std::string, size_t> index_;
  std::vector<ViewDef> views_;
};

Catalog define_class(const Catalog& catalog, const CreateClass& stmt);
Catalog alter_realize(const Catalog& catalog, const AlterRealize& stmt);

// Adds a validated view; the query must already be resolved by the caller.
Catalog add_view(const Catalog& catalog, const std::string& name,
                 const QueryExpr& query);

// Inherited components first (parent's order), then own; each component
// carries the most-derived realization for this class.
std::vector<ComponentDef> effective_components(const Catalog& catalog,
                                               const std::string& class_name);

// Finds one effective component; throws UnknownComponent / UnknownClass.
ComponentDef effective_component(const Catalog& catalog,
                                 const std::string& class_name,
                                 const std::string& component);

ValidationReport validate_catalog(const Catalog& catalog);

// Deterministic textual listing of the whole catalog as canonical DDL;
// parses back into an equivalent catalog.
std::string catalog_dump(const Catalog& catalog);

}  // namespace rxo

#endif  // RXO_CATALOG_HPP_

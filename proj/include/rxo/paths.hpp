#ifndef RXO_PATHS_HPP_
#define RXO_PATHS_HPP_

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "rxo/catalog.hpp"
#include "rxo/types.hpp"

namespace rxo {

// A correct path expression: root name, then component/field names descending
// through relation and tuple headings and dereferencing references, ending at
// a scalar.
struct PathExpression {
  std::string root;
  std::vector<std::string> segments;
  ScalarType terminal;

  std::string dotted() const;          // root.seg1.seg2...
  std::string suffix(size_t from) const;  // segments[from..] joined by '.'
};

struct DerivedAttribute {
  std::string name;  // dotted suffix
  ScalarType type;
};

// One relation guaranteed by the naming rule: its name is a path prefix, its
// attributes are the completing suffixes, plus a reference attribute named
// after the root class.
struct DerivedRelationSchema {
  std::string name;                    // root (+ '.' + prefix segments)
  std::string root_class;              // class the rows come from
  std::string ref_attribute;           // equals the class name
  std::vector<std::string> prefix;     // segments after the root
  std::vector<DerivedAttribute> attributes;

  Heading heading() const;  // ref attribute first, then suffixes
};

struct NamespaceIndex {
  // In insertion (derivation) order.
  std::vector<DerivedRelationSchema> relations;

  const DerivedRelationSchema* find(const std::string& name) const;
};

// All correct path expressions rooted at the class, in specification order,
// depth first. Reference components yield both a terminal path and extended
// paths into the target class; a reference whose target already appears in
// the dereference chain is not expanded further.
std::vector<PathExpression> enumerate_paths(const Catalog& catalog,
                                            const std::string& root_class);

// One schema per distinct proper prefix (including the bare root) of any
// correct path expression.
std::vector<DerivedRelationSchema> derive_relations(const Catalog& catalog,
                                                    const std::string& root_class);

// derive_relations with relation names re-rooted at a reference name; the
// reference attribute keeps the class name.
std::vector<DerivedRelationSchema> local_namespace(const Catalog& catalog,
                                                   const std::string& ref_name,
                                                   const std::string& target_class);

// Global index over every class in the catalog.
NamespaceIndex build_namespace(const Catalog& catalog);

// All |segments| ways to divide the path into a relation name and an
// attribute name; every returned pair exists in the index.
std::vector<std::pair<std::string, std::string>> split_lookup(
    const NamespaceIndex& index, const PathExpression& path);

// The paper's notation: "name" ("refattr", "a1", "a2", ...), one per line,
// classes in definition order.
std::string dump_relations(const Catalog& catalog);

}  // namespace rxo

#endif  // RXO_PATHS_HPP_

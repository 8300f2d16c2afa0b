#include "rxo/paths.hpp"

#include <algorithm>
#include <set>

#include "rxo/error.hpp"

namespace rxo {

namespace {

struct PathWalker {
  const Catalog& catalog;
  std::vector<PathExpression>& out;
  std::string root;
  std::vector<std::string> stack;       // current segment chain
  std::vector<std::string> deref_chain; // classes visited by dereferencing

  void emit(const ScalarType& terminal) {
    PathExpression p;
    p.root = root;
    p.segments = stack;
    p.terminal = terminal;
    out.push_back(std::move(p));
  }

  bool in_chain(const std::string& cls) const {
    return std::find(deref_chain.begin(), deref_chain.end(), cls) !=
           deref_chain.end();
  }

  void walk_class(const std::string& cls) {
    for (const ComponentDef& comp : effective_components(catalog, cls)) {
      if (comp.is_method) continue;  // methods contribute no paths
      stack.push_back(comp.name);
      walk_type(comp.type);
      stack.pop_back();
    }
  }

  void walk_type(const ValuableType& type) {
    switch (type.kind) {
      case ValuableType::Kind::Scalar:
        emit(type.scalar);
        if (type.scalar.is_reference() && !in_chain(type.scalar.ref_class) &&
            catalog.has_class(type.scalar.ref_class)) {
          deref_chain.push_back(type.scalar.ref_class);
          walk_class(type.scalar.ref_class);
          deref_chain.pop_back();
        }
        break;
      case ValuableType::Kind::Tuple:
      case ValuableType::Kind::Relation:
        for (const Field& f : type.fields) {
          stack.push_back(f.name);
          walk_type(f.field_type());
          stack.pop_back();
        }
        break;
    }
  }
};

}  // namespace

std::string PathExpression::dotted() const {
  std::string s = root;
  for (const std::string& seg : segments) {
    s += '.';
    s += seg;
  }
  return s;
}

std::string PathExpression::suffix(size_t from) const {
  std::string s;
  for (size_t i = from; i < segments.size(); ++i) {
    if (i > from) s += '.';
    s += segments[i];
  }
  return s;
}

Heading DerivedRelationSchema::heading() const {
  Heading h;
  h.push_back({ref_attribute, ScalarType::reference(root_class)});
  for (const DerivedAttribute& a : attributes) h.push_back({a.name, a.type});
  return h;
}

const DerivedRelationSchema* NamespaceIndex::find(const std::string& name) const {
  for (const DerivedRelationSchema& r : relations)
    if (r.name == name) return &r;
  return nullptr;
}

std::vector<PathExpression> enumerate_paths(const Catalog& catalog,
                                            const std::string& root_class) {
  if (!catalog.has_class(root_class))
    fail(ErrorCode::UnknownClass, "unknown class '" + root_class + "'");
  std::vector<PathExpression> out;
  PathWalker walker{catalog, out, root_class, {}, {root_class}};
  walker.walk_class(root_class);
  return out;
}

namespace {

std::vector<DerivedRelationSchema> relations_from_paths(
    const std::string& root_name, const std::string& root_class,
    const std::vector<PathExpression>& paths) {
  std::vector<DerivedRelationSchema> out;
  std::map<std::string, size_t> by_name;

  auto schema_for_prefix = [&](const PathExpression& p,
                               size_t prefix_len) -> DerivedRelationSchema& {
    std::string name = root_name;
    for (size_t i = 0; i < prefix_len; ++i) {
      name += '.';
      name += p.segments[i];
    }
    auto it = by_name.find(name);
    if (it != by_name.end()) return out[it->second];
    DerivedRelationSchema schema;
    schema.name = std::move(name);
    schema.root_class = root_class;
    schema.ref_attribute = root_class;
    schema.prefix.assign(p.segments.begin(), p.segments.begin() + prefix_len);
    by_name.emplace(schema.name, out.size());
    out.push_back(std::move(schema));
    return out.back();
  };

  for (const PathExpression& p : paths) {
    for (size_t prefix_len = 0; prefix_len < p.segments.size(); ++prefix_len) {
      DerivedRelationSchema& schema = schema_for_prefix(p, prefix_len);
      std::string attr = p.suffix(prefix_len);
      bool present = false;
      for (const DerivedAttribute& a : schema.attributes)
        if (a.name == attr) { present = true; break; }
      if (!present) schema.attributes.push_back({std::move(attr), p.terminal});
    }
  }
  return out;
}

}  // namespace

std::vector<DerivedRelationSchema> derive_relations(const Catalog& catalog,
                                                    const std::string& root_class) {
  std::vector<PathExpression> paths = enumerate_paths(catalog, root_class);
  return relations_from_paths(root_class, root_class, paths);
}

std::vector<DerivedRelationSchema> local_namespace(const Catalog& catalog,
                                                   const std::string& ref_name,
                                                   const std::string& target_class) {
  std::vector<PathExpression> paths = enumerate_paths(catalog, target_class);
  return relations_from_paths(ref_name, target_class, paths);
}

NamespaceIndex build_namespace(const Catalog& catalog) {
  NamespaceIndex index;
  for (const ClassDef& cls : catalog.classes()) {
    std::vector<DerivedRelationSchema> rels = derive_relations(catalog, cls.name);
    for (DerivedRelationSchema& r : rels) index.relations.push_back(std::move(r));
  }
  return index;
}

std::vector<std::pair<std::string, std::string>> split_lookup(
    const NamespaceIndex& index, const PathExpression& path) {
  if (path.segments.empty())
    fail(ErrorCode::IncorrectPath, "path has no attribute part");
  std::vector<std::pair<std::string, std::string>> out;
  for (size_t prefix_len = 0; prefix_len < path.segments.size(); ++prefix_len) {
    std::string rel = path.root;
    for (size_t i = 0; i < prefix_len; ++i) {
      rel += '.';
      rel += path.segments[i];
    }
    std::string attr = path.suffix(prefix_len);
    const DerivedRelationSchema* schema = index.find(rel);
    if (!schema)
      fail(ErrorCode::IncorrectPath,
           "no relation '" + rel + "' for path '" + path.dotted() + "'");
    bool found = false;
    for (const DerivedAttribute& a : schema->attributes)
      if (a.name == attr) { found = true; break; }
    if (!found)
      fail(ErrorCode::IncorrectPath, "relation '" + rel +
                                         "' has no attribute '" + attr + "'");
    out.emplace_back(std::move(rel), std::move(attr));
  }
  return out;
}

std::string dump_relations(const Catalog& catalog) {
  std::string out;
  for (const ClassDef& cls : catalog.classes()) {
    for (const DerivedRelationSchema& r : derive_relations(catalog, cls.name)) {
      out += '"';
      out += r.name;
      out += "\" (\"";
      out += r.ref_attribute;
      out += '"';
      for (const DerivedAttribute& a : r.attributes) {
        out += ", \"";
        out += a.name;
        out += '"';
      }
      out += ")\n";
    }
  }
  return out;
}

}  // namespace rxo

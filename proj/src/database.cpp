#include "rxo/database.hpp"

#include <algorithm>
#include <set>

#include "rxo/error.hpp"

namespace rxo {

const Value* ObjectState::find(const std::string& component) const {
  for (const auto& [name, value] : stored)
    if (name == component) return &value;
  return nullptr;
}

const ObjectState& Database::object(uint64_t oid) const {
  auto it = objects_.find(oid);
  if (it == objects_.end())
    fail(ErrorCode::UnknownOid, "no object #" + std::to_string(oid));
  return it->second;
}

void collect_refs(const Value& v, std::vector<uint64_t>& out) {
  switch (v.kind()) {
    case ValueKind::Ref:
      out.push_back(v.as_ref().value);
      break;
    case ValueKind::Tuple:
      for (const auto& [name, field] : v.as_tuple().fields)
        collect_refs(field, out);
      break;
    case ValueKind::Relation:
      for (const auto& row : v.as_relation().rows)
        for (const Value& cell : row) collect_refs(cell, out);
      break;
    default:
      break;
  }
}

void check_key(const Relation& rel, const std::vector<std::string>& key,
               const std::string& where) {
  std::vector<size_t> key_idx;
  if (key.empty()) {
    for (size_t i = 0; i < rel.heading.size(); ++i) key_idx.push_back(i);
  } else {
    for (const std::string& k : key) key_idx.push_back(rel.attr_index(k));
  }
  for (size_t i = 0; i < rel.rows.size(); ++i) {
    for (size_t j = i + 1; j < rel.rows.size(); ++j) {
      bool equal = true;
      for (size_t k : key_idx)
        if (rel.rows[i][k] != rel.rows[j][k]) { equal = false; break; }
      if (equal)
        fail(ErrorCode::KeyViolation,
             "duplicate key in " + where);
    }
  }
}

void check_conforms(const Database& db, const Value& v, const ValuableType& type,
                    const std::string& where) {
  switch (type.kind) {
    case ValuableType::Kind::Scalar: {
      const ScalarType& st = type.scalar;
      if (v.kind() != kind_for(st))
        fail(ErrorCode::TypeMismatch,
             "value " + format_value(v) + " does not conform to " +
                 scalar_type_name(st) + " in " + where);
      if (st.is_reference()) {
        uint64_t oid = v.as_ref().value;
        if (!db.has_object(oid))
          fail(ErrorCode::DanglingReference,
               "reference to missing object #" + std::to_string(oid) + " in " +
                   where);
        const std::string& cls = db.object(oid).oid.cls;
        if (!db.catalog().is_subclass_of(cls, st.ref_class))
          fail(ErrorCode::TypeMismatch,
               "object #" + std::to_string(oid) + " has class '" + cls +
                   "', expected '" + st.ref_class + "' in " + where);
      }
      break;
    }
    case ValuableType::Kind::Tuple: {
      if (v.kind() != ValueKind::Tuple)
        fail(ErrorCode::TypeMismatch, "expected tuple value in " + where);
      const TupleValue& t = v.as_tuple();
      if (t.fields.size() != type.fields.size())
        fail(ErrorCode::TypeMismatch, "tuple width mismatch in " + where);
      for (size_t i = 0; i < t.fields.size(); ++i) {
        if (t.fields[i].first != type.fields[i].name)
          fail(ErrorCode::TypeMismatch,
               "tuple field '" + t.fields[i].first + "' does not match '" +
                   type.fields[i].name + "' in " + where);
        check_conforms(db, t.fields[i].second, type.fields[i].field_type(),
                       where + "." + type.fields[i].name);
      }
      break;
    }
    case ValuableType::Kind::Relation: {
      if (v.kind() != ValueKind::Relation)
        fail(ErrorCode::TypeMismatch, "expected relation value in " + where);
      const Relation& rel = v.as_relation();
      if (rel.heading.size() != type.fields.size())
        fail(ErrorCode::TypeMismatch, "heading width mismatch in " + where);
      for (size_t i = 0; i < type.fields.size(); ++i) {
        const Field& f = type.fields[i];
        if (!f.field_type().is_scalar())
          fail(ErrorCode::TypeMismatch,
               "relation field '" + f.name + "' has a non-scalar type and "
               "admits no stored value in " + where);
        if (rel.heading[i].name != f.name)
          fail(ErrorCode::TypeMismatch,
               "heading attribute '" + rel.heading[i].name +
                   "' does not match '" + f.name + "' in " + where);
        if (rel.heading[i].type != f.field_type().scalar)
          fail(ErrorCode::TypeMismatch,
               "heading attribute '" + f.name + "' type mismatch in " + where);
      }
      for (const auto& row : rel.rows) {
        for (size_t i = 0; i < row.size(); ++i) {
          if (row[i].is_null())
            fail(ErrorCode::TypeMismatch,
                 "NULL cannot be stored (" + where + ")");
          check_conforms(db, row[i], type.fields[i].field_type(),
                         where + "." + type.fields[i].name);
        }
      }
      check_key(rel, type.key, where);
      break;
    }
  }
}

Oid Database::insert_object(
    const std::string& class_name,
    const std::vector<std::pair<std::string, Value>>& initial) {
  const std::vector<ComponentDef> comps =
      effective_components(catalog_, class_name);

  std::vector<std::string> unrealized;
  for (const ComponentDef& c : comps)
    if (!c.is_method && c.realization.kind == Realization::Kind::Unrealized)
      unrealized.push_back(c.name);
  if (!unrealized.empty()) {
    std::string list;
    for (const std::string& n : unrealized) {
      if (!list.empty()) list += ", ";
      list += n;
    }
    fail(ErrorCode::NotInstantiable,
         "class '" + class_name + "' has unrealized components: " + list);
  }

  std::set<std::string> stored_names;
  for (const ComponentDef& c : comps)
    if (!c.is_method && c.realization.kind == Realization::Kind::Stored)
      stored_names.insert(c.name);

  for (const auto& [name, value] : initial) {
    if (!stored_names.count(name)) {
      bool known = false;
      for (const ComponentDef& c : comps)
        if (c.name == name) known = true;
      if (!known)
        fail(ErrorCode::UnknownComponent,
             "class '" + class_name + "' has no component '" + name + "'");
      fail(ErrorCode::NotInstantiable,
           "component '" + name + "' of '" + class_name +
               "' is not stored and takes no initial value");
    }
  }

  ObjectState state;
  state.oid = Oid{next_oid_, class_name};
  for (const ComponentDef& c : comps) {
    if (c.is_method || c.realization.kind != Realization::Kind::Stored) continue;
    const std::pair<std::string, Value>* given = nullptr;
    for (const auto& kv : initial)
      if (kv.first == c.name) given = &kv;
    if (!given)
      fail(ErrorCode::NotInstantiable,
           "missing value for stored component '" + c.name + "' of '" +
               class_name + "'");
    check_conforms(*this, given->second, c.type, class_name + "." + c.name);
    state.stored.emplace_back(c.name, given->second);
  }

  Oid oid = state.oid;
  objects_.emplace(next_oid_, std::move(state));
  ++next_oid_;
  return oid;
}

void Database::erase_object(uint64_t oid) {
  if (!objects_.count(oid))
    fail(ErrorCode::UnknownOid, "no object #" + std::to_string(oid));
  std::vector<uint64_t> referrers;
  for (const auto& [other_oid, state] : objects_) {
    if (other_oid == oid) continue;
    std::vector<uint64_t> refs;
    for (const auto& [name, value] : state.stored) collect_refs(value, refs);
    if (std::find(refs.begin(), refs.end(), oid) != refs.end())
      referrers.push_back(other_oid);
  }
  if (!referrers.empty()) {
    std::string list;
    for (uint64_t r : referrers) {
      if (!list.empty()) list += ", ";
      list += "#" + std::to_string(r);
    }
    fail(ErrorCode::ReferencedObject,
         "object #" + std::to_string(oid) + " is referenced by " + list);
  }
  objects_.erase(oid);
}

void Database::replace_stored(uint64_t oid, const std::string& component,
                              Value v) {
  auto it = objects_.find(oid);
  if (it == objects_.end())
    fail(ErrorCode::UnknownOid, "no object #" + std::to_string(oid));
  ObjectState& state = it->second;
  ComponentDef comp = effective_component(catalog_, state.oid.cls, component);
  if (comp.is_method || comp.realization.kind != Realization::Kind::Stored)
    fail(ErrorCode::NotUpdatable,
         "component '" + component + "' of class '" + state.oid.cls +
             "' is not stored");
  check_conforms(*this, v, comp.type, state.oid.cls + "." + component);
  for (auto& [name, value] : state.stored) {
    if (name == component) {
      value = std::move(v);
      return;
    }
  }
  fail(ErrorCode::UnknownComponent,
       "object #" + std::to_string(oid) + " stores no '" + component + "'");
}

void Database::restore_object(ObjectState state) {
  objects_[state.oid.value] = std::move(state);
}

std::vector<Oid> extent(const Database& db, const std::string& class_name,
                        bool include_subclasses) {
  if (!db.catalog().has_class(class_name))
    fail(ErrorCode::UnknownClass, "unknown class '" + class_name + "'");
  std::vector<Oid> out;
  for (const auto& [oid, state] : db.objects()) {
    if (state.oid.cls == class_name ||
        (include_subclasses &&
         db.catalog().is_subclass_of(state.oid.cls, class_name)))
      out.push_back(state.oid);
  }
  return out;
}

std::pair<Database, Oid> create_object(
    const Database& db, const std::string& class_name,
    const std::vector<std::pair<std::string, Value>>& initial) {
  if (!db.catalog().has_class(class_name))
    fail(ErrorCode::UnknownClass, "unknown class '" + class_name + "'");
  Database next = db;
  Oid oid = next.insert_object(class_name, initial);
  return {std::move(next), oid};
}

Database delete_object(const Database& db, const Oid& oid) {
  Database next = db;
  next.erase_object(oid.value);
  return next;
}

}  // namespace rxo

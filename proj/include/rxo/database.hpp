#ifndef RXO_DATABASE_HPP_
#define RXO_DATABASE_HPP_

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "rxo/catalog.hpp"
#include "rxo/value.hpp"

namespace rxo {

struct ObjectState {
  Oid oid;
  // One entry per Stored component, in effective-component order.
  std::vector<std::pair<std::string, Value>> stored;

  const Value* find(const std::string& component) const;
};

// One database: catalog snapshot, extents, and the oid counter. Copyable;
// group commands work on a private copy and commit by replacement.
class Database {
 public:
  Database() = default;
  explicit Database(Catalog catalog) : catalog_(std::move(catalog)) {}

  const Catalog& catalog() const { return catalog_; }
  void set_catalog(Catalog catalog) { catalog_ = std::move(catalog); }

  const std::map<uint64_t, ObjectState>& objects() const { return objects_; }
  const ObjectState& object(uint64_t oid) const;  // throws UnknownOid
  bool has_object(uint64_t oid) const { return objects_.count(oid) != 0; }
  uint64_t next_oid() const { return next_oid_; }

  // Validates instantiability, coverage, conformance, references and keys;
  // allocates the next oid.
  Oid insert_object(const std::string& class_name,
                    const std::vector<std::pair<std::string, Value>>& initial);

  // Restrict semantics: refuses when any live object stores a reference to
  // the deleted one.
  void erase_object(uint64_t oid);

  // Replaces one stored component value; the component must be Stored for
  // the object's class and the value must conform.
  void replace_stored(uint64_t oid, const std::string& component, Value v);

  // Used by the snapshot loader: inserts with a fixed oid, no validation.
  void restore_object(ObjectState state);
  void restore_next_oid(uint64_t next) { next_oid_ = next; }

 private:
  Catalog catalog_;
  std::map<uint64_t, ObjectState> objects_;
  uint64_t next_oid_ = 1;
};

// Ascending-oid extent; with the flag set, includes objects of descendants.
std::vector<Oid> extent(const Database& db, const std::string& class_name,
                        bool include_subclasses);

std::pair<Database, Oid> create_object(
    const Database& db, const std::string& class_name,
    const std::vector<std::pair<std::string, Value>>& initial);

Database delete_object(const Database& db, const Oid& oid);

// Checks a value against a declared type; throws TypeMismatch,
// DanglingReference or KeyViolation.
void check_conforms(const Database& db, const Value& v, const ValuableType& type,
                    const std::string& where);

// Key satisfaction for a stored relation value (declared key, or the whole
// heading when no KEY clause was given).
void check_key(const Relation& rel, const std::vector<std::string>& key,
               const std::string& where);

// Every oid referenced anywhere inside the value.
void collect_refs(const Value& v, std::vector<uint64_t>& out);

}  // namespace rxo

#endif  // RXO_DATABASE_HPP_

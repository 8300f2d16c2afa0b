#ifndef RXO_VALUE_HPP_
#define RXO_VALUE_HPP_

#include <cstdint>
#include <memory>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "rxo/types.hpp"

namespace rxo {

// Surrogate object identifier. Unique per database lifetime, never reused,
// monotonically increasing in creation order.
struct Oid {
  uint64_t value = 0;
  std::string cls;  // most-derived class of the object
};

inline bool operator==(const Oid& a, const Oid& b) { return a.value == b.value; }
inline bool operator<(const Oid& a, const Oid& b) { return a.value < b.value; }

// Normalized ISO-8601 timestamp (YYYY-MM-DDTHH:MM:SS).
struct DateTimeValue {
  std::string iso;
};

class Value;

struct TupleValue {
  std::vector<std::pair<std::string, Value>> fields;
};

struct Relation;

enum class ValueKind { Null, Int, Float, Str, Bool, Datetime, Ref, Tuple, Relation };

class Value {
 public:
  Value() = default;

  static Value null() { return Value(); }
  static Value integer(int64_t v) { return Value(Rep(std::in_place_type<int64_t>, v)); }
  static Value real(double v) { return Value(Rep(std::in_place_type<double>, v)); }
  static Value str(std::string v) { return Value(Rep(std::in_place_type<std::string>, std::move(v))); }
  static Value boolean(bool v) { return Value(Rep(std::in_place_type<bool>, v)); }
  // Validates and normalizes; throws Error(TypeMismatch) on a bad timestamp.
  static Value datetime(const std::string& iso);
  static Value ref(Oid oid) { return Value(Rep(std::in_place_type<Oid>, std::move(oid))); }
  static Value tuple(TupleValue v) { return Value(Rep(std::in_place_type<TupleValue>, std::move(v))); }
  static Value relation(Relation rel);

  ValueKind kind() const { return static_cast<ValueKind>(rep_.index()); }
  bool is_null() const { return kind() == ValueKind::Null; }

  int64_t as_int() const { return std::get<int64_t>(rep_); }
  double as_float() const { return std::get<double>(rep_); }
  const std::string& as_str() const { return std::get<std::string>(rep_); }
  bool as_bool() const { return std::get<bool>(rep_); }
  const DateTimeValue& as_datetime() const { return std::get<DateTimeValue>(rep_); }
  const Oid& as_ref() const { return std::get<Oid>(rep_); }
  const TupleValue& as_tuple() const { return std::get<TupleValue>(rep_); }
  const Relation& as_relation() const;

  // Numeric content as double (Int or Float).
  double numeric() const;

  friend bool operator==(const Value& a, const Value& b);

 private:
  using Rep = std::variant<std::monostate, int64_t, double, std::string, bool,
                           DateTimeValue, Oid, TupleValue,
                           std::shared_ptr<const Relation>>;
  explicit Value(Rep rep) : rep_(std::move(rep)) {}

  Rep rep_;
};

inline bool operator!=(const Value& a, const Value& b) { return !(a == b); }

// Total order used for canonical row sorting. Null sorts first; mixed kinds
// order by kind.
int compare_values(const Value& a, const Value& b);

// An evaluated relation value: heading plus a finite set of tuples.
struct Relation {
  Heading heading;
  std::vector<std::vector<Value>> rows;

  static Relation empty(Heading h) { return Relation{std::move(h), {}}; }

  size_t attr_index(const std::string& name) const;  // throws UnknownAttribute
  const std::string& attr_name(size_t i) const { return heading[i].name; }

  // Sorts rows ascending and removes duplicates (set semantics).
  void canonicalize();

  bool operator==(const Relation& other) const;
};

// Typed literal rendering: 5, 9.99, 'text', TRUE, '2007-05-01T00:00:00', #3,
// NULL, {(...), ...}, (a, b).
std::string format_value(const Value& v);

// Tab-separated dump: header of quoted attribute names, then one line per
// tuple in canonical order.
std::string relation_dump(const Relation& rel);

// Aligned table used by the CLI for SELECT results.
std::string relation_table(const Relation& rel);

// Scalar kind expected for a scalar type.
ValueKind kind_for(const ScalarType& type);

}  // namespace rxo

#endif  // RXO_VALUE_HPP_

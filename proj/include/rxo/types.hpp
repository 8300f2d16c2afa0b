#ifndef RXO_TYPES_HPP_
#define RXO_TYPES_HPP_

#include <optional>
#include <string>
#include <vector>

namespace rxo {

enum class BaseType { Integer, Float, String, Bool, Datetime };

// A scalar type: a base domain or a reference to a class.
struct ScalarType {
  enum class Kind { Base, Reference } kind = Kind::Base;
  BaseType base = BaseType::Integer;
  std::string ref_class;  // set when kind == Reference

  static ScalarType of(BaseType b) { return {Kind::Base, b, {}}; }
  static ScalarType reference(std::string cls) {
    return {Kind::Reference, BaseType::Integer, std::move(cls)};
  }
  bool is_reference() const { return kind == Kind::Reference; }
};

bool operator==(const ScalarType& a, const ScalarType& b);
inline bool operator!=(const ScalarType& a, const ScalarType& b) { return !(a == b); }

std::string scalar_type_name(const ScalarType& t);

struct ValuableType;

struct Field {
  std::string name;
  // Tuple fields are scalar; relation heading fields may nest further.
  std::vector<ValuableType> type;  // exactly one element; vector breaks the cycle

  const ValuableType& field_type() const { return type.front(); }
};

// The three component categories plus references: scalar (base or reference),
// tuple-structured, and relation types.
struct ValuableType {
  enum class Kind { Scalar, Tuple, Relation } kind = Kind::Scalar;
  ScalarType scalar;                 // Kind::Scalar
  std::vector<Field> fields;         // Kind::Tuple / Kind::Relation
  std::vector<std::string> key;      // Kind::Relation; empty = whole heading

  static ValuableType of_scalar(ScalarType s) {
    ValuableType t;
    t.kind = Kind::Scalar;
    t.scalar = std::move(s);
    return t;
  }
  static ValuableType tuple(std::vector<Field> fs) {
    ValuableType t;
    t.kind = Kind::Tuple;
    t.fields = std::move(fs);
    return t;
  }
  static ValuableType relation(std::vector<Field> fs, std::vector<std::string> key = {}) {
    ValuableType t;
    t.kind = Kind::Relation;
    t.fields = std::move(fs);
    t.key = std::move(key);
    return t;
  }

  bool is_scalar() const { return kind == Kind::Scalar; }
  bool is_relation() const { return kind == Kind::Relation; }
  bool is_tuple() const { return kind == Kind::Tuple; }
};

bool operator==(const ValuableType& a, const ValuableType& b);
inline bool operator!=(const ValuableType& a, const ValuableType& b) { return !(a == b); }

inline Field make_field(std::string name, ValuableType type) {
  Field f;
  f.name = std::move(name);
  f.type.push_back(std::move(type));
  return f;
}

// One attribute of a relation heading (always scalar-typed).
struct Attribute {
  std::string name;
  ScalarType type;
};

using Heading = std::vector<Attribute>;

bool operator==(const Attribute& a, const Attribute& b);
inline bool operator!=(const Attribute& a, const Attribute& b) { return !(a == b); }

}  // namespace rxo

#endif  // RXO_TYPES_HPP_

#include "rxo/types.hpp"

namespace rxo {

bool operator==(const ScalarType& a, const ScalarType& b) {
  if (a.kind != b.kind) return false;
  if (a.kind == ScalarType::Kind::Base) return a.base == b.base;
  return a.ref_class == b.ref_class;
}

std::string scalar_type_name(const ScalarType& t) {
  if (t.is_reference()) return t.ref_class;
  switch (t.base) {
    case BaseType::Integer: return "INTEGER";
    case BaseType::Float: return "FLOAT";
    case BaseType::String: return "STRING";
    case BaseType::Bool: return "BOOL";
    case BaseType::Datetime: return "DATETIME";
  }
  return "?";
}

bool operator==(const ValuableType& a, const ValuableType& b) {
  if (a.kind != b.kind) return false;
  switch (a.kind) {
    case ValuableType::Kind::Scalar:
      return a.scalar == b.scalar;
    case ValuableType::Kind::Tuple:
    case ValuableType::Kind::Relation: {
      if (a.fields.size() != b.fields.size()) return false;
      for (size_t i = 0; i < a.fields.size(); ++i) {
        if (a.fields[i].name != b.fields[i].name) return false;
        if (!(a.fields[i].field_type() == b.fields[i].field_type())) return false;
      }
      return a.key == b.key;
    }
  }
  return false;
}

bool operator==(const Attribute& a, const Attribute& b) {
  return a.name == b.name && a.type == b.type;
}

}  // namespace rxo

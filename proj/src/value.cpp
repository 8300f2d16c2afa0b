#include "rxo/value.hpp"

#include <algorithm>
#include <cctype>

#include "rxo/error.hpp"
#include "rxo/printer.hpp"

namespace rxo {

namespace {

bool all_digits(const std::string& s, size_t from, size_t n) {
  if (from + n > s.size()) return false;
  for (size_t i = from; i < from + n; ++i)
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  return true;
}

int field(const std::string& s, size_t from, size_t n) {
  int v = 0;
  for (size_t i = from; i < from + n; ++i) v = v * 10 + (s[i] - '0');
  return v;
}

}  // namespace

Value Value::datetime(const std::string& iso) {
  auto bad = [&]() {
    fail(ErrorCode::TypeMismatch, "invalid DATETIME literal '" + iso + "'");
  };
  if (iso.size() != 10 && iso.size() != 19) bad();
  if (!all_digits(iso, 0, 4) || iso[4] != '-' || !all_digits(iso, 5, 2) ||
      iso[7] != '-' || !all_digits(iso, 8, 2))
    bad();
  int month = field(iso, 5, 2), day = field(iso, 8, 2);
  if (month < 1 || month > 12 || day < 1 || day > 31) bad();
  std::string normalized = iso.substr(0, 10);
  if (iso.size() == 19) {
    if ((iso[10] != 'T' && iso[10] != ' ') || !all_digits(iso, 11, 2) ||
        iso[13] != ':' || !all_digits(iso, 14, 2) || iso[16] != ':' ||
        !all_digits(iso, 17, 2))
      bad();
    int hh = field(iso, 11, 2), mm = field(iso, 14, 2), ss = field(iso, 17, 2);
    if (hh > 23 || mm > 59 || ss > 59) bad();
    normalized += "T" + iso.substr(11);
  } else {
    normalized += "T00:00:00";
  }
  return Value(Rep(std::in_place_type<DateTimeValue>,
                   DateTimeValue{std::move(normalized)}));
}

Value Value::relation(Relation rel) {
  return Value(Rep(std::in_place_type<std::shared_ptr<const Relation>>,
                   std::make_shared<const Relation>(std::move(rel))));
}

const Relation& Value::as_relation() const {
  return *std::get<std::shared_ptr<const Relation>>(rep_);
}

double Value::numeric() const {
  if (kind() == ValueKind::Int) return static_cast<double>(as_int());
  return as_float();
}

bool operator==(const Value& a, const Value& b) {
  return compare_values(a, b) == 0;
}

int compare_values(const Value& a, const Value& b) {
  if (a.kind() != b.kind())
    return static_cast<int>(a.kind()) < static_cast<int>(b.kind()) ? -1 : 1;
  switch (a.kind()) {
    case ValueKind::Null:
      return 0;
    case ValueKind::Int:
      return a.as_int() < b.as_int() ? -1 : a.as_int() > b.as_int() ? 1 : 0;
    case ValueKind::Float:
      return a.as_float() < b.as_float() ? -1 : a.as_float() > b.as_float() ? 1 : 0;
    case ValueKind::Str:
      return a.as_str().compare(b.as_str()) < 0   ? -1
             : a.as_str().compare(b.as_str()) > 0 ? 1
                                                  : 0;
    case ValueKind::Bool:
      return a.as_bool() == b.as_bool() ? 0 : (!a.as_bool() ? -1 : 1);
    case ValueKind::Datetime:
      return a.as_datetime().iso.compare(b.as_datetime().iso) < 0   ? -1
             : a.as_datetime().iso.compare(b.as_datetime().iso) > 0 ? 1
                                                                    : 0;
    case ValueKind::Ref:
      return a.as_ref().value < b.as_ref().value   ? -1
             : a.as_ref().value > b.as_ref().value ? 1
                                                   : 0;
    case ValueKind::Tuple: {
      const TupleValue& ta = a.as_tuple();
      const TupleValue& tb = b.as_tuple();
      if (ta.fields.size() != tb.fields.size())
        return ta.fields.size() < tb.fields.size() ? -1 : 1;
      for (size_t i = 0; i < ta.fields.size(); ++i) {
        if (int c = ta.fields[i].first.compare(tb.fields[i].first))
          return c < 0 ? -1 : 1;
        if (int c = compare_values(ta.fields[i].second, tb.fields[i].second))
          return c;
      }
      return 0;
    }
    case ValueKind::Relation: {
      const Relation& ra = a.as_relation();
      const Relation& rb = b.as_relation();
      if (ra.rows.size() != rb.rows.size())
        return ra.rows.size() < rb.rows.size() ? -1 : 1;
      for (size_t i = 0; i < ra.rows.size(); ++i) {
        const auto& xa = ra.rows[i];
        const auto& xb = rb.rows[i];
        if (xa.size() != xb.size()) return xa.size() < xb.size() ? -1 : 1;
        for (size_t j = 0; j < xa.size(); ++j)
          if (int c = compare_values(xa[j], xb[j])) return c;
      }
      return 0;
    }
  }
  return 0;
}

size_t Relation::attr_index(const std::string& name) const {
  for (size_t i = 0; i < heading.size(); ++i)
    if (heading[i].name == name) return i;
  fail(ErrorCode::UnknownAttribute, "unknown attribute '" + name + "'");
}

void Relation::canonicalize() {
  std::sort(rows.begin(), rows.end(),
            [](const std::vector<Value>& a, const std::vector<Value>& b) {
              for (size_t i = 0; i < a.size() && i < b.size(); ++i)
                if (int c = compare_values(a[i], b[i])) return c < 0;
              return a.size() < b.size();
            });
  rows.erase(std::unique(rows.begin(), rows.end(),
                         [](const std::vector<Value>& a,
                            const std::vector<Value>& b) {
                           if (a.size() != b.size()) return false;
                           for (size_t i = 0; i < a.size(); ++i)
                             if (a[i] != b[i]) return false;
                           return true;
                         }),
             rows.end());
}

bool Relation::operator==(const Relation& other) const {
  if (heading.size() != other.heading.size() || rows.size() != other.rows.size())
    return false;
  for (size_t i = 0; i < heading.size(); ++i)
    if (heading[i] != other.heading[i]) return false;
  for (size_t i = 0; i < rows.size(); ++i) {
    for (size_t j = 0; j < heading.size(); ++j)
      if (rows[i][j] != other.rows[i][j]) return false;
  }
  return true;
}

std::string format_value(const Value& v) {
  switch (v.kind()) {
    case ValueKind::Null:
      return "NULL";
    case ValueKind::Int:
      return std::to_string(v.as_int());
    case ValueKind::Float:
      return format_double(v.as_float());
    case ValueKind::Str:
      return quote_string(v.as_str());
    case ValueKind::Bool:
      return v.as_bool() ? "TRUE" : "FALSE";
    case ValueKind::Datetime:
      return quote_string(v.as_datetime().iso);
    case ValueKind::Ref:
      return "#" + std::to_string(v.as_ref().value);
    case ValueKind::Tuple: {
      std::string out = "(";
      const TupleValue& t = v.as_tuple();
      for (size_t i = 0; i < t.fields.size(); ++i) {
        if (i) out += ", ";
        out += format_value(t.fields[i].second);
      }
      return out + ")";
    }
    case ValueKind::Relation: {
      Relation rel = v.as_relation();
      rel.canonicalize();
      std::string out = "{";
      for (size_t i = 0; i < rel.rows.size(); ++i) {
        if (i) out += ", ";
        out += "(";
        for (size_t j = 0; j < rel.rows[i].size(); ++j) {
          if (j) out += ", ";
          out += format_value(rel.rows[i][j]);
        }
        out += ")";
      }
      return out + "}";
    }
  }
  return "?";
}

std::string relation_dump(const Relation& rel) {
  std::string out;
  for (size_t i = 0; i < rel.heading.size(); ++i) {
    if (i) out += '\t';
    out += '"';
    out += rel.heading[i].name;
    out += '"';
  }
  out += '\n';
  for (const auto& row : rel.rows) {
    for (size_t i = 0; i < row.size(); ++i) {
      if (i) out += '\t';
      out += format_value(row[i]);
    }
    out += '\n';
  }
  return out;
}

std::string relation_table(const Relation& rel) {
  std::vector<size_t> widths(rel.heading.size());
  std::vector<std::vector<std::string>> cells;
  for (size_t i = 0; i < rel.heading.size(); ++i)
    widths[i] = rel.heading[i].name.size();
  for (const auto& row : rel.rows) {
    std::vector<std::string> line;
    for (size_t i = 0; i < row.size(); ++i) {
      line.push_back(format_value(row[i]));
      widths[i] = std::max(widths[i], line.back().size());
    }
    cells.push_back(std::move(line));
  }
  std::string out;
  auto pad = [&](const std::string& s, size_t w, bool last) {
    out += s;
    if (!last) out.append(w - s.size(), ' ');
  };
  for (size_t i = 0; i < rel.heading.size(); ++i) {
    if (i) out += " | ";
    pad(rel.heading[i].name, widths[i], i + 1 == rel.heading.size());
  }
  out += '\n';
  for (size_t i = 0; i < rel.heading.size(); ++i) {
    if (i) out += "-+-";
    out.append(widths[i], '-');
  }
  out += '\n';
  for (const auto& line : cells) {
    for (size_t i = 0; i < line.size(); ++i) {
      if (i) out += " | ";
      pad(line[i], widths[i], i + 1 == line.size());
    }
    out += '\n';
  }
  return out;
}

ValueKind kind_for(const ScalarType& type) {
  if (type.is_reference()) return ValueKind::Ref;
  switch (type.base) {
    case BaseType::Integer: return ValueKind::Int;
    case BaseType::Float: return ValueKind::Float;
    case BaseType::String: return ValueKind::Str;
    case BaseType::Bool: return ValueKind::Bool;
    case BaseType::Datetime: return ValueKind::Datetime;
  }
  return ValueKind::Null;
}

}  // namespace rxo

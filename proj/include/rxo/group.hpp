#ifndef RXO_GROUP_HPP_
#define RXO_GROUP_HPP_

#include <string>
#include <utility>
#include <vector>

#include "rxo/ast.hpp"
#include "rxo/database.hpp"
#include "rxo/eval.hpp"

namespace rxo {

// Objects addressed by a group command: a class extent (subclasses included)
// filtered by a predicate over the class's single-valued path expressions
// and the reference attribute.
struct TargetSet {
  std::string class_name;
  ExprPtr predicate;  // null selects the whole extent
};

struct ExecutionReport {
  uint64_t targeted = 0;
  uint64_t succeeded = 0;
  std::vector<std::pair<Oid, std::string>> failures;
  std::vector<std::pair<Oid, Value>> returned;  // group calls, ascending oid
  std::vector<Oid> created;                     // object creation
};

// Deterministic ascending-oid order.
std::vector<Oid> resolve_target_set(const Database& db, const TargetSet& target);

// Invokes the method on every target in ascending-oid order, dispatching to
// the most-derived realization per object. All-or-nothing: any per-object
// failure returns the input database unchanged, with the failures reported.
std::pair<Database, ExecutionReport> exec_group_call(const Database& db,
                                                     const TargetSet& target,
                                                     const std::string& method,
                                                     const std::vector<Value>& args);

// Updates matching flattened rows of a derived relation in place. Assigned
// attributes must map onto stored data of the root object for every matching
// object's class. All-or-nothing; throws on any failure.
std::pair<Database, ExecutionReport> exec_group_update(
    const Database& db, const PathRef& relation,
    const std::vector<std::pair<PathRef, ExprPtr>>& assignments,
    const ExprPtr& predicate);

std::pair<Database, ExecutionReport> exec_create_objects(const Database& db,
                                                         const CreateObjects& stmt);

std::pair<Database, ExecutionReport> exec_delete_objects(const Database& db,
                                                         const DeleteObjects& stmt);

}  // namespace rxo

#endif  // RXO_GROUP_HPP_

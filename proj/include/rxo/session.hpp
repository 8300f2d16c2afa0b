#ifndef RXO_SESSION_HPP_
#define RXO_SESSION_HPP_

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "rxo/database.hpp"

namespace rxo {

// One interactive or scripted session over a single database.
class Session {
 public:
  Session() = default;
  explicit Session(Database db) : db_(std::move(db)) {}

  const Database& db() const { return db_; }
  void set_db(Database db) { db_ = std::move(db); }

  // Executes one statement and returns its printable result ("" for DDL).
  // Errors are thrown; the database is unchanged when an error is thrown.
  std::string execute(const Statement& stmt);

  // Executes a whole source text, writing results to `out`.
  void execute_script(const std::string& source, std::ostream& out, bool echo);

 private:
  Database db_;
};

struct SessionConfig {
  enum class Mode { Repl, Run, DumpRelations, DumpCatalog };
  Mode mode = Mode::Repl;
  std::optional<std::string> snapshot_path;
  std::vector<std::string> script_paths;
  bool echo = false;
  // dump-relations: print local namespaces for these references instead of
  // the global one. Each entry is (reference name, class name).
  std::vector<std::pair<std::string, std::string>> local_refs;
};

int run_repl(const SessionConfig& config, std::istream& in, std::ostream& out,
             std::ostream& err);
int run_script(const SessionConfig& config, std::ostream& out, std::ostream& err);
int run_dump(const SessionConfig& config, std::ostream& out, std::ostream& err);

}  // namespace rxo

#endif  // RXO_SESSION_HPP_

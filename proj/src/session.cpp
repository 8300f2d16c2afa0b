#include "rxo/session.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

#include "rxo/catalog.hpp"
#include "rxo/error.hpp"
#include "rxo/eval.hpp"
#include "rxo/group.hpp"
#include "rxo/parser.hpp"
#include "rxo/paths.hpp"
#include "rxo/printer.hpp"
#include "rxo/snapshot.hpp"

namespace rxo {

namespace {

std::string oid_list(const std::vector<Oid>& oids) {
  std::string out;
  for (const Oid& oid : oids) {
    if (!out.empty()) out += " ";
    out += "#" + std::to_string(oid.value);
  }
  return out;
}

// Group-call argument expressions are literal; they are typed by the
// parameter list.
std::vector<Value> call_arguments(const Database& db, const GroupCall& gc) {
  ComponentDef decl = [&]() {
    try {
      return effective_component(db.catalog(), gc.class_name, gc.method);
    } catch (const Error& e) {
      if (e.code() == ErrorCode::UnknownComponent)
        fail(ErrorCode::UnknownMethod, e.message());
      throw;
    }
  }();
  if (gc.args.size() != decl.params.size())
    fail(ErrorCode::ArityMismatch,
         "method '" + gc.method + "' expects " +
             std::to_string(decl.params.size()) + " arguments, got " +
             std::to_string(gc.args.size()));
  auto no_paths = [](const PathRef& path) -> Value {
    fail(ErrorCode::EvaluationError,
         "call arguments must be literal; '" + path.dotted() +
             "' is not allowed");
  };
  std::vector<Value> args;
  for (size_t i = 0; i < gc.args.size(); ++i)
    args.push_back(value_from_expr(db, *gc.args[i],
                                   ValuableType::of_scalar(decl.params[i].type),
                                   no_paths,
                                   "argument '" + decl.params[i].name + "'"));
  return args;
}

}  // namespace

std::string Session::execute(const Statement& stmt) {
  try {
    if (const auto* cc = std::get_if<CreateClass>(&stmt.node)) {
      db_.set_catalog(define_class(db_.catalog(), *cc));
      return "";
    }
    if (const auto* ar = std::get_if<AlterRealize>(&stmt.node)) {
      db_.set_catalog(alter_realize(db_.catalog(), *ar));
      return "";
    }
    if (const auto* cv = std::get_if<CreateView>(&stmt.node)) {
      db_ = create_view(db_, cv->name, cv->query);
      return "";
    }
    if (const auto* co = std::get_if<CreateObjects>(&stmt.node)) {
      auto [next, report] = exec_create_objects(db_, *co);
      db_ = std::move(next);
      return "created " + std::to_string(report.created.size()) +
             " object(s): " + oid_list(report.created) + "\n";
    }
    if (const auto* del = std::get_if<DeleteObjects>(&stmt.node)) {
      auto [next, report] = exec_delete_objects(db_, *del);
      db_ = std::move(next);
      return "deleted " + std::to_string(report.succeeded) + " object(s)\n";
    }
    if (const auto* sel = std::get_if<SelectStmt>(&stmt.node)) {
      Relation result = eval_select(db_, sel->query, EvalContext::global());
      return relation_table(result);
    }
    if (const auto* gc = std::get_if<GroupCall>(&stmt.node)) {
      std::vector<Value> args = call_arguments(db_, *gc);
      TargetSet target{gc->class_name, gc->predicate};
      auto [next, report] = exec_group_call(db_, target, gc->method, args);
      if (!report.failures.empty()) {
        std::string msg = "group call failed on " +
                          std::to_string(report.failures.size()) +
                          " object(s); no changes applied:";
        for (const auto& [oid, what] : report.failures)
          msg += "\n  #" + std::to_string(oid.value) + ": " + what;
        fail(ErrorCode::EvaluationError, msg, stmt.span);
      }
      db_ = std::move(next);
      std::string out = "called " + gc->method + " on " +
                        std::to_string(report.succeeded) + " object(s)\n";
      for (const auto& [oid, value] : report.returned)
        out += "  #" + std::to_string(oid.value) + " -> " +
               format_value(value) + "\n";
      return out;
    }
    const auto& gu = std::get<GroupUpdate>(stmt.node);
    auto [next, report] = exec_group_update(db_, gu.relation, gu.assignments,
                                            gu.predicate);
    db_ = std::move(next);
    return "updated " + std::to_string(report.targeted) + " row(s)\n";
  } catch (Error& e) {
    e.anchor(stmt.span);
    throw;
  }
}

void Session::execute_script(const std::string& source, std::ostream& out,
                             bool echo) {
  for (const Statement& stmt : parse_script(source)) {
    if (echo) out << format_statement(stmt) << "\n";
    std::string result = execute(stmt);
    if (!result.empty()) out << result;
  }
}

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::IoError, "cannot read '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

Database initial_database(const SessionConfig& config) {
  if (config.snapshot_path) {
    std::ifstream probe(*config.snapshot_path);
    if (probe.good()) return snapshot_read_file(*config.snapshot_path);
  }
  return Database{};
}

void render_error(std::ostream& err, const Error& e, const std::string& file) {
  err << "error: ";
  if (!file.empty()) err << file << ":";
  if (e.pos()) err << e.pos()->line << ":" << e.pos()->column << ": ";
  else if (!file.empty()) err << " ";
  err << error_code_name(e.code()) << ": " << e.message() << "\n";
}

// A buffered entry is complete when braces and parentheses are balanced and
// it ends with ';' or '..'.
bool entry_complete(const std::string& buffer) {
  int depth = 0;
  bool in_string = false;
  bool in_comment = false;
  char last = '\0';
  char prev = '\0';
  for (size_t i = 0; i < buffer.size(); ++i) {
    char c = buffer[i];
    if (in_comment) {
      if (c == '\n') in_comment = false;
      continue;
    }
    if (in_string) {
      if (c == '\'') in_string = false;
      continue;
    }
    switch (c) {
      case '\'': in_string = true; break;
      case '/': if (i + 1 < buffer.size() && buffer[i + 1] == '/') in_comment = true; break;
      case '{': case '(': ++depth; break;
      case '}': case ')': --depth; break;
      default: break;
    }
    if (!std::isspace(static_cast<unsigned char>(c))) {
      prev = last;
      last = c;
    }
  }
  if (in_string || depth > 0) return false;
  return last == ';' || (last == '.' && prev == '.');
}

}  // namespace

int run_repl(const SessionConfig& config, std::istream& in, std::ostream& out,
             std::ostream& err) {
  Session session;
  try {
    session.set_db(initial_database(config));
  } catch (const Error& e) {
    render_error(err, e, config.snapshot_path.value_or(""));
    return 2;
  }

  std::string buffer;
  std::string line;
  auto run_buffer = [&]() {
    if (buffer.find_first_not_of(" \t\r\n") == std::string::npos) {
      buffer.clear();
      return;
    }
    try {
      session.execute_script(buffer, out, config.echo);
    } catch (const Error& e) {
      render_error(err, e, "");
    }
    buffer.clear();
  };

  while (std::getline(in, line)) {
    if (buffer.empty() && !line.empty() && line[0] == ':') {
      std::istringstream meta(line);
      std::string cmd, arg;
      meta >> cmd >> arg;
      if (cmd == ":quit") return 0;
      if (cmd == ":relations") {
        out << dump_relations(session.db().catalog());
      } else if (cmd == ":save") {
        std::string path = !arg.empty()
                               ? arg
                               : config.snapshot_path.value_or("");
        if (path.empty()) {
          err << "error: :save needs a path (no --db given)\n";
        } else {
          try {
            snapshot_write_file(session.db(), path);
            out << "saved " << path << "\n";
          } catch (const Error& e) {
            render_error(err, e, path);
          }
        }
      } else if (cmd == ":load") {
        std::string path = !arg.empty()
                               ? arg
                               : config.snapshot_path.value_or("");
        if (path.empty()) {
          err << "error: :load needs a path (no --db given)\n";
        } else {
          try {
            session.set_db(snapshot_read_file(path));
            out << "loaded " << path << "\n";
          } catch (const Error& e) {
            render_error(err, e, path);
          }
        }
      } else {
        err << "error: unknown meta command '" << cmd << "'\n";
      }
      continue;
    }
    buffer += line;
    buffer += "\n";
    if (entry_complete(buffer) || line.empty()) run_buffer();
  }
  if (!buffer.empty()) run_buffer();
  return 0;
}

int run_script(const SessionConfig& config, std::ostream& out,
               std::ostream& err) {
  Session session;
  try {
    session.set_db(initial_database(config));
  } catch (const Error& e) {
    render_error(err, e, config.snapshot_path.value_or(""));
    return 2;
  }

  for (const std::string& path : config.script_paths) {
    std::string source;
    try {
      source = read_file(path);
    } catch (const Error& e) {
      render_error(err, e, path);
      return 2;
    }
    try {
      session.execute_script(source, out, config.echo);
    } catch (const Error& e) {
      render_error(err, e, path);
      return 1;
    }
  }

  if (config.snapshot_path) {
    try {
      snapshot_write_file(session.db(), *config.snapshot_path);
    } catch (const Error& e) {
      render_error(err, e, *config.snapshot_path);
      return 2;
    }
  }
  return 0;
}

int run_dump(const SessionConfig& config, std::ostream& out,
             std::ostream& err) {
  Session session;
  try {
    session.set_db(initial_database(config));
    for (const std::string& path : config.script_paths) {
      std::ostringstream sink;  // dump modes print only the dump
      session.execute_script(read_file(path), sink, false);
    }
  } catch (const Error& e) {
    render_error(err, e, "");
    return e.code() == ErrorCode::IoError || e.code() == ErrorCode::CorruptSnapshot
               ? 2
               : 1;
  }

  if (config.mode == SessionConfig::Mode::DumpCatalog) {
    out << catalog_dump(session.db().catalog());
    return 0;
  }
  if (!config.local_refs.empty()) {
    for (const auto& [ref_name, class_name] : config.local_refs) {
      try {
        for (const DerivedRelationSchema& r :
             local_namespace(session.db().catalog(), ref_name, class_name)) {
          out << '"' << r.name << "\" (\"" << r.ref_attribute << '"';
          for (const DerivedAttribute& a : r.attributes)
            out << ", \"" << a.name << '"';
          out << ")\n";
        }
      } catch (const Error& e) {
        render_error(err, e, "");
        return 1;
      }
    }
    return 0;
  }
  out << dump_relations(session.db().catalog());
  return 0;
}

}  // namespace rxo

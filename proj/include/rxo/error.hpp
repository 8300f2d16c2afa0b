#ifndef RXO_ERROR_HPP_
#define RXO_ERROR_HPP_

#include <cstdint>
#include <exception>
#include <optional>
#include <string>

namespace rxo {

// 1-based position in a source text.
struct SourcePos {
  uint32_t line = 1;
  uint32_t column = 1;
};

enum class ErrorCode {
  // frontend
  LexError,
  ParseError,
  // catalog
  DuplicateClass,
  UnknownParent,
  UnknownReferenceTarget,
  DuplicateComponent,
  UnknownClass,
  UnknownComponent,
  HeadingMismatch,
  ArityMismatch,
  DuplicateView,
  UnknownView,
  // namespace
  IncorrectPath,
  UnknownRelation,
  // store
  NotInstantiable,
  TypeMismatch,
  DanglingReference,
  KeyViolation,
  UnknownOid,
  ReferencedObject,
  CorruptSnapshot,
  VersionMismatch,
  // evaluation
  UnrealizedComponent,
  EvaluationError,
  UnknownAttribute,
  AmbiguousAttribute,
  AggregateMisuse,
  // group execution
  UnknownMethod,
  NotAProcedure,
  NotUpdatable,
  // misc
  IoError,
};

const char* error_code_name(ErrorCode code);

class Error : public std::exception {
 public:
  Error(ErrorCode code, std::string message)
      : code_(code), message_(std::move(message)) {
    rebuild_what();
  }
  Error(ErrorCode code, std::string message, SourcePos pos)
      : code_(code), message_(std::move(message)), pos_(pos) {
    rebuild_what();
  }

  ErrorCode code() const { return code_; }
  const std::string& message() const { return message_; }
  const std::optional<SourcePos>& pos() const { return pos_; }

  // Attaches a position if the error does not carry one yet.
  void anchor(SourcePos pos) {
    if (!pos_) {
      pos_ = pos;
      rebuild_what();
    }
  }

  const char* what() const noexcept override { return what_.c_str(); }

 private:
  void rebuild_what();

  ErrorCode code_;
  std::string message_;
  std::optional<SourcePos> pos_;
  std::string what_;
};

[[noreturn]] void fail(ErrorCode code, std::string message);
[[noreturn]] void fail(ErrorCode code, std::string message, SourcePos pos);

}  // namespace rxo

#endif  // RXO_ERROR_HPP_

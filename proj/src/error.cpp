#include "rxo/error.hpp"

namespace rxo {

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::LexError: return "LexError";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::DuplicateClass: return "DuplicateClass";
    case ErrorCode::UnknownParent: return "UnknownParent";
    case ErrorCode::UnknownReferenceTarget: return "UnknownReferenceTarget";
    case ErrorCode::DuplicateComponent: return "DuplicateComponent";
    case ErrorCode::UnknownClass: return "UnknownClass";
    case ErrorCode::UnknownComponent: return "UnknownComponent";
    case ErrorCode::HeadingMismatch: return "HeadingMismatch";
    case ErrorCode::ArityMismatch: return "ArityMismatch";
    case ErrorCode::DuplicateView: return "DuplicateView";
    case ErrorCode::UnknownView: return "UnknownView";
    case ErrorCode::IncorrectPath: return "IncorrectPath";
    case ErrorCode::UnknownRelation: return "UnknownRelation";
    case ErrorCode::NotInstantiable: return "NotInstantiable";
    case ErrorCode::TypeMismatch: return "TypeMismatch";
    case ErrorCode::DanglingReference: return "DanglingReference";
    case ErrorCode::KeyViolation: return "KeyViolation";
    case ErrorCode::UnknownOid: return "UnknownOid";
    case ErrorCode::ReferencedObject: return "ReferencedObject";
    case ErrorCode::CorruptSnapshot: return "CorruptSnapshot";
    case ErrorCode::VersionMismatch: return "VersionMismatch";
    case ErrorCode::UnrealizedComponent: return "UnrealizedComponent";
    case ErrorCode::EvaluationError: return "EvaluationError";
    case ErrorCode::UnknownAttribute: return "UnknownAttribute";
    case ErrorCode::AmbiguousAttribute: return "AmbiguousAttribute";
    case ErrorCode::AggregateMisuse: return "AggregateMisuse";
    case ErrorCode::UnknownMethod: return "UnknownMethod";
    case ErrorCode::NotAProcedure: return "NotAProcedure";
    case ErrorCode::NotUpdatable: return "NotUpdatable";
    case ErrorCode::IoError: return "IoError";
  }
  return "Error";
}

void Error::rebuild_what() {
  what_.clear();
  what_ += error_code_name(code_);
  what_ += ": ";
  what_ += message_;
  if (pos_) {
    what_ += " (at ";
    what_ += std::to_string(pos_->line);
    what_ += ":";
    what_ += std::to_string(pos_->column);
    what_ += ")";
  }
}

void fail(ErrorCode code, std::string message) {
  throw Error(code, std::move(message));
}

void fail(ErrorCode code, std::string message, SourcePos pos) {
  throw Error(code, std::move(message), pos);
}

}  // namespace rxo

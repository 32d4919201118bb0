#pragma once

#include <stdexcept>
#include <string>

namespace dpc {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A rotation system that does not describe the neighborhoods of the graph.
class MalformedEmbedding : public Error {
 public:
  using Error::Error;
};

/// A caller broke an operation's precondition (unknown edge, cyclic forest, ...).
class ContractViolation : public Error {
 public:
  using Error::Error;
};

/// Input file problems. `field` names the offending JSON member when known.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::string field = {})
      : Error(field.empty() ? what : field + ": " + what), field_(std::move(field)), detail_(what) {}
  const std::string& field() const noexcept { return field_; }
  const std::string& detail() const noexcept { return detail_; }

  /// The same error, prefixed with the file it came from.
  ParseError in(const std::string& source) const {
    ParseError e(detail_, field_);
    e.source_ = source;
    e.message_ = source + ": " + what();
    return e;
  }
  const char* what() const noexcept override { return message_.empty() ? Error::what() : message_.c_str(); }

 private:
  std::string field_;
  std::string detail_;
  std::string source_;
  std::string message_;
};

/// Structural facts the discharging rules depend on were found violated.
class AuditError : public Error {
 public:
  AuditError(const std::string& what, std::string witness)
      : Error(what), witness_(std::move(witness)) {}
  const std::string& witness() const noexcept { return witness_; }

 private:
  std::string witness_;
};

}  // namespace dpc

#ifndef QCHECK_ERRORS_HPP
#define QCHECK_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace qcheck {

/// Input errors map to exit status 2, resource errors to exit status 3.
enum class ErrorClass { input, resource };

class Error : public std::runtime_error {
 public:
  Error(std::string name, ErrorClass cls, const std::string& message)
      : std::runtime_error(message), name_(std::move(name)), class_(cls) {}

  const std::string& name() const noexcept { return name_; }
  ErrorClass error_class() const noexcept { return class_; }

 private:
  std::string name_;
  ErrorClass class_;
};

class ParseError : public Error {
 public:
  ParseError(std::size_t line, std::size_t column, const std::string& message)
      : Error("ParseError", ErrorClass::input,
              "line " + std::to_string(line) + ", column " + std::to_string(column) + ": " +
                  message),
        line_(line),
        column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

/// Two paths from the initial state reach `state` with different pending sets.
class AmbiguousQuiescence : public Error {
 public:
  AmbiguousQuiescence(std::string state, std::string first, std::string second)
      : Error("AmbiguousQuiescence", ErrorClass::input,
              "state '" + state + "' reached with pending sets " + first + " and " + second),
        state_(std::move(state)) {}

  const std::string& state() const noexcept { return state_; }

 private:
  std::string state_;
};

class IllegalAutomaton : public Error {
 public:
  explicit IllegalAutomaton(const std::string& message)
      : Error("IllegalAutomaton", ErrorClass::input, message) {}
};

class FinalNotQuiescent : public Error {
 public:
  explicit FinalNotQuiescent(const std::string& state)
      : Error("FinalNotQuiescent", ErrorClass::input,
              "final state '" + state + "' has pending invocations") {}
};

class NotLegal : public Error {
 public:
  explicit NotLegal(const std::string& message) : Error("NotLegal", ErrorClass::input, message) {}
};

class NotQuiescent : public Error {
 public:
  explicit NotQuiescent(const std::string& message)
      : Error("NotQuiescent", ErrorClass::input, message) {}
};

class BoundExceeded : public Error {
 public:
  BoundExceeded(std::size_t segment_index, std::size_t length, const std::string& message)
      : Error("BoundExceeded", ErrorClass::resource, message),
        segment_index_(segment_index),
        length_(length) {}

  std::size_t segment_index() const noexcept { return segment_index_; }
  std::size_t length() const noexcept { return length_; }

 private:
  std::size_t segment_index_;
  std::size_t length_;
};

class SegmentTooLarge : public Error {
 public:
  explicit SegmentTooLarge(const std::string& message)
      : Error("SegmentTooLarge", ErrorClass::resource, message) {}
};

class TooLarge : public Error {
 public:
  explicit TooLarge(const std::string& message) : Error("TooLarge", ErrorClass::resource, message) {}
};

class ResourceLimit : public Error {
 public:
  explicit ResourceLimit(const std::string& message)
      : Error("ResourceLimit", ErrorClass::resource, message) {}
};

class CapacityExceeded : public Error {
 public:
  explicit CapacityExceeded(const std::string& message)
      : Error("CapacityExceeded", ErrorClass::resource, message) {}
};

class NotAcyclic : public Error {
 public:
  explicit NotAcyclic(const std::string& message)
      : Error("NotAcyclic", ErrorClass::input, message) {}
};

class AlphabetMismatch : public Error {
 public:
  explicit AlphabetMismatch(const std::string& message)
      : Error("AlphabetMismatch", ErrorClass::input, message) {}
};

class InvalidInstance : public Error {
 public:
  explicit InvalidInstance(const std::string& message)
      : Error("InvalidInstance", ErrorClass::input, message) {}
};

class IoError : public Error {
 public:
  explicit IoError(const std::string& message) : Error("IoError", ErrorClass::input, message) {}
};

}  // namespace qcheck

#endif  // QCHECK_ERRORS_HPP

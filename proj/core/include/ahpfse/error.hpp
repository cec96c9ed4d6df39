#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace ahpfse {

/// Base class for every error raised by the engine.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Input violates a structural invariant (shape, reciprocity, scale, row mass).
class ValidationError : public Error {
 public:
  using Error::Error;
};

/// Power iteration exhausted its iteration budget.
class ConvergenceError : public Error {
 public:
  using Error::Error;
};

/// Argument outside the domain of an operation (unknown id, bad order, bad policy).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A problem located in a scenario document. `path` is a JSON pointer such as
/// "/periods/0/judgments/1/0"; `line` is 1-based, 0 when unknown.
struct Issue {
  std::string path;
  std::string message;
  std::size_t line = 0;
};

/// Scenario document rejected; carries every issue found, not just the first.
class DocumentError : public ValidationError {
 public:
  explicit DocumentError(std::vector<Issue> issues);
  const std::vector<Issue>& issues() const { return issues_; }

 private:
  std::vector<Issue> issues_;
};

}  // namespace ahpfse

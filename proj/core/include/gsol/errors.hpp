#pragma once

#include <stdexcept>
#include <string>

namespace gsol {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed or inconsistent user input (config, diagram, arguments).
class InputError : public Error {
 public:
  using Error::Error;
};

/// Evaluation requested outside the domain of a function.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Evaluation exactly on a rod, or at a corner where no regularized form exists.
class SingularPointError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// A numerical procedure could not reach its requested accuracy.
class AccuracyError : public Error {
 public:
  using Error::Error;
};

/// The diagram lacks the symmetry needed to remove every conical singularity.
class UnbalanceableError : public Error {
 public:
  using Error::Error;
};

/// Process exit codes used by the command-line tool.
enum class ExitCode : int {
  success = 0,
  check_failure = 1,
  input_error = 2,
  accuracy_failure = 3,
};

}  // namespace gsol

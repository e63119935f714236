#pragma once

#include <stdexcept>
#include <string>

namespace frameopt {

// Exit-code contract shared by every CLI command.
enum class ExitCode : int { kOk = 0, kInvalidInput = 1, kNumericalFailure = 2 };

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
  virtual ExitCode exit_code() const noexcept { return ExitCode::kInvalidInput; }
};

class InvalidInput : public Error {
 public:
  using Error::Error;
};

class InvalidFrame : public InvalidInput {
 public:
  using InvalidInput::InvalidInput;
};

// Weight condition (i) violated: some q_i < 1.
class ConditionViolation : public InvalidInput {
 public:
  using InvalidInput::InvalidInput;
};

class InconsistentWeights : public InvalidInput {
 public:
  using InvalidInput::InvalidInput;
};

class UnsupportedScale : public InvalidInput {
 public:
  using InvalidInput::InvalidInput;
};

class NumericalFailure : public Error {
 public:
  using Error::Error;
  ExitCode exit_code() const noexcept override { return ExitCode::kNumericalFailure; }
};

}  // namespace frameopt

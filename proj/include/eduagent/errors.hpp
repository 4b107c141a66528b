#pragma once

#include <stdexcept>
#include <string>

namespace eduagent {

enum class ErrorCode {
  invalid_argument,
  config_error,
  io_error,
  // domain model
  missing_report,
  empty_pass_set,
  // gateway
  provider_unreachable,
  provider_rejected,
  timeout,
  parse_failure,
  schema_violation,
  // knowledge store
  file_unreadable,
  empty_bank,
  // agents
  planner_output_invalid,
  writer_output_invalid,
  evaluator_output_invalid,
  iteration_exhausted,
  // metrics
  empty_sequence,
  too_few_questions,
  embedder_unavailable,
  misaligned_outputs,
  internal_error,
};

const char* error_code_name(ErrorCode code);

/// Single exception type carrying a machine-readable code; the code maps
/// one-to-one onto the C API status enum.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

/// Parse and schema errors keep the offending text around so callers can
/// build a repair re-prompt from it.
class TextError : public Error {
 public:
  TextError(ErrorCode code, const std::string& message, std::string offending_text)
      : Error(code, message), offending_text_(std::move(offending_text)) {}

  const std::string& offending_text() const { return offending_text_; }

 private:
  std::string offending_text_;
};

}  // namespace eduagent

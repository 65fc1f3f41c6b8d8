#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace confkit {

enum class ErrorKind {
  TypeMismatch,
  InvalidInterval,
  NotAConfiguration,
  InvalidSpec,
  WouldViolateSpec,
  UnknownParent,
  UnknownComponent,
  DuplicateComponentId,
  TypeChanged,
  DependencyGuard,
  RootRemoval,
  JournalMismatch,
  ParseError,
  SpecInvalid,
  ConfigInvalid,
  Io,
};

std::string_view to_string(ErrorKind kind);

// Base of every error thrown by the library. `details` carries the
// subjects of the failure (component ids, failed clauses) for callers that
// want more than the message.
class Error : public std::runtime_error {
public:
  Error(ErrorKind kind, const std::string& message,
        std::vector<std::string> details = {})
      : std::runtime_error(message), kind_(kind), details_(std::move(details)) {}

  ErrorKind kind() const noexcept { return kind_; }
  const std::vector<std::string>& details() const noexcept { return details_; }

private:
  ErrorKind kind_;
  std::vector<std::string> details_;
};

}  // namespace confkit

#pragma once

#include <stdexcept>
#include <string>

namespace subcycle {

/// Malformed or inconsistent user input (files, CLI arguments, precondition
/// violations on public entry points). Maps to exit code 2 in the CLI.
class InputError : public std::runtime_error {
 public:
  explicit InputError(const std::string& msg) : std::runtime_error(msg) {}
};

/// The requested object does not exist (graph has no cycle, instance has no
/// solution path, ...). Maps to exit code 1 in the CLI.
class NoSolutionError : public std::runtime_error {
 public:
  explicit NoSolutionError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Enumeration aborted because the configured cap was exceeded.
class CapExceededError : public std::runtime_error {
 public:
  explicit CapExceededError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Internal consistency check failed; signals a bug, not bad input.
class InternalError : public std::logic_error {
 public:
  explicit InternalError(const std::string& msg) : std::logic_error(msg) {}
};

}  // namespace subcycle

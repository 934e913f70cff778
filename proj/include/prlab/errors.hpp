#pragma once

#include <stdexcept>
#include <string>

namespace prlab {

// Process exit codes shared by the CLI and the exception hierarchy.
enum : int {
  exit_ok = 0,
  exit_check_failure = 2,
  exit_budget_exceeded = 3,
  exit_invalid_config = 4,
};

class error : public std::runtime_error {
 public:
  error(const std::string& msg, int code) : std::runtime_error(msg), code_(code) {}
  int exit_code() const { return code_; }

 private:
  int code_;
};

// Bad user input: out-of-range parameters, malformed partitions, invalid moduli.
class invalid_config : public error {
 public:
  explicit invalid_config(const std::string& msg) : error(msg, exit_invalid_config) {}
};

// A mathematical identity that must hold was violated.
class check_failure : public error {
 public:
  explicit check_failure(const std::string& msg) : error(msg, exit_check_failure) {}
};

// An enumeration or node budget would be exceeded; nothing was computed.
class budget_exceeded : public error {
 public:
  explicit budget_exceeded(const std::string& msg) : error(msg, exit_budget_exceeded) {}
};

}  // namespace prlab

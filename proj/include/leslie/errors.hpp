#pragma once

#include <stdexcept>
#include <string>

namespace leslie {

enum class ErrorCode {
  invalid_argument,
  invalid_params,
  not_a_fixed_point,
  degenerate_conjugacy,
  no_preimage,
  hypothesis_violation,
  insufficient_data,
  orbit_escaped,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace leslie

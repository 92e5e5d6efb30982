#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace pgraph {

enum class ErrorCode {
  variant_mismatch,
  kind_mismatch,
  empty_label,
  type_mismatch,
  not_akin,
  infinite_action_space,
  not_deterministic,
  unmapped_kind,
  partial_map,
  non_composable,
  too_large,
  empty_graph,
  not_a_solution,
  not_state_determined,
  invalid_graph,
  invalid_argument,
  syntax_error,
  schema_error,
  validation_error,
};

std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace pgraph

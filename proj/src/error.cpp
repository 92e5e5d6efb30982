#include "pgraph/error.hpp"

namespace pgraph {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::variant_mismatch: return "VariantMismatch";
    case ErrorCode::kind_mismatch: return "KindMismatch";
    case ErrorCode::empty_label: return "EmptyLabel";
    case ErrorCode::type_mismatch: return "TypeMismatch";
    case ErrorCode::not_akin: return "NotAkin";
    case ErrorCode::infinite_action_space: return "InfiniteActionSpace";
    case ErrorCode::not_deterministic: return "NotDeterministic";
    case ErrorCode::unmapped_kind: return "UnmappedKind";
    case ErrorCode::partial_map: return "PartialMap";
    case ErrorCode::non_composable: return "NonComposable";
    case ErrorCode::too_large: return "TooLarge";
    case ErrorCode::empty_graph: return "EmptyGraph";
    case ErrorCode::not_a_solution: return "NotASolution";
    case ErrorCode::not_state_determined: return "NotStateDetermined";
    case ErrorCode::invalid_graph: return "InvalidGraph";
    case ErrorCode::invalid_argument: return "InvalidArgument";
    case ErrorCode::syntax_error: return "SyntaxError";
    case ErrorCode::schema_error: return "SchemaError";
    case ErrorCode::validation_error: return "ValidationError";
  }
  return "Unknown";
}

}  // namespace pgraph

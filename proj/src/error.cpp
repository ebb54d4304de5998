#include "parac/error.hpp"

namespace parac {

const char* errc_name(Errc code) {
  switch (code) {
    case Errc::asymmetric_input: return "AsymmetricInput";
    case Errc::positive_off_diagonal: return "PositiveOffDiagonal";
    case Errc::row_sum_violation: return "RowSumViolation";
    case Errc::too_large_for_dense: return "TooLargeForDense";
    case Errc::parse_error: return "ParseError";
    case Errc::unsupported_field: return "UnsupportedField";
    case Errc::budget_exceeded: return "BudgetExceeded";
    case Errc::not_a_permutation: return "NotAPermutation";
    case Errc::dense_blowup: return "DenseBlowup";
    case Errc::arena_exhausted: return "ArenaExhausted";
    case Errc::queue_stall: return "QueueStall";
    case Errc::workspace_full: return "WorkspaceFull";
    case Errc::dimension_mismatch: return "DimensionMismatch";
    case Errc::not_connected: return "NotConnected";
    case Errc::too_many_neighbors: return "TooManyNeighbors";
    case Errc::io_error: return "IoError";
    case Errc::internal_error: return "InternalError";
  }
  return "UnknownError";
}

}  // namespace parac

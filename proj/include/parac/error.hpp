#pragma once

#include <stdexcept>
#include <string>

namespace parac {

// Every failure mode the library reports. The CLI maps these to exit codes.
enum class Errc {
  asymmetric_input = 1,
  positive_off_diagonal,
  row_sum_violation,
  too_large_for_dense,
  parse_error,
  unsupported_field,
  budget_exceeded,
  not_a_permutation,
  dense_blowup,
  arena_exhausted,
  queue_stall,
  workspace_full,
  dimension_mismatch,
  not_connected,
  too_many_neighbors,
  io_error,
  internal_error,
};

const char* errc_name(Errc code);

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& message)
      : std::runtime_error(std::string(errc_name(code)) + ": " + message), code_(code) {}

  Errc code() const { return code_; }

 private:
  Errc code_;
};

}  // namespace parac

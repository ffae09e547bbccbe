#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace wiener {

enum class errc {
  length_mismatch,
  degree_sum_invalid,
  non_positive_degree,
  negative_weight,
  dimension_mismatch,
  infeasible_assignment,
  small_backbone,
  non_monotone_weights,
  inconsistent_partial,
  search_space_too_large,
  too_large,
  too_small,
  bad_input,
};

class Error : public std::runtime_error {
public:
  Error(errc code, std::string message)
      : std::runtime_error(std::move(message)), code_(code) {}

  errc code() const noexcept { return code_; }

private:
  errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& message) {
  throw Error(code, message);
}

}  // namespace wiener

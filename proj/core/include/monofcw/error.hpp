#pragma once

#include <stdexcept>
#include <string>

namespace monofcw {

enum class errc {
  invalid_argument,
  parse_error,
  at_or_above_horizon,
  angle_overflow,
  degenerate_distances,
  degenerate_rows,
  singular_system,
  implausible_solution,
  singular_normal_equations,
  no_anchors,
  empty_plan,
  image_too_small,
  empty_class,
  model_plan_mismatch,
  io_error,
};

const char* errc_name(errc code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
  errc code() const noexcept { return code_; }

 private:
  errc code_;
};

[[noreturn]] inline void raise(errc code, const std::string& what) {
  throw Error(code, std::string(errc_name(code)) + ": " + what);
}

}  // namespace monofcw

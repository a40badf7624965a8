#pragma once

#include <stdexcept>
#include <string>

namespace conecalc {

enum class Errc {
  parse,
  dimension_mismatch,
  bad_input,
  bad_slice,
  degenerate_segment,
  not_normalized,
  not_in_cone,
  not_reduced,
  unsupported_genus,
  parameter_out_of_range,
  nonpositive_area,
  infeasible_correction,
  not_mild_pair,
  invalid_decomposition,
  not_admissible,
  inconsistent_profile,
  bound_too_large,
  unreachable,
  internal,
};

const char* errc_name(Errc c);

// Process exit / C API status buckets: 2 input, 3 domain, 4 unreachable/incomplete.
int errc_status(Errc c);

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& msg)
      : std::runtime_error(std::string(errc_name(code)) + ": " + msg), code_(code) {}
  Errc code() const { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& msg) { throw Error(code, msg); }

}  // namespace conecalc

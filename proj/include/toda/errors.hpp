#pragma once

#include <stdexcept>
#include <string>

namespace toda {

// Base class for all library errors.
class error : public std::runtime_error {
 public:
  explicit error(const std::string& what) : std::runtime_error(what) {}
};

// Vector/matrix size mismatch.
class dimension_error : public error {
  using error::error;
};

// Requested operator power exceeds the configured cap.
class cap_error : public error {
  using error::error;
};

// Operation not defined for the window's boundary model.
class boundary_error : public error {
  using error::error;
};

// Invalid domain values (a_n <= 0, Im z <= 0, bad degree, ...).
class domain_error : public error {
  using error::error;
};

// Flow integration produced a_n <= 0 (or non-finite parameters).
class flow_error : public error {
  using error::error;
};

// A computed object violates a structural identity; indicates a bug in the
// implementation, not bad user input.
class structure_error : public error {
  using error::error;
};

// Transfer-matrix determinant drifted beyond tolerance.
class integrity_error : public error {
  using error::error;
};

// Degenerate input (zero polynomial, ...).
class degenerate_error : public error {
  using error::error;
};

// m-function evaluation hit a pole (u_n = 0 at the reference site).
class pole_error : public error {
  using error::error;
};

// Bad CLI or config-file input.
class config_error : public error {
  using error::error;
};

}  // namespace toda

#pragma once

#include <stdexcept>
#include <string>

namespace vlcwdm {

// Raised when an allocation problem cannot be satisfied (e.g. more users than
// (access point, wavelength) pairs), as opposed to malformed input.
struct infeasible_error : std::runtime_error {
  explicit infeasible_error(const std::string& what) : std::runtime_error(what) {}
};

// Raised for filesystem-level failures (unreadable config, unwritable output).
struct io_error : std::runtime_error {
  explicit io_error(const std::string& what) : std::runtime_error(what) {}
};

} // namespace vlcwdm

#pragma once

#include <stdexcept>
#include <string>

namespace fracdiff {

// Base for everything the library throws on purpose.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct PoleError : Error { using Error::Error; };
struct DomainError : Error { using Error::Error; };
struct ConvergenceError : Error { using Error::Error; };
struct QuadratureError : Error { using Error::Error; };
struct UnsupportedMethod : Error { using Error::Error; };
struct MembershipError : Error { using Error::Error; };

}  // namespace fracdiff

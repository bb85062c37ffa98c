#pragma once

#include <stdexcept>
#include <string>

namespace minsurf {

/// Base of every error raised by the core library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// The chart has vanishing conformal factor at the requested point.
class NotImmersed : public Error {
 public:
  using Error::Error;
};

/// A finite-difference stencil or evaluation point left the chart domain.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A root bracket (neck region, exclusion radius) could not be established.
class BracketNotFound : public Error {
 public:
  using Error::Error;
};

}  // namespace minsurf

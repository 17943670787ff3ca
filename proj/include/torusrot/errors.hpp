#pragma once

#include <stdexcept>

namespace torusrot {

// Argument outside an operation's domain (bad map spec, zero direction, ...).
using InvalidArgument = std::invalid_argument;

// Arguments are well formed but an operation's precondition does not hold.
class PreconditionError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// A point lies on (or within tolerance of) a curve it must avoid.
class DegenerateGeometryError : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

// A discretized search found no solution at the current sampling.
class ResolutionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace torusrot

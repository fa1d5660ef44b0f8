#pragma once

#include <stdexcept>
#include <string>

namespace omd {

/// Malformed external input (JSON documents, rational literals, CLI values).
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An operation was called outside its domain: infeasible parameters, a
/// second positive lattice node, a zero low value on the structured path.
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// An enumeration would exceed its configured size guard.
class GuardError : public PreconditionError {
 public:
  using PreconditionError::PreconditionError;
};

/// A structural result disagreed with its oracle or an internal invariant
/// failed (e.g. a probe allocation strictly between 0 and 1).
class InvariantError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace omd

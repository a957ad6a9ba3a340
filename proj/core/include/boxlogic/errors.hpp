#pragma once

#include <stdexcept>
#include <string>

namespace boxlogic {

/// Base class of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed or inconsistent user input (scenario files, tables, observables).
class InvalidInput : public Error {
 public:
  using Error::Error;
};

/// A configured resource cap (gamma size, closure size, polytope variables,
/// family size) would be exceeded.
class CapExceeded : public Error {
 public:
  using Error::Error;
};

class ClosureBudgetExceeded : public CapExceeded {
 public:
  using CapExceeded::CapExceeded;
};

/// An element that is not a member of the logic was passed in.
class ForeignElement : public InvalidInput {
 public:
  using InvalidInput::InvalidInput;
};

/// A structural claim about box-world logics failed on concrete data.
/// Seeing one of these means a defect in the construction, not bad input.
class TheoremViolation : public Error {
 public:
  using Error::Error;
};

class WellDefinednessViolation : public TheoremViolation {
 public:
  using TheoremViolation::TheoremViolation;
};

}  // namespace boxlogic

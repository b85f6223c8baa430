#pragma once

#include <stdexcept>
#include <string>

namespace peakpack {

// Base class so callers can catch everything this library throws.
struct Error : std::runtime_error {
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Malformed or inconsistent input data (files, CLI arguments, bad job sets).
struct InvalidInput : Error {
  explicit InvalidInput(const std::string& msg) : Error(msg) {}
};

// A documented precondition of an algorithm does not hold for this input.
struct PreconditionFailed : Error {
  explicit PreconditionFailed(const std::string& msg) : Error(msg) {}
};

// The Steinberg admissibility condition failed where the surrounding argument
// guarantees it must hold; signals an arithmetic or bookkeeping bug.
struct ConditionViolated : Error {
  explicit ConditionViolated(const std::string& msg) : Error(msg) {}
};

// An internal invariant that the correctness proofs rely on was violated.
struct InternalInvariant : Error {
  explicit InternalInvariant(const std::string& msg) : Error(msg) {}
};

// No feasible answer exists within the current budget (e.g. a target peak too
// small for the approximation pipeline, or an overflowing container).
struct Infeasible : Error {
  explicit Infeasible(const std::string& msg) : Error(msg) {}
};

// A node or time limit was exhausted before an answer could be certified.
struct ResourceExceeded : Error {
  explicit ResourceExceeded(const std::string& msg) : Error(msg) {}
};

}  // namespace peakpack

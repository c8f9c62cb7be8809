#pragma once

#include <stdexcept>
#include <string>

namespace htlab {

/// Truncation orders out of range or mismatched between operands.
class OrderError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A parameter or coefficient outside the domain an operation accepts
/// (zero constant term, pole at the origin, empty feasible region, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Evaluation point beyond the radius where a truncated series is trusted.
class TrustRegionError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

/// Matrix that was expected to be Hermitian is not.
class StructureError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Rejection sampling ran out of attempts.
class GenerationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace htlab

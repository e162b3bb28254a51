#pragma once

#include <stdexcept>
#include <string>

namespace latdiv {

// Structural failures: a document does not parse against its schema.
struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Semantic failures: the input parses but violates a precondition or a
// domain law (not a poset, not a lattice, weights negative, ...).
struct ValidationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A mathematical assertion that the caller asked to be checked does not
// hold on the given data.
struct AssertionFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NotAPartialOrder : ValidationError { using ValidationError::ValidationError; };
struct NotALattice : ValidationError { using ValidationError::ValidationError; };
struct UnknownElement : ValidationError { using ValidationError::ValidationError; };
struct NotDistributive : ValidationError { using ValidationError::ValidationError; };
struct NotMaximalChain : ValidationError { using ValidationError::ValidationError; };
struct MissingValue : ValidationError { using ValidationError::ValidationError; };
struct InvalidValuation : ValidationError { using ValidationError::ValidationError; };
struct NotSuperModular : ValidationError { using ValidationError::ValidationError; };
struct TooLarge : ValidationError { using ValidationError::ValidationError; };
struct UnknownIdentifier : ValidationError { using ValidationError::ValidationError; };
struct TooManyVariables : ValidationError { using ValidationError::ValidationError; };
struct GroundSetMismatch : ValidationError { using ValidationError::ValidationError; };
struct InvalidPartition : ValidationError { using ValidationError::ValidationError; };
struct NotARefinement : ValidationError { using ValidationError::ValidationError; };
struct DominationFailure : ValidationError { using ValidationError::ValidationError; };
struct ConstraintViolation : ValidationError { using ValidationError::ValidationError; };
struct NotNormalized : ValidationError { using ValidationError::ValidationError; };
struct NotDecreasing : ValidationError { using ValidationError::ValidationError; };
struct OutOfDomain : ValidationError { using ValidationError::ValidationError; };
struct QuadratureFailure : ValidationError { using ValidationError::ValidationError; };

}  // namespace latdiv

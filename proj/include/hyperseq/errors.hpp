#pragma once

#include <stdexcept>
#include <string>

namespace hyperseq {

/// Operation applied outside its mathematical domain (zero polynomial where a
/// nonzero one is required, 0^0, degenerate spec, ...).
class DomainError : public std::domain_error {
  public:
    using std::domain_error::domain_error;
};

class DivisionByZero : public DomainError {
  public:
    using DomainError::DomainError;
};

/// Caller violated a documented precondition.
class PreconditionError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

/// (k, A, B) outside the supported regime: k < 3, A = 0, or gcd(A, B) nonconstant.
class InvalidSpec : public PreconditionError {
  public:
    using PreconditionError::PreconditionError;
};

class IndexError : public std::out_of_range {
  public:
    using std::out_of_range::out_of_range;
};

/// Malformed textual input (coefficient lists, config files).
class ParseError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

}  // namespace hyperseq

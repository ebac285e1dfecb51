#pragma once

#include <stdexcept>
#include <string>

namespace ordlab {

// Base of every error the library throws.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An argument is outside the documented domain of an operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

// A rational base cannot be evaluated modulo p (p divides numerator or
// denominator). Censuses skip such primes.
class NotInvertible : public Error {
 public:
  using Error::Error;
};

class DlogFailure : public Error {
 public:
  using Error::Error;
};

// The prescribed index d does not divide p - 1.
class IndexNotDividing : public Error {
 public:
  using Error::Error;
};

class InadmissibleTuple : public Error {
 public:
  using Error::Error;
};

// A numerically evaluated identity drifted beyond its tolerance. This means a
// broken identity, never a rounding nuisance.
class IdentityViolation : public Error {
 public:
  using Error::Error;
};

}  // namespace ordlab

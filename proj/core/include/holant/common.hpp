#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace holant {

using Complex = std::complex<double>;

// Base class for every error the library raises.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Bad argument to an API call (invalid id, empty set, bad range).
class ArgumentError : public Error {
 public:
  using Error::Error;
};

// Malformed text or JSON input.
class ParseError : public Error {
 public:
  using Error::Error;
};

// A signature with f(0,...,0) = 0 reached a polymer-based operation.
class NotInF0 : public Error {
 public:
  using Error::Error;
};

// z_0 = 0 or a fugacity vector of the wrong length.
class InvalidFugacity : public Error {
 public:
  using Error::Error;
};

// Parameters lie outside the certified region of the requested algorithm.
class RegionViolation : public Error {
 public:
  using Error::Error;
};

// Complex or negative weights given to the Markov chain code.
class UnsupportedWeights : public Error {
 public:
  using Error::Error;
};

// A brute-force or enumeration size gate was exceeded.
class GateExceeded : public Error {
 public:
  using Error::Error;
};

// The sampling condition failed at run time.
class ConditionViolated : public Error {
 public:
  using Error::Error;
};

// Partition function is zero, so no Gibbs distribution exists.
class DegenerateDistribution : public Error {
 public:
  using Error::Error;
};

// Fugacities z_0..z_kappa; index 0 is the ground colour.
using FugacityVector = std::vector<Complex>;

// Integer power by repeated squaring; ipow(0, 0) = 1.
inline Complex ipow(Complex base, long long exponent) {
  Complex result = 1.0;
  bool invert = exponent < 0;
  unsigned long long e = invert ? static_cast<unsigned long long>(-exponent) : static_cast<unsigned long long>(exponent);
  while (e) {
    if (e & 1ULL) result *= base;
    base *= base;
    e >>= 1ULL;
  }
  return invert ? 1.0 / result : result;
}

// Edge assignment sigma: colour per edge id, in canonical edge order.
using Assignment = std::vector<int>;

}  // namespace holant

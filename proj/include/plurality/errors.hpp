#pragma once

#include <stdexcept>
#include <string>

namespace plurality {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

class InvalidProfile : public Error {
 public:
  using Error::Error;
};

class InvalidPermutation : public Error {
 public:
  using Error::Error;
};

class InvalidWeights : public Error {
 public:
  using Error::Error;
};

class InvalidDistribution : public Error {
 public:
  using Error::Error;
};

class InvalidProgram : public Error {
 public:
  using Error::Error;
};

class IndexError : public Error {
 public:
  using Error::Error;
};

// An enumeration or table guard was exceeded.
class TooLarge : public Error {
 public:
  using Error::Error;
};

class DegenerateFunction : public Error {
 public:
  using Error::Error;
};

class NotAWeightedPlurality : public Error {
 public:
  using Error::Error;
};

// An exact post-condition check failed. Always an implementation bug.
class SolverInconsistency : public Error {
 public:
  using Error::Error;
};

}  // namespace plurality

#pragma once

#include <stdexcept>
#include <string>

namespace cuberoot {

// Base class for all library errors. Subclasses map onto CLI exit codes:
// config errors -> 2, data errors -> 3, numeric failures -> 4.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

class InvalidSpec : public Error {
 public:
  using Error::Error;
};

class DataError : public Error {
 public:
  using Error::Error;
};

class NumericError : public Error {
 public:
  using Error::Error;
};

class EmptySet : public NumericError {
 public:
  using NumericError::NumericError;
};

class EmptyGrid : public NumericError {
 public:
  using NumericError::NumericError;
};

class DegenerateData : public NumericError {
 public:
  using NumericError::NumericError;
};

class ZeroEffectiveSample : public NumericError {
 public:
  using NumericError::NumericError;
};

class AllZeroWeights : public NumericError {
 public:
  using NumericError::NumericError;
};

class BlockTooShort : public NumericError {
 public:
  using NumericError::NumericError;
};

class FactorizationFailure : public NumericError {
 public:
  using NumericError::NumericError;
};

class GridTooLarge : public NumericError {
 public:
  using NumericError::NumericError;
};

class InvalidDensity : public NumericError {
 public:
  using NumericError::NumericError;
};

}  // namespace cuberoot

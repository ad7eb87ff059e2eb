#pragma once

#include <stdexcept>
#include <string>

namespace fairalloc {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Numerical failures inside an LP or barrier solve.
class SolverError : public Error {
 public:
  using Error::Error;
};

class IterationLimit : public SolverError {
 public:
  using SolverError::SolverError;
};

class NewtonDivergence : public SolverError {
 public:
  using SolverError::SolverError;
};

// Caller supplied something the operation cannot accept.
class InputError : public Error {
 public:
  using Error::Error;
};

class UnknownPreset : public InputError {
 public:
  using InputError::InputError;
};

class InvalidType : public InputError {
 public:
  using InputError::InputError;
};

class DimensionMismatch : public InputError {
 public:
  using InputError::InputError;
};

class EmptyInput : public InputError {
 public:
  using InputError::InputError;
};

class TooLarge : public InputError {
 public:
  using InputError::InputError;
};

class NonInteriorPoint : public InputError {
 public:
  using InputError::InputError;
};

class ConfigParse : public InputError {
 public:
  using InputError::InputError;
};

class IoError : public InputError {
 public:
  using InputError::InputError;
};

class MissingInput : public InputError {
 public:
  using InputError::InputError;
};

}  // namespace fairalloc

#pragma once

#include <stdexcept>
#include <string>

namespace foodsim {

// Base class for all engine errors so the CLI can map them to exit codes.
class Error : public std::runtime_error {
  public:
    explicit Error(const std::string &msg) : std::runtime_error(msg) {}
};

// Raised when input files or in-memory structures violate their invariants.
class ValidationError : public Error {
  public:
    using Error::Error;
};

// File parsing failure; message carries file and line context.
class ParseError : public ValidationError {
  public:
    using ValidationError::ValidationError;
};

class ZeroExpenditureError : public Error {
  public:
    using Error::Error;
};

class DimensionMismatchError : public Error {
  public:
    using Error::Error;
};

class NonFiniteResultError : public Error {
  public:
    using Error::Error;
};

class ZeroFpiChangeError : public Error {
  public:
    using Error::Error;
};

class PositiveOwnPeError : public Error {
  public:
    using Error::Error;
};

class DegenerateShareError : public Error {
  public:
    using Error::Error;
};

class MappingGapError : public Error {
  public:
    using Error::Error;
};

class MissingGroupElasticityError : public Error {
  public:
    using Error::Error;
};

class UnknownNutrientError : public Error {
  public:
    using Error::Error;
};

class EmptySelectorError : public Error {
  public:
    using Error::Error;
};

class PriceWouldBeNonpositiveError : public Error {
  public:
    using Error::Error;
};

class ZeroBaselineTotalError : public Error {
  public:
    using Error::Error;
};

class NegativeRateError : public Error {
  public:
    using Error::Error;
};

class NonConvergenceError : public Error {
  public:
    using Error::Error;
};

class PifAtUnityError : public Error {
  public:
    using Error::Error;
};

class UnknownParameterError : public Error {
  public:
    using Error::Error;
};

} // namespace foodsim

#pragma once

#include <stdexcept>
#include <string>

namespace multislit {

// Base for every input/domain rejection raised by the library.
class ValidationError : public std::invalid_argument {
public:
  explicit ValidationError(const std::string& what) : std::invalid_argument(what) {}
};

class DimensionMismatch : public ValidationError {
public:
  using ValidationError::ValidationError;
};

class NotNormalized : public ValidationError {
public:
  using ValidationError::ValidationError;
};

class NotPositiveSemidefinite : public ValidationError {
public:
  using ValidationError::ValidationError;
};

class DomainError : public ValidationError {
public:
  using ValidationError::ValidationError;
};

// Slit geometry is outside the far-field regime required by an evaluator.
class FraunhoferError : public std::runtime_error {
public:
  explicit FraunhoferError(const std::string& what) : std::runtime_error(what) {}
};

// A measurement protocol was requested on a configuration it cannot measure.
class ProtocolNotApplicable : public std::logic_error {
public:
  explicit ProtocolNotApplicable(const std::string& what) : std::logic_error(what) {}
};

}  // namespace multislit

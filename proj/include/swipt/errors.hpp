#pragma once

#include <stdexcept>
#include <string>

namespace swipt {

/// Non-finite entries, wrong shapes, non-PSD covariances.
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A matrix that must be positive definite is singular or indefinite.
class IllConditioned : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// EH/ID index sets that do not partition the transceiver pairs.
class InvalidPartition : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A beam direction asked of an all-zero channel.
class UndefinedDirection : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Required energy above what the scheme can deliver.
class InfeasibleTarget : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Configuration validation failure. `field()` names the offending key.
class ConfigError : public std::invalid_argument {
 public:
  ConfigError(std::string field, const std::string& what)
      : std::invalid_argument(field + ": " + what), field_(std::move(field)) {}
  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace swipt

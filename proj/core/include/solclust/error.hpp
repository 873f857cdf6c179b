#pragma once

#include <stdexcept>
#include <string>

namespace solclust {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input file (header, timestamp, CSV shape).
class FormatError : public Error {
 public:
  using Error::Error;
};

/// Argument outside an operation's domain.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// A feature or score that is mathematically undefined for the input.
class UndefinedError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// Input data unusable for the requested stage (too few days, mismatched dates).
class DataError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

class FetchError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace solclust

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace maxent {

// Root of every exception thrown by the library and the bench tools.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class WeightError : public Error {
 public:
  using Error::Error;
};

class ShapeError : public Error {
 public:
  using Error::Error;
};

class CovarianceError : public Error {
 public:
  using Error::Error;
};

class NotCenteredError : public Error {
 public:
  using Error::Error;
};

class NonFiniteError : public Error {
 public:
  using Error::Error;
};

class DomainError : public Error {
 public:
  using Error::Error;
};

class DivergenceError : public Error {
 public:
  DivergenceError(int epoch, std::size_t batch, const std::string& what)
      : Error("training diverged at epoch " + std::to_string(epoch) + ", batch " +
              std::to_string(batch) + ": " + what),
        epoch_(epoch),
        batch_(batch) {}

  int epoch() const { return epoch_; }
  std::size_t batch() const { return batch_; }

 private:
  int epoch_;
  std::size_t batch_;
};

class IoError : public Error {
 public:
  using Error::Error;
};

class FormatError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

class ValidationError : public Error {
 public:
  ValidationError(std::string field, const std::string& what)
      : Error(field + ": " + what), field_(std::move(field)) {}

  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

class ManifestError : public Error {
 public:
  using Error::Error;
};

}  // namespace maxent

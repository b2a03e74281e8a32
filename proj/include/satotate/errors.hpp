#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace satotate {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Unknown model or inclusion name.
class CatalogError : public Error {
 public:
  using Error::Error;
};

/// Class point outside the fundamental domain of its component.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Precondition violated by the caller.
class ContractError : public Error {
 public:
  using Error::Error;
};

class NotInImageError : public Error {
 public:
  using Error::Error;
};

class UnsupportedInclusionError : public Error {
 public:
  using Error::Error;
};

class UnsupportedModelError : public Error {
 public:
  using Error::Error;
};

/// Catalog metadata disagrees with itself (a bug in a model definition).
class ModelIntegrityError : public Error {
 public:
  using Error::Error;
};

class DecompositionFailedError : public Error {
 public:
  DecompositionFailedError(const std::string& what, double residual)
      : Error(what), residual_(residual) {}
  double residual() const { return residual_; }

 private:
  double residual_;
};

class BadReductionError : public Error {
 public:
  explicit BadReductionError(std::int64_t p)
      : Error("bad reduction at p = " + std::to_string(p)), p_(p) {}
  std::int64_t prime() const { return p_; }

 private:
  std::int64_t p_;
};

/// Frobenius data violating the Hasse bound.
class IntegrityError : public Error {
 public:
  using Error::Error;
};

class IndeterminateError : public Error {
 public:
  using Error::Error;
};

/// Malformed CSV input; line() is 1-based.
class CsvError : public Error {
 public:
  CsvError(std::size_t line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

}  // namespace satotate

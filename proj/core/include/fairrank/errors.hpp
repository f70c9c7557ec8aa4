#ifndef FAIRRANK_ERRORS_HPP_
#define FAIRRANK_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace fairrank {

/// Base class for all fairrank errors.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// A 1-based ranking position is out of range.
class PositionError : public Error {
 public:
  using Error::Error;
};

/// A candidate was added to a set it already belongs to.
class DuplicateError : public Error {
 public:
  using Error::Error;
};

/// A candidate does not belong to the referenced population.
class MembershipError : public Error {
 public:
  using Error::Error;
};

/// KL divergence requested with q_i = 0 where p_i > 0.
class DivergenceDomainError : public Error {
 public:
  using Error::Error;
};

/// A probability vector does not sum to 1 (or has bad components).
class NormalizationError : public Error {
 public:
  using Error::Error;
};

/// The prefix-metric normalizer is zero on the given candidate set.
class NormalizerZeroError : public Error {
 public:
  using Error::Error;
};

/// Enumeration was requested past the factorial guard.
class SizeGuardError : public Error {
 public:
  using Error::Error;
};

/// A generator cannot be satisfied by the population's group sizes.
class CapacityError : public Error {
 public:
  using Error::Error;
};

/// A metric value is undefined on the given input (vanishing denominator
/// or inapplicable ranking setting). `quantity()` names what vanished.
class UndefinedMetricError : public Error {
 public:
  UndefinedMetricError(const std::string& quantity, const std::string& what)
      : Error(what), quantity_(quantity) {}
  const std::string& quantity() const { return quantity_; }

 private:
  std::string quantity_;
};

/// A metric was evaluated in a ranking setting it does not support
/// (PSP on a strict subset of the population).
class SettingMismatchError : public UndefinedMetricError {
 public:
  explicit SettingMismatchError(const std::string& what)
      : UndefinedMetricError("setting", what) {}
};

/// A run file could not be parsed. Carries the 1-based line number.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// A run file parsed but violates an invariant. Carries the offending line.
class ValidationError : public Error {
 public:
  ValidationError(std::size_t line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

}  // namespace fairrank

#endif  // FAIRRANK_ERRORS_HPP_

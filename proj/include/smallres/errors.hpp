#pragma once

#include <stdexcept>
#include <string>

namespace smallres {

/// Input outside an operation's mathematical domain (bad modulus, k not
/// dividing p-1, non-coprime residue class, ...).
class DomainError : public std::domain_error {
 public:
  explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

/// A configured scan or sieve budget would be exceeded.
class ResourceError : public std::runtime_error {
 public:
  explicit ResourceError(const std::string& what) : std::runtime_error(what) {}
};

/// A floating-point evaluation that must land on an integer did not.
class NumericalIntegrityError : public std::runtime_error {
 public:
  explicit NumericalIntegrityError(const std::string& what) : std::runtime_error(what) {}
};

/// Malformed user input (CLI arguments, config files, number expressions).
class UsageError : public std::invalid_argument {
 public:
  explicit UsageError(const std::string& what) : std::invalid_argument(what) {}
};

}  // namespace smallres

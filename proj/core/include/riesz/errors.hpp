#pragma once

#include <stdexcept>
#include <string>

namespace riesz {

/// Raised when a radius lies below the regime where Delta(r) is defined
/// (n(r) < 3) or a construction is otherwise evaluated outside its domain.
class DomainError : public std::domain_error
{
public:
  explicit DomainError(const std::string& what)
    : std::domain_error(what)
  {}
};

/// Raised for violated preconditions on arguments (negative radii, empty
/// sample counts, malformed measure files, ...).
class ContractError : public std::invalid_argument
{
public:
  explicit ContractError(const std::string& what)
    : std::invalid_argument(what)
  {}
};

} // namespace riesz

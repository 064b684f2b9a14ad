#ifndef MALLE_ERROR_HPP
#define MALLE_ERROR_HPP

#include <stdexcept>
#include <string>

namespace malle {

class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// A group (or a derived enumeration) would exceed its configured cap.
class SizeError : public Error {
public:
  using Error::Error;
};

/// Malformed group expression, cycle notation or table file.
class ParseError : public Error {
public:
  using Error::Error;
};

/// Well-formed input that violates a mathematical requirement.
class ValidationError : public Error {
public:
  using Error::Error;
};

/// A caller broke an operation's precondition.
class ContractError : public Error {
public:
  using Error::Error;
};

/// Minimum of an exponent function requested over a set with no nonidentity element.
class UndefinedMinimumError : public ContractError {
public:
  using ContractError::ContractError;
};

/// Element orders do not divide the cyclotomic modulus of a pair.
class ModulusError : public Error {
public:
  using Error::Error;
};

} // namespace malle

#endif // MALLE_ERROR_HPP

#pragma once

#include <stdexcept>
#include <string>

namespace siegelkit {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Invalid input: outside an operation's domain.
class DomainError : public Error {
public:
    using Error::Error;
};

// Index outside the support of a coefficient map (plus-space condition).
class SupportError : public DomainError {
public:
    using DomainError::DomainError;
};

// Required input data missing (a Satake parameter, a class-function value).
class DataError : public DomainError {
public:
    using DomainError::DomainError;
};

// Valid input the engines cannot handle (size caps, budgets).
class CapabilityError : public Error {
public:
    using Error::Error;
};

// An internal identity failed. Always a bug or an insufficient depth.
class ConsistencyError : public Error {
public:
    using Error::Error;
};

}  // namespace siegelkit

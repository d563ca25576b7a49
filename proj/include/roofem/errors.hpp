#pragma once

#include <stdexcept>
#include <string>

namespace roofem {

// Base class for everything the toolkit throws on bad input or misuse.
// The CLI maps these to exit code 2.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Malformed input text. Messages carry a line (and column, where known).
class SyntaxError : public Error {
public:
    using Error::Error;
};

// A parsed value violates a model invariant. Messages name the field.
class ValidationError : public Error {
public:
    using Error::Error;
};

// CSV header does not match the expected schema.
class SchemaError : public Error {
public:
    using Error::Error;
};

// Argument outside the mathematical domain of an operation.
class DomainError : public Error {
public:
    using Error::Error;
};

// Caller broke a documented precondition (empty input, mixed work units, ...).
class ContractError : public Error {
public:
    using Error::Error;
};

} // namespace roofem

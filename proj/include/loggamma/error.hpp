#pragma once

#include <stdexcept>
#include <string>

namespace loggamma {

// Base of every library error; each subclass maps to one failure category.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Invalid model parameter, e.g. non-positive theta.
class ParameterError : public Error {
public:
    using Error::Error;
};

// Arguments outside the domain of an operation (off-window points, bad ranges).
class DomainError : public Error {
public:
    using Error::Error;
};

// Requested work or memory exceeds a documented limit.
class CapacityError : public Error {
public:
    using Error::Error;
};

// A determinant lost too much precision to be trusted.
class ConditioningError : public Error {
public:
    using Error::Error;
};

// Hypotheses of an identity are not met; the message names the failed inequality.
class PreconditionError : public Error {
public:
    using Error::Error;
};

// Malformed environment file.
class FormatError : public Error {
public:
    using Error::Error;
};

class VersionError : public FormatError {
public:
    using FormatError::FormatError;
};

}  // namespace loggamma

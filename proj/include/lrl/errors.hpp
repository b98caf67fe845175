#pragma once

#include <stdexcept>
#include <string>

namespace lrl {

/// Root of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Caller handed in something outside the documented domain (bad parameter,
/// NaN coordinate, origin of the lottery map, ...).
class InvalidArgument : public Error {
public:
    using Error::Error;
};

class SingularInput : public InvalidArgument {
public:
    using InvalidArgument::InvalidArgument;
};

class NonFinite : public InvalidArgument {
public:
    using InvalidArgument::InvalidArgument;
};

/// The requested object does not exist for these parameters.
class DomainError : public Error {
public:
    using Error::Error;
};

class NoCycle : public DomainError {
public:
    using DomainError::DomainError;
};

class NoInteriorOrbit : public DomainError {
public:
    using DomainError::DomainError;
};

class PreconditionError : public DomainError {
public:
    using DomainError::DomainError;
};

/// Arithmetic went wrong during a computation that was set up correctly.
class NumericalError : public Error {
public:
    using Error::Error;
};

class Overflow : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class StaleOrbit : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class ConvergenceFailure : public NumericalError {
public:
    using NumericalError::NumericalError;
};

} // namespace lrl

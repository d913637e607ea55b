#pragma once

#include <stdexcept>
#include <string>

namespace rkball {

/// Base class for all library errors. `exit_code` matches the CLI contract:
/// 2 for validation failures, 3 for numerical failures.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
    virtual int exit_code() const noexcept { return 1; }
};

/// Invalid input: bad schema, out-of-range parameters, violated preconditions.
class ValidationError : public Error {
public:
    using Error::Error;
    int exit_code() const noexcept override { return 2; }
};

/// Runtime numerical failure: singular pencils, non-convergent searches.
class NumericalError : public Error {
public:
    using Error::Error;
    int exit_code() const noexcept override { return 3; }
};

class DimensionMismatch : public ValidationError {
public:
    using ValidationError::ValidationError;
};

class CardinalityMismatch : public ValidationError {
public:
    using ValidationError::ValidationError;
};

class RangeError : public ValidationError {
public:
    using ValidationError::ValidationError;
};

class ParseError : public ValidationError {
public:
    using ValidationError::ValidationError;
};

/// Non-finite or structurally invalid matrix input.
class InvalidMatrix : public ValidationError {
public:
    using ValidationError::ValidationError;
};

class ScaleError : public ValidationError {
public:
    using ValidationError::ValidationError;
};

class PreconditionError : public ValidationError {
public:
    using ValidationError::ValidationError;
};

/// A Hermitian-definite pencil whose right-hand matrix is numerically singular.
class SingularPencil : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class NoConvergence : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class DegenerateSample : public NumericalError {
public:
    using NumericalError::NumericalError;
};

/// A check-mode assertion failed (CLI exit code 4).
class CheckFailure : public Error {
public:
    using Error::Error;
    int exit_code() const noexcept override { return 4; }
};

} // namespace rkball

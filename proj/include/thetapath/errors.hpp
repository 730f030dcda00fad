#pragma once

#include <stdexcept>
#include <string>

namespace thetapath {

/// Base of every error raised by the library. `exit_code()` is the value the
/// command-line front end returns when the error escapes a subcommand.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
    virtual int exit_code() const noexcept { return 2; }
};

/// Bad arguments, mismatched shapes or binning, violated preconditions.
class UsageError : public Error {
public:
    using Error::Error;
};

/// Input data failed validation (e.g. a non-unitary matrix in a file).
class ValidationError : public Error {
public:
    using Error::Error;
};

/// Requested an operation the coefficient field cannot support.
class UnsupportedOperation : public Error {
public:
    using Error::Error;
};

/// Division by zero, zero denominators.
class DomainError : public Error {
public:
    using Error::Error;
};

/// Exponential-cost guard tripped.
class ResourceError : public Error {
public:
    using Error::Error;
};

/// Rank deficiency in a QR factorization or pencil evaluation.
class DegeneracyError : public Error {
public:
    explicit DegeneracyError(const std::string& what, int index = -1)
        : Error(what), index_(index) {}
    int exit_code() const noexcept override { return 3; }
    /// Offending column or gate index, -1 when not applicable.
    int index() const noexcept { return index_; }

private:
    int index_;
};

/// Eigenvalue on the principal-branch cut of the logarithm.
class BranchCutError : public DegeneracyError {
public:
    using DegeneracyError::DegeneracyError;
};

/// Evaluation at a root of the denominator.
class PoleError : public Error {
public:
    using Error::Error;
    int exit_code() const noexcept override { return 4; }
};

/// Interpolation / decoding failures. All map to exit code 4.
class DecodeError : public Error {
public:
    using Error::Error;
    int exit_code() const noexcept override { return 4; }
};

class RankDeficiencyError : public DecodeError {
public:
    using DecodeError::DecodeError;
};

class InconsistencyError : public DecodeError {
public:
    using DecodeError::DecodeError;
};

class TooManyErrors : public DecodeError {
public:
    using DecodeError::DecodeError;
};

class InfeasibleError : public DecodeError {
public:
    using DecodeError::DecodeError;
};

/// Wraps an error escaping one stage of a multi-stage run; keeps the exit
/// code of the original error.
class StageError : public Error {
public:
    StageError(std::string stage, const Error& inner)
        : Error(stage + ": " + inner.what()), stage_(std::move(stage)), code_(inner.exit_code()) {}
    int exit_code() const noexcept override { return code_; }
    const std::string& stage() const noexcept { return stage_; }

private:
    std::string stage_;
    int code_;
};

}  // namespace thetapath

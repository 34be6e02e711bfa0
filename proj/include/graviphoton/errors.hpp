// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>

namespace graviphoton {

// Root of the library's exception tree. kind() is the stable name used in
// machine-parsable CLI error lines.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
    virtual const char* kind() const noexcept { return "Error"; }
};

// Invalid input: out-of-domain parameters, shape errors, unphysical states.
class DomainError : public Error {
public:
    using Error::Error;
    const char* kind() const noexcept override { return "DomainError"; }
};

class HorizonError : public DomainError {
public:
    using DomainError::DomainError;
    const char* kind() const noexcept override { return "HorizonError"; }
};

class OrbitDomainError : public DomainError {
public:
    using DomainError::DomainError;
    const char* kind() const noexcept override { return "OrbitDomainError"; }
};

class NormalizationError : public DomainError {
public:
    using DomainError::DomainError;
    const char* kind() const noexcept override { return "NormalizationError"; }
};

class IndexError : public DomainError {
public:
    using DomainError::DomainError;
    const char* kind() const noexcept override { return "IndexError"; }
};

class DimensionMismatch : public DomainError {
public:
    using DomainError::DomainError;
    const char* kind() const noexcept override { return "DimensionMismatch"; }
};

class NonPhysicalState : public DomainError {
public:
    using DomainError::DomainError;
    const char* kind() const noexcept override { return "NonPhysicalState"; }
};

// Failure of a numerical procedure on otherwise valid input.
class NumericalError : public Error {
public:
    using Error::Error;
    const char* kind() const noexcept override { return "NumericalError"; }
};

class QuadratureError : public NumericalError {
public:
    using NumericalError::NumericalError;
    const char* kind() const noexcept override { return "QuadratureError"; }
};

class StepUnderflow : public NumericalError {
public:
    using NumericalError::NumericalError;
    const char* kind() const noexcept override { return "StepUnderflow"; }
};

class ConfigParseError : public Error {
public:
    ConfigParseError(std::string path, const std::string& msg)
        : Error(msg), path_(std::move(path)) {}
    explicit ConfigParseError(const std::string& msg) : Error(msg) {}
    const char* kind() const noexcept override { return "ConfigParseError"; }
    const std::string& path() const noexcept { return path_; }

private:
    std::string path_;
};

}  // namespace graviphoton

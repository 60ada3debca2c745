// Copyright 2026 The omnr Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>

namespace omnr {

/// Base of every error thrown by the library. `kind()` is a stable
/// machine-readable tag used by the CLI's structured error output.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
    virtual const char* kind() const noexcept { return "error"; }
};

/// Invalid or malformed configuration (bad value, unknown key, ...).
class ConfigError : public Error {
public:
    using Error::Error;
    const char* kind() const noexcept override { return "config"; }
};

/// A function was called outside its domain (wrong basis, wrong
/// resonator count, ...).
class PreconditionError : public Error {
public:
    using Error::Error;
    const char* kind() const noexcept override { return "precondition"; }
};

/// Reading or writing a file failed.
class IoError : public Error {
public:
    using Error::Error;
    const char* kind() const noexcept override { return "io"; }
};

/// The drift matrix has an eigenvalue with non-positive real part.
class UnstableSystemError : public Error {
public:
    explicit UnstableSystemError(const std::string& what, double min_real_part)
        : Error(what), min_real_part_(min_real_part) {}
    const char* kind() const noexcept override { return "unstable"; }
    double min_real_part() const noexcept { return min_real_part_; }

private:
    double min_real_part_;
};

/// Generic numerical failure (solver breakdown, non-finite result).
class NumericalError : public Error {
public:
    using Error::Error;
    const char* kind() const noexcept override { return "numerical"; }
};

/// The eigen-solver failed to converge. Never reported as instability.
class EigenSolverError : public NumericalError {
public:
    using NumericalError::NumericalError;
    const char* kind() const noexcept override { return "eigen_solver"; }
};

/// M - i omega I is singular or too ill-conditioned to invert at omega.
class ResonantSingularityError : public NumericalError {
public:
    ResonantSingularityError(const std::string& what, double omega, double condition)
        : NumericalError(what), omega_(omega), condition_(condition) {}
    const char* kind() const noexcept override { return "resonant_singularity"; }
    double omega() const noexcept { return omega_; }
    double condition() const noexcept { return condition_; }

private:
    double omega_;
    double condition_;
};

/// A frequency grid does not cover enough of the spectral mass for a
/// quadrature-based check. Distinct from a genuine mismatch.
class InsufficientCoverageError : public NumericalError {
public:
    InsufficientCoverageError(const std::string& what, double tail_fraction)
        : NumericalError(what), tail_fraction_(tail_fraction) {}
    const char* kind() const noexcept override { return "insufficient_coverage"; }
    double tail_fraction() const noexcept { return tail_fraction_; }

private:
    double tail_fraction_;
};

}  // namespace omnr

// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>

namespace wmod {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Argument outside the domain of the operation (cut, sign, range).
class DomainError : public Error {
public:
    using Error::Error;
};

/// Gamma function evaluated at a nonpositive integer.
class PoleError : public DomainError {
public:
    using DomainError::DomainError;
};

/// A series, quadrature or root search did not reach its tolerance.
class NonConvergence : public Error {
public:
    using Error::Error;
};

/// A hypergeometric argument met the branch cut [1, inf).
class BranchError : public Error {
public:
    using Error::Error;
};

/// Division by a quantity that underflowed.
class DivisionError : public Error {
public:
    using Error::Error;
};

}  // namespace wmod

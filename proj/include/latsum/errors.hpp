#ifndef LATSUM_ERRORS_HPP
#define LATSUM_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace latsum
{

/// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error
{
public:
    using std::domain_error::domain_error;
};

/// Evaluation point too close to a lattice point.
class PoleError : public DomainError
{
public:
    using DomainError::DomainError;
};

/// A series or iteration did not reach its tolerance within its cap.
class ConvergenceError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

/// RSA generation stalled before reaching the requested number of disks.
class SaturationError : public ConvergenceError
{
public:
    using ConvergenceError::ConvergenceError;
};

} // namespace latsum

#endif

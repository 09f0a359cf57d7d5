#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace lehmer {

// Every precondition violation on a mathematical input derives from this.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

class NotInvertible : public DomainError {
public:
    NotInvertible(std::int64_t a, std::uint64_t q, std::uint64_t gcd)
        : DomainError(std::to_string(a) + " is not invertible modulo " + std::to_string(q) +
                      " (gcd = " + std::to_string(gcd) + ")"),
          gcd_(gcd) {}

    std::uint64_t gcd() const noexcept { return gcd_; }

private:
    std::uint64_t gcd_;
};

class UnsupportedModulus : public DomainError {
public:
    using DomainError::DomainError;
};

// Input exceeds a desk-scale size cap.
class ResourceError : public DomainError {
public:
    using DomainError::DomainError;
};

// Double-precision evaluation requested outside the range where the
// accumulated error is known to stay below 1e-6 of the term ceiling.
class PrecisionEnvelopeError : public DomainError {
public:
    using DomainError::DomainError;
};

class InsufficientData : public DomainError {
public:
    using DomainError::DomainError;
};

// Malformed textual input (bad literal, bad config line). Maps to a usage error.
class ParseError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

}  // namespace lehmer

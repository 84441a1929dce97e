#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace aca {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Thrown when an inverse (or an order) is requested for a residue that is
/// not a unit. Carries gcd(x, m).
class NotInvertible : public Error {
public:
    NotInvertible(std::uint64_t value, std::uint64_t modulus, std::uint64_t gcd)
        : Error("residue " + std::to_string(value) + " is not invertible modulo " +
                std::to_string(modulus) + " (gcd=" + std::to_string(gcd) + ")"),
          gcd_(gcd) {}

    std::uint64_t gcd() const noexcept { return gcd_; }

private:
    std::uint64_t gcd_;
};

class WindowTooSmall : public Error {
public:
    using Error::Error;
};

/// The dependency cone of a requested orbit value is larger than the cell budget.
class BudgetExceeded : public Error {
public:
    using Error::Error;
};

/// A point lies outside the region where an array is defined.
class OutOfDomain : public Error {
public:
    using Error::Error;
};

class Overflow : public Error {
public:
    using Error::Error;
};

class NotADivisor : public Error {
public:
    using Error::Error;
};

class IndexOutOfRange : public Error {
public:
    using Error::Error;
};

/// A theorem verifier or an algorithm was called outside its hypotheses.
/// The message names the failing hypothesis.
class PreconditionViolated : public Error {
public:
    using Error::Error;
};

class ParseError : public Error {
public:
    using Error::Error;
};

class IoError : public Error {
public:
    using Error::Error;
};

}  // namespace aca

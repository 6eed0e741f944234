#pragma once

#include <stdexcept>
#include <string>

namespace flatring {

// Root of every exception thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Argument outside the mathematical domain of an operation (k >= 1, z <= 1,
// a point on a coordinate cut, ...).
class DomainError : public Error {
public:
    using Error::Error;
};

// Evaluation within the guard band of a pole.
class PoleError : public Error {
public:
    using Error::Error;
};

// Iterative process stopped before reaching its target accuracy.
class ConvergenceError : public Error {
public:
    ConvergenceError(const std::string& what, double attained)
        : Error(what), attained_(attained) {}
    double attained() const noexcept { return attained_; }

private:
    double attained_;
};

// Eigenvalue bracket did not enclose a sign change of the shooting residual.
class BracketError : public Error {
public:
    BracketError(const std::string& what, double lo, double hi)
        : Error(what), lo_(lo), hi_(hi) {}
    double lo() const noexcept { return lo_; }
    double hi() const noexcept { return hi_; }

private:
    double lo_;
    double hi_;
};

// Expansion called with points in the wrong order (t >= t* or tau <= tau*).
class OrderingError : public Error {
public:
    using Error::Error;
};

}  // namespace flatring

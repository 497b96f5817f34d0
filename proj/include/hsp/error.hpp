#pragma once

#include <stdexcept>
#include <string>

namespace hsp {

// Base of every error raised by the library. The CLI maps subclasses onto
// process exit codes (see exit_code()).
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
    virtual int exit_code() const noexcept { return 1; }
};

class ParseError : public Error {
public:
    using Error::Error;
    int exit_code() const noexcept override { return 2; }
};

class CapExceeded : public Error {
public:
    using Error::Error;
    int exit_code() const noexcept override { return 3; }
};

class NotAGroup : public Error {
public:
    using Error::Error;
    int exit_code() const noexcept override { return 2; }
};

class BudgetExceeded : public Error {
public:
    using Error::Error;
    int exit_code() const noexcept override { return 3; }
};

class NonInvariantPrior : public Error {
public:
    using Error::Error;
    int exit_code() const noexcept override { return 4; }
};

class ConvergenceFailure : public Error {
public:
    using Error::Error;
    int exit_code() const noexcept override { return 5; }
};

// A character sum that should be an integer multiple of |H| was not.
class NonIntegerCharacter : public Error {
public:
    using Error::Error;
    int exit_code() const noexcept override { return 5; }
};

class DimensionMismatch : public Error {
public:
    using Error::Error;
};

class OutOfRange : public Error {
public:
    using Error::Error;
};

}  // namespace hsp

#pragma once

#include <stdexcept>
#include <string>

namespace qglab {

/// Base for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Invalid input that the caller can fix (bad config, bad parameters).
class ValidationError : public Error {
public:
    using Error::Error;
};

class NegativePowerOnMean : public ValidationError {
public:
    NegativePowerOnMean()
        : ValidationError("negative power of Lambda requested on a field with nonzero mean") {}
};

class ParseError : public ValidationError {
public:
    ParseError(int line, const std::string& what)
        : ValidationError("line " + std::to_string(line) + ": " + what), line_(line) {}
    int line() const noexcept { return line_; }

private:
    int line_;
};

class CorruptSnapshot : public Error {
public:
    /// `check` names the failed check: "magic", "version", "length", "model", "io".
    CorruptSnapshot(std::string check, const std::string& detail)
        : Error("corrupt snapshot (" + check + "): " + detail), check_(std::move(check)) {}
    const std::string& check() const noexcept { return check_; }

private:
    std::string check_;
};

class IoError : public Error {
public:
    using Error::Error;
};

/// Runtime failures that carry the simulation time at which they happened.
class TimedError : public Error {
public:
    TimedError(const std::string& what, double time)
        : Error(what + " (t = " + std::to_string(time) + ")"), time_(time) {}
    double time() const noexcept { return time_; }

private:
    double time_;
};

class UnstableStep : public TimedError {
public:
    using TimedError::TimedError;
};

class NoContraction : public TimedError {
public:
    using TimedError::TimedError;
};

class Violation : public TimedError {
public:
    using TimedError::TimedError;
};

class DegenerateFit : public Error {
public:
    using Error::Error;
};

class ReferenceTooCoarse : public Error {
public:
    using Error::Error;
};

}  // namespace qglab

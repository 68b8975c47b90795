#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace pqc {

struct SourceLoc {
    int line = 0;
    int column = 0;
};

std::string to_string(const SourceLoc& loc);

/// Root of every diagnostic raised by the toolchain. `code()` is a stable
/// identifier such as "ObjectMismatch" or "LinearityViolation".
class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& message)
        : std::runtime_error(message), code_(std::move(code)) {}

    const std::string& code() const noexcept { return code_; }

private:
    std::string code_;
};

class CircuitError : public Error {
public:
    using Error::Error;
};

class AlgebraError : public Error {
public:
    using Error::Error;
};

class GateSpecError : public Error {
public:
    GateSpecError(std::string code, const std::string& message, SourceLoc loc = {})
        : Error(std::move(code), message), loc_(loc) {}
    SourceLoc loc() const noexcept { return loc_; }

private:
    SourceLoc loc_;
};

class ParseError : public Error {
public:
    ParseError(std::string code, const std::string& message, SourceLoc loc)
        : Error(std::move(code), message), loc_(loc) {}
    SourceLoc loc() const noexcept { return loc_; }

private:
    SourceLoc loc_;
};

class TypeError : public Error {
public:
    TypeError(std::string code, std::string rule, const std::string& message, SourceLoc loc)
        : Error(std::move(code), message), rule_(std::move(rule)), loc_(loc) {}
    const std::string& rule() const noexcept { return rule_; }
    SourceLoc loc() const noexcept { return loc_; }

private:
    std::string rule_;
    SourceLoc loc_;
};

class EffectError : public Error {
public:
    EffectError(std::string code, const std::string& message, SourceLoc loc = {})
        : Error(std::move(code), message), loc_(loc) {}
    SourceLoc loc() const noexcept { return loc_; }

private:
    SourceLoc loc_;
};

class EvalError : public Error {
public:
    using Error::Error;
};

} // namespace pqc

#pragma once

#include <stdexcept>
#include <string>

namespace bsig {

struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

struct WidthError : Error {
    explicit WidthError(const std::string& msg) : Error(msg) {}
    WidthError(int expected, int got)
        : Error("expected width " + std::to_string(expected) + ", got " +
                std::to_string(got)) {}
};

struct DomainError : Error {
    explicit DomainError(const std::string& msg) : Error(msg) {}
};

struct NotInOrbit : Error {
    explicit NotInOrbit(const std::string& msg) : Error(msg) {}
};

struct GridMismatch : Error {
    explicit GridMismatch(const std::string& msg) : Error(msg) {}
};

struct EditConflict : Error {
    explicit EditConflict(const std::string& msg) : Error(msg) {}
};

struct RepresentationError : Error {
    explicit RepresentationError(const std::string& msg) : Error(msg) {}
};

struct ConstantSignal : Error {
    explicit ConstantSignal(const std::string& msg) : Error(msg) {}
};

struct HorizonError : Error {
    explicit HorizonError(const std::string& msg) : Error(msg) {}
};

struct WindowError : Error {
    explicit WindowError(const std::string& msg) : Error(msg) {}
};

struct NotEventuallyPeriodic : Error {
    explicit NotEventuallyPeriodic(const std::string& msg) : Error(msg) {}
};

struct ParseError : Error {
    explicit ParseError(const std::string& msg) : Error(msg) {}
};

}

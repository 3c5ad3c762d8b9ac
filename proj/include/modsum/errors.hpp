#pragma once

#include <stdexcept>
#include <string>

namespace modsum {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Spec construction rejected the parameter combination.
struct InvalidSpec : Error {
    using Error::Error;
};

struct EmptyDataWord : Error {
    EmptyDataWord() : Error("data word must contain at least one byte") {}
};

struct WrongFamily : Error {
    explicit WrongFamily(const std::string& what) : Error(what) {}
};

// StreamState was already finalized.
struct StateConsumed : Error {
    StateConsumed() : Error("stream state already finalized") {}
};

struct BadCheckLength : Error {
    explicit BadCheckLength(const std::string& what) : Error(what) {}
};

struct BadFaultPosition : Error {
    explicit BadFaultPosition(const std::string& what) : Error(what) {}
};

struct TooManyPatterns : Error {
    explicit TooManyPatterns(const std::string& what) : Error(what) {}
};

struct EvenModulus : Error {
    explicit EvenModulus(const std::string& what) : Error(what) {}
};

}  // namespace modsum

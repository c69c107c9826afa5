#ifndef BOSC_ERROR_HPP
#define BOSC_ERROR_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace bosc {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Malformed text input. `position` is 1-based (character, or line for line formats).
class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t position)
        : Error(what + " (at position " + std::to_string(position) + ")"), position_(position) {}
    std::size_t position() const noexcept { return position_; }

private:
    std::size_t position_;
};

class BoundExceeded : public Error {
public:
    using Error::Error;
};

class InapplicableAction : public Error {
public:
    using Error::Error;
};

class TooShort : public Error {
public:
    using Error::Error;
};

class NotReduced : public Error {
public:
    using Error::Error;
};

class NotCnf : public Error {
public:
    using Error::Error;
};

class EpsilonLanguage : public Error {
public:
    using Error::Error;
};

class InvalidTree : public Error {
public:
    using Error::Error;
};

} // namespace bosc

#endif

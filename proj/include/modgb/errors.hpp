#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace modgb {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct TooManyVariables : Error {
    using Error::Error;
};
struct DegreeOverflow : Error {
    using Error::Error;
};
struct ZeroInverse : Error {
    using Error::Error;
};
struct NoPrime : Error {
    using Error::Error;
};
struct ZeroInput : Error {
    using Error::Error;
};
struct NonCoprimeModuli : Error {
    using Error::Error;
};
struct EmptyQueue : Error {
    using Error::Error;
};
// Raised when a recorded learning trace does not fit the current mod-p run;
// the caller treats the prime as unlucky for replay and reruns in plain mode.
struct ReplayMismatch : Error {
    using Error::Error;
};
struct PrimeSupplyExhausted : Error {
    using Error::Error;
};

struct ParseError : Error {
    std::size_t line;
    std::size_t column;
    ParseError(std::size_t line_, std::size_t column_, const std::string& what_)
        : Error("parse error at line " + std::to_string(line_) + ", column " +
                std::to_string(column_) + ": " + what_),
          line(line_), column(column_) {}
};

}  // namespace modgb

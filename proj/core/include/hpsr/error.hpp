// SPDX-License-Identifier: Apache-2.0
#ifndef HPSR_ERROR_HPP
#define HPSR_ERROR_HPP

#include <stdexcept>
#include <string>

namespace hpsr {

// Base class for all errors raised by the library.
class Error : public std::runtime_error {
public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Invalid argument or parameter combination (caller bug or bad user input).
class ArgError : public Error {
public:
  explicit ArgError(const std::string& what) : Error(what) {}
};

// Malformed or inconsistent bitstream / file content.
class StreamError : public Error {
public:
  explicit StreamError(const std::string& what) : Error(what) {}
};

// Failure while parsing an input file (PLY). Carries a location hint.
class ParseError : public Error {
public:
  ParseError(const std::string& what, std::size_t where)
    : Error(what + " (at " + std::to_string(where) + ")"), location(where)
  {}
  std::size_t location;
};

}  // namespace hpsr

#endif

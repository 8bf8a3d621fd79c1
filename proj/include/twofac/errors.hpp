#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace twofac {

/// All agents share one position, so the profile has no scale to normalize by.
class DegenerateProfile : public std::domain_error {
 public:
  DegenerateProfile() : std::domain_error("degenerate profile: all agents coincide") {}
};

class InstanceTooLarge : public std::length_error {
 public:
  InstanceTooLarge(std::size_t n, std::size_t limit)
      : std::length_error("instance too large for brute force: n=" + std::to_string(n) +
                          " exceeds " + std::to_string(limit)) {}
};

class InvalidSpec : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class InvalidFamily : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class InvalidEpsilon : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class EmptyProfile : public std::runtime_error {
 public:
  EmptyProfile() : std::runtime_error("profile contains no positions") {}
};

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace twofac

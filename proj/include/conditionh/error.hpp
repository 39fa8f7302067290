#pragma once

#include <stdexcept>
#include <string>

namespace conditionh {

/// Inputs outside an operation's domain (bad lengths, weights, parameters).
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Caller violated a documented precondition of an otherwise valid call.
class PreconditionError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// A construction or cross-check that must succeed did not.
class InternalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed text input (certificate files, transcripts).
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace conditionh

#pragma once

#include <stdexcept>
#include <string>

namespace momtail {

// Root of every failure raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed potential description or argument outside an operation's domain.
class InvalidSpec : public Error {
 public:
  using Error::Error;
};

class NoSuchState : public Error {
 public:
  using Error::Error;
};

class NoBoundState : public Error {
 public:
  using Error::Error;
};

// Iterative kernel (Newton, bisection, shooting) failed to converge.
class NoConvergence : public Error {
 public:
  using Error::Error;
};

class QuadratureBudgetExceeded : public Error {
 public:
  using Error::Error;
};

// The requested momentum moment diverges for this state; a physical outcome.
class DivergentMoment : public Error {
 public:
  using Error::Error;
};

class InsufficientDerivativeDepth : public Error {
 public:
  using Error::Error;
};

// The derivative table and the jump predicted from the potential disagree.
class InconsistentJumps : public Error {
 public:
  using Error::Error;
};

class UnsupportedCase : public Error {
 public:
  using Error::Error;
};

// Sampled data does not follow a single power law (r^2 below threshold).
class NonPowerLaw : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace momtail

#pragma once

#include <stdexcept>
#include <string>

namespace milnor {

// Operand shapes disagree (variable counts, vector lengths).
class ContractError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A mathematical hypothesis of the requested operation is not met.
class PreconditionError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// The evaluation point lies on (or numerically at) the zero set V = f^{-1}(0).
class SingularityError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Every sample was rejected, so a sampled report carries no information.
class DegenerateSampleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class EmptyFiberError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace milnor

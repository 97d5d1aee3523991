#pragma once

#include <stdexcept>
#include <string>

namespace cgw {

// Malformed or out-of-range input (unknown label, bad mask, bad n, ...).
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Input is well-formed but an operation's precondition does not hold.
class PreconditionError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// A geometric decision fell inside the tolerance band.
class MarginalError : public std::runtime_error {
 public:
  MarginalError(const std::string& what, double margin)
      : std::runtime_error(what), margin_(margin) {}
  double margin() const noexcept { return margin_; }

 private:
  double margin_;
};

class NotFoundError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace cgw

#pragma once

#include <stdexcept>
#include <string>

namespace fairdiv {

/// A precondition on an argument was violated (unknown item, bad partition,
/// eps outside (0,1), ...).
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// An exact routine would exceed its configured state or enumeration cap.
class CapacityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed external input (JSON documents, value strings).
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace fairdiv

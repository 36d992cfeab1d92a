#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace hypcox {

// Input that cannot describe a complex or group (duplicate vertex in a face,
// corner array of the wrong length, unparsable JSON...).
class MalformedInput : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A precondition of an operation does not hold for otherwise valid data.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// An explicit cap (element count, ball size, cell count) was exceeded.
class ResourceError : public std::runtime_error {
 public:
  ResourceError(const std::string& what, std::size_t reached)
      : std::runtime_error(what), reached_(reached) {}
  std::size_t reached() const noexcept { return reached_; }

 private:
  std::size_t reached_;
};

// A certificate or cross-check failed. Raised for results that would
// contradict a proven statement; these always indicate a bug or bad input.
class VerificationFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Fixed-width arithmetic overflowed; callers retry with arbitrary precision.
class Overflow : public std::overflow_error {
 public:
  Overflow() : std::overflow_error("integer overflow") {}
};

}  // namespace hypcox

#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace pmcanon {

// Caller broke a documented precondition (shape mismatch, bad index, ...).
class ContractError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Malformed matrix text.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A digit or code that does not fit in [0, p-1] / [0, p^w - 1].
class RangeError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

// Work guard tripped: factorial guard, node budget, shape guard.
class ResourceError : public std::runtime_error {
 public:
  ResourceError(const std::string& what, std::uint64_t progress = 0)
      : std::runtime_error(what), progress_(progress) {}

  // Items produced (or nodes visited) before the guard tripped.
  std::uint64_t progress() const noexcept { return progress_; }

 private:
  std::uint64_t progress_;
};

// Two independent computations that must agree did not.
class IntegrityError : public std::runtime_error {
 public:
  IntegrityError(const std::string& what, std::string first = {},
                 std::string second = {})
      : std::runtime_error(what),
        first_(std::move(first)),
        second_(std::move(second)) {}

  const std::string& first() const noexcept { return first_; }
  const std::string& second() const noexcept { return second_; }

 private:
  std::string first_;
  std::string second_;
};

}  // namespace pmcanon

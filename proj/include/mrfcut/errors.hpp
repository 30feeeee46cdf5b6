#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace mrfcut {

/// Malformed or inconsistent user input (files, flags, shapes).
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Capacity or energy arithmetic left the representable range.
class OverflowError : public std::overflow_error {
 public:
  using std::overflow_error::overflow_error;
};

/// An enumeration or construction exceeded its configured size cap.
class LimitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A solver invariant failed; indicates a bug, never bad data.
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

using Capacity = std::int64_t;

inline Capacity checked_add(Capacity a, Capacity b) {
  Capacity r;
  if (__builtin_add_overflow(a, b, &r)) throw OverflowError("capacity addition overflow");
  return r;
}

inline Capacity checked_sub(Capacity a, Capacity b) {
  Capacity r;
  if (__builtin_sub_overflow(a, b, &r)) throw OverflowError("capacity subtraction overflow");
  return r;
}

inline Capacity checked_mul(Capacity a, Capacity b) {
  Capacity r;
  if (__builtin_mul_overflow(a, b, &r)) throw OverflowError("capacity multiplication overflow");
  return r;
}

}  // namespace mrfcut

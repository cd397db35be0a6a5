#pragma once

#include <stdexcept>
#include <string>

namespace primbase {

/// Malformed or inconsistent caller input (bad file, degree mismatch, ...).
class InputError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// A configured budget (index, enumeration, class count) would be exceeded.
class ResourceError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Operation called on an object in the wrong state (e.g. incomplete inventory).
class StateError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Broken internal invariant. Seeing one of these is a bug.
class InternalError : public std::logic_error {
public:
  using std::logic_error::logic_error;
};

} // namespace primbase

// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>

namespace reeb {

/// Malformed or unreadable input (files, counts, non-finite values).
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Input parsed fine but violates a structural requirement
/// (non-manifold, non-orientable, boundary not extremal, ...).
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An invariant that should hold by construction was broken.
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace reeb

// Copyright 2026 The staticq Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//   http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace staticq {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input: empty alphabet, out-of-range symbol, bad document, ...
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// Checked 64-bit arithmetic would have wrapped.
class OverflowError : public Error {
 public:
  using Error::Error;
};

/// Exhaustive enumeration requested outside the configured guard.
class GuardViolation : public Error {
 public:
  using Error::Error;
};

/// Oracle bindings incompatible with the requested session mode.
class ModeMismatch : public Error {
 public:
  using Error::Error;
};

/// The client used an oracle id the session does not know about.
class InterfaceInconsistency : public Error {
 public:
  using Error::Error;
};

/// The wrapped client made more queries to one oracle than it declared.
class BudgetExceeded : public Error {
 public:
  BudgetExceeded(std::uint32_t oracle, std::uint64_t attempted, std::uint64_t budget)
      : Error("budget exceeded: oracle " + std::to_string(oracle) + " received query #" +
              std::to_string(attempted) + " but declared budget is " + std::to_string(budget)),
        oracle_(oracle),
        attempted_(attempted),
        budget_(budget) {}

  std::uint32_t oracle() const noexcept { return oracle_; }
  std::uint64_t attempted() const noexcept { return attempted_; }
  std::uint64_t budget() const noexcept { return budget_; }

 private:
  std::uint32_t oracle_;
  std::uint64_t attempted_;
  std::uint64_t budget_;
};

/// A PRF-oracle query repeated some h(kappa, x) value of an earlier query.
class FreshnessViolation : public Error {
 public:
  using Error::Error;
};

/// A component KEM rejected its ciphertext.
class KemError : public Error {
 public:
  using Error::Error;
};

}  // namespace staticq

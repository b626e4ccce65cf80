// Copyright 2026 The fovwrs Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>

namespace fovwrs {

enum class ErrorKind {
  kInvalidInput,    // argument violates a documented precondition
  kUndefinedInput,  // argument for which the quantity is mathematically undefined
  kIo,              // file missing or unreadable, or a load contract violation
  kParse,           // malformed text input (scanpath CSV, JSON)
  kConfig,          // invalid run configuration
  kNetwork,         // socket setup failure
  kRuntime,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

}  // namespace fovwrs

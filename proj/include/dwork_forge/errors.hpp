// Copyright 2026 The dwork-forge Authors
// Licensed under the Apache License, Version 2.0, see LICENSE for details.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>

namespace dwf {

enum class ErrorKind {
  NotPrime,
  TooLarge,
  IncompatibleFields,
  NNotDividingQMinus1,
  BadPoint,
  ExactDivisionFailed,
  PrecisionExhausted,
  RootFindingFailed,
  NoSumZeroSet,
  PreconditionViolated,
  SpecialDegreeNotInteger,
  WindowTooSmall,
  Degenerate,
  NoSolution,
  ConfigInvalid,
};

const char* error_kind_name(ErrorKind k);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(error_kind_name(kind)) + ": " + what),
        kind_(kind) {}
  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace dwf

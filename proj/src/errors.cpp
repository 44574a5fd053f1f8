// Copyright 2026 The dwork-forge Authors
// Licensed under the Apache License, Version 2.0, see LICENSE for details.
// SPDX-License-Identifier: Apache-2.0

#include "dwork_forge/errors.hpp"

namespace dwf {

const char* error_kind_name(ErrorKind k) {
  switch (k) {
    case ErrorKind::NotPrime: return "NotPrime";
    case ErrorKind::TooLarge: return "TooLarge";
    case ErrorKind::IncompatibleFields: return "IncompatibleFields";
    case ErrorKind::NNotDividingQMinus1: return "NNotDividingQMinus1";
    case ErrorKind::BadPoint: return "BadPoint";
    case ErrorKind::ExactDivisionFailed: return "ExactDivisionFailed";
    case ErrorKind::PrecisionExhausted: return "PrecisionExhausted";
    case ErrorKind::RootFindingFailed: return "RootFindingFailed";
    case ErrorKind::NoSumZeroSet: return "NoSumZeroSet";
    case ErrorKind::PreconditionViolated: return "PreconditionViolated";
    case ErrorKind::SpecialDegreeNotInteger: return "SpecialDegreeNotInteger";
    case ErrorKind::WindowTooSmall: return "WindowTooSmall";
    case ErrorKind::Degenerate: return "Degenerate";
    case ErrorKind::NoSolution: return "NoSolution";
    case ErrorKind::ConfigInvalid: return "ConfigInvalid";
  }
  return "Unknown";
}

}  // namespace dwf

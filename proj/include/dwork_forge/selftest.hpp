// Copyright 2026 The dwork-forge Authors
// Licensed under the Apache License, Version 2.0, see LICENSE for details.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "dwork_forge/breuil.hpp"
#include "dwork_forge/report.hpp"

namespace dwf {

struct SelftestOptions {
  uint64_t seed = 20260101;
  int lucas_samples = 500;
  int unitary_forms = 200;
};

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  json details;
  double seconds = 0;  // wall time; never serialized
};

inline constexpr int kCriterionCount = 11;

// Pinned tolerances and budgets.
inline constexpr double kDetRelTol = 1e-6;
inline constexpr double kPurityRelTol = 1e-6;
inline constexpr double kTraceBudgetSeconds = 30.0;
inline constexpr double kSlopeSweepBudgetSeconds = 60.0;

CriterionResult run_criterion(int id, const SelftestOptions& opt);
// Empty ids runs 1..kCriterionCount.
std::vector<CriterionResult> run_selftest(const SelftestOptions& opt, std::vector<int> ids = {});
// Deterministic for fixed options: no timings, sorted keys.
json selftest_report(const std::vector<CriterionResult>& results, const SelftestOptions& opt);

struct GenericFrameSummary {
  bool witness_found = false;
  bool witness_infeasible = false;
  int window_classes = 0;
  int window_feasible = 0;
  int roundtrip_classes = 0;
  int roundtrip_feasible = 0;
  int64_t monodromy_vectors = 0;    // candidate y tested against the predicate
  int64_t monodromy_mismatches = 0;
  json report;
};
// Full oracle run on one (s, t) frame with a = b = 1 and d = 1. Monodromy is
// checked on every F-vector over the allowed degrees when there are at most
// max_vectors of them, otherwise on basis vectors only.
GenericFrameSummary generic_frame(const BreuilFrame& frame, const std::vector<int64_t>& s,
                                  const std::vector<int64_t>& t, int64_t max_vectors = 1 << 20);

}  // namespace dwf

// Copyright 2026 The dwork-forge Authors
// Licensed under the Apache License, Version 2.0, see LICENSE for details.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "dwork_forge/finite_field.hpp"

namespace dwf {

/// (p, f, e) together with the coefficient field F = F_{p^f}.
struct BreuilFrame {
  uint32_t p = 0;
  uint32_t f = 0;
  int64_t e = 0;
  Field F;
};
BreuilFrame make_frame(uint32_t p, uint32_t f, int64_t e);

/// Rank-one module M(s; a): phi(e_{i-1}) = (a)_i u^{s_i} e_i, with (a)_0 = a
/// and (a)_i = 1 otherwise.
struct RankOneBK {
  BreuilFrame frame;
  std::vector<int64_t> s;
  FFElem a;
  bool breuil_height_ok = false;  // every s_i in [0, e(p-2)]
};
RankOneBK make_rank_one(const BreuilFrame& frame, std::vector<int64_t> s, FFElem a);

std::vector<mpq_class> alpha_invariants(const std::vector<int64_t>& s, uint32_t p, uint32_t f);
bool hom_exists(const RankOneBK& top, const RankOneBK& bottom);

struct SlopeData {
  std::vector<mpq_class> n;
  std::vector<int64_t> r;
};
SlopeData slope_data(const std::vector<int64_t>& s, const std::vector<int64_t>& t, int64_t e,
                     uint32_t p, uint32_t f);
// p n_{j-1} = n_j + (s_{j-1} - t_{j-1} - e) for all j, and every r_i in [1, p].
bool slope_invariants_hold(const std::vector<int64_t>& s, const std::vector<int64_t>& t,
                           int64_t e, uint32_t p, const SlopeData& sd);

mpz_class floor_q(const mpq_class& x);

// Per-index Laurent coefficients: degree -> coefficient.
using ExtCoeffs = std::vector<std::map<int64_t, FFElem>>;

struct ExtProblem {
  RankOneBK top;     // (s, a)
  RankOneBK bottom;  // (t, b)
  SlopeData slopes;
  bool hom = false;
};
ExtProblem make_ext_problem(const RankOneBK& top, const RankOneBK& bottom);

struct AllowedDegrees {
  std::vector<std::vector<int64_t>> poly;       // {0, ..., s_i - 1}
  std::vector<std::optional<int64_t>> special;  // extra degree at index j, if a hom exists
};
// Throws SpecialDegreeNotInteger if hom is set but some alpha difference is fractional.
AllowedDegrees bk_extension_degrees(const std::vector<int64_t>& s, const std::vector<int64_t>& t,
                                    const BreuilFrame& frame, bool hom);
// Degree set per index with the special term placed at index j (j < 0: none).
std::vector<std::vector<int64_t>> degrees_with_special(const AllowedDegrees& ad, int j);

std::vector<std::vector<int64_t>> breuil_forbidden_degrees(
    const ExtProblem& pb, const std::vector<std::vector<int64_t>>& allowed);

// True iff y has no nonzero coefficient in a forbidden degree.
bool forbidden_predicate(const ExtCoeffs& y, const std::vector<std::vector<int64_t>>& forbidden);

struct MonodromyResult {
  bool feasible = false;
  std::vector<std::vector<FFElem>> mu;  // mu[j][k-1] = coefficient of u^k, k = 1..e-1
};
// Solves the phi/N commutation for mu' in u F[u]/u^e; d is a unit of F.
MonodromyResult solve_monodromy(const ExtProblem& pb, const ExtCoeffs& y, FFElem d);

struct Witness {
  int i = 0;
  int64_t x = 0;
  bool plus_two = false;  // r_i = p branch
};
// Requires sum_j (s_j - t_j - e) < 0 (PreconditionViolated otherwise).
std::optional<Witness> genericity_obstruction(const std::vector<int64_t>& s,
                                              const std::vector<int64_t>& t,
                                              const BreuilFrame& frame);

struct CovResult {
  bool feasible = false;
  int64_t window = 0;          // W actually used
  ExtCoeffs y;                 // Breuil-side coefficients when feasible
  ExtCoeffs lambda;            // change of variables when feasible
};
// Decides whether y' = y + b u^t phi(lambda_{j-1}) - a u^s lambda_j for some y
// supported on `support` and lambda with degrees in [-W, W]. Solves at W and
// 2W and, on disagreement, once more at 4W; throws WindowTooSmall if the last
// two still disagree.
CovResult change_of_variables_solver(const ExtProblem& pb, const ExtCoeffs& y_prime,
                                     const std::vector<std::vector<int64_t>>& support,
                                     int64_t W = 0);
// Single solve at a fixed window (no doubling).
CovResult cov_solve_fixed(const ExtProblem& pb, const ExtCoeffs& y_prime,
                          const std::vector<std::vector<int64_t>>& support, int64_t W);

// y' from a Breuil-side y and a change of variables lambda.
ExtCoeffs apply_change_of_variables(const ExtProblem& pb, const ExtCoeffs& y,
                                    const ExtCoeffs& lambda);

struct ImageWindows {
  std::vector<std::pair<int64_t, int64_t>> ranges;  // inclusive, width e each
  std::optional<std::pair<int, int64_t>> special;   // (index, degree) when chi_1 = chi_2
  int64_t dimension = 0;                            // e f, or e f + 1
};
ImageWindows etale_image_windows(const std::vector<int64_t>& s, const std::vector<int64_t>& t,
                                 const BreuilFrame& frame, bool chi_equal);

struct ChainVerdict {
  bool pass = false;
};
// chain[i] = s(i+1); throws PreconditionViolated if the chain is out of range
// or some step has sum_j (s(i+1)_j - s(i)_j - e) < 0.
ChainVerdict chain_slope_check(const std::vector<std::vector<int64_t>>& chain, int64_t e,
                               uint32_t f);

struct ChainSweep {
  int64_t chains = 0;
  int64_t failures = 0;
};
// Every chain of length d with entries in [0, e(d-1)] meeting the step condition.
ChainSweep chain_sweep(int d, int64_t e, uint32_t f);

}  // namespace dwf

// Copyright 2026 The dwork-forge Authors
// Licensed under the Apache License, Version 2.0, see LICENSE for details.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "dwork_forge/finite_field.hpp"
#include "dwork_forge/hypergeometric.hpp"
#include "dwork_forge/lambda_prime.hpp"

namespace dwf {

/// Ordinarity test data at a prime l not dividing N.
///
/// k(v) = F_{q_v} is the residue field of lambda, so the identification of the
/// place v with lambda is the choice of zeta -> omega^tau made there.
struct OrdinaryTest {
  HGParams params;
  uint32_t l = 0;
  uint64_t q_v = 0;
  int64_t tau = 1;
  std::vector<int64_t> c;         // character exponents, each in [1, q_v - 2]
  std::vector<uint32_t> u_coeffs; // u(T) over F_l, low first, trailing zeros trimmed
  LambdaPrime lambda;
  Field kv;  // = lambda.residue
};

std::vector<int64_t> exponents_c(const HGParams& params, uint32_t l, int64_t tau = 1);

// u(T) = sum_r (-1)^{n r} prod_i C(c_i, r) T^r mod l, with exact binomials.
std::vector<uint32_t> u_poly(const std::vector<int64_t>& c, int n, uint32_t l);

OrdinaryTest make_ordinary_test(const HGParams& params, uint32_t l, int64_t tau = 1);

// Pointwise check that chi_m followed by reduction is z -> z^{c_i} on the
// N-torsion of k(v)^x.
bool exponents_consistent(const OrdinaryTest& test);

// k(v) itself for d = 1, else its compatible degree-d extension.
Field ordinary_field(const OrdinaryTest& test, uint32_t d);

FFElem eval_u(const OrdinaryTest& test, const FFElem& x);

// dlogs of x in k \ {0, 1} with u(x) != 0, k = ordinary_field(test, d).
std::vector<int64_t> ordinary_locus(const OrdinaryTest& test, const Field& k);

struct NormIdentityRow {
  int64_t x_dlog = 0;
  uint32_t u_code = 0;          // u(x) in k
  uint32_t sum_mod_lambda = 0;  // character sum (no sign prefactor) mod lambda, in k(v)
  uint32_t trace_mod_lambda = 0;  // (-1)^{n-1} times the above
  uint32_t norm_u = 0;          // N_{k/k(v)}(u(x))
  bool identity_ok = false;     // sum = (-1)^{n-1} N(u(x)), i.e. trace = N(u(x))
};

struct NormIdentityReport {
  std::vector<NormIdentityRow> rows;
  int failures = 0;
};

// Every x in k \ {0, 1}; traces from the convolution engine, optionally
// cross-checked against direct summation.
NormIdentityReport verify_norm_identity(const OrdinaryTest& test, const Field& k,
                                        bool cross_check_naive = false);

// C(c~, r) = prod_j C(c, r_j) mod l with c~ = c (q_v^d - 1)/(q_v - 1),
// r = sum_j r_j q_v^j.
bool lucas_instance(int64_t c, uint64_t q_v, const std::vector<int64_t>& r_digits, uint32_t l);

// samples random instances with q_v = l, d in [1, d_max].
bool lucas_check(uint32_t l, int d_max, int samples, std::mt19937_64& rng, int* failures = nullptr);

struct UnitRootReport {
  bool applicable = false;  // u(x) != 0
  bool min_slope_zero = false;
  bool fully_ordinary = false;  // slopes are exactly 0, 1, ..., n-1
  bool pass = true;             // the hard clause
};

// rec must carry slopes at test.lambda; u_at_x is u(x) in the point's field.
UnitRootReport unit_root_check(const OrdinaryTest& test, const CharPolyRecord& rec,
                               const FFElem& u_at_x);

}  // namespace dwf

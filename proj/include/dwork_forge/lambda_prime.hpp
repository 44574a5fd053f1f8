// Copyright 2026 The dwork-forge Authors
// Licensed under the Apache License, Version 2.0, see LICENSE for details.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <gmpxx.h>

#include <climits>
#include <cstdint>
#include <vector>

#include "dwork_forge/cyclotomic.hpp"
#include "dwork_forge/finite_field.hpp"

namespace dwf {

inline constexpr int kValInfinity = INT_MAX;
inline constexpr int kDefaultHenselPrecision = 64;

/// A prime of Z[zeta_N] above l, given by one Hensel-lifted root of Phi_N.
///
/// The root lives in the Galois ring (Z/l^M)[y]/(F(y)) where F lifts the
/// defining polynomial of the residue field F_{l^d}; for d = 1 this is just an
/// integer mod l^M. Its reduction is omega^tau with omega = g^{(l^d-1)/N}.
struct LambdaPrime {
  int N = 0;
  uint32_t l = 0;
  uint32_t d = 0;  // order of l mod N
  int M = 0;       // Hensel precision
  int64_t tau = 1;
  Field residue;   // F_{l^d}
  mpz_class modulus;  // l^M
  std::vector<mpz_class> modpoly;      // monic, low first, degree d
  std::vector<mpz_class> lifted_root;  // d coordinates
};

LambdaPrime make_lambda(int N, uint32_t l, int M = kDefaultHenselPrecision, int64_t tau = 1,
                        uint64_t field_seed = 0);
LambdaPrime make_lambda(int N, const Field& residue, int M = kDefaultHenselPrecision,
                        int64_t tau = 1);
LambdaPrime with_precision(const LambdaPrime& lam, int M);

// Image of zeta_N in the residue field.
FFElem zeta_image(const LambdaPrime& lam);

FFElem reduce_mod_lambda(const CyclotomicInt& a, const LambdaPrime& lam);

// lambda-adic valuation; kValInfinity for a = 0. Throws PrecisionExhausted
// when the value vanishes to the working precision.
int val_lambda(const CyclotomicInt& a, const LambdaPrime& lam);

// As val_lambda, doubling the precision on PrecisionExhausted (up to 2^14).
int val_lambda_auto(const CyclotomicInt& a, const LambdaPrime& lam);

// Residual check: Phi_N(lifted_root) = 0 mod l^M.
bool lambda_root_ok(const LambdaPrime& lam);

}  // namespace dwf

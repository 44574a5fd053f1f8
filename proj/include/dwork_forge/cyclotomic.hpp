// Copyright 2026 The dwork-forge Authors
// Licensed under the Apache License, Version 2.0, see LICENSE for details.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <gmpxx.h>

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

namespace dwf {

// Coefficients of the N-th cyclotomic polynomial, low degree first.
// Cached per N; the cache is only ever appended to.
const std::vector<int64_t>& cyclotomic_poly(int N);

int euler_phi(int N);

/// Element of Z[zeta_N] in the power basis 1, zeta, ..., zeta^{phi(N)-1}.
class CyclotomicInt {
 public:
  CyclotomicInt() = default;
  explicit CyclotomicInt(int N);
  CyclotomicInt(int N, std::vector<mpz_class> coeffs);

  static CyclotomicInt from_int(int N, const mpz_class& a);
  static CyclotomicInt zeta_pow(int N, int64_t j);
  // sum_j counts[j] * zeta^j for a length-N count vector
  static CyclotomicInt from_group_ring(int N, const std::vector<int64_t>& counts);

  int modulus() const { return N_; }
  const std::vector<mpz_class>& coeffs() const { return c_; }
  bool is_zero() const;
  bool is_rational() const;

  CyclotomicInt operator+(const CyclotomicInt& o) const;
  CyclotomicInt operator-(const CyclotomicInt& o) const;
  CyclotomicInt operator-() const;
  CyclotomicInt operator*(const CyclotomicInt& o) const;
  CyclotomicInt operator*(const mpz_class& s) const;
  CyclotomicInt& operator+=(const CyclotomicInt& o);
  bool operator==(const CyclotomicInt& o) const;
  bool operator!=(const CyclotomicInt& o) const { return !(*this == o); }

  // Throws ExactDivisionFailed unless every coordinate is divisible.
  CyclotomicInt exact_div(const mpz_class& d) const;

  std::string to_string() const;

 private:
  int N_ = 0;
  std::vector<mpz_class> c_;
};

CyclotomicInt conj(const CyclotomicInt& a);

// Image under zeta -> exp(2 pi i root_index / N).
std::complex<double> embed_complex(const CyclotomicInt& a, int root_index);

// Root indices in [1, N) coprime to N (all embeddings up to none missing).
std::vector<int> embedding_indices(int N);

}  // namespace dwf

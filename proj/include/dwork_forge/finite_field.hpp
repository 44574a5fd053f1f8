// Copyright 2026 The dwork-forge Authors
// Licensed under the Apache License, Version 2.0, see LICENSE for details.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "dwork_forge/cyclotomic.hpp"

namespace dwf {

class FieldDesc;
using Field = std::shared_ptr<const FieldDesc>;

// Table mode limit for field_make.
inline constexpr uint64_t kMaxTableField = uint64_t{1} << 20;

bool is_prime(uint64_t n);
uint64_t ipow(uint64_t b, unsigned e);
// Multiplicative order of a mod n (gcd(a, n) = 1).
uint64_t mult_order(uint64_t a, uint64_t n);

/// Element of a finite field in discrete-log form: zero, or g^k.
struct FFElem {
  const FieldDesc* field = nullptr;
  int64_t k = -1;  // -1 encodes zero

  bool is_zero() const { return k < 0; }
  bool operator==(const FFElem& o) const { return field == o.field && k == o.k; }
  bool operator!=(const FFElem& o) const { return !(*this == o); }
};

/// F_{p^f} with a fixed generator, exp/log tables and a Zech table.
///
/// Elements also have a "code": the coefficient vector in the polynomial
/// basis 1, x, ..., x^{f-1}, packed base p (coefficient of x^i is digit i).
class FieldDesc {
 public:
  uint32_t p() const { return p_; }
  uint32_t f() const { return f_; }
  uint64_t q() const { return q_; }
  // defining polynomial over F_p, monic, low degree first
  const std::vector<uint32_t>& defining_poly() const { return poly_; }
  // Subfield this field was built over (null for fields from field_make).
  const Field& base() const { return base_; }
  uint32_t degree_over_base() const { return deg_base_; }

  FFElem zero() const { return {this, -1}; }
  FFElem one() const { return {this, 0}; }
  FFElem gen() const { return {this, q_ > 2 ? 1 : 0}; }
  FFElem from_dlog(int64_t k) const;
  FFElem from_code(uint32_t code) const;
  FFElem from_int(int64_t a) const;  // image of an integer in the prime field
  uint32_t code(const FFElem& x) const;

  FFElem add(const FFElem& a, const FFElem& b) const;
  FFElem sub(const FFElem& a, const FFElem& b) const;
  FFElem neg(const FFElem& a) const;
  FFElem mul(const FFElem& a, const FFElem& b) const;
  FFElem div(const FFElem& a, const FFElem& b) const;
  FFElem inv(const FFElem& a) const;
  FFElem pow(const FFElem& a, int64_t e) const;

  // dlog(1 - g^k), or -1 when g^k = 1
  int64_t one_minus(int64_t k) const { return zech_[k]; }

  // Polynomial-basis arithmetic on codes, independent of the log tables.
  uint32_t code_add(uint32_t a, uint32_t b) const;
  uint32_t code_sub(uint32_t a, uint32_t b) const;
  uint32_t code_mul(uint32_t a, uint32_t b) const;
  uint32_t code_pow(uint32_t a, uint64_t e) const;

  // Embedding of base() into this field: g_base^k -> g^{k (q-1)/(q_base-1)}.
  FFElem embed_from_base(const FFElem& x) const;
  // Norm to base(): x^{1 + q_b + ... + q_b^{d-1}}.
  FFElem norm_to_base(const FFElem& x) const;

  bool contains(const FFElem& x) const { return x.field == this; }

 private:
  friend Field field_make(uint32_t, uint32_t, uint64_t);
  friend Field field_extension(const Field&, uint32_t, uint64_t);
  FieldDesc() = default;
  void build_tables_from_exp();

  uint32_t p_ = 0, f_ = 0;
  uint64_t q_ = 0;
  std::vector<uint32_t> poly_;
  std::vector<uint32_t> exp_;  // k -> code
  std::vector<int32_t> log_;   // code -> k (-1 for zero)
  std::vector<int32_t> zech_;  // k -> dlog(1 - g^k)
  Field base_;
  uint32_t deg_base_ = 1;
};

// F_{p^f}; seed picks among primitive defining polynomials in enumeration order
// (f = 1: among primitive roots in increasing order). Throws NotPrime, TooLarge.
Field field_make(uint32_t p, uint32_t f, uint64_t seed = 0);

// Degree-d extension of base whose generator G satisfies
// G^{(Q-1)/(q-1)} = g_base, so norms and N-torsion line up with base.
Field field_extension(const Field& base, uint32_t d, uint64_t seed = 0);

// Norm from x's field down to its recorded base of relative degree d.
// Throws IncompatibleFields if x's field is not a degree-d extension.
FFElem norm_to_subfield(const FFElem& x, uint32_t d);

// Exponent j with chi_m(y) = zeta_N^j, or -1 for y = 0.
int64_t char_exponent(int N, int64_t m, const FFElem& y);

// chi_m(y) where g^{(q-1)/N} -> zeta_N; chi_m(0) = 0.
CyclotomicInt char_value(int N, int64_t m, const FFElem& y);

}  // namespace dwf

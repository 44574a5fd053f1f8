// Copyright 2026 The dwork-forge Authors
// Licensed under the Apache License, Version 2.0, see LICENSE for details.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <gmpxx.h>

#include <complex>
#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "dwork_forge/cyclotomic.hpp"
#include "dwork_forge/finite_field.hpp"
#include "dwork_forge/lambda_prime.hpp"

namespace dwf {

/// Hypergeometric datum: N, rank n, and the character exponents R.
struct HGParams {
  int N = 0;
  int n = 0;
  std::vector<int> R;
  bool sum_zero = false;
  bool trivial_stabilizer = false;
  bool warning = false;  // select_chi fell back to a set with nontrivial stabilizer
};

HGParams make_hg_params(int N, std::vector<int> R);
HGParams select_chi(int N, int n);

// Sign s with prod(eigenvalues) = s * q^{n(n-1)/2} on sum-zero data.
// Fixed from calibrate_det_sign(); see README.
inline constexpr int kDetSign = +1;

// Fields q^d above this use the functional equation instead of summation.
inline constexpr uint64_t kFullScanLimit = uint64_t{1} << 16;

// (-1)^{n-1} sum over x_1...x_n = x of prod chi_{m_i}(1 - x_i), by direct
// enumeration with polynomial-basis arithmetic. Throws BadPoint for x in {0,1}.
CyclotomicInt trace_naive(const HGParams& params, const FFElem& x);

// Same sum without the (-1)^{n-1} prefactor.
CyclotomicInt char_sum_naive(const HGParams& params, const FFElem& x);

/// Precomputed (n-1)-fold multiplicative convolution over k^x, indexed by
/// discrete log and stored as counts in Z[C_N]; evaluates single points in
/// O(qN).
class TraceEngine {
 public:
  TraceEngine(const HGParams& params, Field k);
  const Field& field() const { return k_; }
  // counts[j] = number of tuples contributing zeta^j, before the sign
  std::vector<int64_t> raw_counts(int64_t x_dlog) const;
  CyclotomicInt char_sum(int64_t x_dlog) const;
  CyclotomicInt trace(int64_t x_dlog) const;

 private:
  HGParams params_;
  Field k_;
  uint64_t m_ = 0;                 // q - 1
  std::vector<int32_t> last_;      // chi exponent of 1 - y for the last factor
  std::vector<int64_t> partial_;   // m_ x N counts of the first n-1 factors
};

// Traces at every x in k \ {0, 1}, keyed by dlog(x).
std::map<int64_t, CyclotomicInt> trace_all_fast(const HGParams& params, const Field& k);

/// k together with compatible extensions F_{q^d}, built up front.
class FieldTower {
 public:
  FieldTower(Field k, uint32_t dmax, uint64_t limit = kFullScanLimit);
  const Field& base() const { return levels_[0]; }
  // null when q^d exceeds the limit
  const Field& at(uint32_t d) const { return levels_.at(d - 1); }
  uint32_t dmax() const { return static_cast<uint32_t>(levels_.size()); }

 private:
  std::vector<Field> levels_;
};

struct CharPolyRecord {
  HGParams params;
  uint64_t q = 0;
  int64_t x_dlog = 0;
  std::vector<CyclotomicInt> traces;  // Frob^d traces, d = 1..n
  std::vector<CyclotomicInt> coeffs;  // coeffs[i] multiplies X^i; coeffs[n] = 1
  int direct_traces = 0;  // traces obtained by summation; the rest by functional equation
  std::optional<std::vector<mpq_class>> slopes;
};

// Power sums -> det(X - F) coefficients (low first). Division is exact or
// throws ExactDivisionFailed.
std::vector<CyclotomicInt> coeffs_from_traces(const std::vector<CyclotomicInt>& p, int N);
std::vector<CyclotomicInt> traces_from_coeffs(const std::vector<CyclotomicInt>& coeffs);

// Characteristic polynomials at several points of tower.base() sharing one
// convolution per field level.
std::vector<CharPolyRecord> char_poly_batch(const HGParams& params, const FieldTower& tower,
                                            const std::vector<int64_t>& x_dlogs);
CharPolyRecord char_poly(const HGParams& params, const FieldTower& tower, const FFElem& x);

struct DetReport {
  bool abs_pass = false;
  double max_rel_err = 0;
  bool signed_applicable = false;  // sum-zero data only
  bool signed_pass = false;
  int observed_sign = 0;           // +1, -1, or 0 if not +-q^{n(n-1)/2}
};
DetReport verify_det(const CharPolyRecord& rec, double tol = 1e-6);

struct PurityReport {
  bool pass = false;
  double max_rel_dev = 0;
  std::vector<std::complex<double>> roots;  // in the embedding zeta -> e^{2 pi i/N}
};
// Throws RootFindingFailed if the eigen-solver does not converge.
PurityReport verify_purity(const CharPolyRecord& rec, double tol = 1e-6);

// Root valuations at lam, ascending, divided by log_l(q) when q is a power of l.
std::vector<mpq_class> newton_polygon(const CharPolyRecord& rec, const LambdaPrime& lam);
// Same on raw coefficients (low first), normalized by norm.
std::vector<mpq_class> newton_polygon_coeffs(const std::vector<CyclotomicInt>& coeffs,
                                             const LambdaPrime& lam, int norm);

// Sign observed on the N=3, n=2, q=7 sweep (0 if inconsistent).
int calibrate_det_sign();

}  // namespace dwf

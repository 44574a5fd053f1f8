// Copyright 2026 The dwork-forge Authors
// Licensed under the Apache License, Version 2.0, see LICENSE for details.
// SPDX-License-Identifier: Apache-2.0

#include "dwork_forge/ordinarity.hpp"

#include <algorithm>
#include <string>

#include "dwork_forge/errors.hpp"
#include "dwork_forge/parallel.hpp"

namespace dwf {

namespace {

uint32_t mod_l(const mpz_class& a, uint32_t l) {
  mpz_class r = a % l;
  if (r < 0) r += l;
  return static_cast<uint32_t>(r.get_ui());
}

mpz_class binom(uint64_t n, uint64_t k) {
  mpz_class r;
  if (k > n) return 0;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

}  // namespace

std::vector<int64_t> exponents_c(const HGParams& params, uint32_t l, int64_t tau) {
  if (params.N % static_cast<int>(l) == 0) throw Error(ErrorKind::ConfigInvalid, "l divides N");
  uint64_t d = mult_order(l, params.N);
  uint64_t qv = ipow(l, static_cast<unsigned>(d));
  int64_t step = static_cast<int64_t>((qv - 1) / params.N);
  std::vector<int64_t> c;
  for (int m : params.R) {
    int64_t e = ((tau * m) % params.N + params.N) % params.N;
    c.push_back(step * e);
  }
  return c;
}

std::vector<uint32_t> u_poly(const std::vector<int64_t>& c, int n, uint32_t l) {
  if (c.empty()) throw Error(ErrorKind::ConfigInvalid, "empty exponent list");
  int64_t rmax = *std::min_element(c.begin(), c.end());
  if (rmax < 1) throw Error(ErrorKind::PreconditionViolated, "exponents must be positive");
  std::vector<uint32_t> u;
  for (int64_t r = 0; r <= rmax; ++r) {
    mpz_class prod = 1;
    for (int64_t ci : c) prod *= binom(static_cast<uint64_t>(ci), static_cast<uint64_t>(r));
    if ((static_cast<int64_t>(n) * r) % 2 == 1) prod = -prod;
    u.push_back(mod_l(prod, l));
  }
  while (u.size() > 1 && u.back() == 0) u.pop_back();
  return u;
}

OrdinaryTest make_ordinary_test(const HGParams& params, uint32_t l, int64_t tau) {
  OrdinaryTest t;
  t.params = params;
  t.l = l;
  t.tau = tau;
  t.lambda = make_lambda(params.N, l, kDefaultHenselPrecision, tau);
  t.kv = t.lambda.residue;
  t.q_v = t.kv->q();
  t.c = exponents_c(params, l, tau);
  for (int64_t ci : t.c)
    if (ci < 1 || ci > static_cast<int64_t>(t.q_v) - 2)
      throw Error(ErrorKind::ConfigInvalid, "exponent c_i outside [1, q_v - 2]");
  t.u_coeffs = u_poly(t.c, params.n, l);
  return t;
}

bool exponents_consistent(const OrdinaryTest& test) {
  const FieldDesc& F = *test.kv;
  const int N = test.params.N;
  FFElem omega = F.from_dlog(static_cast<int64_t>((F.q() - 1) / N));
  for (int j = 0; j < N; ++j) {
    FFElem z = F.pow(omega, j);
    for (size_t i = 0; i < test.c.size(); ++i) {
      FFElem lhs = reduce_mod_lambda(char_value(N, test.params.R[i], z), test.lambda);
      if (lhs != F.pow(z, test.c[i])) return false;
    }
  }
  return true;
}

Field ordinary_field(const OrdinaryTest& test, uint32_t d) {
  return d == 1 ? test.kv : field_extension(test.kv, d);
}

FFElem eval_u(const OrdinaryTest& test, const FFElem& x) {
  const FieldDesc& k = *x.field;
  FFElem acc = k.zero();
  for (size_t i = test.u_coeffs.size(); i-- > 0;)
    acc = k.add(k.mul(acc, x), k.from_int(test.u_coeffs[i]));
  return acc;
}

std::vector<int64_t> ordinary_locus(const OrdinaryTest& test, const Field& k) {
  std::vector<int64_t> out;
  for (int64_t t = 1; t < static_cast<int64_t>(k->q() - 1); ++t)
    if (!eval_u(test, k->from_dlog(t)).is_zero()) out.push_back(t);
  return out;
}

NormIdentityReport verify_norm_identity(const OrdinaryTest& test, const Field& k,
                                        bool cross_check_naive) {
  if (k != test.kv && k->base() != test.kv)
    throw Error(ErrorKind::IncompatibleFields, "point field must be k(v) or an extension of it");
  const FieldDesc& kv = *test.kv;
  TraceEngine eng(test.params, k);
  const int64_t m = static_cast<int64_t>(k->q() - 1);
  const bool even = test.params.n % 2 == 0;
  auto rows = parallel_map(static_cast<size_t>(std::max<int64_t>(m - 1, 0)), [&](size_t i) {
    NormIdentityRow row;
    row.x_dlog = static_cast<int64_t>(i) + 1;
    FFElem x = k->from_dlog(row.x_dlog);
    CyclotomicInt s = eng.char_sum(row.x_dlog);
    if (cross_check_naive && s != char_sum_naive(test.params, x))
      throw Error(ErrorKind::ConfigInvalid, "convolution disagrees with direct summation");
    FFElem sbar = reduce_mod_lambda(s, test.lambda);
    FFElem tbar = even ? kv.neg(sbar) : sbar;
    FFElem u = eval_u(test, x);
    FFElem nu = (k == test.kv) ? u : k->norm_to_base(u);
    row.u_code = k->code(u);
    row.sum_mod_lambda = kv.code(sbar);
    row.trace_mod_lambda = kv.code(tbar);
    row.norm_u = kv.code(nu);
    row.identity_ok = sbar == (even ? kv.neg(nu) : nu);
    return row;
  });
  NormIdentityReport rep;
  rep.rows = std::move(rows);
  for (const auto& r : rep.rows)
    if (!r.identity_ok) ++rep.failures;
  return rep;
}

bool lucas_instance(int64_t c, uint64_t q_v, const std::vector<int64_t>& r_digits, uint32_t l) {
  const size_t d = r_digits.size();
  mpz_class qd, qv(static_cast<unsigned long>(q_v));
  mpz_pow_ui(qd.get_mpz_t(), qv.get_mpz_t(), d);
  mpz_class ct = mpz_class(static_cast<long>(c)) * (qd - 1) / (qv - 1);
  mpz_class r = 0, w = 1;
  for (int64_t rj : r_digits) {
    r += w * static_cast<long>(rj);
    w *= qv;
  }
  mpz_class lhs;
  mpz_bin_ui(lhs.get_mpz_t(), ct.get_mpz_t(), r.get_ui());
  mpz_class rhs = 1;
  for (int64_t rj : r_digits) rhs *= binom(static_cast<uint64_t>(c), static_cast<uint64_t>(rj));
  return mod_l(lhs, l) == mod_l(rhs, l);
}

bool lucas_check(uint32_t l, int d_max, int samples, std::mt19937_64& rng, int* failures) {
  std::uniform_int_distribution<int64_t> cdist(1, static_cast<int64_t>(l) - 2);
  std::uniform_int_distribution<int> ddist(1, d_max);
  std::uniform_int_distribution<int64_t> rdist(0, static_cast<int64_t>(l) - 2);
  int bad = 0;
  for (int s = 0; s < samples; ++s) {
    int64_t c = cdist(rng);
    int d = ddist(rng);
    std::vector<int64_t> r(d);
    for (auto& x : r) x = rdist(rng);
    if (!lucas_instance(c, l, r, l)) ++bad;
  }
  if (failures) *failures = bad;
  return bad == 0;
}

UnitRootReport unit_root_check(const OrdinaryTest& test, const CharPolyRecord& rec,
                               const FFElem& u_at_x) {
  if (!rec.slopes) throw Error(ErrorKind::PreconditionViolated, "record has no slopes");
  UnitRootReport r;
  const auto& s = *rec.slopes;
  r.min_slope_zero = !s.empty() && s.front() == 0;
  r.fully_ordinary = static_cast<int>(s.size()) == test.params.n;
  for (size_t i = 0; i < s.size() && r.fully_ordinary; ++i)
    if (s[i] != static_cast<long>(i)) r.fully_ordinary = false;
  r.applicable = !u_at_x.is_zero();
  r.pass = !r.applicable || r.min_slope_zero;
  return r;
}

}  // namespace dwf

// Copyright 2026 The dwork-forge Authors
// Licensed under the Apache License, Version 2.0, see LICENSE for details.
// SPDX-License-Identifier: Apache-2.0

#include "dwork_forge/lambda_prime.hpp"

#include <numeric>
#include <string>

#include "dwork_forge/errors.hpp"

namespace dwf {

namespace {

using GR = std::vector<mpz_class>;

struct Ring {
  const std::vector<mpz_class>& F;  // monic
  const mpz_class& mod;
  size_t d;

  void norm(GR& a) const {
    for (auto& x : a) {
      x %= mod;
      if (x < 0) x += mod;
    }
  }
  GR mul(const GR& a, const GR& b) const {
    std::vector<mpz_class> z(2 * d - 1);
    for (size_t i = 0; i < d; ++i) {
      if (a[i] == 0) continue;
      for (size_t j = 0; j < d; ++j) z[i + j] += a[i] * b[j];
    }
    for (size_t i = 2 * d - 1; i-- > d;) {
      if (z[i] == 0) continue;
      mpz_class c = z[i];
      for (size_t j = 0; j < d; ++j) z[i - d + j] -= c * F[j];
      z[i] = 0;
    }
    GR out(z.begin(), z.begin() + d);
    norm(out);
    return out;
  }
  GR add(const GR& a, const GR& b) const {
    GR out(d);
    for (size_t i = 0; i < d; ++i) out[i] = a[i] + b[i];
    norm(out);
    return out;
  }
  GR scalar(const mpz_class& s) const {
    GR out(d);
    out[0] = s;
    norm(out);
    return out;
  }
  GR eval_int_poly(const std::vector<int64_t>& c, const GR& r) const {
    GR acc(d);
    for (size_t i = c.size(); i-- > 0;) acc = add(mul(acc, r), scalar(mpz_class(static_cast<long>(c[i]))));
    return acc;
  }
};

GR code_to_gr(uint32_t code, uint32_t l, size_t d) {
  GR out(d);
  for (size_t i = 0; i < d; ++i) {
    out[i] = code % l;
    code /= l;
  }
  return out;
}

uint32_t gr_to_code(const GR& a, uint32_t l) {
  uint32_t c = 0;
  for (size_t i = a.size(); i-- > 0;) {
    mpz_class r = a[i] % l;
    if (r < 0) r += l;
    c = c * l + static_cast<uint32_t>(r.get_ui());
  }
  return c;
}

// inverse of a unit of the Galois ring
GR gr_inverse(const Ring& R, const GR& a, const Field& res, uint32_t l) {
  FFElem abar = res->from_code(gr_to_code(a, l));
  if (abar.is_zero()) throw Error(ErrorKind::ConfigInvalid, "inverting a non-unit");
  GR x = code_to_gr(res->code(res->inv(abar)), l, R.d);
  GR two = R.scalar(2);
  for (int prec = 1; prec < 1 << 20; prec *= 2) {
    GR ax = R.mul(a, x);
    for (auto& c : ax) c = -c;
    x = R.mul(x, R.add(two, ax));
    mpz_class lp;
    mpz_ui_pow_ui(lp.get_mpz_t(), l, static_cast<unsigned long>(prec));
    if (lp >= R.mod) break;
  }
  return x;
}

std::vector<int64_t> derivative(const std::vector<int64_t>& c) {
  std::vector<int64_t> out;
  for (size_t i = 1; i < c.size(); ++i) out.push_back(c[i] * static_cast<int64_t>(i));
  return out;
}

int vl(mpz_class x, uint32_t l) {
  int v = 0;
  while (x % l == 0) {
    x /= l;
    ++v;
  }
  return v;
}

}  // namespace

LambdaPrime make_lambda(int N, uint32_t l, int M, int64_t tau, uint64_t field_seed) {
  if (!is_prime(l)) throw Error(ErrorKind::NotPrime, std::to_string(l) + " is not prime");
  if (N % static_cast<int>(l) == 0 && N > 1)
    throw Error(ErrorKind::ConfigInvalid, "l divides N");
  uint32_t d = static_cast<uint32_t>(mult_order(l, N));
  return make_lambda(N, field_make(l, d, field_seed), M, tau);
}

LambdaPrime make_lambda(int N, const Field& residue, int M, int64_t tau) {
  if (M < 1) throw Error(ErrorKind::ConfigInvalid, "precision must be positive");
  if (std::gcd<int64_t>(tau, N) != 1) throw Error(ErrorKind::ConfigInvalid, "tau must be a unit mod N");
  if ((residue->q() - 1) % N != 0)
    throw Error(ErrorKind::NNotDividingQMinus1, "residue field lacks N-th roots of unity");
  LambdaPrime lam;
  lam.N = N;
  lam.l = residue->p();
  lam.d = residue->f();
  lam.M = M;
  lam.tau = tau;
  lam.residue = residue;
  mpz_ui_pow_ui(lam.modulus.get_mpz_t(), lam.l, static_cast<unsigned long>(M));
  for (uint32_t c : residue->defining_poly()) lam.modpoly.emplace_back(c);
  Ring R{lam.modpoly, lam.modulus, lam.d};
  FFElem omega = zeta_image(lam);
  GR r = code_to_gr(residue->code(omega), lam.l, lam.d);
  const auto& phi = cyclotomic_poly(N);
  auto dphi = derivative(phi);
  // Newton: each step doubles the l-adic precision
  for (int prec = 1;; prec *= 2) {
    GR fr = R.eval_int_poly(phi, r);
    GR inv = gr_inverse(R, R.eval_int_poly(dphi, r), residue, lam.l);
    GR step = R.mul(fr, inv);
    for (size_t i = 0; i < lam.d; ++i) r[i] -= step[i];
    R.norm(r);
    if (prec >= M) break;
  }
  lam.lifted_root = r;
  if (!lambda_root_ok(lam)) throw Error(ErrorKind::ConfigInvalid, "Hensel lifting failed");
  return lam;
}

LambdaPrime with_precision(const LambdaPrime& lam, int M) {
  return make_lambda(lam.N, lam.residue, M, lam.tau);
}

FFElem zeta_image(const LambdaPrime& lam) {
  const auto& F = *lam.residue;
  int64_t step = static_cast<int64_t>((F.q() - 1) / lam.N);
  return F.from_dlog(step * lam.tau);
}

bool lambda_root_ok(const LambdaPrime& lam) {
  Ring R{lam.modpoly, lam.modulus, lam.d};
  GR v = R.eval_int_poly(cyclotomic_poly(lam.N), lam.lifted_root);
  for (auto& c : v)
    if (c != 0) return false;
  return true;
}

FFElem reduce_mod_lambda(const CyclotomicInt& a, const LambdaPrime& lam) {
  if (a.modulus() != lam.N) throw Error(ErrorKind::ConfigInvalid, "modulus mismatch");
  const auto& F = *lam.residue;
  FFElem z = zeta_image(lam);
  FFElem acc = F.zero();
  const auto& c = a.coeffs();
  for (size_t i = c.size(); i-- > 0;) {
    mpz_class r = c[i] % lam.l;
    if (r < 0) r += lam.l;
    acc = F.add(F.mul(acc, z), F.from_int(static_cast<int64_t>(r.get_si())));
  }
  return acc;
}

int val_lambda(const CyclotomicInt& a, const LambdaPrime& lam) {
  if (a.modulus() != lam.N) throw Error(ErrorKind::ConfigInvalid, "modulus mismatch");
  if (a.is_zero()) return kValInfinity;
  Ring R{lam.modpoly, lam.modulus, lam.d};
  GR acc(lam.d);
  const auto& c = a.coeffs();
  for (size_t i = c.size(); i-- > 0;) {
    acc = R.mul(acc, lam.lifted_root);
    GR s = R.scalar(c[i]);
    acc = R.add(acc, s);
  }
  int best = kValInfinity;
  for (auto& x : acc)
    if (x != 0) best = std::min(best, vl(x, lam.l));
  if (best == kValInfinity)
    throw Error(ErrorKind::PrecisionExhausted,
                "valuation at least " + std::to_string(lam.M));
  return best;
}

int val_lambda_auto(const CyclotomicInt& a, const LambdaPrime& lam) {
  LambdaPrime cur = lam;
  for (;;) {
    try {
      return val_lambda(a, cur);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::PrecisionExhausted || cur.M >= (1 << 14)) throw;
      cur = with_precision(cur, cur.M * 2);
    }
  }
}

}  // namespace dwf

// Copyright 2026 The dwork-forge Authors
// Licensed under the Apache License, Version 2.0, see LICENSE for details.
// SPDX-License-Identifier: Apache-2.0

#include "dwork_forge/finite_field.hpp"

#include <array>
#include <numeric>
#include <string>

#include "dwork_forge/errors.hpp"

namespace dwf {

namespace {

constexpr int kMaxDigits = 20;
using Digits = std::array<uint32_t, 2 * kMaxDigits>;

void decode(uint32_t code, uint32_t p, uint32_t f, Digits& d) {
  for (uint32_t i = 0; i < f; ++i) {
    d[i] = code % p;
    code /= p;
  }
}

uint32_t encode(const Digits& d, uint32_t p, uint32_t f) {
  uint32_t c = 0;
  for (uint32_t i = f; i-- > 0;) c = c * p + d[i];
  return c;
}

// Walk the powers of x modulo poly; returns the code sequence if x has order
// p^f - 1, empty otherwise.
std::vector<uint32_t> primitive_cycle(const std::vector<uint32_t>& poly, uint32_t p, uint32_t f,
                                      uint64_t q) {
  std::vector<uint32_t> seq;
  seq.reserve(q - 1);
  Digits cur{};
  cur[0] = 1;
  for (uint64_t k = 0; k < q - 1; ++k) {
    uint32_t code = encode(cur, p, f);
    if (k > 0 && code == 1) return {};
    seq.push_back(code);
    uint32_t top = cur[f - 1];
    for (uint32_t i = f - 1; i > 0; --i) cur[i] = cur[i - 1];
    cur[0] = 0;
    if (top)
      for (uint32_t i = 0; i < f; ++i) cur[i] = (cur[i] + (p - top) * poly[i]) % p;
  }
  if (encode(cur, p, f) != 1) return {};
  return seq;
}

}  // namespace

bool is_prime(uint64_t n) {
  if (n < 2) return false;
  for (uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

uint64_t ipow(uint64_t b, unsigned e) {
  uint64_t r = 1;
  while (e--) r *= b;
  return r;
}

uint64_t mult_order(uint64_t a, uint64_t n) {
  if (n == 1) return 1;
  if (std::gcd(a % n, n) != 1) throw Error(ErrorKind::ConfigInvalid, "order of a non-unit");
  uint64_t x = a % n, k = 1;
  while (x != 1) {
    x = static_cast<uint64_t>((static_cast<unsigned __int128>(x) * a) % n);
    ++k;
  }
  return k;
}

FFElem FieldDesc::from_dlog(int64_t k) const {
  int64_t m = static_cast<int64_t>(q_ - 1);
  return {this, ((k % m) + m) % m};
}

FFElem FieldDesc::from_code(uint32_t code) const {
  if (code >= q_) throw Error(ErrorKind::ConfigInvalid, "element code out of range");
  return {this, log_[code]};
}

FFElem FieldDesc::from_int(int64_t a) const {
  int64_t r = ((a % p_) + p_) % p_;
  return from_code(static_cast<uint32_t>(r));
}

uint32_t FieldDesc::code(const FFElem& x) const { return x.is_zero() ? 0 : exp_[x.k]; }

uint32_t FieldDesc::code_add(uint32_t a, uint32_t b) const {
  Digits x{}, y{};
  decode(a, p_, f_, x);
  decode(b, p_, f_, y);
  for (uint32_t i = 0; i < f_; ++i) x[i] = (x[i] + y[i]) % p_;
  return encode(x, p_, f_);
}

uint32_t FieldDesc::code_sub(uint32_t a, uint32_t b) const {
  Digits x{}, y{};
  decode(a, p_, f_, x);
  decode(b, p_, f_, y);
  for (uint32_t i = 0; i < f_; ++i) x[i] = (x[i] + p_ - y[i]) % p_;
  return encode(x, p_, f_);
}

uint32_t FieldDesc::code_mul(uint32_t a, uint32_t b) const {
  Digits x{}, y{};
  decode(a, p_, f_, x);
  decode(b, p_, f_, y);
  std::array<uint64_t, 2 * kMaxDigits> z{};
  for (uint32_t i = 0; i < f_; ++i) {
    if (!x[i]) continue;
    for (uint32_t j = 0; j < f_; ++j) z[i + j] += static_cast<uint64_t>(x[i]) * y[j];
  }
  for (uint32_t i = 2 * f_ - 1; i-- > f_;) {
    uint64_t c = z[i] % p_;
    if (!c) continue;
    for (uint32_t j = 0; j < f_; ++j) z[i - f_ + j] += (p_ - c) * poly_[j];
    z[i] = 0;
  }
  Digits out{};
  for (uint32_t i = 0; i < f_; ++i) out[i] = static_cast<uint32_t>(z[i] % p_);
  return encode(out, p_, f_);
}

uint32_t FieldDesc::code_pow(uint32_t a, uint64_t e) const {
  uint32_t r = 1;
  while (e) {
    if (e & 1) r = code_mul(r, a);
    a = code_mul(a, a);
    e >>= 1;
  }
  return r;
}

FFElem FieldDesc::add(const FFElem& a, const FFElem& b) const {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  return from_code(code_add(exp_[a.k], exp_[b.k]));
}

FFElem FieldDesc::sub(const FFElem& a, const FFElem& b) const {
  return from_code(code_sub(code(a), code(b)));
}

FFElem FieldDesc::neg(const FFElem& a) const { return sub(zero(), a); }

FFElem FieldDesc::mul(const FFElem& a, const FFElem& b) const {
  if (a.is_zero() || b.is_zero()) return zero();
  return from_dlog(a.k + b.k);
}

FFElem FieldDesc::inv(const FFElem& a) const {
  if (a.is_zero()) throw Error(ErrorKind::ConfigInvalid, "inverse of zero");
  return from_dlog(-a.k);
}

FFElem FieldDesc::div(const FFElem& a, const FFElem& b) const { return mul(a, inv(b)); }

FFElem FieldDesc::pow(const FFElem& a, int64_t e) const {
  if (a.is_zero()) {
    if (e < 0) throw Error(ErrorKind::ConfigInvalid, "negative power of zero");
    return e == 0 ? one() : zero();
  }
  int64_t m = static_cast<int64_t>(q_ - 1);
  __int128 t = static_cast<__int128>(a.k) * (e % m);
  return from_dlog(static_cast<int64_t>(t % m));
}

FFElem FieldDesc::embed_from_base(const FFElem& x) const {
  if (!base_ || x.field != base_.get())
    throw Error(ErrorKind::IncompatibleFields, "element is not in the recorded base field");
  if (x.is_zero()) return zero();
  uint64_t h = (q_ - 1) / (base_->q() - 1);
  return from_dlog(static_cast<int64_t>(x.k * h));
}

FFElem FieldDesc::norm_to_base(const FFElem& x) const {
  if (!base_) throw Error(ErrorKind::IncompatibleFields, "field has no recorded base");
  if (x.field != this) throw Error(ErrorKind::IncompatibleFields, "element from another field");
  if (x.is_zero()) return base_->zero();
  return base_->from_dlog(x.k % static_cast<int64_t>(base_->q() - 1));
}

void FieldDesc::build_tables_from_exp() {
  log_.assign(q_, -1);
  for (uint64_t k = 0; k < exp_.size(); ++k) log_[exp_[k]] = static_cast<int32_t>(k);
  zech_.resize(exp_.size());
  for (uint64_t k = 0; k < exp_.size(); ++k) zech_[k] = log_[code_sub(1, exp_[k])];
}

Field field_make(uint32_t p, uint32_t f, uint64_t seed) {
  if (!is_prime(p)) throw Error(ErrorKind::NotPrime, std::to_string(p) + " is not prime");
  if (f == 0) throw Error(ErrorKind::ConfigInvalid, "extension degree must be positive");
  uint64_t q = 1;
  for (uint32_t i = 0; i < f; ++i) {
    q *= p;
    if (q > kMaxTableField)
      throw Error(ErrorKind::TooLarge, "field size exceeds table mode limit 2^20");
  }
  std::shared_ptr<FieldDesc> F(new FieldDesc());
  F->p_ = p;
  F->f_ = f;
  F->q_ = q;
  if (f == 1) {
    std::vector<uint32_t> roots;
    for (uint32_t g = 1; g < p; ++g)
      if (mult_order(g, p) == p - 1) roots.push_back(g);
    uint32_t g = roots[seed % roots.size()];
    F->poly_ = {(p - g) % p, 1};
    F->exp_.resize(p - 1);
    uint64_t x = 1;
    for (uint32_t k = 0; k + 1 < p; ++k) {
      F->exp_[k] = static_cast<uint32_t>(x);
      x = x * g % p;
    }
  } else {
    uint64_t found = 0;
    std::vector<uint32_t> first_poly;
    std::vector<uint32_t> chosen;
    for (uint64_t c = 1; c < q && chosen.empty(); ++c) {
      std::vector<uint32_t> poly(f + 1);
      uint64_t t = c;
      for (uint32_t i = 0; i < f; ++i) {
        poly[i] = static_cast<uint32_t>(t % p);
        t /= p;
      }
      poly[f] = 1;
      if (poly[0] == 0) continue;
      auto seq = primitive_cycle(poly, p, f, q);
      if (seq.empty()) continue;
      if (found == 0) first_poly = poly;
      if (found == seed) {
        chosen = poly;
        F->exp_ = std::move(seq);
      }
      ++found;
    }
    if (chosen.empty()) {
      // seed beyond the number of primitive polynomials: wrap around
      uint64_t want = seed % found, idx = 0;
      for (uint64_t c = 1; c < q; ++c) {
        std::vector<uint32_t> poly(f + 1);
        uint64_t t = c;
        for (uint32_t i = 0; i < f; ++i) {
          poly[i] = static_cast<uint32_t>(t % p);
          t /= p;
        }
        poly[f] = 1;
        if (poly[0] == 0) continue;
        auto seq = primitive_cycle(poly, p, f, q);
        if (seq.empty()) continue;
        if (idx++ == want) {
          chosen = poly;
          F->exp_ = std::move(seq);
          break;
        }
      }
    }
    F->poly_ = chosen;
  }
  F->build_tables_from_exp();
  return F;
}

Field field_extension(const Field& base, uint32_t d, uint64_t seed) {
  if (!base || d == 0) throw Error(ErrorKind::ConfigInvalid, "bad extension request");
  Field big0 = field_make(base->p(), base->f() * d, seed);
  std::shared_ptr<FieldDesc> F(new FieldDesc(*big0));
  const uint64_t Q = F->q_, qb = base->q();
  const uint64_t h = (Q - 1) / (qb - 1);
  // a root y of the base's defining polynomial (it lies in the subfield)
  auto eval_base_poly_digits = [&](const std::vector<uint32_t>& coeffs, uint32_t y) {
    uint32_t acc = 0;
    for (size_t i = coeffs.size(); i-- > 0;) acc = F->code_add(F->code_mul(acc, y), coeffs[i]);
    return acc;
  };
  uint32_t y = 0;
  bool have_root = false;
  for (uint64_t i = 0; i < qb - 1 && !have_root; ++i) {
    uint32_t cand = F->exp_[(h * i) % (Q - 1)];
    if (eval_base_poly_digits(base->defining_poly(), cand) == 0) {
      y = cand;
      have_root = true;
    }
  }
  if (!have_root) throw Error(ErrorKind::IncompatibleFields, "base polynomial has no root");
  // image of g_base under x_base -> y
  uint32_t gcode = base->code(base->gen());
  std::vector<uint32_t> gdigits(base->f());
  for (uint32_t i = 0; i < base->f(); ++i) {
    gdigits[i] = gcode % base->p();
    gcode /= base->p();
  }
  uint32_t target = eval_base_poly_digits(gdigits, y);
  int64_t t = F->log_[target];
  if (t < 0 || t % static_cast<int64_t>(h) != 0)
    throw Error(ErrorKind::IncompatibleFields, "image of base generator not in subfield");
  uint64_t u = static_cast<uint64_t>(t) / h;
  uint64_t j = u;
  while (std::gcd(j, Q - 1) != 1) j += qb - 1;
  std::vector<uint32_t> exp(Q - 1);
  for (uint64_t k = 0; k < Q - 1; ++k)
    exp[k] = F->exp_[static_cast<uint64_t>((static_cast<unsigned __int128>(j) * k) % (Q - 1))];
  F->exp_ = std::move(exp);
  F->build_tables_from_exp();
  F->base_ = base;
  F->deg_base_ = d;
  return F;
}

FFElem norm_to_subfield(const FFElem& x, uint32_t d) {
  if (!x.field || !x.field->base() || x.field->degree_over_base() != d)
    throw Error(ErrorKind::IncompatibleFields, "no recorded degree-" + std::to_string(d) + " base");
  return x.field->norm_to_base(x);
}

int64_t char_exponent(int N, int64_t m, const FFElem& y) {
  if (!y.field) throw Error(ErrorKind::ConfigInvalid, "element without a field");
  if ((y.field->q() - 1) % N != 0)
    throw Error(ErrorKind::NNotDividingQMinus1,
                std::to_string(N) + " does not divide " + std::to_string(y.field->q() - 1));
  if (y.is_zero()) return -1;
  int64_t mm = ((m % N) + N) % N;
  return (mm * (y.k % N)) % N;
}

CyclotomicInt char_value(int N, int64_t m, const FFElem& y) {
  int64_t j = char_exponent(N, m, y);
  if (j < 0) return CyclotomicInt(N);
  return CyclotomicInt::zeta_pow(N, j);
}

}  // namespace dwf

// Copyright 2026 The dwork-forge Authors
// Licensed under the Apache License, Version 2.0, see LICENSE for details.
// SPDX-License-Identifier: Apache-2.0

#include "dwork_forge/cyclotomic.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <sstream>

#include "dwork_forge/errors.hpp"

namespace dwf {

namespace {

struct CycloData {
  std::vector<int64_t> phi;               // Phi_N, low first, monic
  std::vector<std::vector<int64_t>> red;  // x^j mod Phi_N for 0 <= j < N
};

std::mutex g_cyclo_mu;
std::map<int, std::unique_ptr<CycloData>> g_cyclo;

// exact division of integer polynomials, b monic
std::vector<int64_t> poly_div_exact(std::vector<int64_t> a, const std::vector<int64_t>& b) {
  size_t db = b.size() - 1;
  std::vector<int64_t> quo(a.size() - db, 0);
  for (size_t i = a.size(); i-- > db;) {
    int64_t c = a[i];
    quo[i - db] = c;
    for (size_t j = 0; j <= db; ++j) a[i - db + j] -= c * b[j];
  }
  return quo;
}

const CycloData& cyclo_data(int N) {
  if (N < 1) throw Error(ErrorKind::ConfigInvalid, "cyclotomic modulus must be positive");
  {
    std::lock_guard<std::mutex> lk(g_cyclo_mu);
    auto it = g_cyclo.find(N);
    if (it != g_cyclo.end()) return *it->second;
  }
  std::vector<int64_t> num(N + 1, 0);
  num[0] = -1;
  num[N] = 1;
  for (int d = 1; d < N; ++d)
    if (N % d == 0) num = poly_div_exact(num, cyclo_data(d).phi);
  auto data = std::make_unique<CycloData>();
  data->phi = num;
  size_t deg = num.size() - 1;
  std::vector<int64_t> cur(deg, 0);
  if (deg > 0) cur[0] = 1;
  for (int j = 0; j < N; ++j) {
    data->red.push_back(cur);
    // multiply by x, reduce by the monic phi
    int64_t top = deg ? cur[deg - 1] : 0;
    for (size_t i = deg; i-- > 1;) cur[i] = cur[i - 1];
    if (deg) cur[0] = 0;
    for (size_t i = 0; i < deg; ++i) cur[i] -= top * num[i];
  }
  std::lock_guard<std::mutex> lk(g_cyclo_mu);
  auto& slot = g_cyclo[N];
  if (!slot) slot = std::move(data);
  return *slot;
}

void check_same(const CyclotomicInt& a, const CyclotomicInt& b) {
  if (a.modulus() != b.modulus())
    throw Error(ErrorKind::ConfigInvalid, "cyclotomic moduli differ");
}

}  // namespace

const std::vector<int64_t>& cyclotomic_poly(int N) { return cyclo_data(N).phi; }

int euler_phi(int N) { return static_cast<int>(cyclotomic_poly(N).size()) - 1; }

CyclotomicInt::CyclotomicInt(int N) : N_(N), c_(euler_phi(N)) {}

CyclotomicInt::CyclotomicInt(int N, std::vector<mpz_class> coeffs) : N_(N), c_(std::move(coeffs)) {
  if (static_cast<int>(c_.size()) != euler_phi(N))
    throw Error(ErrorKind::ConfigInvalid, "coefficient count must equal phi(N)");
}

CyclotomicInt CyclotomicInt::from_int(int N, const mpz_class& a) {
  CyclotomicInt r(N);
  r.c_[0] = a;
  return r;
}

CyclotomicInt CyclotomicInt::zeta_pow(int N, int64_t j) {
  std::vector<int64_t> counts(N, 0);
  counts[((j % N) + N) % N] = 1;
  return from_group_ring(N, counts);
}

CyclotomicInt CyclotomicInt::from_group_ring(int N, const std::vector<int64_t>& counts) {
  const CycloData& d = cyclo_data(N);
  CyclotomicInt r(N);
  size_t deg = r.c_.size();
  for (int j = 0; j < N; ++j) {
    if (!counts[j]) continue;
    for (size_t i = 0; i < deg; ++i)
      if (d.red[j][i]) r.c_[i] += mpz_class(static_cast<long>(counts[j] * d.red[j][i]));
  }
  return r;
}

bool CyclotomicInt::is_zero() const {
  for (const auto& x : c_)
    if (x != 0) return false;
  return true;
}

bool CyclotomicInt::is_rational() const {
  for (size_t i = 1; i < c_.size(); ++i)
    if (c_[i] != 0) return false;
  return true;
}

CyclotomicInt CyclotomicInt::operator+(const CyclotomicInt& o) const {
  CyclotomicInt r = *this;
  r += o;
  return r;
}

CyclotomicInt& CyclotomicInt::operator+=(const CyclotomicInt& o) {
  check_same(*this, o);
  for (size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
  return *this;
}

CyclotomicInt CyclotomicInt::operator-(const CyclotomicInt& o) const {
  check_same(*this, o);
  CyclotomicInt r = *this;
  for (size_t i = 0; i < c_.size(); ++i) r.c_[i] -= o.c_[i];
  return r;
}

CyclotomicInt CyclotomicInt::operator-() const {
  CyclotomicInt r = *this;
  for (auto& x : r.c_) x = -x;
  return r;
}

CyclotomicInt CyclotomicInt::operator*(const CyclotomicInt& o) const {
  check_same(*this, o);
  const CycloData& d = cyclo_data(N_);
  // multiply in Z[x]/(x^N - 1), then fold each x^j into the power basis
  std::vector<mpz_class> wrap(N_);
  for (size_t i = 0; i < c_.size(); ++i) {
    if (c_[i] == 0) continue;
    for (size_t j = 0; j < o.c_.size(); ++j)
      if (o.c_[j] != 0) wrap[(i + j) % N_] += c_[i] * o.c_[j];
  }
  CyclotomicInt r(N_);
  for (int j = 0; j < N_; ++j) {
    if (wrap[j] == 0) continue;
    for (size_t i = 0; i < r.c_.size(); ++i)
      if (d.red[j][i]) r.c_[i] += wrap[j] * static_cast<long>(d.red[j][i]);
  }
  return r;
}

CyclotomicInt CyclotomicInt::operator*(const mpz_class& s) const {
  CyclotomicInt r = *this;
  for (auto& x : r.c_) x *= s;
  return r;
}

bool CyclotomicInt::operator==(const CyclotomicInt& o) const {
  return N_ == o.N_ && c_ == o.c_;
}

CyclotomicInt CyclotomicInt::exact_div(const mpz_class& dv) const {
  if (dv == 0) throw Error(ErrorKind::ExactDivisionFailed, "division by zero");
  CyclotomicInt r = *this;
  for (auto& x : r.c_) {
    if (!mpz_divisible_p(x.get_mpz_t(), dv.get_mpz_t()))
      throw Error(ErrorKind::ExactDivisionFailed,
                  to_string() + " not divisible by " + dv.get_str());
    mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), dv.get_mpz_t());
  }
  return r;
}

std::string CyclotomicInt::to_string() const {
  std::ostringstream os;
  os << "[";
  for (size_t i = 0; i < c_.size(); ++i) os << (i ? "," : "") << c_[i].get_str();
  os << "]";
  return os.str();
}

CyclotomicInt conj(const CyclotomicInt& a) {
  int N = a.modulus();
  const CycloData& d = cyclo_data(N);
  CyclotomicInt r(N);
  std::vector<mpz_class> out(r.coeffs().size());
  for (size_t i = 0; i < a.coeffs().size(); ++i) {
    if (a.coeffs()[i] == 0) continue;
    int j = static_cast<int>((N - static_cast<int>(i) % N) % N);
    for (size_t k = 0; k < out.size(); ++k)
      if (d.red[j][k]) out[k] += a.coeffs()[i] * static_cast<long>(d.red[j][k]);
  }
  return CyclotomicInt(N, std::move(out));
}

std::complex<double> embed_complex(const CyclotomicInt& a, int root_index) {
  int N = a.modulus();
  long double re = 0, im = 0;
  const long double two_pi = 6.283185307179586476925286766559L;
  for (size_t i = 0; i < a.coeffs().size(); ++i) {
    if (a.coeffs()[i] == 0) continue;
    long double c = a.coeffs()[i].get_d();
    long long e = (static_cast<long long>(i) * root_index) % N;
    long double ang = two_pi * static_cast<long double>(e) / N;
    re += c * std::cos(ang);
    im += c * std::sin(ang);
  }
  return {static_cast<double>(re), static_cast<double>(im)};
}

std::vector<int> embedding_indices(int N) {
  std::vector<int> out;
  for (int j = 1; j <= std::max(1, N - 1); ++j)
    if (std::gcd(j, N) == 1) out.push_back(j);
  return out;
}

}  // namespace dwf

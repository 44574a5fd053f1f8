// Copyright 2026 The dwork-forge Authors
// Licensed under the Apache License, Version 2.0, see LICENSE for details.
// SPDX-License-Identifier: Apache-2.0

#include "dwork_forge/hypergeometric.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <string>
#include <unordered_map>

#include "dwork_forge/errors.hpp"
#include "dwork_forge/parallel.hpp"

namespace dwf {

namespace {

int mod(int64_t a, int64_t m) { return static_cast<int>(((a % m) + m) % m); }

bool stabilizer_trivial(int N, const std::vector<int>& R) {
  std::set<int> S(R.begin(), R.end());
  for (int u = 2; u < N; ++u) {
    if (std::gcd(u, N) != 1) continue;
    std::set<int> T;
    for (int r : R) T.insert(mod(static_cast<int64_t>(u) * r, N));
    if (T == S) return false;
  }
  return true;
}

void check_point(const FFElem& x) {
  if (!x.field) throw Error(ErrorKind::ConfigInvalid, "point without a field");
  if (x.is_zero() || x.k == 0) throw Error(ErrorKind::BadPoint, "x must avoid 0 and 1");
}

std::vector<int32_t> chi_one_minus(const FieldDesc& k, int N, int m) {
  uint64_t q1 = k.q() - 1;
  std::vector<int32_t> f(q1);
  for (uint64_t a = 0; a < q1; ++a) {
    int64_t z = k.one_minus(static_cast<int64_t>(a));
    f[a] = z < 0 ? -1 : mod(static_cast<int64_t>(m) * (z % N), N);
  }
  return f;
}

mpz_class zpow(uint64_t b, unsigned long e) {
  mpz_class r;
  mpz_ui_pow_ui(r.get_mpz_t(), b, e);
  return r;
}

}  // namespace

HGParams make_hg_params(int N, std::vector<int> R) {
  if (N < 3 || N % 2 == 0) throw Error(ErrorKind::ConfigInvalid, "N must be odd and at least 3");
  if (R.empty()) throw Error(ErrorKind::ConfigInvalid, "R must be nonempty");
  for (auto& r : R) {
    r = mod(r, N);
    if (r == 0) throw Error(ErrorKind::ConfigInvalid, "R must avoid 0 mod N");
  }
  std::set<int> S(R.begin(), R.end());
  if (S.size() != R.size()) throw Error(ErrorKind::ConfigInvalid, "R entries must be distinct mod N");
  HGParams p;
  p.N = N;
  p.n = static_cast<int>(R.size());
  p.R = std::move(R);
  int64_t s = 0;
  for (int r : p.R) s += r;
  p.sum_zero = s % N == 0;
  p.trivial_stabilizer = stabilizer_trivial(N, p.R);
  return p;
}

HGParams select_chi(int N, int n) {
  if (N < 3 || N % 2 == 0 || n < 1 || n >= N || std::gcd(N, n) != 1)
    throw Error(ErrorKind::PreconditionViolated, "need N odd, gcd(N, n) = 1, N > n");
  std::vector<int> idx(n);
  std::iota(idx.begin(), idx.end(), 1);
  std::optional<std::vector<int>> fallback;
  for (;;) {
    int64_t s = std::accumulate(idx.begin(), idx.end(), int64_t{0});
    if (s % N == 0) {
      if (stabilizer_trivial(N, idx)) return make_hg_params(N, idx);
      if (!fallback) fallback = idx;
    }
    // next n-subset of {1..N-1} in lexicographic order
    int i = n - 1;
    while (i >= 0 && idx[i] == N - n + i) --i;
    if (i < 0) break;
    ++idx[i];
    for (int j = i + 1; j < n; ++j) idx[j] = idx[j - 1] + 1;
  }
  if (!fallback) throw Error(ErrorKind::NoSumZeroSet, "no exponent set sums to 0 mod N");
  HGParams p = make_hg_params(N, *fallback);
  p.warning = true;
  return p;
}

CyclotomicInt char_sum_naive(const HGParams& params, const FFElem& x) {
  check_point(x);
  const FieldDesc& k = *x.field;
  const int N = params.N, n = params.n;
  const uint64_t q1 = k.q() - 1;
  if (q1 % N != 0) throw Error(ErrorKind::NNotDividingQMinus1, "N must divide q - 1");
  const uint64_t e = q1 / N;
  // omega = g^{(q-1)/N} and its powers, by repeated multiplication
  const uint32_t omega = k.code_pow(k.code(k.gen()), e);
  std::unordered_map<uint32_t, int> root_index;
  for (int j = 0, c = 1; j < N; ++j) {
    root_index[static_cast<uint32_t>(c)] = j;
    c = static_cast<int>(k.code_mul(static_cast<uint32_t>(c), omega));
  }
  std::vector<int64_t> counts(N, 0);
  std::vector<int64_t> xs(std::max(n - 1, 0), 0);
  const uint32_t one = 1;
  for (;;) {
    int64_t s = 0;
    for (int64_t v : xs) s += v;
    std::vector<uint32_t> codes;
    for (int64_t v : xs) codes.push_back(k.code(k.from_dlog(v)));
    codes.push_back(k.code(k.div(x, k.from_dlog(s))));
    int64_t expo = 0;
    bool zero = false;
    for (int i = 0; i < n && !zero; ++i) {
      uint32_t y = k.code_sub(one, codes[i]);
      if (y == 0) {
        zero = true;
        break;
      }
      expo += static_cast<int64_t>(params.R[i]) * root_index.at(k.code_pow(y, e));
    }
    if (!zero) ++counts[mod(expo, N)];
    int i = 0;
    while (i < n - 1 && ++xs[i] == static_cast<int64_t>(q1)) xs[i++] = 0;
    if (i == n - 1) break;
  }
  return CyclotomicInt::from_group_ring(N, counts);
}

CyclotomicInt trace_naive(const HGParams& params, const FFElem& x) {
  CyclotomicInt s = char_sum_naive(params, x);
  return params.n % 2 == 1 ? s : -s;
}

TraceEngine::TraceEngine(const HGParams& params, Field k) : params_(params), k_(std::move(k)) {
  const int N = params.N;
  m_ = k_->q() - 1;
  if (m_ % N != 0) throw Error(ErrorKind::NNotDividingQMinus1, "N must divide q - 1");
  partial_.assign(m_ * N, 0);
  if (params.n == 1) {
    partial_[0] = 1;  // delta at y = 1
  } else {
    auto f0 = chi_one_minus(*k_, N, params.R[0]);
    for (uint64_t a = 0; a < m_; ++a)
      if (f0[a] >= 0) partial_[a * N + f0[a]] = 1;
    for (int i = 1; i + 1 < params.n; ++i) {
      auto fi = chi_one_minus(*k_, N, params.R[i]);
      std::vector<int64_t> nxt(m_ * N, 0);
      for (uint64_t a = 0; a < m_; ++a) {
        for (int c = 0; c < N; ++c) {
          int64_t v = partial_[a * N + c];
          if (!v) continue;
          for (uint64_t b = 0; b < m_; ++b) {
            int32_t fb = fi[b];
            if (fb < 0) continue;
            uint64_t t = a + b;
            if (t >= m_) t -= m_;
            int cc = c + fb;
            if (cc >= N) cc -= N;
            nxt[t * N + cc] += v;
          }
        }
      }
      partial_.swap(nxt);
    }
  }
  last_ = chi_one_minus(*k_, N, params.R[params.n - 1]);
}

std::vector<int64_t> TraceEngine::raw_counts(int64_t x_dlog) const {
  const int N = params_.N;
  std::vector<int64_t> counts(N, 0);
  const int64_t m = static_cast<int64_t>(m_);
  const int64_t t = ((x_dlog % m) + m) % m;
  for (int64_t a = 0; a < m; ++a) {
    int64_t b = t - a;
    if (b < 0) b += m;
    int32_t fb = last_[b];
    if (fb < 0) continue;
    const int64_t* row = &partial_[a * N];
    for (int c = 0; c < N; ++c) {
      if (!row[c]) continue;
      int cc = c + fb;
      if (cc >= N) cc -= N;
      counts[cc] += row[c];
    }
  }
  return counts;
}

CyclotomicInt TraceEngine::char_sum(int64_t x_dlog) const {
  return CyclotomicInt::from_group_ring(params_.N, raw_counts(x_dlog));
}

CyclotomicInt TraceEngine::trace(int64_t x_dlog) const {
  CyclotomicInt s = char_sum(x_dlog);
  return params_.n % 2 == 1 ? s : -s;
}

std::map<int64_t, CyclotomicInt> trace_all_fast(const HGParams& params, const Field& k) {
  TraceEngine eng(params, k);
  const int64_t m = static_cast<int64_t>(k->q() - 1);
  std::map<int64_t, CyclotomicInt> out;
  if (m < 2) return out;
  auto vals = parallel_map(static_cast<size_t>(m - 1),
                           [&](size_t i) { return eng.trace(static_cast<int64_t>(i) + 1); });
  for (int64_t t = 1; t < m; ++t) out.emplace(t, std::move(vals[t - 1]));
  return out;
}

FieldTower::FieldTower(Field k, uint32_t dmax, uint64_t limit) {
  levels_.push_back(k);
  uint64_t Q = k->q();
  for (uint32_t d = 2; d <= dmax; ++d) {
    Q *= k->q();
    levels_.push_back(Q <= limit ? field_extension(k, d) : nullptr);
  }
}

std::vector<CyclotomicInt> coeffs_from_traces(const std::vector<CyclotomicInt>& p, int N) {
  const size_t n = p.size();
  std::vector<CyclotomicInt> e{CyclotomicInt::from_int(N, 1)};
  for (size_t k = 1; k <= n; ++k) {
    CyclotomicInt acc(N);
    for (size_t i = 1; i <= k; ++i) {
      CyclotomicInt t = e[k - i] * p[i - 1];
      acc = (i % 2 == 1) ? acc + t : acc - t;
    }
    e.push_back(acc.exact_div(mpz_class(static_cast<unsigned long>(k))));
  }
  std::vector<CyclotomicInt> coeffs(n + 1);
  for (size_t k = 0; k <= n; ++k) coeffs[n - k] = (k % 2 == 0) ? e[k] : -e[k];
  return coeffs;
}

std::vector<CyclotomicInt> traces_from_coeffs(const std::vector<CyclotomicInt>& coeffs) {
  const size_t n = coeffs.size() - 1;
  const int N = coeffs[0].modulus();
  std::vector<CyclotomicInt> e(n + 1);
  for (size_t k = 0; k <= n; ++k) e[k] = (k % 2 == 0) ? coeffs[n - k] : -coeffs[n - k];
  std::vector<CyclotomicInt> p;
  for (size_t k = 1; k <= n; ++k) {
    CyclotomicInt acc = e[k] * mpz_class(static_cast<unsigned long>(k));
    if (k % 2 == 0) acc = -acc;
    for (size_t i = 1; i < k; ++i) {
      CyclotomicInt t = e[k - i] * p[i - 1];
      acc = ((k - 1 + i) % 2 == 0) ? acc + t : acc - t;
    }
    p.push_back(acc);
  }
  (void)N;
  return p;
}

std::vector<CharPolyRecord> char_poly_batch(const HGParams& params, const FieldTower& tower,
                                            const std::vector<int64_t>& x_dlogs) {
  const Field& k = tower.base();
  const int n = params.n, N = params.N;
  const uint64_t q = k->q();
  for (int64_t t : x_dlogs) check_point(k->from_dlog(t));
  uint32_t D = 0;
  while (D < static_cast<uint32_t>(n) && D < tower.dmax() && tower.at(D + 1)) ++D;
  if (D == 0) throw Error(ErrorKind::TooLarge, "base field exceeds the scan limit");
  if (D < static_cast<uint32_t>(n)) {
    if (!params.sum_zero)
      throw Error(ErrorKind::TooLarge, "functional-equation completion needs sum-zero data");
    if (2 * D + 1 < static_cast<uint32_t>(n))
      throw Error(ErrorKind::TooLarge, "too few directly computable traces");
  }
  // direct[d-1][i]: trace over F_{q^d} at point i
  std::vector<std::vector<CyclotomicInt>> direct;
  for (uint32_t d = 1; d <= D; ++d) {
    const Field& F = tower.at(d);
    TraceEngine eng(params, F);
    const int64_t h = static_cast<int64_t>((F->q() - 1) / (q - 1));
    direct.push_back(parallel_map(x_dlogs.size(), [&](size_t i) { return eng.trace(x_dlogs[i] * h); }));
  }
  std::vector<CharPolyRecord> out;
  for (size_t i = 0; i < x_dlogs.size(); ++i) {
    CharPolyRecord rec;
    rec.params = params;
    rec.q = q;
    rec.x_dlog = x_dlogs[i];
    rec.direct_traces = static_cast<int>(D);
    std::vector<CyclotomicInt> p;
    for (uint32_t d = 0; d < D; ++d) p.push_back(direct[d][i]);
    if (D == static_cast<uint32_t>(n)) {
      rec.traces = p;
      rec.coeffs = coeffs_from_traces(p, N);
    } else {
      // e_{n-j} = e_n conj(e_j) / q^{(n-1) j}
      auto low = coeffs_from_traces(p, N);  // degree-D polynomial
      std::vector<CyclotomicInt> e(n + 1);
      for (uint32_t j = 0; j <= D; ++j) e[j] = (j % 2 == 0) ? low[D - j] : -low[D - j];
      e[n] = CyclotomicInt::from_int(N, zpow(q, n * (n - 1) / 2) * kDetSign);
      for (int j = 1; j <= n - 1; ++j) {
        if (j <= static_cast<int>(D)) continue;
        int jj = n - j;
        e[j] = (e[n] * conj(e[jj])).exact_div(zpow(q, static_cast<unsigned long>((n - 1) * jj)));
      }
      rec.coeffs.resize(n + 1);
      for (int j = 0; j <= n; ++j) rec.coeffs[n - j] = (j % 2 == 0) ? e[j] : -e[j];
      rec.traces = traces_from_coeffs(rec.coeffs);
    }
    out.push_back(std::move(rec));
  }
  return out;
}

CharPolyRecord char_poly(const HGParams& params, const FieldTower& tower, const FFElem& x) {
  if (x.field != tower.base().get())
    throw Error(ErrorKind::IncompatibleFields, "point is not in the tower's base field");
  check_point(x);
  return char_poly_batch(params, tower, {x.k}).front();
}

DetReport verify_det(const CharPolyRecord& rec, double tol) {
  DetReport r;
  const int n = rec.params.n, N = rec.params.N;
  const mpz_class target = zpow(rec.q, static_cast<unsigned long>(n * (n - 1) / 2));
  CyclotomicInt prod = (n % 2 == 0) ? rec.coeffs[0] : -rec.coeffs[0];
  double T = target.get_d();
  r.abs_pass = true;
  for (int j : embedding_indices(N)) {
    double err = std::abs(std::abs(embed_complex(prod, j)) - T) / T;
    r.max_rel_err = std::max(r.max_rel_err, err);
    if (!(err <= tol)) r.abs_pass = false;
  }
  if (prod == CyclotomicInt::from_int(N, target)) r.observed_sign = 1;
  else if (prod == CyclotomicInt::from_int(N, -target)) r.observed_sign = -1;
  r.signed_applicable = rec.params.sum_zero;
  r.signed_pass = r.signed_applicable && r.observed_sign == kDetSign;
  return r;
}

namespace {

std::vector<std::complex<double>> poly_roots(const std::vector<std::complex<double>>& c) {
  // c low first, monic
  const int n = static_cast<int>(c.size()) - 1;
  Eigen::MatrixXcd C = Eigen::MatrixXcd::Zero(n, n);
  for (int i = 1; i < n; ++i) C(i, i - 1) = 1.0;
  for (int i = 0; i < n; ++i) C(i, n - 1) = -c[i];
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(C, false);
  if (es.info() != Eigen::Success)
    throw Error(ErrorKind::RootFindingFailed,
                "companion eigen-solve did not converge (norm " + std::to_string(C.norm()) + ")");
  std::vector<std::complex<double>> roots;
  for (int i = 0; i < n; ++i) {
    std::complex<long double> z(es.eigenvalues()[i].real(), es.eigenvalues()[i].imag());
    for (int it = 0; it < 8; ++it) {
      std::complex<long double> P = 0, dP = 0;
      for (int k = n; k >= 0; --k) {
        dP = dP * z + P;
        P = P * z + std::complex<long double>(c[k].real(), c[k].imag());
      }
      if (std::abs(dP) == 0) break;
      std::complex<long double> nz = z - P / dP;
      if (!std::isfinite(static_cast<double>(std::abs(nz)))) break;
      z = nz;
    }
    roots.emplace_back(static_cast<double>(z.real()), static_cast<double>(z.imag()));
  }
  return roots;
}

}  // namespace

PurityReport verify_purity(const CharPolyRecord& rec, double tol) {
  PurityReport r;
  const int n = rec.params.n, N = rec.params.N;
  const double target = zpow(rec.q, static_cast<unsigned long>(n - 1)).get_d();
  r.pass = true;
  for (int j : embedding_indices(N)) {
    std::vector<std::complex<double>> c;
    for (const auto& a : rec.coeffs) c.push_back(embed_complex(a, j));
    auto roots = poly_roots(c);
    for (auto z : roots) {
      double dev = std::abs(std::norm(z) - target) / target;
      r.max_rel_dev = std::max(r.max_rel_dev, dev);
      if (!(dev <= tol)) r.pass = false;
    }
    if (j == 1) r.roots = roots;
  }
  return r;
}

std::vector<mpq_class> newton_polygon_coeffs(const std::vector<CyclotomicInt>& coeffs,
                                             const LambdaPrime& lam, int norm) {
  std::vector<std::pair<int, int>> pts;
  for (size_t i = 0; i < coeffs.size(); ++i) {
    int v = val_lambda_auto(coeffs[i], lam);
    if (v != kValInfinity) pts.emplace_back(static_cast<int>(i), v);
  }
  if (pts.empty() || pts.front().first != 0)
    throw Error(ErrorKind::PreconditionViolated, "zero constant term: infinite root valuation");
  // lower convex hull, left to right
  std::vector<std::pair<int, int>> hull;
  for (auto pt : pts) {
    while (hull.size() >= 2) {
      auto [x1, y1] = hull[hull.size() - 2];
      auto [x2, y2] = hull.back();
      // drop the middle point if it lies on or above the chord
      int64_t cross = static_cast<int64_t>(x2 - x1) * (pt.second - y1) -
                      static_cast<int64_t>(y2 - y1) * (pt.first - x1);
      if (cross <= 0) hull.pop_back();
      else break;
    }
    hull.push_back(pt);
  }
  std::vector<mpq_class> vals;
  for (size_t i = 1; i < hull.size(); ++i) {
    int dx = hull[i].first - hull[i - 1].first;
    mpq_class s(hull[i - 1].second - hull[i].second, dx);
    s.canonicalize();
    s /= norm;
    for (int j = 0; j < dx; ++j) vals.push_back(s);
  }
  std::sort(vals.begin(), vals.end());
  return vals;
}

std::vector<mpq_class> newton_polygon(const CharPolyRecord& rec, const LambdaPrime& lam) {
  int norm = 1;
  uint64_t q = rec.q;
  int a = 0;
  while (q % lam.l == 0) {
    q /= lam.l;
    ++a;
  }
  if (q == 1 && a > 0) norm = a;
  return newton_polygon_coeffs(rec.coeffs, lam, norm);
}

int calibrate_det_sign() {
  HGParams params = make_hg_params(3, {1, 2});
  FieldTower tower(field_make(7, 1), 2);
  std::vector<int64_t> xs;
  for (int64_t t = 1; t < 6; ++t) xs.push_back(t);
  int sign = 0;
  for (const auto& rec : char_poly_batch(params, tower, xs)) {
    int s = verify_det(rec).observed_sign;
    if (s == 0 || (sign != 0 && s != sign)) return 0;
    sign = s;
  }
  return sign;
}

}  // namespace dwf

// Copyright 2026 The dwork-forge Authors
// Licensed under the Apache License, Version 2.0, see LICENSE for details.
// SPDX-License-Identifier: Apache-2.0

#include "dwork_forge/unitary.hpp"

#include <algorithm>
#include <set>
#include <string>

#include "dwork_forge/errors.hpp"

namespace dwf {

namespace {

FFElem powz(const FieldDesc& F, const FFElem& x, int64_t e) {
  return e >= 0 ? F.pow(x, e) : F.pow(F.inv(x), -e);
}

using Vec = std::vector<FFElem>;

// x^dagger A y
FFElem pairing(const UnitaryContext& ctx, const FFMatrix& A, const Vec& x, const Vec& y) {
  const FieldDesc& F = *ctx.F;
  FFElem acc = F.zero();
  for (size_t i = 0; i < x.size(); ++i) {
    if (x[i].is_zero()) continue;
    FFElem row = F.zero();
    for (size_t j = 0; j < y.size(); ++j) row = F.add(row, F.mul(A[i][j], y[j]));
    acc = F.add(acc, F.mul(ctx.conj(x[i]), row));
  }
  return acc;
}

bool same_matrix(const FFMatrix& A, const FFMatrix& B) { return A == B; }

std::vector<int64_t> sorted_logs(const std::vector<FFElem>& v) {
  std::vector<int64_t> out;
  for (const auto& x : v) out.push_back(x.k);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

UnitaryContext make_unitary(uint32_t p, uint32_t f) {
  if (!is_prime(p)) throw Error(ErrorKind::NotPrime, std::to_string(p) + " is not prime");
  UnitaryContext ctx;
  ctx.p = p;
  ctx.f = f;
  ctx.q = static_cast<int64_t>(ipow(p, f));
  ctx.F = field_make(p, 2 * f);
  return ctx;
}

FFMatrix adjoint(const UnitaryContext& ctx, const FFMatrix& M) {
  FFMatrix T = ff_transpose(M);
  for (auto& row : T)
    for (auto& x : row) x = ctx.conj(x);
  return T;
}

HermitianSpace make_hermitian_space(const UnitaryContext& ctx, FFMatrix A) {
  const size_t n = A.size();
  for (const auto& row : A) {
    if (row.size() != n) throw Error(ErrorKind::ConfigInvalid, "gram matrix must be square");
    for (const auto& x : row)
      if (x.field != ctx.F.get())
        throw Error(ErrorKind::IncompatibleFields, "gram entries must lie in F_{q^2}");
  }
  if (!same_matrix(adjoint(ctx, A), A))
    throw Error(ErrorKind::ConfigInvalid, "gram matrix is not Hermitian");
  HermitianSpace s;
  s.q = ctx.q;
  s.n = n;
  s.nondegenerate = n == 0 || !ff_det(*ctx.F, A).is_zero();
  s.gram = std::move(A);
  return s;
}

std::optional<FFElem> is_gu(const UnitaryContext& ctx, const FFMatrix& M) {
  const FieldDesc& F = *ctx.F;
  if (M.empty()) return F.one();
  FFMatrix P = ff_mul(F, adjoint(ctx, M), M);
  FFElem nu = P[0][0];
  if (nu.is_zero() || ctx.conj(nu) != nu) return std::nullopt;
  for (size_t i = 0; i < P.size(); ++i)
    for (size_t j = 0; j < P.size(); ++j)
      if (P[i][j] != (i == j ? nu : F.zero())) return std::nullopt;
  return nu;
}

FFElem hilbert90_eta(const UnitaryContext& ctx, const FFElem& lambda) {
  const FieldDesc& F = *ctx.F;
  if (lambda.is_zero() || ctx.norm(lambda) != F.one())
    throw Error(ErrorKind::PreconditionViolated, "lambda must have norm 1");
  const int64_t Q = static_cast<int64_t>(F.q());
  for (int64_t k = 0; k < Q - 1; ++k) {
    FFElem eta = F.from_dlog(k);
    if (F.pow(eta, ctx.q - 1) == lambda) return eta;
  }
  throw Error(ErrorKind::NoSolution, "no Hilbert 90 preimage");
}

FFElem norm_preimage(const UnitaryContext& ctx, const FFElem& h) {
  const FieldDesc& F = *ctx.F;
  if (h.is_zero() || ctx.conj(h) != h)
    throw Error(ErrorKind::PreconditionViolated, "norm target must lie in F_q^x");
  const int64_t Q = static_cast<int64_t>(F.q());
  for (int64_t k = 0; k < Q - 1; ++k) {
    FFElem c = F.from_dlog(k);
    if (ctx.norm(c) == h) return c;
  }
  throw Error(ErrorKind::NoSolution, "norm is not surjective");
}

FFMatrix diagonalize_to_identity(const UnitaryContext& ctx, const HermitianSpace& space) {
  const FieldDesc& F = *ctx.F;
  const size_t n = space.n;
  const FFMatrix& A = space.gram;
  if (!space.nondegenerate) throw Error(ErrorKind::Degenerate, "Hermitian form is degenerate");
  std::vector<Vec> work;
  for (size_t i = 0; i < n; ++i) {
    Vec e(n, F.zero());
    e[i] = F.one();
    work.push_back(e);
  }
  std::vector<Vec> cols;
  while (!work.empty()) {
    Vec v;
    size_t drop = work.size();
    for (size_t i = 0; i < work.size() && drop == work.size(); ++i)
      if (!pairing(ctx, A, work[i], work[i]).is_zero()) {
        v = work[i];
        drop = i;
      }
    if (drop == work.size()) {
      // isotropic: mix a pair with nonzero pairing
      for (size_t i = 0; i < work.size() && drop == work.size(); ++i)
        for (size_t j = 0; j < work.size() && drop == work.size(); ++j) {
          if (i == j || pairing(ctx, A, work[i], work[j]).is_zero()) continue;
          for (int64_t k = 0; k + 1 < static_cast<int64_t>(F.q()); ++k) {
            FFElem kappa = F.from_dlog(k);
            Vec cand(n);
            for (size_t r = 0; r < n; ++r) cand[r] = F.add(work[i][r], F.mul(kappa, work[j][r]));
            if (!pairing(ctx, A, cand, cand).is_zero()) {
              v = cand;
              drop = i;
              break;
            }
          }
        }
      if (drop == work.size()) throw Error(ErrorKind::Degenerate, "Hermitian form is degenerate");
    }
    work.erase(work.begin() + static_cast<std::ptrdiff_t>(drop));
    FFElem c = norm_preimage(ctx, F.inv(pairing(ctx, A, v, v)));
    for (auto& x : v) x = F.mul(c, x);
    for (auto& w : work) {
      FFElem h = pairing(ctx, A, v, w);
      for (size_t r = 0; r < n; ++r) w[r] = F.sub(w[r], F.mul(h, v[r]));
    }
    cols.push_back(v);
  }
  FFMatrix C = ff_zero(F, n, n);
  for (size_t j = 0; j < n; ++j)
    for (size_t i = 0; i < n; ++i) C[i][j] = cols[j][i];
  if (!same_matrix(ff_mul(F, ff_mul(F, adjoint(ctx, C), A), C), ff_identity(F, n)))
    throw Error(ErrorKind::Degenerate, "normalization did not reach the identity form");
  return C;
}

GUConjugation conjugate_into_gu(const UnitaryContext& ctx, const std::vector<FFMatrix>& gens,
                                const FFMatrix& P) {
  const FieldDesc& F = *ctx.F;
  const size_t n = P.size();
  FFMatrix Pd = adjoint(ctx, P);
  GUConjugation out;
  out.lambda = F.zero();
  for (size_t i = 0; i < n && out.lambda.is_zero(); ++i)
    for (size_t j = 0; j < n && out.lambda.is_zero(); ++j)
      if (!P[i][j].is_zero()) out.lambda = F.div(Pd[i][j], P[i][j]);
  if (out.lambda.is_zero() || !same_matrix(Pd, ff_scale(F, P, out.lambda)))
    throw Error(ErrorKind::PreconditionViolated, "pairing is not a multiple of its adjoint");
  out.eta = hilbert90_eta(ctx, out.lambda);
  FFMatrix H = ff_scale(F, P, F.inv(out.eta));
  out.C = diagonalize_to_identity(ctx, make_hermitian_space(ctx, H));
  FFMatrix Ci = ff_inverse(F, out.C);
  out.certificate = true;
  for (const auto& M : gens) {
    FFMatrix Mc = ff_mul(F, ff_mul(F, Ci, M), out.C);
    auto nu = is_gu(ctx, Mc);
    FFElem nu_in = F.zero();
    FFMatrix MPM = ff_mul(F, ff_mul(F, adjoint(ctx, M), P), M);
    for (size_t i = 0; i < n && nu_in.is_zero(); ++i)
      for (size_t j = 0; j < n && nu_in.is_zero(); ++j)
        if (!P[i][j].is_zero()) nu_in = F.div(MPM[i][j], P[i][j]);
    if (!nu || *nu != nu_in || !same_matrix(MPM, ff_scale(F, P, nu_in))) out.certificate = false;
    out.generators.push_back(std::move(Mc));
    out.multipliers.push_back(nu ? *nu : F.zero());
  }
  return out;
}

SymPowerEmbed sym_power_embed(const UnitaryContext& ctx, int n, int m, int64_t beta) {
  const FieldDesc& F = *ctx.F;
  const uint32_t p = ctx.p;
  if (ctx.f != 1 || p < 3) throw Error(ErrorKind::ConfigInvalid, "needs F_{p^2} with p odd");
  if (m < 1 || m > static_cast<int>(p)) throw Error(ErrorKind::ConfigInvalid, "need 1 <= m <= p");
  if (beta == 0)
    for (beta = 2; mult_order(static_cast<uint64_t>(beta), p) != p - 1; ++beta) {
    }
  beta = ((beta % p) + p) % p;
  if (beta == 0) throw Error(ErrorKind::ConfigInvalid, "beta must be a unit mod p");
  SymPowerEmbed out;
  out.p = p;
  out.beta = beta;
  out.alpha = beta * beta % p;
  out.n = n;
  out.m = m;
  const int k = m - 1;
  const FFElem b = F.from_int(beta);
  FFMatrix D = ff_zero(F, m, m);
  for (int i = 0; i <= k; ++i) D[i][i] = powz(F, b, static_cast<int64_t>(n) * (k - 2 * i));
  out.form = ff_zero(F, m, m);
  int64_t binom = 1;
  for (int i = 0; i <= k; ++i) {
    FFElem v = F.inv(F.from_int(binom));
    out.form[i][k - i] = i % 2 == 0 ? v : F.neg(v);
    binom = binom * (k - i) / (i + 1);
  }
  auto conj = conjugate_into_gu(ctx, {D}, out.form);
  out.matrix = conj.generators[0];
  auto nu = is_gu(ctx, out.matrix);
  out.in_su = nu && *nu == F.one() && ff_det(F, out.matrix) == F.one();
  out.eigenvalues = ff_poly_roots(F, ff_charpoly(F, out.matrix));
  std::vector<FFElem> target;
  const FFElem a = F.from_int(out.alpha);
  for (int j = 0; j < m; ++j) target.push_back(powz(F, a, static_cast<int64_t>(n) * j));
  out.scalar = F.zero();
  if (static_cast<int>(out.eigenvalues.size()) == m) {
    auto have = sorted_logs(out.eigenvalues);
    for (const auto& r : out.eigenvalues) {
      std::vector<FFElem> scaled;
      for (const auto& t : target) scaled.push_back(F.mul(r, t));
      if (sorted_logs(scaled) == have) {
        out.scalar = r;
        out.spectrum_ok = true;
        break;
      }
    }
  }
  return out;
}

InducedSpectrum induced_spectrum(const Field& base, const std::vector<FFElem>& psi,
                                 bool frobenius_case) {
  const FieldDesc& F = *base;
  const size_t m = psi.size();
  if (m < 2) throw Error(ErrorKind::ConfigInvalid, "need m >= 2");
  for (const auto& x : psi)
    if (x.field != &F || x.is_zero())
      throw Error(ErrorKind::ConfigInvalid, "psi values must be nonzero elements of the base");
  InducedSpectrum out;
  out.matrix = ff_zero(F, m, m);
  for (size_t i = 0; i < m; ++i) {
    if (frobenius_case) out.matrix[(i + 1) % m][i] = psi[i];
    else out.matrix[i][i] = psi[i];
  }
  auto cp = ff_charpoly(F, out.matrix);
  for (uint32_t d = 1; d <= m; ++d) {
    Field amb = d == 1 ? base : field_extension(base, d);
    std::vector<FFElem> poly;
    for (const auto& c : cp) poly.push_back(d == 1 ? c : amb->embed_from_base(c));
    auto roots = ff_poly_roots(*amb, poly);
    if (roots.size() != m) continue;
    out.ambient = amb;
    out.eigenvalues = roots;
    std::set<int64_t> ratios;
    for (const auto& r : roots) {
      FFElem z = amb->div(r, roots[0]);
      if (amb->pow(z, static_cast<int64_t>(m)) == amb->one()) ratios.insert(z.k);
    }
    out.ratio_ok = ratios.size() == m;
    return out;
  }
  throw Error(ErrorKind::RootFindingFailed, "characteristic polynomial does not split");
}

bool eigenvalue_genericity(int64_t alpha, int m, int n, uint32_t p) {
  if (!is_prime(p)) throw Error(ErrorKind::NotPrime, std::to_string(p) + " is not prime");
  if (m < 1 || n < 1) throw Error(ErrorKind::ConfigInvalid, "m and n must be positive");
  if (m % static_cast<int>(p) == 0) throw Error(ErrorKind::ConfigInvalid, "p divides m");
  alpha = ((alpha % p) + p) % p;
  if (alpha == 0) throw Error(ErrorKind::ConfigInvalid, "alpha must be a unit mod p");
  uint32_t d = m == 1 ? 1 : static_cast<uint32_t>(mult_order(p, static_cast<uint64_t>(m)));
  Field F = field_make(p, d);
  const int64_t Q = static_cast<int64_t>(F->q());
  FFElem zeta = F->from_dlog((Q - 1) / m);
  FFElem a = F->from_int(alpha);
  std::set<int64_t> seen;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < m; ++j) seen.insert(F->mul(F->pow(a, i), F->pow(zeta, j)).k);
  return static_cast<int64_t>(seen.size()) == static_cast<int64_t>(m) * n;
}

FFMatrix random_hermitian(const UnitaryContext& ctx, size_t n, std::mt19937_64& rng) {
  const FieldDesc& F = *ctx.F;
  const uint64_t Q = F.q();
  const uint64_t q = static_cast<uint64_t>(ctx.q);
  for (;;) {
    FFMatrix A = ff_zero(F, n, n);
    for (size_t i = 0; i < n; ++i) {
      uint64_t r = rng() % q;
      A[i][i] = r == 0 ? F.zero() : F.from_dlog(static_cast<int64_t>((r - 1) * (q + 1)));
      for (size_t j = i + 1; j < n; ++j) {
        uint64_t s = rng() % Q;
        A[i][j] = s == 0 ? F.zero() : F.from_dlog(static_cast<int64_t>(s - 1));
        A[j][i] = ctx.conj(A[i][j]);
      }
    }
    if (!ff_det(F, A).is_zero()) return A;
  }
}

}  // namespace dwf

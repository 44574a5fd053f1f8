// Copyright 2026 The dwork-forge Authors
// Licensed under the Apache License, Version 2.0, see LICENSE for details.
// SPDX-License-Identifier: Apache-2.0

#include "dwork_forge/ff_matrix.hpp"

#include <utility>

#include "dwork_forge/errors.hpp"

namespace dwf {

FFMatrix ff_zero(const FieldDesc& F, size_t rows, size_t cols) {
  return FFMatrix(rows, std::vector<FFElem>(cols, F.zero()));
}

FFMatrix ff_identity(const FieldDesc& F, size_t n) {
  FFMatrix I = ff_zero(F, n, n);
  for (size_t i = 0; i < n; ++i) I[i][i] = F.one();
  return I;
}

FFMatrix ff_mul(const FieldDesc& F, const FFMatrix& A, const FFMatrix& B) {
  const size_t r = A.size(), m = B.size(), c = B.empty() ? 0 : B[0].size();
  FFMatrix C = ff_zero(F, r, c);
  for (size_t i = 0; i < r; ++i)
    for (size_t k = 0; k < m; ++k) {
      if (A[i][k].is_zero()) continue;
      for (size_t j = 0; j < c; ++j) C[i][j] = F.add(C[i][j], F.mul(A[i][k], B[k][j]));
    }
  return C;
}

FFMatrix ff_scale(const FieldDesc& F, const FFMatrix& A, const FFElem& s) {
  FFMatrix B = A;
  for (auto& row : B)
    for (auto& x : row) x = F.mul(x, s);
  return B;
}

FFMatrix ff_transpose(const FFMatrix& A) {
  if (A.empty()) return A;
  FFMatrix T(A[0].size(), std::vector<FFElem>(A.size()));
  for (size_t i = 0; i < A.size(); ++i)
    for (size_t j = 0; j < A[0].size(); ++j) T[j][i] = A[i][j];
  return T;
}

FFElem ff_det(const FieldDesc& F, FFMatrix A) {
  const size_t n = A.size();
  FFElem det = F.one();
  for (size_t c = 0; c < n; ++c) {
    size_t piv = c;
    while (piv < n && A[piv][c].is_zero()) ++piv;
    if (piv == n) return F.zero();
    if (piv != c) {
      std::swap(A[piv], A[c]);
      det = F.neg(det);
    }
    det = F.mul(det, A[c][c]);
    FFElem inv = F.inv(A[c][c]);
    for (size_t r = c + 1; r < n; ++r) {
      if (A[r][c].is_zero()) continue;
      FFElem fct = F.mul(A[r][c], inv);
      for (size_t j = c; j < n; ++j) A[r][j] = F.sub(A[r][j], F.mul(fct, A[c][j]));
    }
  }
  return det;
}

namespace {

// Reduced row echelon form in place; returns pivot columns.
std::vector<size_t> rref(const FieldDesc& F, FFMatrix& A, size_t ncols) {
  std::vector<size_t> pivots;
  size_t row = 0;
  for (size_t c = 0; c < ncols && row < A.size(); ++c) {
    size_t piv = row;
    while (piv < A.size() && A[piv][c].is_zero()) ++piv;
    if (piv == A.size()) continue;
    std::swap(A[piv], A[row]);
    FFElem inv = F.inv(A[row][c]);
    for (auto& x : A[row]) x = F.mul(x, inv);
    for (size_t r = 0; r < A.size(); ++r) {
      if (r == row || A[r][c].is_zero()) continue;
      FFElem fct = A[r][c];
      for (size_t j = 0; j < A[r].size(); ++j)
        if (!A[row][j].is_zero()) A[r][j] = F.sub(A[r][j], F.mul(fct, A[row][j]));
    }
    pivots.push_back(c);
    ++row;
  }
  return pivots;
}

}  // namespace

int ff_rank(const FieldDesc& F, FFMatrix A) {
  if (A.empty()) return 0;
  return static_cast<int>(rref(F, A, A[0].size()).size());
}

FFMatrix ff_inverse(const FieldDesc& F, const FFMatrix& A) {
  const size_t n = A.size();
  FFMatrix M = A;
  for (size_t i = 0; i < n; ++i) {
    M[i].resize(2 * n, F.zero());
    M[i][n + i] = F.one();
  }
  auto piv = rref(F, M, n);
  if (piv.size() != n) throw Error(ErrorKind::Degenerate, "matrix is singular");
  FFMatrix inv(n);
  for (size_t i = 0; i < n; ++i) inv[i].assign(M[i].begin() + n, M[i].end());
  return inv;
}

LinearSolution ff_solve(const FieldDesc& F, FFMatrix A, std::vector<FFElem> b) {
  const size_t ncols = A.empty() ? 0 : A[0].size();
  for (size_t i = 0; i < A.size(); ++i) A[i].push_back(b[i]);
  auto piv = rref(F, A, ncols);
  LinearSolution s;
  s.rank = static_cast<int>(piv.size());
  s.consistent = true;
  for (size_t r = piv.size(); r < A.size(); ++r)
    if (!A[r][ncols].is_zero()) s.consistent = false;
  s.x.assign(ncols, F.zero());
  if (s.consistent)
    for (size_t r = 0; r < piv.size(); ++r) s.x[piv[r]] = A[r][ncols];
  return s;
}

std::vector<FFElem> ff_charpoly(const FieldDesc& F, FFMatrix H) {
  const size_t n = H.size();
  // similarity to upper Hessenberg form
  for (size_t m = 1; m + 1 < n; ++m) {
    size_t i = m;
    while (i < n && H[i][m - 1].is_zero()) ++i;
    if (i == n) continue;
    if (i != m) {
      std::swap(H[i], H[m]);
      for (size_t r = 0; r < n; ++r) std::swap(H[r][i], H[r][m]);
    }
    FFElem inv = F.inv(H[m][m - 1]);
    for (size_t j = m + 1; j < n; ++j) {
      FFElem u = F.mul(H[j][m - 1], inv);
      if (u.is_zero()) continue;
      for (size_t c = 0; c < n; ++c) H[j][c] = F.sub(H[j][c], F.mul(u, H[m][c]));
      for (size_t r = 0; r < n; ++r) H[r][m] = F.add(H[r][m], F.mul(u, H[r][j]));
    }
  }
  // p_k = char poly of the leading k x k block
  std::vector<std::vector<FFElem>> p(n + 1);
  p[0] = {F.one()};
  for (size_t k = 1; k <= n; ++k) {
    std::vector<FFElem> cur(k + 1, F.zero());
    for (size_t i = 0; i < p[k - 1].size(); ++i) {
      cur[i + 1] = F.add(cur[i + 1], p[k - 1][i]);
      cur[i] = F.sub(cur[i], F.mul(H[k - 1][k - 1], p[k - 1][i]));
    }
    FFElem t = F.one();
    for (size_t i = 1; i < k; ++i) {
      t = F.mul(t, H[k - i][k - i - 1]);
      FFElem fct = F.mul(t, H[k - i - 1][k - 1]);
      if (fct.is_zero()) continue;
      for (size_t j = 0; j < p[k - i - 1].size(); ++j)
        cur[j] = F.sub(cur[j], F.mul(fct, p[k - i - 1][j]));
    }
    p[k] = cur;
  }
  return p[n];
}

std::vector<FFElem> ff_poly_roots(const FieldDesc& F, std::vector<FFElem> poly) {
  std::vector<FFElem> roots;
  auto eval = [&](const std::vector<FFElem>& c, const FFElem& z) {
    FFElem acc = F.zero();
    for (size_t i = c.size(); i-- > 0;) acc = F.add(F.mul(acc, z), c[i]);
    return acc;
  };
  auto candidates = [&](auto&& fn) {
    fn(F.zero());
    for (int64_t k = 0; k < static_cast<int64_t>(F.q() - 1); ++k) fn(F.from_dlog(k));
  };
  candidates([&](const FFElem& z) {
    while (poly.size() > 1 && eval(poly, z).is_zero()) {
      roots.push_back(z);
      // synthetic division by (X - z)
      std::vector<FFElem> quo(poly.size() - 1, F.zero());
      FFElem carry = F.zero();
      for (size_t i = poly.size(); i-- > 1;) {
        carry = F.add(poly[i], F.mul(carry, z));
        quo[i - 1] = carry;
      }
      poly = quo;
    }
  });
  return roots;
}

}  // namespace dwf

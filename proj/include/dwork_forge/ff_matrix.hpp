// Copyright 2026 The dwork-forge Authors
// Licensed under the Apache License, Version 2.0, see LICENSE for details.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <vector>

#include "dwork_forge/finite_field.hpp"

namespace dwf {

// Dense matrix over one finite field, row-major.
using FFMatrix = std::vector<std::vector<FFElem>>;

FFMatrix ff_zero(const FieldDesc& F, size_t rows, size_t cols);
FFMatrix ff_identity(const FieldDesc& F, size_t n);
FFMatrix ff_mul(const FieldDesc& F, const FFMatrix& A, const FFMatrix& B);
FFMatrix ff_scale(const FieldDesc& F, const FFMatrix& A, const FFElem& s);
FFMatrix ff_transpose(const FFMatrix& A);
FFElem ff_det(const FieldDesc& F, FFMatrix A);
// Throws Degenerate when singular.
FFMatrix ff_inverse(const FieldDesc& F, const FFMatrix& A);
int ff_rank(const FieldDesc& F, FFMatrix A);

struct LinearSolution {
  bool consistent = false;
  int rank = 0;
  std::vector<FFElem> x;  // one solution (free variables set to 0)
};
LinearSolution ff_solve(const FieldDesc& F, FFMatrix A, std::vector<FFElem> b);

// det(X I - A), low degree first, via Hessenberg reduction.
std::vector<FFElem> ff_charpoly(const FieldDesc& F, FFMatrix A);

// Roots of a polynomial (low first) in F with multiplicity, by exhaustive scan.
std::vector<FFElem> ff_poly_roots(const FieldDesc& F, std::vector<FFElem> poly);

}  // namespace dwf

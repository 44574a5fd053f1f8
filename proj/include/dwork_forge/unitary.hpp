// Copyright 2026 The dwork-forge Authors
// Licensed under the Apache License, Version 2.0, see LICENSE for details.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "dwork_forge/ff_matrix.hpp"
#include "dwork_forge/finite_field.hpp"

namespace dwf {

/// F_{q^2} with q = p^f; conjugation is x -> x^q.
struct UnitaryContext {
  uint32_t p = 0;
  uint32_t f = 0;
  int64_t q = 0;
  Field F;

  FFElem conj(const FFElem& x) const { return F->pow(x, q); }
  FFElem norm(const FFElem& x) const { return F->pow(x, q + 1); }
};
UnitaryContext make_unitary(uint32_t p, uint32_t f = 1);

struct HermitianSpace {
  int64_t q = 0;
  size_t n = 0;
  FFMatrix gram;
  bool nondegenerate = false;
};
// Throws ConfigInvalid unless A is square with A^dagger = A.
HermitianSpace make_hermitian_space(const UnitaryContext& ctx, FFMatrix A);

FFMatrix adjoint(const UnitaryContext& ctx, const FFMatrix& M);
// nu with M^dagger M = nu I, nu in F_q^x; nullopt otherwise.
std::optional<FFElem> is_gu(const UnitaryContext& ctx, const FFMatrix& M);

// eta with eta^q / eta = lambda, for lambda of norm 1. First hit in exponent order.
FFElem hilbert90_eta(const UnitaryContext& ctx, const FFElem& lambda);
// First c in exponent order with c^{q+1} = h, for h in F_q^x.
FFElem norm_preimage(const UnitaryContext& ctx, const FFElem& h);

// C with C^dagger A C = I. Throws Degenerate.
FFMatrix diagonalize_to_identity(const UnitaryContext& ctx, const HermitianSpace& space);

struct GUConjugation {
  FFElem lambda;  // P^dagger = lambda P
  FFElem eta;
  FFMatrix C;     // C^dagger (P / eta) C = I
  std::vector<FFMatrix> generators;
  std::vector<FFElem> multipliers;
  bool certificate = false;
};
// Generators M with M^dagger P M = nu P. Throws PreconditionViolated if P is
// not a lambda-multiple of its adjoint with lambda of norm 1.
GUConjugation conjugate_into_gu(const UnitaryContext& ctx, const std::vector<FFMatrix>& gens,
                                const FFMatrix& P);

struct SymPowerEmbed {
  uint32_t p = 0;
  int64_t beta = 0;
  int64_t alpha = 0;  // beta^2
  int n = 0;
  int m = 0;
  FFMatrix form;      // bilinear form on Sym^{m-1}, entries in F_p
  FFMatrix matrix;    // element of SU_m(F_{p^2})
  std::vector<FFElem> eigenvalues;
  FFElem scalar;      // eigenvalues = scalar * {alpha^{n j}}
  bool in_su = false;
  bool spectrum_ok = false;
};
// Image of diag(beta, beta^{-1})^n under Sym^{m-1}, conjugated into SU_m.
// beta = 0 picks the smallest primitive root mod p.
SymPowerEmbed sym_power_embed(const UnitaryContext& ctx, int n, int m, int64_t beta = 0);

struct InducedSpectrum {
  FFMatrix matrix;                  // over the field of psi
  Field ambient;                    // field holding the eigenvalues
  std::vector<FFElem> eigenvalues;  // in ambient
  bool ratio_ok = false;            // ratios to eigenvalues[0] are exactly mu_m
};
// Frobenius case: M e_i = psi_i e_{i+1} cyclically. Otherwise diag(psi).
// Throws RootFindingFailed if no extension of degree <= m splits the charpoly.
InducedSpectrum induced_spectrum(const Field& base, const std::vector<FFElem>& psi,
                                 bool frobenius_case = true);

// True iff alpha^i zeta^j (i < n, j < m) are pairwise distinct, zeta of order m.
bool eigenvalue_genericity(int64_t alpha, int m, int n, uint32_t p);

// Uniform nondegenerate Hermitian n x n matrix.
FFMatrix random_hermitian(const UnitaryContext& ctx, size_t n, std::mt19937_64& rng);

}  // namespace dwf

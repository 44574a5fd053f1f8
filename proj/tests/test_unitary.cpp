// Copyright 2026 The dwork-forge Authors
// Licensed under the Apache License, Version 2.0, see LICENSE for details.
// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <set>

#include "dwork_forge/errors.hpp"
#include "dwork_forge/unitary.hpp"

using namespace dwf;

TEST_CASE("adjoint and multipliers") {
  UnitaryContext ctx = make_unitary(5);
  const FieldDesc& F = *ctx.F;
  FFMatrix I = ff_identity(F, 3);
  CHECK(adjoint(ctx, I) == I);
  FFElem a = F.from_dlog(7);
  FFMatrix aI = ff_scale(F, I, a);
  CHECK(adjoint(ctx, aI) == ff_scale(F, I, F.pow(a, 5)));
  CHECK(is_gu(ctx, I) == F.one());
  CHECK(is_gu(ctx, aI) == F.pow(a, 6));

  std::mt19937_64 rng(3);
  auto rnd = [&] {
    FFMatrix M = ff_zero(F, 3, 3);
    for (auto& row : M)
      for (auto& x : row) x = F.from_code(static_cast<uint32_t>(rng() % 25));
    return M;
  };
  for (int i = 0; i < 20; ++i) {
    FFMatrix A = rnd(), B = rnd();
    CHECK(adjoint(ctx, ff_mul(F, A, B)) == ff_mul(F, adjoint(ctx, B), adjoint(ctx, A)));
    CHECK(adjoint(ctx, adjoint(ctx, A)) == A);
  }
}

TEST_CASE("Hilbert 90") {
  UnitaryContext ctx = make_unitary(3);
  const FieldDesc& F = *ctx.F;
  CHECK(hilbert90_eta(ctx, F.one()) == F.one());
  FFElem eta = hilbert90_eta(ctx, F.from_int(-1));
  CHECK(F.mul(eta, eta) == F.from_int(-1));
  for (uint32_t q : {3u, 5u, 7u}) {
    UnitaryContext c = make_unitary(q);
    const FieldDesc& G = *c.F;
    for (int64_t k = 0; k < static_cast<int64_t>(q) + 1; ++k) {
      FFElem lam = G.from_dlog(k * (static_cast<int64_t>(q) - 1));
      FFElem e = hilbert90_eta(c, lam);
      CHECK(G.div(c.conj(e), e) == lam);
    }
  }
  try {
    (void)hilbert90_eta(ctx, F.gen());
    FAIL("expected PreconditionViolated");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::PreconditionViolated);
  }
}

TEST_CASE("diagonal forms") {
  UnitaryContext ctx = make_unitary(5);
  const FieldDesc& F = *ctx.F;
  FFMatrix A = {{F.from_int(2), F.zero()}, {F.zero(), F.from_int(3)}};
  FFMatrix C = diagonalize_to_identity(ctx, make_hermitian_space(ctx, A));
  CHECK(C[0][1].is_zero());
  CHECK(C[1][0].is_zero());
  CHECK(ctx.norm(C[0][0]) == F.inv(F.from_int(2)));
  CHECK(ctx.norm(C[1][1]) == F.inv(F.from_int(3)));
  CHECK(diagonalize_to_identity(ctx, make_hermitian_space(ctx, ff_identity(F, 3))) == ff_identity(F, 3));
}

TEST_CASE("isotropic and random forms") {
  UnitaryContext ctx = make_unitary(3);
  const FieldDesc& F = *ctx.F;
  FFMatrix H = {{F.zero(), F.one()}, {F.one(), F.zero()}};
  HermitianSpace sp = make_hermitian_space(ctx, H);
  FFMatrix C = diagonalize_to_identity(ctx, sp);
  CHECK(ff_mul(F, ff_mul(F, adjoint(ctx, C), H), C) == ff_identity(F, 2));

  std::mt19937_64 rng(5);
  for (uint32_t q : {3u, 7u}) {
    UnitaryContext c = make_unitary(q);
    for (int i = 0; i < 30; ++i) {
      HermitianSpace s = make_hermitian_space(c, random_hermitian(c, 4, rng));
      FFMatrix D = diagonalize_to_identity(c, s);
      CHECK(ff_mul(*c.F, ff_mul(*c.F, adjoint(c, D), s.gram), D) == ff_identity(*c.F, 4));
    }
  }
  FFMatrix bad = {{F.one(), F.gen()}, {F.gen(), F.one()}};
  try {
    (void)make_hermitian_space(ctx, bad);
    FAIL("expected ConfigInvalid");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::ConfigInvalid);
  }
  HermitianSpace deg = make_hermitian_space(ctx, ff_zero(F, 2, 2));
  CHECK(!deg.nondegenerate);
  try {
    (void)diagonalize_to_identity(ctx, deg);
    FAIL("expected Degenerate");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Degenerate);
  }
}

TEST_CASE("symplectic generators land in GU_2") {
  UnitaryContext ctx = make_unitary(7);
  const FieldDesc& F = *ctx.F;
  auto e = [&](int64_t v) { return F.from_int(v); };
  FFMatrix J = {{e(0), e(1)}, {e(-1), e(0)}};
  std::vector<FFMatrix> gens = {{{e(1), e(1)}, {e(0), e(1)}}, {{e(1), e(0)}, {e(3), e(1)}},
                                {{e(2), e(0)}, {e(0), e(4)}}};
  GUConjugation g = conjugate_into_gu(ctx, gens, J);
  CHECK(g.certificate);
  CHECK(g.lambda == e(-1));
  for (const auto& nu : g.multipliers) CHECK(nu == F.one());
}

TEST_CASE("symmetric powers") {
  UnitaryContext c7 = make_unitary(7);
  SymPowerEmbed a = sym_power_embed(c7, 1, 2);
  CHECK(a.beta == 3);
  CHECK(a.alpha == 2);
  CHECK(a.in_su);
  CHECK(a.spectrum_ok);
  std::set<uint32_t> eig;
  for (const auto& x : a.eigenvalues) eig.insert(c7.F->code(x));
  CHECK(eig == std::set<uint32_t>{3, 5});

  UnitaryContext c11 = make_unitary(11);
  SymPowerEmbed b = sym_power_embed(c11, 2, 3);
  CHECK(b.beta == 2);
  CHECK(b.alpha == 4);
  CHECK(b.in_su);
  CHECK(b.spectrum_ok);

  SymPowerEmbed one = sym_power_embed(c11, 1, 1);
  CHECK(one.matrix == ff_identity(*c11.F, 1));
}

TEST_CASE("induced spectra") {
  Field F7 = field_make(7, 1);
  // c = 2 is a square mod 7
  InducedSpectrum a = induced_spectrum(F7, {F7->from_int(2), F7->one()});
  CHECK(a.ambient == F7);
  CHECK(a.ratio_ok);
  CHECK(a.matrix[1][0] == F7->from_int(2));
  CHECK(a.matrix[0][1] == F7->one());
  // c = 3 is not
  InducedSpectrum b = induced_spectrum(F7, {F7->from_int(3), F7->one()});
  CHECK(b.ambient->q() == 49);
  CHECK(b.ratio_ok);
  InducedSpectrum c = induced_spectrum(F7, {F7->from_int(3), F7->from_int(5), F7->from_int(2)});
  CHECK(c.ratio_ok);
}

TEST_CASE("eigenvalue genericity") {
  CHECK(!eigenvalue_genericity(1, 1, 2, 11));
  CHECK(eigenvalue_genericity(3, 1, 3, 11));
  CHECK(!eigenvalue_genericity(12, 2, 3, 13));
  CHECK(eigenvalue_genericity(2, 2, 3, 13));
}

// Copyright 2026 The dwork-forge Authors
// Licensed under the Apache License, Version 2.0, see LICENSE for details.
// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <set>

#include "dwork_forge/errors.hpp"
#include "dwork_forge/ff_matrix.hpp"
#include "dwork_forge/finite_field.hpp"

using namespace dwf;

TEST_CASE("prime fields") {
  Field F7 = field_make(7, 1);
  CHECK(F7->q() == 7);
  CHECK(F7->code(F7->gen()) == 3);
  CHECK(field_make(7, 1, 1)->code(field_make(7, 1, 1)->gen()) == 5);
  CHECK(F7->from_int(-1) == F7->from_int(6));
  CHECK(F7->mul(F7->from_int(3), F7->from_int(5)) == F7->one());
  CHECK(F7->add(F7->from_int(4), F7->from_int(3)).is_zero());
  try {
    field_make(4, 1);
    FAIL("expected NotPrime");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotPrime);
  }
}

TEST_CASE("F_9 tables agree with polynomial arithmetic") {
  Field F = field_make(3, 2);
  CHECK(F->q() == 9);
  CHECK(F->defining_poly().size() == 3);
  std::set<uint32_t> codes;
  FFElem x = F->one();
  for (int k = 0; k < 8; ++k) {
    codes.insert(F->code(x));
    x = F->mul(x, F->gen());
  }
  CHECK(codes.size() == 8);
  CHECK(x == F->one());
  for (uint32_t a = 0; a < 9; ++a)
    for (uint32_t b = 0; b < 9; ++b) {
      FFElem ea = F->from_code(a), eb = F->from_code(b);
      CHECK(F->code(F->add(ea, eb)) == F->code_add(a, b));
      CHECK(F->code(F->mul(ea, eb)) == F->code_mul(a, b));
      if (b) CHECK(F->mul(F->div(ea, eb), eb) == ea);
    }
}

TEST_CASE("Zech logarithms") {
  Field F = field_make(5, 2);
  for (int64_t k = 0; k < 24; ++k) {
    FFElem lhs = F->sub(F->one(), F->from_dlog(k));
    int64_t z = F->one_minus(k);
    CHECK(lhs == (z < 0 ? F->zero() : F->from_dlog(z)));
  }
}

TEST_CASE("extensions, embeddings and norms") {
  Field k = field_make(7, 1);
  Field K = field_extension(k, 2);
  CHECK(K->q() == 49);
  CHECK(K->base() == k);
  CHECK(K->norm_to_base(K->gen()) == k->gen());
  CHECK(norm_to_subfield(K->one(), 2) == k->one());
  for (int64_t j = 0; j < 6; ++j) {
    FFElem a = k->from_dlog(j);
    FFElem e = K->embed_from_base(a);
    CHECK(K->pow(e, 7) == e);
    CHECK(K->norm_to_base(e) == k->pow(a, 2));
  }
  // norm is onto F_q^x for small towers
  for (auto [p, d] : {std::pair{2u, 3u}, std::pair{3u, 2u}, std::pair{5u, 2u}, std::pair{3u, 3u}}) {
    Field b = field_make(p, 1);
    Field E = field_extension(b, d);
    std::set<int64_t> image;
    for (int64_t j = 0; j + 1 < static_cast<int64_t>(E->q()); ++j)
      image.insert(E->norm_to_base(E->from_dlog(j)).k);
    CHECK(image.size() == b->q() - 1);
  }
}

TEST_CASE("characters") {
  Field F7 = field_make(7, 1);
  CHECK(char_value(3, 0, F7->from_int(5)) == CyclotomicInt::from_int(3, 1));
  CHECK(char_value(3, 1, F7->zero()).is_zero());
  CHECK(char_value(3, 1, F7->gen()) == CyclotomicInt::zeta_pow(3, 1));
  CHECK(char_exponent(3, 2, F7->gen()) == 2);
  CHECK(char_exponent(3, 1, F7->zero()) == -1);
}

TEST_CASE("matrices") {
  Field F = field_make(5, 1);
  auto e = [&](int64_t v) { return F->from_int(v); };
  FFMatrix A = {{e(1), e(2)}, {e(3), e(4)}};
  CHECK(ff_det(*F, A) == e(-2));
  CHECK(ff_mul(*F, A, ff_inverse(*F, A)) == ff_identity(*F, 2));
  // X^2 - 5X - 2 = X^2 + 3 mod 5
  CHECK(ff_charpoly(*F, A) == std::vector<FFElem>{e(3), e(0), e(1)});
  FFMatrix S = {{e(1), e(2)}, {e(2), e(4)}};
  CHECK(ff_rank(*F, S) == 1);
  auto sol = ff_solve(*F, S, {e(1), e(2)});
  CHECK(sol.consistent);
  CHECK(!ff_solve(*F, S, {e(1), e(1)}).consistent);
  // (X - 2)^2 (X - 3)
  auto roots = ff_poly_roots(*F, {e(-12), e(16), e(-7), e(1)});
  std::multiset<uint32_t> r;
  for (auto x : roots) r.insert(F->code(x));
  CHECK(r == std::multiset<uint32_t>{2, 2, 3});
  try {
    (void)ff_inverse(*F, S);
    FAIL("expected Degenerate");
  } catch (const Error& err) {
    CHECK(err.kind() == ErrorKind::Degenerate);
  }
}

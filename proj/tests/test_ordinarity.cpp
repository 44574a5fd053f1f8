// Copyright 2026 The dwork-forge Authors
// Licensed under the Apache License, Version 2.0, see LICENSE for details.
// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "dwork_forge/errors.hpp"
#include "dwork_forge/ordinarity.hpp"

using namespace dwf;

TEST_CASE("u polynomial, N = 3, l = 7") {
  OrdinaryTest T = make_ordinary_test(make_hg_params(3, {1, 2}), 7);
  CHECK(T.c == std::vector<int64_t>{2, 4});
  CHECK(T.u_coeffs == std::vector<uint32_t>{1, 1, 6});
  CHECK(exponents_consistent(T));
}

TEST_CASE("u polynomial, N = 11, l = 23") {
  OrdinaryTest T = make_ordinary_test(make_hg_params(11, {1, 2, 8}), 23);
  CHECK(T.c == std::vector<int64_t>{2, 4, 16});
  CHECK(T.u_coeffs == std::vector<uint32_t>{1, 10, 7});
  CHECK(exponents_consistent(T));
}

TEST_CASE("l dividing N is rejected") {
  try {
    (void)make_ordinary_test(make_hg_params(3, {1, 2}), 3);
    FAIL("expected ConfigInvalid");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::ConfigInvalid);
  }
}

TEST_CASE("norm identity over k(v) and its quadratic extension") {
  OrdinaryTest T = make_ordinary_test(make_hg_params(3, {1, 2}), 7);
  for (uint32_t d = 1; d <= 2; ++d) {
    Field k = ordinary_field(T, d);
    NormIdentityReport rep = verify_norm_identity(T, k, d == 1);
    CHECK(rep.rows.size() == k->q() - 2);
    CHECK(rep.failures == 0);
  }
}

TEST_CASE("unit-root clause") {
  HGParams P = make_hg_params(3, {1, 2});
  OrdinaryTest T = make_ordinary_test(P, 7);
  Field k = ordinary_field(T, 1);
  FieldTower tower(k, 2);
  for (int x = 2; x <= 6; ++x) {
    CharPolyRecord rec = char_poly(P, tower, k->from_int(x));
    rec.slopes = newton_polygon(rec, T.lambda);
    UnitRootReport u = unit_root_check(T, rec, eval_u(T, k->from_int(x)));
    CHECK(u.pass);
    if (u.applicable) CHECK(u.min_slope_zero);
  }
}

TEST_CASE("Lucas congruence") {
  // C(c (l^2 - 1)/(l - 1), r0 + r1 l) = C(c, r0) C(c, r1) mod l
  CHECK(lucas_instance(2, 5, {1, 2}, 5));
  CHECK(lucas_instance(3, 7, {3, 0, 2}, 7));
  std::mt19937_64 rng(11);
  int failures = -1;
  CHECK(lucas_check(5, 3, 100, rng, &failures));
  CHECK(failures == 0);
}

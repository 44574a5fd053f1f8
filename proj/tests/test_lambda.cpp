// Copyright 2026 The dwork-forge Authors
// Licensed under the Apache License, Version 2.0, see LICENSE for details.
// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "dwork_forge/errors.hpp"
#include "dwork_forge/lambda_prime.hpp"

using namespace dwf;

TEST_CASE("residue degree and lifted root") {
  LambdaPrime a = make_lambda(11, 23);
  CHECK(a.d == 1);
  CHECK(lambda_root_ok(a));
  LambdaPrime b = make_lambda(5, 7);
  CHECK(b.d == 4);
  CHECK(b.residue->q() == 2401);
  CHECK(lambda_root_ok(b));
  LambdaPrime c = make_lambda(3, 7);
  CHECK(c.d == 1);
}

TEST_CASE("reduction is a ring map") {
  LambdaPrime lam = make_lambda(5, 11);
  const FieldDesc& k = *lam.residue;
  FFElem z = zeta_image(lam);
  CHECK(k.pow(z, 5) == k.one());
  CHECK(z != k.one());
  CHECK(reduce_mod_lambda(CyclotomicInt::from_int(5, 11), lam).is_zero());
  CHECK(reduce_mod_lambda(CyclotomicInt::zeta_pow(5, 1), lam) == z);
  CyclotomicInt a(5, {3, 1, 0, 2}), b(5, {-1, 4, 7, 0});
  CHECK(reduce_mod_lambda(a * b, lam) ==
        k.mul(reduce_mod_lambda(a, lam), reduce_mod_lambda(b, lam)));
  CHECK(reduce_mod_lambda(a + b, lam) ==
        k.add(reduce_mod_lambda(a, lam), reduce_mod_lambda(b, lam)));
}

TEST_CASE("valuations") {
  LambdaPrime lam = make_lambda(3, 7);
  CHECK(val_lambda(CyclotomicInt::from_int(3, 1), lam) == 0);
  CHECK(val_lambda(CyclotomicInt::from_int(3, 7), lam) == 1);
  CHECK(val_lambda(CyclotomicInt(3), lam) == kValInfinity);
  CyclotomicInt u = CyclotomicInt::zeta_pow(3, 1) + CyclotomicInt::from_int(3, 3);
  int vu = val_lambda(u, lam);
  CHECK(val_lambda(u * mpz_class(343), lam) == vu + 3);
  // 7 = (2 - zeta)(2 - zeta^2) up to a unit over Z[zeta_3]: one factor has valuation 1
  CyclotomicInt f1 = CyclotomicInt::from_int(3, 2) - CyclotomicInt::zeta_pow(3, 1);
  CyclotomicInt f2 = CyclotomicInt::from_int(3, 2) - CyclotomicInt::zeta_pow(3, 2);
  CHECK(val_lambda(f1, lam) + val_lambda(f2, lam) == 1);
}

TEST_CASE("precision") {
  LambdaPrime lam = make_lambda(3, 7, 4);
  CyclotomicInt big = CyclotomicInt::from_int(3, mpz_class(7) * 7 * 7 * 7 * 7 * 7);
  try {
    (void)val_lambda(big, lam);
    FAIL("expected PrecisionExhausted");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::PrecisionExhausted);
  }
  CHECK(val_lambda_auto(big, lam) == 6);
}

// Copyright 2026 The dwork-forge Authors
// Licensed under the Apache License, Version 2.0, see LICENSE for details.
// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "dwork_forge/errors.hpp"
#include "dwork_forge/hypergeometric.hpp"
#include "dwork_forge/lambda_prime.hpp"

using namespace dwf;

TEST_CASE("exponent selection") {
  HGParams a = select_chi(11, 3);
  CHECK(a.R == std::vector<int>{1, 2, 8});
  CHECK(a.sum_zero);
  CHECK(a.trivial_stabilizer);
  CHECK(!a.warning);
  HGParams b = select_chi(3, 2);
  CHECK(b.R == std::vector<int>{1, 2});
  CHECK(b.warning);
  HGParams c = select_chi(7, 3);
  CHECK((c.R == std::vector<int>{1, 2, 4} || c.R == std::vector<int>{3, 5, 6}));
  CHECK(c.warning);
}

TEST_CASE("direct sums at N = 3, q = 7") {
  HGParams P = make_hg_params(3, {1, 2});
  Field k = field_make(7, 1);
  // frozen: x = 2, ..., 6
  const int expected[] = {-1, 2, -4, 2, -1};
  for (int x = 2; x <= 6; ++x)
    CHECK(trace_naive(P, k->from_int(x)) == CyclotomicInt::from_int(3, expected[x - 2]));
  try {
    (void)trace_naive(P, k->one());
    FAIL("expected BadPoint");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::BadPoint);
  }
}

TEST_CASE("convolution engine matches direct summation") {
  struct Cfg {
    int N;
    std::vector<int> R;
    uint32_t p, f;
  };
  for (const Cfg& c : {Cfg{3, {1, 2}, 7, 1}, Cfg{3, {1, 2}, 2, 2}, Cfg{5, {1, 4}, 11, 1},
                       Cfg{5, {1, 2, 3, 4}, 11, 1}, Cfg{7, {1, 2, 4}, 29, 1}, Cfg{3, {1, 2}, 5, 2}}) {
    HGParams P = make_hg_params(c.N, c.R);
    Field k = field_make(c.p, c.f);
    auto fast = trace_all_fast(P, k);
    CHECK(fast.size() == k->q() - 2);
    for (const auto& [dl, t] : fast) CHECK(t == trace_naive(P, k->from_dlog(dl)));
  }
}

TEST_CASE("Newton identities round trip") {
  HGParams P = make_hg_params(11, {1, 2, 8});
  FieldTower tower(field_make(23, 1), 3);
  CharPolyRecord rec = char_poly(P, tower, tower.base()->from_int(5));
  CHECK(rec.coeffs.size() == 4);
  CHECK(rec.coeffs[3] == CyclotomicInt::from_int(11, 1));
  CHECK(traces_from_coeffs(rec.coeffs) == rec.traces);
  CHECK(coeffs_from_traces(rec.traces, 11) == rec.coeffs);
}

TEST_CASE("determinant and purity") {
  CHECK(calibrate_det_sign() == kDetSign);
  HGParams P = make_hg_params(5, {2, 3});
  FieldTower tower(field_make(31, 1), 2);
  for (int x : {2, 7, 30}) {
    CharPolyRecord rec = char_poly(P, tower, tower.base()->from_int(x));
    DetReport d = verify_det(rec);
    CHECK(d.abs_pass);
    CHECK(d.signed_applicable);
    CHECK(d.signed_pass);
    CHECK(d.observed_sign == 1);
    CHECK(verify_purity(rec).pass);
  }
}

TEST_CASE("completion beyond the direct-scan limit") {
  HGParams P = make_hg_params(11, {1, 2, 8});
  Field k = field_extension(field_make(23, 1), 2);
  FieldTower tower(k, 3);
  CharPolyRecord rec = char_poly(P, tower, k->from_dlog(5));
  CHECK(rec.direct_traces == 1);
  CHECK(verify_det(rec).signed_pass);
  CHECK(verify_purity(rec).pass);
}

TEST_CASE("Newton polygon") {
  LambdaPrime lam = make_lambda(3, 7);
  // (X - 1)(X - 7): slopes 0 and 1 at q = 7
  std::vector<CyclotomicInt> co = {CyclotomicInt::from_int(3, 7), CyclotomicInt::from_int(3, -8),
                                   CyclotomicInt::from_int(3, 1)};
  auto s = newton_polygon_coeffs(co, lam, 1);
  CHECK(s == std::vector<mpq_class>{0, 1});
}

// Copyright 2026 The dwork-forge Authors
// Licensed under the Apache License, Version 2.0, see LICENSE for details.
// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "dwork_forge/cyclotomic.hpp"
#include "dwork_forge/errors.hpp"

using namespace dwf;

TEST_CASE("cyclotomic polynomials") {
  CHECK(cyclotomic_poly(3) == std::vector<int64_t>{1, 1, 1});
  CHECK(cyclotomic_poly(4) == std::vector<int64_t>{1, 0, 1});
  CHECK(cyclotomic_poly(6) == std::vector<int64_t>{1, -1, 1});
  CHECK(cyclotomic_poly(12) == std::vector<int64_t>{1, 0, -1, 0, 1});
  CHECK(euler_phi(11) == 10);
  CHECK(euler_phi(24) == 8);
}

TEST_CASE("ring arithmetic in Z[zeta_3]") {
  auto z = CyclotomicInt::zeta_pow(3, 1);
  auto one = CyclotomicInt::from_int(3, 1);
  // zeta^2 = -1 - zeta
  CHECK(z * z == CyclotomicInt(3, {-1, -1}));
  CHECK(z * z * z == one);
  CHECK(CyclotomicInt::zeta_pow(3, -1) == z * z);
  CHECK(one + z + z * z == CyclotomicInt(3));
  CHECK(conj(z) == CyclotomicInt(3, {-1, -1}));
  CHECK(conj(one) == one);
  CHECK((z * mpz_class(4)).to_string() == "[0,4]");
}

TEST_CASE("group ring images") {
  // 2 + zeta^2 over N = 3
  CHECK(CyclotomicInt::from_group_ring(3, {2, 0, 1}) == CyclotomicInt(3, {1, -1}));
  CHECK(CyclotomicInt::from_group_ring(5, {1, 1, 1, 1, 1}).is_zero());
}

TEST_CASE("exact division") {
  CyclotomicInt a(5, {6, -9, 3, 0});
  CHECK(a.exact_div(3) == CyclotomicInt(5, {2, -3, 1, 0}));
  try {
    (void)a.exact_div(2);
    FAIL("expected ExactDivisionFailed");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::ExactDivisionFailed);
  }
}

TEST_CASE("complex embeddings") {
  auto i4 = embed_complex(CyclotomicInt::zeta_pow(4, 1), 1);
  CHECK(std::abs(i4 - std::complex<double>(0, 1)) < 1e-12);
  CHECK(std::abs(embed_complex(CyclotomicInt::from_int(7, 1), 3) - 1.0) < 1e-12);
  CHECK(embedding_indices(12) == std::vector<int>{1, 5, 7, 11});

  std::mt19937_64 rng(7);
  for (int N : {5, 7, 9, 15, 24}) {
    int phi = euler_phi(N);
    for (int trial = 0; trial < 20; ++trial) {
      std::vector<mpz_class> ca(phi), cb(phi);
      for (int i = 0; i < phi; ++i) {
        ca[i] = static_cast<long>(rng() % 2001) - 1000;
        cb[i] = static_cast<long>(rng() % 2001) - 1000;
      }
      CyclotomicInt a(N, ca), b(N, cb);
      CHECK(conj(conj(a)) == a);
      for (int r : embedding_indices(N)) {
        auto lhs = embed_complex(a * b, r);
        auto rhs = embed_complex(a, r) * embed_complex(b, r);
        CHECK(std::abs(lhs - rhs) < 1e-9 * (1 + std::abs(rhs)));
      }
    }
  }
}

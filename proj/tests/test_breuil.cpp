// Copyright 2026 The dwork-forge Authors
// Licensed under the Apache License, Version 2.0, see LICENSE for details.
// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "dwork_forge/breuil.hpp"
#include "dwork_forge/errors.hpp"

using namespace dwf;

namespace {

ExtProblem problem(const BreuilFrame& fr, std::vector<int64_t> s, std::vector<int64_t> t) {
  return make_ext_problem(make_rank_one(fr, std::move(s), fr.F->one()),
                          make_rank_one(fr, std::move(t), fr.F->one()));
}

ExtCoeffs mono(uint32_t f, size_t j, int64_t deg, const FFElem& c) {
  ExtCoeffs y(f);
  y[j][deg] = c;
  return y;
}

}  // namespace

TEST_CASE("alpha invariants and homs") {
  CHECK(alpha_invariants({0, 0}, 5, 2) == std::vector<mpq_class>{0, 0});
  CHECK(alpha_invariants({4}, 5, 1) == std::vector<mpq_class>{1});
  CHECK(alpha_invariants({1, 2}, 5, 2)[0] == mpq_class(11, 24));
  CHECK(alpha_invariants({1, 2}, 5, 2)[1] == mpq_class(7, 24));

  BreuilFrame fr = make_frame(5, 1, 1);
  auto one = fr.F->one();
  CHECK(hom_exists(make_rank_one(fr, {2}, one), make_rank_one(fr, {2}, one)));
  CHECK(hom_exists(make_rank_one(fr, {4}, one), make_rank_one(fr, {0}, one)));
  CHECK(!hom_exists(make_rank_one(fr, {4}, one), make_rank_one(fr, {0}, fr.F->from_int(2))));
  CHECK(!hom_exists(make_rank_one(fr, {0}, one), make_rank_one(fr, {4}, one)));
}

TEST_CASE("slope data") {
  SlopeData a = slope_data({3}, {0}, 2, 5, 1);
  CHECK(a.n[0] == mpq_class(1, 4));
  CHECK(a.r[0] == 2);
  SlopeData b = slope_data({1}, {1}, 1, 5, 1);
  CHECK(b.n[0] == mpq_class(-1, 4));
  CHECK(b.r[0] == 4);
  SlopeData c = slope_data({3, 4}, {1, 2}, 2, 5, 2);
  CHECK(c.n == std::vector<mpq_class>{0, 0});
  CHECK(c.r == std::vector<int64_t>{1, 1});
  SlopeData d = slope_data({0, 1}, {2, 3}, 1, 5, 2);
  CHECK(d.n == std::vector<mpq_class>{mpq_class(-3, 4), mpq_class(-3, 4)});
  CHECK(slope_invariants_hold({0, 1}, {2, 3}, 1, 5, d));
}

TEST_CASE("allowed and forbidden degrees") {
  BreuilFrame fr = make_frame(5, 1, 2);
  AllowedDegrees none = bk_extension_degrees({0}, {0}, fr, false);
  CHECK(none.poly[0].empty());
  AllowedDegrees ad = bk_extension_degrees({3}, {0}, fr, false);
  CHECK(ad.poly[0] == std::vector<int64_t>{0, 1, 2});
  CHECK(!ad.special[0]);
  AllowedDegrees hom = bk_extension_degrees({4}, {0}, fr, true);
  CHECK(hom.special[0] == 5);
  CHECK(degrees_with_special(hom, 0)[0] == std::vector<int64_t>{0, 1, 2, 3, 5});
  try {
    (void)bk_extension_degrees({3}, {0}, fr, true);
    FAIL("expected SpecialDegreeNotInteger");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::SpecialDegreeNotInteger);
  }

  ExtProblem pb = problem(fr, {3}, {0});
  auto fb = breuil_forbidden_degrees(pb, ad.poly);
  CHECK(fb[0] == std::vector<int64_t>{1});
  CHECK(!forbidden_predicate(mono(1, 0, 1, fr.F->one()), fb));
  CHECK(forbidden_predicate(mono(1, 0, 0, fr.F->one()), fb));
}

TEST_CASE("monodromy") {
  BreuilFrame fr = make_frame(5, 1, 2);
  ExtProblem pb = problem(fr, {3}, {0});
  auto one = fr.F->one();
  MonodromyResult zero = solve_monodromy(pb, ExtCoeffs(1), one);
  CHECK(zero.feasible);
  CHECK(zero.mu[0][0].is_zero());
  CHECK(!solve_monodromy(pb, mono(1, 0, 1, one), one).feasible);
  CHECK(solve_monodromy(pb, mono(1, 0, 0, one), one).feasible);
  CHECK(solve_monodromy(pb, mono(1, 0, 2, fr.F->from_int(3)), one).feasible);
}

TEST_CASE("genericity witnesses") {
  auto w = genericity_obstruction({0}, {1}, make_frame(5, 1, 1));
  REQUIRE(w);
  CHECK(w->i == 0);
  CHECK(w->x == -1);
  CHECK(!w->plus_two);
  // floor(n) = -2 with r = 2 != p: the +1 choice
  auto w3 = genericity_obstruction({0}, {2}, make_frame(3, 1, 1));
  REQUIRE(w3);
  CHECK(w3->x == -2);
  // r_0 = p forces +2: p = 3, e = 2, f = 2, s = (0, 0), t = (0, 1)
  SlopeData sd = slope_data({0, 0}, {0, 1}, 2, 3, 2);
  CHECK(sd.n == std::vector<mpq_class>{mpq_class(-9, 8), mpq_class(-11, 8)});
  CHECK(sd.r == std::vector<int64_t>{3, 2});
  auto w4 = genericity_obstruction({0, 0}, {0, 1}, make_frame(3, 2, 2));
  REQUIRE(w4);
  CHECK(w4->i == 0);
  CHECK(w4->plus_two);
  CHECK(w4->x == -2);
  try {
    (void)genericity_obstruction({3}, {0}, make_frame(5, 1, 2));
    FAIL("expected PreconditionViolated");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::PreconditionViolated);
  }
}

TEST_CASE("change of variables") {
  BreuilFrame fr = make_frame(5, 1, 2);
  ExtProblem pb = problem(fr, {3}, {0});
  std::vector<std::vector<int64_t>> support = {{0, 2}};
  CovResult z = change_of_variables_solver(pb, ExtCoeffs(1), support);
  CHECK(z.feasible);
  CHECK(z.window == 10);
  CHECK(z.y[0].empty());
  CHECK(z.lambda[0].empty());
  // window [2, 3]
  ImageWindows win = etale_image_windows({3}, {0}, fr, false);
  CHECK(win.ranges[0] == std::pair<int64_t, int64_t>{2, 3});
  CHECK(win.dimension == 2);
  for (int64_t deg = 2; deg <= 3; ++deg)
    CHECK(change_of_variables_solver(pb, mono(1, 0, deg, fr.F->one()), support).feasible);
  CHECK(!change_of_variables_solver(pb, mono(1, 0, 1, fr.F->one()), support).feasible);

  // round trip through an explicit change of variables
  ExtCoeffs lam(1);
  lam[0][-1] = fr.F->from_int(2);
  lam[0][1] = fr.F->one();
  ExtCoeffs y = mono(1, 0, 2, fr.F->from_int(4));
  ExtCoeffs yp = apply_change_of_variables(pb, y, lam);
  CovResult back = change_of_variables_solver(pb, yp, support);
  CHECK(back.feasible);
  CHECK(apply_change_of_variables(pb, back.y, back.lambda) == yp);
}

TEST_CASE("witness classes are missed") {
  BreuilFrame fr = make_frame(5, 1, 1);
  ExtProblem pb = problem(fr, {0}, {1});
  auto w = genericity_obstruction({0}, {1}, fr);
  std::vector<std::vector<int64_t>> support = {{}};
  CHECK(!change_of_variables_solver(pb, mono(1, 0, w->x, fr.F->one()), support).feasible);
}

TEST_CASE("chains") {
  CHECK(chain_slope_check({{0}}, 1, 1).pass);
  CHECK(chain_slope_check({{0}, {1}}, 1, 1).pass);
  try {
    (void)chain_slope_check({{1}, {0}}, 1, 1);
    FAIL("expected PreconditionViolated");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::PreconditionViolated);
  }
  ChainSweep a = chain_sweep(2, 1, 1);
  CHECK(a.chains == 1);
  CHECK(a.failures == 0);
  ChainSweep b = chain_sweep(3, 1, 2);
  CHECK(b.chains == 3);
  CHECK(b.failures == 0);
  ChainSweep c = chain_sweep(4, 2, 2);
  CHECK(c.failures == 0);
}

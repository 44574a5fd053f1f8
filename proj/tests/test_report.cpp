// Copyright 2026 The dwork-forge Authors
// Licensed under the Apache License, Version 2.0, see LICENSE for details.
// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "dwork_forge/errors.hpp"
#include "dwork_forge/report.hpp"
#include "dwork_forge/selftest.hpp"

using namespace dwf;

TEST_CASE("report envelope") {
  json r = make_report("demo", {{"rows", json::array({{{"a", 1}, {"b", "x,y"}}})}});
  CHECK(r["schema_version"] == kSchemaVersion);
  CHECK(r["kind"] == "demo");
  CHECK(render(r, "csv") == "# schema_version=1\na,b\n1,\"x,y\"\n");
  CHECK(render(r, "json").back() == '\n');
  try {
    (void)render(r, "xml");
    FAIL("expected ConfigInvalid");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::ConfigInvalid);
  }
}

TEST_CASE("serialization of exact values") {
  CHECK(to_json(CyclotomicInt(3, {-1, 4})) == json::array({"-1", "4"}));
  CHECK(to_json(mpq_class(-3, 4)) == "-3/4");
  Field F = field_make(3, 2);
  FFMatrix M = {{F->from_code(1), F->from_code(5)}, {F->from_code(0), F->from_code(8)}};
  CHECK(to_json(*F, M) == json::parse("[[1,5],[0,8]]"));
  CHECK(matrix_from_json(*F, json::parse("[[1,5],[0,8]]")) == M);
  try {
    (void)matrix_from_json(*F, json::parse("[[1,9],[0,8]]"));
    FAIL("expected ConfigInvalid");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::ConfigInvalid);
  }
}

TEST_CASE("selftest report is reproducible") {
  SelftestOptions opt;
  opt.lucas_samples = 50;
  opt.unitary_forms = 10;
  auto a = selftest_report(run_selftest(opt, {6, 11}), opt).dump();
  auto b = selftest_report(run_selftest(opt, {6, 11}), opt).dump();
  CHECK(a == b);
  CHECK(a.find("seconds") == std::string::npos);
}

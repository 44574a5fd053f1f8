// Copyright 2026 The dwork-forge Authors
// Licensed under the Apache License, Version 2.0, see LICENSE for details.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

#include "json.hpp"

#include "dwork_forge/breuil.hpp"
#include "dwork_forge/cyclotomic.hpp"
#include "dwork_forge/ff_matrix.hpp"
#include "dwork_forge/hypergeometric.hpp"

namespace dwf {

using json = nlohmann::json;

inline constexpr int kSchemaVersion = 1;

// Cyclotomic integers as coefficient strings (power basis, low first).
json to_json(const CyclotomicInt& a);
json to_json(const mpq_class& a);
json to_json(const std::vector<mpq_class>& v);
// Field elements as polynomial-basis codes.
json to_json(const FieldDesc& F, const FFElem& x);
json to_json(const FieldDesc& F, const FFMatrix& M);
json to_json(const FieldDesc& F, const ExtCoeffs& y);
json to_json(const CharPolyRecord& rec);
json to_json(const HGParams& p);

// Parses a matrix of codes; throws ConfigInvalid on shape or range errors.
FFMatrix matrix_from_json(const FieldDesc& F, const json& j);

// Wraps a payload with schema_version and a kind tag.
json make_report(const std::string& kind, json payload);

// Flat rows -> CSV with a leading "# schema_version=N" line; nested values are
// written as compact JSON in quotes.
std::string rows_to_csv(const json& rows);

// Serialized report text: "json" (2-space indent, trailing newline) or "csv"
// (the report's "rows" member). Throws ConfigInvalid for other formats.
std::string render(const json& report, const std::string& format);

// Writes to path, or stdout when path is empty or "-".
void emit(const std::string& text, const std::string& path);

}  // namespace dwf

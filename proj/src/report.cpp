// Copyright 2026 The dwork-forge Authors
// Licensed under the Apache License, Version 2.0, see LICENSE for details.
// SPDX-License-Identifier: Apache-2.0

#include "dwork_forge/report.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

#include "dwork_forge/errors.hpp"

namespace dwf {

json to_json(const CyclotomicInt& a) {
  json out = json::array();
  for (const auto& c : a.coeffs()) out.push_back(c.get_str());
  return out;
}

json to_json(const mpq_class& a) { return a.get_str(); }

json to_json(const std::vector<mpq_class>& v) {
  json out = json::array();
  for (const auto& x : v) out.push_back(x.get_str());
  return out;
}

json to_json(const FieldDesc& F, const FFElem& x) { return F.code(x); }

json to_json(const FieldDesc& F, const FFMatrix& M) {
  json out = json::array();
  for (const auto& row : M) {
    json r = json::array();
    for (const auto& x : row) r.push_back(F.code(x));
    out.push_back(r);
  }
  return out;
}

json to_json(const FieldDesc& F, const ExtCoeffs& y) {
  json out = json::array();
  for (const auto& comp : y) {
    json c = json::object();
    for (const auto& [deg, v] : comp) c[std::to_string(deg)] = F.code(v);
    out.push_back(c);
  }
  return out;
}

json to_json(const HGParams& p) {
  return {{"N", p.N}, {"n", p.n}, {"R", p.R}, {"sum_zero", p.sum_zero},
          {"trivial_stabilizer", p.trivial_stabilizer}, {"warning", p.warning}};
}

json to_json(const CharPolyRecord& rec) {
  json j;
  j["q"] = rec.q;
  j["x_dlog"] = rec.x_dlog;
  json tr = json::array();
  for (const auto& t : rec.traces) tr.push_back(to_json(t));
  j["traces"] = tr;
  json co = json::array();
  for (const auto& c : rec.coeffs) co.push_back(to_json(c));
  j["coeffs"] = co;
  j["direct_traces"] = rec.direct_traces;
  if (rec.slopes) j["slopes"] = to_json(*rec.slopes);
  return j;
}

FFMatrix matrix_from_json(const FieldDesc& F, const json& j) {
  if (!j.is_array() || j.empty()) throw Error(ErrorKind::ConfigInvalid, "matrix must be a nonempty array");
  FFMatrix M;
  for (const auto& row : j) {
    if (!row.is_array() || row.size() != j.size())
      throw Error(ErrorKind::ConfigInvalid, "matrix must be square");
    std::vector<FFElem> r;
    for (const auto& x : row) {
      if (!x.is_number_integer() || x.get<int64_t>() < 0 || x.get<uint64_t>() >= F.q())
        throw Error(ErrorKind::ConfigInvalid, "matrix entries must be codes in [0, q^2)");
      r.push_back(F.from_code(x.get<uint32_t>()));
    }
    M.push_back(std::move(r));
  }
  return M;
}

json make_report(const std::string& kind, json payload) {
  json r;
  r["schema_version"] = kSchemaVersion;
  r["kind"] = kind;
  r["payload"] = std::move(payload);
  return r;
}

namespace {

std::string csv_cell(const json& v) {
  std::string s = v.is_string() ? v.get<std::string>() : v.dump();
  bool quote = s.find_first_of(",\"\n") != std::string::npos;
  if (!quote) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

std::string rows_to_csv(const json& rows) {
  std::ostringstream os;
  os << "# schema_version=" << kSchemaVersion << "\n";
  if (!rows.is_array() || rows.empty()) return os.str();
  std::vector<std::string> keys;
  for (const auto& [k, v] : rows[0].items()) keys.push_back(k);
  for (size_t i = 0; i < keys.size(); ++i) os << (i ? "," : "") << keys[i];
  os << "\n";
  for (const auto& row : rows) {
    for (size_t i = 0; i < keys.size(); ++i)
      os << (i ? "," : "") << (row.contains(keys[i]) ? csv_cell(row[keys[i]]) : "");
    os << "\n";
  }
  return os.str();
}

std::string render(const json& report, const std::string& format) {
  if (format == "json") return report.dump(2) + "\n";
  if (format == "csv") {
    const json& p = report.contains("payload") ? report["payload"] : report;
    return rows_to_csv(p.contains("rows") ? p["rows"] : json::array());
  }
  throw Error(ErrorKind::ConfigInvalid, "format must be json or csv, got " + format);
}

void emit(const std::string& text, const std::string& path) {
  if (path.empty() || path == "-") {
    std::cout << text;
    std::cout.flush();
    return;
  }
  std::ofstream os(path, std::ios::binary);
  if (!os) throw Error(ErrorKind::ConfigInvalid, "cannot open " + path + " for writing");
  os << text;
}

}  // namespace dwf

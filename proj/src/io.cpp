// Copyright 2026 The corrwit developers.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "corrwit/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace corrwit {

namespace {

using nlohmann::json;

constexpr int kSchemaVersion = 1;

cmatrix_t matrix_from_parts(const json& re, const json& im, int rows, const std::string& path) {
  const size_t expected = static_cast<size_t>(rows) * static_cast<size_t>(rows);
  if (!re.is_array() || !im.is_array() || re.size() != expected || im.size() != expected) {
    throw IoError(path + ": re/im must be flat row-major arrays of length " +
                  std::to_string(expected));
  }
  cmatrix_t m(rows, rows);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < rows; ++j) {
      const size_t p = static_cast<size_t>(i) * rows + j;
      if (!re[p].is_number() || !im[p].is_number()) {
        throw IoError(path + ": matrix entries must be numbers");
      }
      m(i, j) = complex_t(re[p].get<double>(), im[p].get<double>());
    }
  return m;
}

void append_matrix_body(std::string& out, const cmatrix_t& m, const std::string& indent) {
  const int rows = static_cast<int>(m.rows());
  out += indent + "\"re\": [";
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < rows; ++j) {
      if (i != 0 || j != 0) out += ", ";
      out += format_double(m(i, j).real());
    }
  out += "],\n" + indent + "\"im\": [";
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < rows; ++j) {
      if (i != 0 || j != 0) out += ", ";
      out += format_double(m(i, j).imag());
    }
  out += "]";
}

}  // namespace

std::string matrix_kind_name(MatrixKind kind) {
  switch (kind) {
    case MatrixKind::state: return "state";
    case MatrixKind::direction: return "direction";
    case MatrixKind::povm: return "povm";
    case MatrixKind::unitary: return "unitary";
  }
  throw std::invalid_argument("matrix_kind_name: unknown kind");
}

MatrixKind matrix_kind_from_name(const std::string& name) {
  if (name == "state") return MatrixKind::state;
  if (name == "direction") return MatrixKind::direction;
  if (name == "povm") return MatrixKind::povm;
  if (name == "unitary") return MatrixKind::unitary;
  throw IoError("unknown matrix kind '" + name + "'");
}

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.16e", x);
  return buf;
}

std::string matrix_json(const cmatrix_t& m, const std::string& indent) {
  std::string out = "{\n";
  append_matrix_body(out, m, indent + "  ");
  out += "\n" + indent + "}";
  return out;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "' for reading");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out << content;
  if (!out) throw IoError("write to '" + path + "' failed");
}

MatrixFile read_matrix_file(const std::string& path) {
  json j;
  try {
    j = json::parse(read_text_file(path));
  } catch (const json::exception& e) {
    throw IoError(path + ": " + e.what());
  }
  if (!j.is_object()) throw IoError(path + ": top level must be an object");
  if (!j.contains("schema_version") || !j["schema_version"].is_number_integer() ||
      j["schema_version"].get<int>() != kSchemaVersion) {
    throw IoError(path + ": schema_version must be " + std::to_string(kSchemaVersion));
  }
  if (!j.contains("kind") || !j["kind"].is_string()) {
    throw IoError(path + ": missing string field 'kind'");
  }
  MatrixFile file;
  file.kind = matrix_kind_from_name(j["kind"].get<std::string>());
  if (!j.contains("d") || !j["d"].is_number_integer() || j["d"].get<int>() < 2) {
    throw IoError(path + ": 'd' must be an integer >= 2");
  }
  file.d = j["d"].get<int>();
  const int rows = file.kind == MatrixKind::unitary ? file.d : file.d * file.d;
  if (file.kind == MatrixKind::povm) {
    if (!j.contains("elements") || !j["elements"].is_array() || j["elements"].empty()) {
      throw IoError(path + ": povm files need a nonempty 'elements' array");
    }
    for (const auto& e : j["elements"]) {
      if (!e.is_object() || !e.contains("re") || !e.contains("im")) {
        throw IoError(path + ": each povm element needs 're' and 'im'");
      }
      file.matrices.push_back(matrix_from_parts(e["re"], e["im"], rows, path));
    }
  } else {
    if (!j.contains("re") || !j.contains("im")) {
      throw IoError(path + ": missing 're'/'im' arrays");
    }
    file.matrices.push_back(matrix_from_parts(j["re"], j["im"], rows, path));
  }
  return file;
}

void write_matrix_file(const std::string& path, const MatrixFile& file) {
  if (file.matrices.empty()) throw std::invalid_argument("write_matrix_file: no matrices");
  const int rows = file.kind == MatrixKind::unitary ? file.d : file.d * file.d;
  for (const auto& m : file.matrices) {
    if (m.rows() != rows || m.cols() != rows) {
      throw std::invalid_argument("write_matrix_file: matrix dimension mismatch");
    }
  }
  if (file.kind != MatrixKind::povm && file.matrices.size() != 1) {
    throw std::invalid_argument("write_matrix_file: this kind holds exactly one matrix");
  }
  std::string out = "{\n";
  out += "  \"schema_version\": " + std::to_string(file.schema_version) + ",\n";
  out += "  \"kind\": \"" + matrix_kind_name(file.kind) + "\",\n";
  out += "  \"d\": " + std::to_string(file.d);
  if (file.kind == MatrixKind::povm) {
    out += ",\n  \"elements\": [\n";
    for (size_t i = 0; i < file.matrices.size(); ++i) {
      out += "    {\n";
      append_matrix_body(out, file.matrices[i], "      ");
      out += "\n    }";
      if (i + 1 < file.matrices.size()) out += ",";
      out += "\n";
    }
    out += "  ]\n";
  } else {
    out += ",\n";
    append_matrix_body(out, file.matrices[0], "  ");
    out += "\n";
  }
  out += "}\n";
  write_text_file(path, out);
}

}  // namespace corrwit

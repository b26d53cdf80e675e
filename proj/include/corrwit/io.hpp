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

#ifndef CORRWIT_IO_HPP
#define CORRWIT_IO_HPP

#include <string>

#include "corrwit/linalg.hpp"

namespace corrwit {

// Raised for unreadable, unparsable or schema-violating files.
struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class MatrixKind { state, direction, povm, unitary };

std::string matrix_kind_name(MatrixKind kind);
MatrixKind matrix_kind_from_name(const std::string& name);

// On-disk representation of one operator (or a POVM element list) on a
// d x d bipartite system; `unitary` files hold a single-factor d x d
// matrix. Matrices are stored as flat row-major "re"/"im" arrays, with
// index (i, k) of the first/second factor flattened to i*d + k. Numbers
// carry 17 significant digits, so write -> read -> write is byte-stable.
struct MatrixFile {
  int schema_version = 1;
  MatrixKind kind = MatrixKind::state;
  int d = 0;
  std::vector<cmatrix_t> matrices;
};

MatrixFile read_matrix_file(const std::string& path);
void write_matrix_file(const std::string& path, const MatrixFile& file);

// Serialization helpers shared by the matrix files and the CLI reports.
std::string format_double(double x);
std::string matrix_json(const cmatrix_t& m, const std::string& indent);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

}  // namespace corrwit

#endif  // CORRWIT_IO_HPP

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

#include <doctest.h>

#include <filesystem>
#include <string>

#include "corrwit/io.hpp"
#include "corrwit/povm.hpp"
#include "corrwit/states.hpp"
#include "test_util.hpp"

using namespace corrwit;
using namespace corrwit_test;

namespace {

std::filesystem::path scratch_dir() {
  const std::filesystem::path dir(CORRWIT_TEST_SCRATCH);
  std::filesystem::create_directories(dir);
  return dir;
}

std::string scratch(const std::string& name) { return (scratch_dir() / name).string(); }

}  // namespace

TEST_CASE("matrix kind names round-trip") {
  for (MatrixKind kind :
       {MatrixKind::state, MatrixKind::direction, MatrixKind::povm, MatrixKind::unitary}) {
    CHECK(matrix_kind_from_name(matrix_kind_name(kind)) == kind);
  }
  CHECK_THROWS_AS(matrix_kind_from_name("density"), IoError);
}

TEST_CASE("doubles survive the write format bit for bit") {
  for (double x : {0.0, -0.0, 1.0 / 3.0, -1e-300, 6.02214076e23, 1e-12}) {
    CHECK(std::stod(format_double(x)) == x);
  }
}

TEST_CASE("state files round-trip exactly") {
  const BipartiteDims dims(2);
  MatrixFile file;
  file.kind = MatrixKind::state;
  file.d = dims.d;
  file.matrices.push_back(sample_cq(dims, 3).mat());
  const std::string path = scratch("state_roundtrip.json");
  write_matrix_file(path, file);
  const MatrixFile back = read_matrix_file(path);
  CHECK(back.kind == MatrixKind::state);
  CHECK(back.d == 2);
  REQUIRE(back.matrices.size() == 1);
  CHECK((back.matrices[0] - file.matrices[0]).norm() == 0.0);
}

TEST_CASE("write-read-write is byte stable") {
  const BipartiteDims dims(3);
  MatrixFile file;
  file.kind = MatrixKind::direction;
  file.d = dims.d;
  file.matrices.push_back(random_direction(dims, 5).mat());
  const std::string first = scratch("direction_first.json");
  const std::string second = scratch("direction_second.json");
  write_matrix_file(first, file);
  MatrixFile back = read_matrix_file(first);
  write_matrix_file(second, back);
  CHECK(read_text_file(first) == read_text_file(second));
}

TEST_CASE("povm files hold every element") {
  const BipartiteDims dims(2);
  const Povm povm = random_povm(dims, 6, 7);
  MatrixFile file;
  file.kind = MatrixKind::povm;
  file.d = dims.d;
  for (const auto& e : povm.elements) file.matrices.push_back(e.mat());
  const std::string path = scratch("povm_roundtrip.json");
  write_matrix_file(path, file);
  const MatrixFile back = read_matrix_file(path);
  REQUIRE(back.matrices.size() == 6);
  for (size_t i = 0; i < 6; ++i) {
    CHECK((back.matrices[i] - povm.elements[i].mat()).norm() == 0.0);
  }
}

TEST_CASE("unitary files store the single-factor dimension") {
  MatrixFile file;
  file.kind = MatrixKind::unitary;
  file.d = 3;
  file.matrices.push_back(random_unitary(3, 9));
  const std::string path = scratch("unitary_roundtrip.json");
  write_matrix_file(path, file);
  const MatrixFile back = read_matrix_file(path);
  CHECK(back.matrices[0].rows() == 3);
  CHECK((back.matrices[0] - file.matrices[0]).norm() == 0.0);
}

TEST_CASE("reading rejects missing files and malformed documents") {
  CHECK_THROWS_AS(read_matrix_file(scratch("does_not_exist.json")), IoError);

  const std::string garbled = scratch("garbled.json");
  write_text_file(garbled, "{ not json");
  CHECK_THROWS_AS(read_matrix_file(garbled), IoError);

  const std::string array_doc = scratch("array_doc.json");
  write_text_file(array_doc, "[1, 2, 3]");
  CHECK_THROWS_AS(read_matrix_file(array_doc), IoError);
}

TEST_CASE("reading rejects schema violations") {
  const BipartiteDims dims(2);
  MatrixFile file;
  file.kind = MatrixKind::state;
  file.d = dims.d;
  file.matrices.push_back(sample_cc(dims, 1).mat());
  const std::string good = scratch("schema_good.json");
  write_matrix_file(good, file);
  const std::string text = read_text_file(good);

  const std::string bad_version = scratch("schema_version.json");
  write_text_file(bad_version, [&] {
    std::string t = text;
    return t.replace(t.find("\"schema_version\": 1"), 19, "\"schema_version\": 2");
  }());
  CHECK_THROWS_AS(read_matrix_file(bad_version), IoError);

  const std::string bad_kind = scratch("schema_kind.json");
  write_text_file(bad_kind, [&] {
    std::string t = text;
    return t.replace(t.find("\"state\""), 7, "\"blob\"");
  }());
  CHECK_THROWS_AS(read_matrix_file(bad_kind), IoError);

  const std::string no_d = scratch("schema_no_d.json");
  write_text_file(no_d, [&] {
    std::string t = text;
    return t.replace(t.find("\"d\""), 3, "\"e\"");
  }());
  CHECK_THROWS_AS(read_matrix_file(no_d), IoError);
}

TEST_CASE("reading rejects length mismatches") {
  const std::string path = scratch("short_re.json");
  write_text_file(path,
                  "{\n  \"schema_version\": 1,\n  \"kind\": \"state\",\n  \"d\": 2,\n"
                  "  \"re\": [1.0, 0.0], \"im\": [0.0, 0.0]\n}\n");
  CHECK_THROWS_AS(read_matrix_file(path), IoError);

  const std::string missing = scratch("missing_im.json");
  write_text_file(missing,
                  "{\n  \"schema_version\": 1,\n  \"kind\": \"unitary\", \"d\": 2,\n"
                  "  \"re\": [1.0, 0.0, 0.0, 1.0]\n}\n");
  CHECK_THROWS_AS(read_matrix_file(missing), IoError);
}

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
#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <sstream>
#include <string>

#include "corrwit/io.hpp"
#include "corrwit/states.hpp"
#include "test_util.hpp"

using namespace corrwit;
using namespace corrwit_test;

namespace {

struct RunResult {
  int code;
  std::string out;
  std::string err;
};

std::filesystem::path scratch_dir() {
  const std::filesystem::path dir =
      std::filesystem::path(CORRWIT_TEST_SCRATCH) / "cli";
  std::filesystem::create_directories(dir);
  return dir;
}

std::string scratch(const std::string& name) { return (scratch_dir() / name).string(); }

RunResult run(const std::string& args, const std::string& env_prefix = "") {
  static int counter = 0;
  const std::string out_path = scratch("stdout_" + std::to_string(counter) + ".txt");
  const std::string err_path = scratch("stderr_" + std::to_string(counter) + ".txt");
  ++counter;
  const std::string cmd = env_prefix + std::string(CORRWIT_CLI_PATH) + " " + args + " > " +
                          out_path + " 2> " + err_path;
  const int raw = std::system(cmd.c_str());
  RunResult res;
  res.code = WEXITSTATUS(raw);
  res.out = read_text_file(out_path);
  res.err = read_text_file(err_path);
  return res;
}

std::string write_state_file(const std::string& name, const cmatrix_t& m, int d,
                             MatrixKind kind = MatrixKind::state) {
  MatrixFile file;
  file.kind = kind;
  file.d = d;
  file.matrices.push_back(m);
  const std::string path = scratch(name);
  write_matrix_file(path, file);
  return path;
}

bool contains(const std::string& haystack, const std::string& needle) {
  return haystack.find(needle) != std::string::npos;
}

std::string strip_wall_clock(const std::string& text) {
  std::istringstream in(text);
  std::string line, out;
  while (std::getline(in, line)) {
    if (contains(line, "wall_clock") || contains(line, "wall clock")) continue;
    out += line + "\n";
  }
  return out;
}

}  // namespace

TEST_CASE("cli classifies a product state as classical") {
  const BipartiteDims dims(2);
  const std::string path = write_state_file("cc_state.json", sample_product(dims, 3).mat(), 2);
  const RunResult res = run("classify " + path);
  CHECK(res.code == 0);
  CHECK(contains(res.out, "\"cc\": true"));
  CHECK(contains(res.out, "\"npt\": false"));
}

TEST_CASE("cli classifies the maximally entangled state as npt") {
  const cvector_t psi = canonical_max_entangled(2);
  const cmatrix_t proj = psi * psi.adjoint();
  const std::string path = write_state_file("npt_state.json", proj, 2);
  const RunResult res = run("classify " + path);
  CHECK(res.code == 0);
  CHECK(contains(res.out, "\"npt\": true"));
  CHECK(contains(res.out, "\"cq\": false"));
}

TEST_CASE("cli exit codes distinguish io errors") {
  CHECK(run("classify " + scratch("no_such_file.json")).code == 2);

  const std::string garbled = scratch("garbled_cli.json");
  write_text_file(garbled, "{ not json");
  CHECK(run("classify " + garbled).code == 2);

  CHECK(run("nonsense-subcommand").code == 2);
  CHECK(run("--help").code == 0);
}

TEST_CASE("cli tolerance can come from the environment") {
  const BipartiteDims dims(2);
  const std::string path = write_state_file("tol_state.json", sample_cq(dims, 5).mat(), 2);
  // Tolerances here are exactly representable doubles so the %.16e echo in
  // the report is byte-predictable.
  const RunResult res = run("classify " + path, "CORRWIT_TOL=0.5 ");
  CHECK(res.code == 0);
  CHECK(contains(res.out, "\"tolerance\": 5.0000000000000000e-01"));
  CHECK(run("classify " + path, "CORRWIT_TOL=abc ").code == 2);
  const RunResult flag = run("classify " + path + " --tol 0.25", "CORRWIT_TOL=0.5 ");
  CHECK(contains(flag.out, "\"tolerance\": 2.5000000000000000e-01"));
}

TEST_CASE("cli witness writes a deterministic certificate") {
  const std::string cert1 = scratch("cert1.json");
  const std::string cert2 = scratch("cert2.json");
  const RunResult r1 = run("witness entangle --dim 2 --seed 7 --out " + cert1);
  const RunResult r2 = run("witness entangle --dim 2 --seed 7 --out " + cert2);
  CHECK(r1.code == 0);
  CHECK(r2.code == 0);
  CHECK(contains(r1.out, "\"kind\": \"entangle\""));
  CHECK(contains(r1.out, "min_pt_eig"));
  CHECK(read_text_file(cert1) == read_text_file(cert2));
  CHECK(contains(read_text_file(cert1), "\"kappa\""));
}

TEST_CASE("cli witness accepts a direction file and fails honestly on invariant input") {
  const BipartiteDims dims(2);
  const Direction xi = random_cq_invariant_direction(dims, 9);
  const std::string path =
      write_state_file("invariant_direction.json", xi.mat(), 2, MatrixKind::direction);
  const RunResult noncq = run("witness noncq --delta " + path);
  CHECK(noncq.code == 1);
  CHECK(contains(noncq.err, "invariant"));

  const RunResult entangle = run("witness entangle --delta " + path);
  CHECK(entangle.code == 0);

  const RunResult noncc = run("witness noncc --delta " + path);
  CHECK(noncc.code == 0);
}

TEST_CASE("cli witness flat reports the closed-form threshold") {
  const RunResult res = run("witness flat --dim 3");
  CHECK(res.code == 0);
  CHECK(contains(res.out, "1.6666666666666666e-01"));
  CHECK(run("witness flat").code == 2);
}

TEST_CASE("cli witness rejects unknown kinds and missing inputs") {
  CHECK(run("witness sideways --dim 2 --seed 1").code == 2);
  CHECK(run("witness entangle").code == 2);
}

TEST_CASE("cli povm build and analyze agree on the minimal measurement") {
  const std::string path = scratch("minimal_cq.json");
  const RunResult build = run("povm build-cq --dim 2 --out " + path);
  CHECK(build.code == 0);
  CHECK(contains(build.out, "\"n_elements\": 13"));
  const RunResult analyze = run("povm analyze " + path);
  CHECK(analyze.code == 0);
  CHECK(contains(analyze.out, "\"valid\": true"));
  CHECK(contains(analyze.out, "\"dim_xe\": 3"));
  CHECK(contains(analyze.out, "\"decides_cq\": true"));
  CHECK(contains(analyze.out, "\"informationally_complete\": false"));
}

TEST_CASE("cli report is deterministic modulo the wall clock") {
  const RunResult r1 = run("report --dim 2 --trials 2 --seed 5 --json");
  const RunResult r2 = run("report --dim 2 --trials 2 --seed 5 --json");
  CHECK(r1.code == 0);
  CHECK(strip_wall_clock(r1.out) == strip_wall_clock(r2.out));
  CHECK(contains(r1.out, "\"property\": \"NPT\""));
  CHECK(contains(r1.out, "\"successes\": 2"));
  CHECK(contains(r1.out, "\"min_outcomes\": 13"));

  const RunResult text = run("report --dim 2 --trials 1 --seed 5");
  CHECK(text.code == 0);
  CHECK(contains(text.out, "NON-CLASSICAL"));
  CHECK(contains(text.out, "1/1"));
}

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

#include <chrono>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "corrwit/detect.hpp"
#include "corrwit/io.hpp"
#include "corrwit/povm.hpp"
#include "corrwit/states.hpp"
#include "corrwit/witness.hpp"

namespace {

using namespace corrwit;

double resolve_tol(const std::optional<double>& cli_tol) {
  if (cli_tol) {
    if (*cli_tol < 0.0) throw std::invalid_argument("tolerance must be nonnegative");
    return *cli_tol;
  }
  if (const char* env = std::getenv("CORRWIT_TOL")) {
    char* end = nullptr;
    const double v = std::strtod(env, &end);
    if (end == env || *end != '\0' || v < 0.0) {
      throw std::invalid_argument("CORRWIT_TOL must be a nonnegative number");
    }
    return v;
  }
  return kDetectTol;
}

std::string bool_json(bool b) { return b ? "true" : "false"; }

std::string check_json(const CcResult& check, const std::string& indent) {
  std::string out = "{\n";
  out += indent + "  \"cq\": " + bool_json(check.cq.is_cq) + ",\n";
  out += indent + "  \"qc\": " + bool_json(check.qc.is_cq) + ",\n";
  out += indent + "  \"cc\": " + bool_json(check.is_cc) + ",\n";
  out += indent + "  \"max_commutator_a\": " + format_double(check.cq.stats.max_commutator) + ",\n";
  out += indent + "  \"max_normality_a\": " + format_double(check.cq.stats.max_normality) + ",\n";
  out += indent + "  \"max_commutator_b\": " + format_double(check.qc.stats.max_commutator) + ",\n";
  out += indent + "  \"max_normality_b\": " + format_double(check.qc.stats.max_normality) + "\n";
  out += indent + "}";
  return out;
}

std::string crossing_kind_name(CrossingKind kind) {
  switch (kind) {
    case CrossingKind::noncq: return "noncq";
    case CrossingKind::noncc: return "noncc";
    case CrossingKind::non_cq_or_qc: return "nonclass";
  }
  throw std::invalid_argument("unknown crossing kind");
}

void cmd_classify(const std::string& path, const std::optional<double>& cli_tol) {
  const MatrixFile file = read_matrix_file(path);
  if (file.kind != MatrixKind::state) {
    throw IoError(path + ": classify expects a file of kind 'state'");
  }
  const BipartiteDims dims(file.d);
  const DensityMatrix rho{HermitianOperator(file.matrices[0])};
  const ClassReport report = classify(rho, dims, resolve_tol(cli_tol));
  std::string out = "{\n";
  out += "  \"command\": \"classify\",\n";
  out += "  \"d\": " + std::to_string(file.d) + ",\n";
  out += "  \"tolerance\": " + format_double(report.tolerance) + ",\n";
  out += "  \"npt\": " + bool_json(report.npt) + ",\n";
  out += "  \"ppt\": " + bool_json(report.ppt) + ",\n";
  out += "  \"cq\": " + bool_json(report.cq) + ",\n";
  out += "  \"qc\": " + bool_json(report.qc) + ",\n";
  out += "  \"cc\": " + bool_json(report.cc) + ",\n";
  out += "  \"min_pt_eig\": " + format_double(report.min_pt_eig) + ",\n";
  out += "  \"max_commutator_a\": " + format_double(report.max_commutator_a) + ",\n";
  out += "  \"max_normality_a\": " + format_double(report.max_normality_a) + ",\n";
  out += "  \"max_commutator_b\": " + format_double(report.max_commutator_b) + ",\n";
  out += "  \"max_normality_b\": " + format_double(report.max_normality_b) + "\n";
  out += "}\n";
  std::cout << out;
}

Direction witness_direction(const std::optional<std::string>& delta_path,
                            const std::optional<int>& dim, const std::optional<seed_t>& seed,
                            BipartiteDims& dims_out) {
  if (delta_path) {
    const MatrixFile file = read_matrix_file(*delta_path);
    if (file.kind != MatrixKind::direction) {
      throw IoError(*delta_path + ": witness expects a file of kind 'direction'");
    }
    dims_out = BipartiteDims(file.d);
    return Direction(HermitianOperator(file.matrices[0]));
  }
  if (!dim || !seed) {
    throw std::invalid_argument("witness: provide either --delta or both --dim and --seed");
  }
  dims_out = BipartiteDims(*dim);
  return random_direction(dims_out, *seed);
}

void write_entangle_certificate(const std::string& path,
                                const EntanglementWitnessCertificate& cert, int d) {
  Eigen::Matrix4cd reduced;
  reduced.topLeftCorner<3, 3>() = cert.reduced.A;
  reduced.block<3, 1>(0, 3) = cert.reduced.a;
  reduced.block<1, 3>(3, 0) = cert.reduced.a.adjoint();
  reduced(3, 3) = cert.reduced.alpha;
  std::string out = "{\n";
  out += "  \"kind\": \"entangle\",\n";
  out += "  \"d\": " + std::to_string(d) + ",\n";
  out += "  \"lambda\": " + format_double(cert.lambda) + ",\n";
  out += "  \"min_pt_eig\": " + format_double(cert.min_pt_eig) + ",\n";
  out += "  \"delta\": " + matrix_json(cert.delta.mat(), "  ") + ",\n";
  out += "  \"u\": " + matrix_json(cert.u, "  ") + ",\n";
  out += "  \"v\": " + matrix_json(cert.v, "  ") + ",\n";
  out += "  \"kappa\": " + matrix_json(cert.kappa.mat(), "  ") + ",\n";
  out += "  \"reduced\": " + matrix_json(reduced, "  ") + "\n";
  out += "}\n";
  write_text_file(path, out);
}

void write_crossing_certificate(const std::string& path, const ClassCrossingCertificate& cert,
                                int d) {
  std::string out = "{\n";
  out += "  \"kind\": \"" + crossing_kind_name(cert.kind) + "\",\n";
  out += "  \"d\": " + std::to_string(d) + ",\n";
  out += "  \"lambda\": " + format_double(cert.lambda) + ",\n";
  out += "  \"delta\": " + matrix_json(cert.delta.mat(), "  ") + ",\n";
  out += "  \"base\": " + matrix_json(cert.base.mat(), "  ") + ",\n";
  out += "  \"kappa\": " + matrix_json(cert.kappa.mat(), "  ") + ",\n";
  out += "  \"base_check\": " + check_json(cert.base_check, "  ") + ",\n";
  out += "  \"kappa_check\": " + check_json(cert.kappa_check, "  ") + "\n";
  out += "}\n";
  write_text_file(path, out);
}

void cmd_witness(const std::string& kind, const std::optional<std::string>& delta_path,
                 const std::optional<int>& dim, const std::optional<seed_t>& seed,
                 const std::optional<std::string>& out_path) {
  if (kind == "flat") {
    if (!dim) throw std::invalid_argument("witness flat: --dim is required");
    const auto [delta, lambda_max] = flat_direction_counterexample(*dim);
    std::string out = "{\n";
    out += "  \"command\": \"witness\",\n";
    out += "  \"kind\": \"flat\",\n";
    out += "  \"d\": " + std::to_string(*dim) + ",\n";
    out += "  \"lambda_max_unnormalized\": " + format_double(lambda_max) + ",\n";
    out += "  \"lambda_max_direction_units\": " + format_double(lambda_max * std::sqrt(2.0)) +
           ",\n";
    out += "  \"grid_points_checked\": 101,\n";
    out += "  \"interior_psd\": true\n";
    out += "}\n";
    std::cout << out;
    if (out_path) {
      MatrixFile file;
      file.kind = MatrixKind::direction;
      file.d = *dim;
      file.matrices.push_back(delta.mat());
      write_matrix_file(*out_path, file);
    }
    return;
  }

  BipartiteDims dims(2);
  const Direction delta = witness_direction(delta_path, dim, seed, dims);
  if (kind == "entangle") {
    const EntanglementWitnessCertificate cert = build_entangling_perturbation(delta, dims);
    std::string out = "{\n";
    out += "  \"command\": \"witness\",\n";
    out += "  \"kind\": \"entangle\",\n";
    out += "  \"d\": " + std::to_string(dims.d) + ",\n";
    out += "  \"lambda\": " + format_double(cert.lambda) + ",\n";
    out += "  \"min_pt_eig\": " + format_double(cert.min_pt_eig) + "\n";
    out += "}\n";
    std::cout << out;
    if (out_path) write_entangle_certificate(*out_path, cert, dims.d);
    return;
  }

  ClassCrossingCertificate cert = [&] {
    if (kind == "noncq") return build_noncq_perturbation(delta, dims);
    if (kind == "noncc") return build_noncc_perturbation(delta, dims);
    if (kind == "nonclass") return build_non_cq_or_qc_perturbation(delta, dims);
    throw std::invalid_argument("witness: unknown kind '" + kind +
                                "' (use entangle, noncq, noncc, nonclass or flat)");
  }();
  std::string out = "{\n";
  out += "  \"command\": \"witness\",\n";
  out += "  \"kind\": \"" + crossing_kind_name(cert.kind) + "\",\n";
  out += "  \"d\": " + std::to_string(dims.d) + ",\n";
  out += "  \"lambda\": " + format_double(cert.lambda) + ",\n";
  out += "  \"base_check\": " + check_json(cert.base_check, "  ") + ",\n";
  out += "  \"kappa_check\": " + check_json(cert.kappa_check, "  ") + "\n";
  out += "}\n";
  std::cout << out;
  if (out_path) write_crossing_certificate(*out_path, cert, dims.d);
}

void cmd_povm_analyze(const std::string& path) {
  const MatrixFile file = read_matrix_file(path);
  if (file.kind != MatrixKind::povm) {
    throw IoError(path + ": povm analyze expects a file of kind 'povm'");
  }
  Povm povm{BipartiteDims(file.d), {}};
  povm.elements.reserve(file.matrices.size());
  for (const auto& m : file.matrices) povm.elements.emplace_back(m);
  const PovmValidation val = validate(povm);
  const PovmAnalysis analysis = analyze(povm);
  std::string out = "{\n";
  out += "  \"command\": \"povm-analyze\",\n";
  out += "  \"d\": " + std::to_string(file.d) + ",\n";
  out += "  \"n_elements\": " + std::to_string(povm.elements.size()) + ",\n";
  out += "  \"valid\": " + bool_json(val.valid) + ",\n";
  out += "  \"worst_min_eigenvalue\": " + format_double(val.worst_min_eigenvalue) + ",\n";
  out += "  \"normalization_residual\": " + format_double(val.normalization_residual) + ",\n";
  out += "  \"dim_e\": " + std::to_string(analysis.dim_e) + ",\n";
  out += "  \"dim_xe\": " + std::to_string(analysis.dim_xe) + ",\n";
  out += "  \"informationally_complete\": " + bool_json(analysis.informationally_complete) +
         ",\n";
  out += "  \"decides_cq\": " + bool_json(analysis.decides_cq) + "\n";
  out += "}\n";
  std::cout << out;
}

void cmd_povm_build(int dim, double epsilon, const std::optional<std::string>& out_path) {
  const BipartiteDims dims(dim);
  const Povm povm = build_minimal_cq_povm(dims, epsilon);
  std::string out = "{\n";
  out += "  \"command\": \"povm-build-cq\",\n";
  out += "  \"d\": " + std::to_string(dim) + ",\n";
  out += "  \"n_elements\": " + std::to_string(povm.elements.size()) + "\n";
  out += "}\n";
  std::cout << out;
  if (out_path) {
    MatrixFile file;
    file.kind = MatrixKind::povm;
    file.d = dim;
    for (const auto& e : povm.elements) file.matrices.push_back(e.mat());
    write_matrix_file(*out_path, file);
  }
}

struct ReportRow {
  std::string name;
  bool ic_required;
  int min_outcomes;
  int successes;
};

void cmd_report(int dim, int trials, seed_t seed, bool as_json) {
  const auto start = std::chrono::steady_clock::now();
  const BipartiteDims dims(dim);
  std::vector<ReportRow> rows;
  rows.push_back({"NPT", true, dims.D * dims.D, 0});
  rows.push_back({"ENTANGLED", true, dims.D * dims.D, 0});
  rows.push_back({"DISCORDANT", false, dims.D * dims.D - dims.D + 1, 0});
  rows.push_back({"NON-CLASSICAL", true, dims.D * dims.D, 0});

  for (int j = 0; j < trials; ++j) {
    {
      const seed_t s = derive_seed(derive_seed(seed, 0), static_cast<std::uint64_t>(j));
      try {
        const auto cert = build_entangling_perturbation(random_direction(dims, s), dims);
        if (cert.min_pt_eig <= -1e-8) ++rows[0].successes;
      } catch (const ConstructionError&) {
      }
    }
    {
      const seed_t s = derive_seed(derive_seed(seed, 1), static_cast<std::uint64_t>(j));
      try {
        const auto cert = build_entangling_perturbation(random_direction(dims, s), dims);
        if (cert.min_pt_eig <= -1e-8) ++rows[1].successes;
      } catch (const ConstructionError&) {
      }
    }
    {
      const seed_t s = derive_seed(derive_seed(seed, 2), static_cast<std::uint64_t>(j));
      try {
        const DensityMatrix base = sample_cq(dims, derive_seed(s, 0));
        const Direction xi = random_cq_invariant_direction(dims, derive_seed(s, 1));
        const double lambda = largest_psd_lambda(base, xi);
        const DensityMatrix kappa{HermitianOperator(base.mat() + lambda * xi.mat())};
        if (cq_check(kappa, dims, kDetectTol).is_cq) ++rows[2].successes;
      } catch (const ConstructionError&) {
      }
    }
    {
      const seed_t s = derive_seed(derive_seed(seed, 3), static_cast<std::uint64_t>(j));
      try {
        build_noncc_perturbation(random_direction(dims, s), dims);
        ++rows[3].successes;
      } catch (const ConstructionError&) {
      }
    }
  }

  const double wall_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
          .count();
  if (as_json) {
    std::string out = "{\n";
    out += "  \"command\": \"report\",\n";
    out += "  \"d\": " + std::to_string(dim) + ",\n";
    out += "  \"seed\": " + std::to_string(seed) + ",\n";
    out += "  \"trials\": " + std::to_string(trials) + ",\n";
    out += "  \"rows\": [\n";
    for (size_t i = 0; i < rows.size(); ++i) {
      out += "    {\"property\": \"" + rows[i].name + "\", \"ic_required\": " +
             bool_json(rows[i].ic_required) +
             ", \"min_outcomes\": " + std::to_string(rows[i].min_outcomes) +
             ", \"successes\": " + std::to_string(rows[i].successes) + "}";
      if (i + 1 < rows.size()) out += ",";
      out += "\n";
    }
    out += "  ],\n";
    out += "  \"wall_clock_ms\": " + format_double(wall_ms) + "\n";
    out += "}\n";
    std::cout << out;
    return;
  }
  std::cout << "property        IC-required  min outcomes  demonstrated\n";
  for (const auto& row : rows) {
    std::printf("%-15s %-12s %-13d %d/%d\n", row.name.c_str(),
                row.ic_required ? "yes" : "no", row.min_outcomes, row.successes, trials);
  }
  std::printf("wall clock: %.1f ms\n", wall_ms);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"membership detectors and witness constructions for bipartite correlation classes"};
  app.require_subcommand(1);

  std::string classify_path;
  std::optional<double> classify_tol;
  auto* classify_cmd = app.add_subcommand("classify", "report the correlation classes of a state");
  classify_cmd->add_option("state", classify_path, "state file")->required();
  classify_cmd->add_option("--tol", classify_tol, "detector tolerance (default CORRWIT_TOL or 1e-8)");

  std::string witness_kind;
  std::optional<std::string> witness_delta;
  std::optional<int> witness_dim;
  std::optional<seed_t> witness_seed;
  std::optional<std::string> witness_out;
  auto* witness_cmd = app.add_subcommand("witness", "build a boundary-crossing certificate");
  witness_cmd->add_option("kind", witness_kind, "entangle | noncq | noncc | nonclass | flat")
      ->required();
  witness_cmd->add_option("--delta", witness_delta, "direction file");
  witness_cmd->add_option("--dim", witness_dim, "local dimension");
  witness_cmd->add_option("--seed", witness_seed, "seed for a random direction");
  witness_cmd->add_option("--out", witness_out, "write the certificate to this file");

  auto* povm_cmd = app.add_subcommand("povm", "measurement analysis and construction");
  povm_cmd->require_subcommand(1);
  std::string povm_path;
  auto* povm_analyze_cmd = povm_cmd->add_subcommand("analyze", "span geometry of a POVM file");
  povm_analyze_cmd->add_option("povm", povm_path, "povm file")->required();
  int povm_dim = 2;
  double povm_eps = 0.1;
  std::optional<std::string> povm_out;
  auto* povm_build_cmd =
      povm_cmd->add_subcommand("build-cq", "minimal measurement deciding the CQ class");
  povm_build_cmd->add_option("--dim", povm_dim, "local dimension")->required();
  povm_build_cmd->add_option("--epsilon", povm_eps, "perturbation size (default 0.1)");
  povm_build_cmd->add_option("--out", povm_out, "write the POVM to this file");

  int report_dim = 2;
  int report_trials = 20;
  seed_t report_seed = 1;
  bool report_json = false;
  auto* report_cmd = app.add_subcommand("report", "summary table of witness demonstrations");
  report_cmd->add_option("--dim", report_dim, "local dimension")->required();
  report_cmd->add_option("--trials", report_trials, "trials per row");
  report_cmd->add_option("--seed", report_seed, "master seed (default 1)");
  report_cmd->add_flag("--json", report_json, "emit JSON instead of the text table");

  try {
    app.parse(argc, argv);
    if (classify_cmd->parsed()) {
      cmd_classify(classify_path, classify_tol);
    } else if (witness_cmd->parsed()) {
      cmd_witness(witness_kind, witness_delta, witness_dim, witness_seed, witness_out);
    } else if (povm_analyze_cmd->parsed()) {
      cmd_povm_analyze(povm_path);
    } else if (povm_build_cmd->parsed()) {
      cmd_povm_build(povm_dim, povm_eps, povm_out);
    } else if (report_cmd->parsed()) {
      if (report_trials < 0) throw std::invalid_argument("report: trials must be nonnegative");
      cmd_report(report_dim, report_trials, report_seed, report_json);
    }
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const ConstructionError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}

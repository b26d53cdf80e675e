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

#include "corrwit/detect.hpp"

#include <cmath>

namespace corrwit {

namespace {

constexpr double kClusterRelTol = 1e-8;
// Fixed seed of the random combination taken in simultaneous_diagonalization,
// so repeated runs refine through identical bases.
constexpr seed_t kSimdiagSeed = 0x5DEECE66DULL;

void refine(const std::vector<cmatrix_t>& ops, size_t op_idx, cmatrix_t& u, int col0,
            int width) {
  if (width <= 1 || op_idx >= ops.size()) return;
  const auto cols = u.middleCols(col0, width);
  cmatrix_t m = cols.adjoint() * ops[op_idx] * cols;
  m = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<cmatrix_t> solver(m);
  if (solver.info() != Eigen::Success) {
    throw ConstructionError("simultaneous_diagonalization: eigensolver did not converge");
  }
  const cmatrix_t rotated = cols * solver.eigenvectors();
  u.middleCols(col0, width) = rotated;
  const double gap = kClusterRelTol * ops[op_idx].norm();
  int start = 0;
  for (int i = 1; i <= width; ++i) {
    if (i == width || solver.eigenvalues()(i) - solver.eigenvalues()(i - 1) >= gap) {
      if (i - start > 1) refine(ops, op_idx + 1, u, col0 + start, i - start);
      start = i;
    }
  }
}

FamilyStats family_stats(const BlockFamily& fam) {
  FamilyStats stats;
  const int n = fam.d() * fam.d();
  const auto& blocks = fam.blocks();
  for (int a = 0; a < n; ++a) {
    const cmatrix_t& m = blocks[a];
    const double r = (m * m.adjoint() - m.adjoint() * m).norm();
    if (r > stats.max_normality) {
      stats.max_normality = r;
      stats.norm_block = a;
    }
    for (int b = a + 1; b < n; ++b) {
      const double c = commutator_norm(m, blocks[b]);
      if (c > stats.max_commutator) {
        stats.max_commutator = c;
        stats.comm_first = a;
        stats.comm_second = b;
      }
    }
  }
  return stats;
}

CqResult check_family(const DensityMatrix& rho, const BipartiteDims& dims, double tol,
                      Side side) {
  const BlockFamily fam = block_family(rho.op(), dims, side);
  CqResult result;
  result.stats = family_stats(fam);
  const double fn = rho.op().fnorm();
  const double thr = tol * fn * fn;
  result.is_cq = result.stats.max_commutator <= thr && result.stats.max_normality <= thr;
  if (!result.is_cq) return result;

  // Accepting path: reconstruct the decomposition explicitly. The Hermitian
  // and anti-Hermitian parts of a commuting normal family commute, so one
  // common eigenbasis diagonalizes every block.
  std::vector<cmatrix_t> parts;
  parts.reserve(2 * fam.blocks().size());
  for (const auto& m : fam.blocks()) {
    parts.push_back(0.5 * (m + m.adjoint()));
    parts.push_back(complex_t(0.0, -0.5) * (m - m.adjoint()));
  }
  const cmatrix_t p = simultaneous_diagonalization(parts, dims.d);

  CqDecomposition dec;
  dec.basis = p;
  dec.etas.assign(dims.d, cmatrix_t::Zero(dims.d, dims.d));
  for (int k = 0; k < dims.d; ++k)
    for (int l = 0; l < dims.d; ++l) {
      const cvector_t diag = (p.adjoint() * fam(k, l) * p).diagonal();
      for (int i = 0; i < dims.d; ++i) dec.etas[i](k, l) = diag(i);
    }
  cmatrix_t rebuilt = cmatrix_t::Zero(dims.D, dims.D);
  for (int i = 0; i < dims.d; ++i) {
    const cmatrix_t proj = p.col(i) * p.col(i).adjoint();
    rebuilt += side == Side::A ? kron(proj, dec.etas[i]) : kron(dec.etas[i], proj);
  }
  dec.reassembly_error = (rho.mat() - rebuilt).norm();
  result.decomposition = std::move(dec);
  return result;
}

}  // namespace

cmatrix_t simultaneous_diagonalization(const std::vector<cmatrix_t>& hermitian_ops, int dim) {
  for (const auto& m : hermitian_ops) {
    if (m.rows() != dim || m.cols() != dim) {
      throw std::invalid_argument("simultaneous_diagonalization: dimension mismatch");
    }
  }
  std::vector<cmatrix_t> ops;
  ops.reserve(hermitian_ops.size() + 1);
  Prng rng(kSimdiagSeed);
  cmatrix_t combo = cmatrix_t::Zero(dim, dim);
  for (const auto& m : hermitian_ops) combo += rng.gaussian() * m;
  ops.push_back(0.5 * (combo + combo.adjoint()));
  for (const auto& m : hermitian_ops) ops.push_back(m);

  cmatrix_t u = cmatrix_t::Identity(dim, dim);
  refine(ops, 0, u, 0, dim);
  return u;
}

PptResult ppt_check(const DensityMatrix& rho, const BipartiteDims& dims, double tol) {
  if (rho.dim() != dims.D) throw std::invalid_argument("ppt_check: dimension mismatch");
  if (tol < 0.0) throw std::invalid_argument("ppt_check: tolerance must be nonnegative");
  const double lmin = min_eigenvalue(partial_transpose(rho.op(), dims));
  return PptResult{lmin >= -tol, lmin};
}

CqResult cq_check(const DensityMatrix& rho, const BipartiteDims& dims, double tol) {
  if (rho.dim() != dims.D) throw std::invalid_argument("cq_check: dimension mismatch");
  if (tol < 0.0) throw std::invalid_argument("cq_check: tolerance must be nonnegative");
  return check_family(rho, dims, tol, Side::A);
}

CqResult qc_check(const DensityMatrix& rho, const BipartiteDims& dims, double tol) {
  if (rho.dim() != dims.D) throw std::invalid_argument("qc_check: dimension mismatch");
  if (tol < 0.0) throw std::invalid_argument("qc_check: tolerance must be nonnegative");
  return check_family(rho, dims, tol, Side::B);
}

CcResult cc_check(const DensityMatrix& rho, const BipartiteDims& dims, double tol) {
  CcResult result{false, cq_check(rho, dims, tol), qc_check(rho, dims, tol)};
  result.is_cc = result.cq.is_cq && result.qc.is_cq;
  return result;
}

ClassReport classify(const DensityMatrix& rho, const BipartiteDims& dims, double tol) {
  const PptResult pt = ppt_check(rho, dims, tol);
  const CcResult cc = cc_check(rho, dims, tol);
  ClassReport report;
  report.ppt = pt.ppt;
  report.npt = !pt.ppt;
  report.cq = cc.cq.is_cq;
  report.qc = cc.qc.is_cq;
  report.cc = cc.is_cc;
  report.min_pt_eig = pt.min_pt_eig;
  report.max_commutator_a = cc.cq.stats.max_commutator;
  report.max_normality_a = cc.cq.stats.max_normality;
  report.max_commutator_b = cc.qc.stats.max_commutator;
  report.max_normality_b = cc.qc.stats.max_normality;
  report.tolerance = tol;
  return report;
}

}  // namespace corrwit

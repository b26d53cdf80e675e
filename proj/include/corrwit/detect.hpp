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

#ifndef CORRWIT_DETECT_HPP
#define CORRWIT_DETECT_HPP

#include <optional>

#include "corrwit/linalg.hpp"
#include "corrwit/states.hpp"

namespace corrwit {

// Default relative tolerance of the detectors. The CLI lets the environment
// variable CORRWIT_TOL override it.
constexpr double kDetectTol = 1e-8;

struct PptResult {
  bool ppt;
  double min_pt_eig;
};

// Worst-case residuals over a block family: the largest pairwise commutator
// norm (with the indices of the offending pair, flattened as k*d+l) and the
// largest normality residual |XX* - X*X|_F (with its block index).
struct FamilyStats {
  double max_commutator = 0.0;
  int comm_first = 0;
  int comm_second = 0;
  double max_normality = 0.0;
  int norm_block = 0;
};

// Explicit decomposition found on the accepting path: columns of `basis` are
// the common eigenvectors phi_i, etas[i] is the (unnormalized, trace c_i)
// operator on the second factor, and reassembly_error is
// |rho - sum_i |phi_i><phi_i| tensor eta_i|_F.
struct CqDecomposition {
  cmatrix_t basis;
  std::vector<cmatrix_t> etas;
  double reassembly_error;
};

struct CqResult {
  bool is_cq;
  FamilyStats stats;
  std::optional<CqDecomposition> decomposition;
};

struct CcResult {
  bool is_cc;
  CqResult cq;
  CqResult qc;
};

struct ClassReport {
  bool npt;
  bool ppt;
  bool cq;
  bool qc;
  bool cc;
  double min_pt_eig;
  double max_commutator_a;
  double max_normality_a;
  double max_commutator_b;
  double max_normality_b;
  double tolerance;
};

// Positive partial transpose test: ppt iff min_eigenvalue(rho^tau) >= -tol.
PptResult ppt_check(const DensityMatrix& rho, const BipartiteDims& dims, double tol);

// Classical-quantum test. rho is CQ iff all first-factor blocks A_kl are
// normal and pairwise commuting; residuals are compared against
// tol * |rho|_F^2. On acceptance the blocks are simultaneously diagonalized
// and the resulting explicit decomposition is returned with its reassembly
// error as evidence.
CqResult cq_check(const DensityMatrix& rho, const BipartiteDims& dims, double tol);

// Mirror of cq_check on the second factor (blocks B_ij).
CqResult qc_check(const DensityMatrix& rho, const BipartiteDims& dims, double tol);

// Classical-classical test: CC iff both CQ and QC.
CcResult cc_check(const DensityMatrix& rho, const BipartiteDims& dims, double tol);

ClassReport classify(const DensityMatrix& rho, const BipartiteDims& dims, double tol);

// Common unitary eigenbasis of a family of (approximately) commuting
// Hermitian matrices. Diagonalizes a fixed-seed random real combination
// first, then refines every eigenvalue cluster (gap below
// 1e-8 * |op|_F) against the remaining operators. Deterministic.
cmatrix_t simultaneous_diagonalization(const std::vector<cmatrix_t>& hermitian_ops, int dim);

}  // namespace corrwit

#endif  // CORRWIT_DETECT_HPP

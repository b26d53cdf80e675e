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

#ifndef CORRWIT_WITNESS_HPP
#define CORRWIT_WITNESS_HPP

#include <utility>

#include "corrwit/detect.hpp"
#include "corrwit/linalg.hpp"
#include "corrwit/states.hpp"

namespace corrwit {

// Proof that moving away from the isotropic boundary state along `delta`
// crosses the PPT/NPT boundary: kappa = base(U, V) + lambda * delta is a
// state whose partial transpose has the negative eigenvalue min_pt_eig,
// where base(U, V) is isotropic_boundary_state(max_entangled(U, V)).
struct EntanglementWitnessCertificate {
  Direction delta;
  cmatrix_t u;
  cmatrix_t v;
  double lambda;
  DensityMatrix kappa;
  double min_pt_eig;
  ReducedBlock reduced;
};

enum class CrossingKind { noncq, noncc, non_cq_or_qc };

// Proof that kappa = base + lambda * delta leaves a correlation class that
// base belongs to. base_check and kappa_check carry the detector evidence
// for both endpoints.
struct ClassCrossingCertificate {
  CrossingKind kind;
  Direction delta;
  DensityMatrix base;
  double lambda;
  DensityMatrix kappa;
  CcResult base_check;
  CcResult kappa_check;
};

// Compression W*XW of a bipartite Hermitian operator to the 4-dimensional
// subspace spanned by f1 = |0,0>, f2 = |1,1>, f3 = (|0,1> + |1,0>)/sqrt(2),
// f4 = (|0,1> - |1,0>)/sqrt(2), in that basis order.
Eigen::Matrix4cd embed_w(const HermitianOperator& x, const BipartiteDims& dims);

// Local unitaries (U, V) such that the reduced block of delta at (U, V) has
// (a, alpha) far from zero. The search maximizes an entry of delta^tau to
// anchor the 2x2 subspaces, then walks three candidate corrections on the
// V side, accepting a candidate only when its row-4 mass is a definite
// fraction of the compressed block's norm.
std::pair<cmatrix_t, cmatrix_t> select_unitaries(const Direction& delta,
                                                 const BipartiteDims& dims);

// The 3+1 partition of the compression that controls the sign of the
// perturbed partial transpose's determinant. Note the complex conjugate:
// for kappa built from max_entangled(U, V), the spectrum of kappa^tau is
// driven by (U tensor conj(V))* delta^tau (U tensor conj(V)).
ReducedBlock reduced_block(const Direction& delta, const cmatrix_t& u, const cmatrix_t& v,
                           const BipartiteDims& dims);

// Perturbation size with the sign opposite to alpha (either sign when alpha
// vanishes), halved from 0.1 until base + lambda*delta is PSD and its
// partial transpose has an eigenvalue at or below -1e-8. Fails below 1e-6.
double choose_lambda(const ReducedBlock& block, const DensityMatrix& base,
                     const Direction& delta, const BipartiteDims& dims);

// End-to-end construction of an entanglement certificate for an arbitrary
// direction: every traceless Hermitian delta admits one.
EntanglementWitnessCertificate build_entangling_perturbation(const Direction& delta,
                                                             const BipartiteDims& dims);

// The direction along which the PPT boundary at the isotropic state is
// exactly flat: |0,0><0,0| - |e,e><e,e| with e = d-1. Returns the
// normalized direction and the threshold 2/(d(d+1)) that applies to the
// unnormalized (+1/-1) operator, i.e. to sqrt(2) times the direction.
// Verified internally on a 101-point grid of the allowed interval.
std::pair<Direction, double> flat_direction_counterexample(int d);

// A full-rank state sigma with [A, sigma] != 0, built as (I + mu*B)/d from
// the traceless Hermitian basis element B with the largest commutator with
// A. Rejects A within 1e-10 * |A|_F of a multiple of the identity.
DensityMatrix find_noncommuting_state(const cmatrix_t& a);

// Same, with the extra guarantee <0|sigma|1> != 0, mixing in
// (I + |0><1| + |1><0|)/d when needed.
DensityMatrix find_coherent_noncommuting_state(const cmatrix_t& a);

// Crossing out of CQ: base = sigma tensor |t><t|/2 + I/(2d^2) is CC, and
// kappa = base + lambda*delta has noncommuting blocks A_pq, A_tt. Requires
// some A_pq(delta) away from a multiple of the identity; directions of the
// form I tensor Xi are rejected as the invariant subspace.
ClassCrossingCertificate build_noncq_perturbation(const Direction& delta,
                                                  const BipartiteDims& dims);

// Crossing out of CC: routes through build_noncq_perturbation when possible
// and through its mirror image on the second factor for directions of the
// form I tensor Xi (whose mirror blocks are never all scalar).
ClassCrossingCertificate build_noncc_perturbation(const Direction& delta,
                                                  const BipartiteDims& dims);

// Crossing out of the union CQ or QC: base = sigma tensor |t><t|/2 +
// (I tensor gamma)/(2d) with sigma coherent and [|t><t|, gamma] != 0, so a
// single perturbation breaks commutativity of both block families at once.
ClassCrossingCertificate build_non_cq_or_qc_perturbation(const Direction& delta,
                                                         const BipartiteDims& dims);

// Largest lambda in {start, start/2, ...} with base + lambda*delta PSD
// (smallest eigenvalue >= -1e-10). Used by invariance checks.
double largest_psd_lambda(const DensityMatrix& base, const Direction& delta,
                          double start = 0.1);

}  // namespace corrwit

#endif  // CORRWIT_WITNESS_HPP

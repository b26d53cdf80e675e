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

#ifndef CORRWIT_STATES_HPP
#define CORRWIT_STATES_HPP

#include <cstdint>
#include <random>
#include <vector>

#include "corrwit/linalg.hpp"

namespace corrwit {

using seed_t = std::uint64_t;

// Stateless 64-bit mix (splitmix64 finalizer). Used to derive independent
// sub-seeds: trial k of a run seeded with s uses derive_seed(s, k).
std::uint64_t mix64(std::uint64_t z);
seed_t derive_seed(seed_t master, std::uint64_t stream);

// Deterministic random source: a std::mt19937_64 engine (whose output
// sequence the standard fully specifies) mapped to doubles explicitly, so a
// given seed produces the same stream on every platform for a fixed build.
class Prng {
 public:
  explicit Prng(seed_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  // Uniform on [0, 1), 53-bit resolution.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  // Standard normal via Box-Muller on the uniform stream.
  double gaussian();

 private:
  std::mt19937_64 engine_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

// Unit-trace positive semidefinite operator. Construction rejects matrices
// whose smallest eigenvalue is below -1e-10 or whose trace differs from 1 by
// more than 1e-12.
class DensityMatrix {
 public:
  explicit DensityMatrix(HermitianOperator op);

  const HermitianOperator& op() const { return op_; }
  const cmatrix_t& mat() const { return op_.mat(); }
  int dim() const { return op_.dim(); }

 private:
  HermitianOperator op_;
};

// Traceless Hermitian operator of unit Frobenius norm. The trace component
// of the input is projected out and the remainder normalized exactly;
// numerically zero input is rejected.
class Direction {
 public:
  explicit Direction(const HermitianOperator& op);

  const HermitianOperator& op() const { return op_; }
  const cmatrix_t& mat() const { return op_.mat(); }
  int dim() const { return op_.dim(); }

 private:
  HermitianOperator op_;
};

// |psi_0> = (1/sqrt(d)) sum_j |j,j>, with index (i,k) stored at i*d+k.
cvector_t canonical_max_entangled(int d);

// (U tensor V)|psi_0>. U and V must be unitary to 1e-12.
cvector_t max_entangled(const cmatrix_t& u, const cmatrix_t& v, int d);

// Reduced state of a bipartite pure state on one factor.
cmatrix_t reduced_state(const cvector_t& psi, const BipartiteDims& dims, Side side);

// The separable state on the boundary used as the base point of every
// perturbation: 1/(d+1) |psi><psi| + 1/(d(d+1)) I. Requires psi maximally
// entangled (both reduced states within 1e-10 of I/d).
DensityMatrix isotropic_boundary_state(const cvector_t& psi, int d);

// Swap operator F(|a> tensor |b>) = |b> tensor |a>. F^2 = I; eigenvalues
// +1 and -1 with multiplicities d(d+1)/2 and d(d-1)/2.
HermitianOperator flip_operator(int d);

// Haar-like random unitary: QR of a complex Gaussian matrix with the phases
// of the R diagonal absorbed into Q.
cmatrix_t random_unitary(int dim, Prng& rng);
cmatrix_t random_unitary(int dim, seed_t seed);

// Unit direction from a complex Gaussian Hermitian matrix.
Direction random_direction(const BipartiteDims& dims, seed_t seed);

// Direction of the form (I tensor Xi)/|...| with Xi a random traceless
// Hermitian matrix on the second factor.
Direction random_cq_invariant_direction(const BipartiteDims& dims, seed_t seed);

// Full-rank random density matrix: Wishart normalized, then mixed with
// 1e-3 * I/dim so the smallest eigenvalue is at least 1e-3/dim.
DensityMatrix random_density_full_rank(int dim, Prng& rng);
DensityMatrix random_density_full_rank(int dim, seed_t seed);

// sum_i c_i |p_i><p_i| tensor eta_i from an orthonormal basis (columns of
// basis), nonnegative weights summing to 1, and unit-trace PSD etas.
DensityMatrix assemble_cq(const cmatrix_t& basis, const std::vector<double>& weights,
                          const std::vector<cmatrix_t>& etas);

// Random members of the correlation classes. All use weight floor 1e-3 and
// full-rank local states, so the outputs are comfortably inside their class.
DensityMatrix sample_cq(const BipartiteDims& dims, seed_t seed);
DensityMatrix sample_qc(const BipartiteDims& dims, seed_t seed);
DensityMatrix sample_cc(const BipartiteDims& dims, seed_t seed);
DensityMatrix sample_product(const BipartiteDims& dims, seed_t seed);

// sigma tensor eta as a bipartite state.
DensityMatrix product_state(const DensityMatrix& sigma, const DensityMatrix& eta);

// Flat Dirichlet weights with every entry at least `floor`.
std::vector<double> simplex_weights(int n, double floor, Prng& rng);

}  // namespace corrwit

#endif  // CORRWIT_STATES_HPP

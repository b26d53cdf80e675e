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

#ifndef CORRWIT_POVM_HPP
#define CORRWIT_POVM_HPP

#include "corrwit/linalg.hpp"
#include "corrwit/states.hpp"

namespace corrwit {

// Measurement with outcomes E_j on the bipartite space. The struct itself
// is plain data; validate() reports how far the element list is from a
// well-formed POVM (PSD elements summing to the identity).
struct Povm {
  BipartiteDims dims;
  std::vector<HermitianOperator> elements;
};

struct PovmValidation {
  bool valid;
  double worst_min_eigenvalue;   // most negative element eigenvalue
  double normalization_residual; // |sum E_j - I|_F
};

PovmValidation validate(const Povm& povm);

// Span geometry of a measurement: dim_e is the dimension of the real span
// of the elements, xe_basis an orthonormal basis of the traceless Hermitian
// operators orthogonal to every element (the directions the statistics
// cannot see), and dim_e + dim_xe = D*D exactly for valid POVMs. The
// measurement is informationally complete iff that kernel is zero, and
// decides the classical-quantum class iff the kernel lies inside
// span{I tensor Xi} (each basis element within 1e-9 of its projection).
struct PovmAnalysis {
  int dim_e;
  int dim_xe;
  std::vector<HermitianOperator> xe_basis;
  bool informationally_complete;
  bool decides_cq;
};

PovmAnalysis analyze(const Povm& povm);

// Orthonormal basis (under the Hilbert-Schmidt inner product) of
// span{I tensor Xi : Xi traceless Hermitian on the second factor}.
std::vector<HermitianOperator> identity_tensor_basis(const BipartiteDims& dims);

// The measurement with the fewest outcomes whose kernel is exactly
// span{I tensor Xi}: d^4 - d^2 + 1 outcomes, built as E_j = (I + eps*G_j)/m
// over an orthonormal basis {G_j} of the traceless part of the kernel's
// orthogonal complement, with eps halved (at most 40 times) until every
// element is PSD. 13 outcomes at d = 2, 73 at d = 3.
Povm build_minimal_cq_povm(const BipartiteDims& dims, double epsilon = 0.1);

// Outcome probabilities tr(E_j rho).
std::vector<double> statistics(const Povm& povm, const DensityMatrix& rho);

// Whether any outcome probability differs by more than tol between the two
// states.
bool distinguishes(const Povm& povm, const DensityMatrix& rho1, const DensityMatrix& rho2,
                   double tol);

// Random n-outcome POVM: Wishart factors conjugated by the inverse square
// root of their sum.
Povm random_povm(const BipartiteDims& dims, int n_elements, seed_t seed);

// The POVM obtained by dropping element `index` and renormalizing the rest
// by the inverse square root of their sum. Used to probe minimality: any
// measurement with fewer linearly independent elements has a strictly
// larger kernel.
Povm remove_and_renormalize(const Povm& povm, int index);

}  // namespace corrwit

#endif  // CORRWIT_POVM_HPP

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

#ifndef CORRWIT_LINALG_HPP
#define CORRWIT_LINALG_HPP

#include <complex>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

namespace corrwit {

using complex_t = std::complex<double>;
using cmatrix_t = Eigen::MatrixXcd;
using cvector_t = Eigen::VectorXcd;
using rvector_t = Eigen::VectorXd;

// Thrown when a constructive procedure fails for numerical reasons, as
// opposed to a malformed input (std::invalid_argument).
struct ConstructionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Dimensions of a d x d bipartite system. D is always d*d.
struct BipartiteDims {
  int d;
  int D;
  explicit BipartiteDims(int local_dim) : d(local_dim), D(local_dim * local_dim) {
    if (local_dim < 2) throw std::invalid_argument("BipartiteDims: local dimension must be >= 2");
  }
};

// Hermitian matrix with the symmetry enforced entrywise at construction.
// Inputs whose anti-Hermitian part exceeds 1e-12 * |X|_F are rejected;
// smaller asymmetry is symmetrized away exactly, entry by entry.
class HermitianOperator {
 public:
  explicit HermitianOperator(cmatrix_t m);

  const cmatrix_t& mat() const { return mat_; }
  int dim() const { return static_cast<int>(mat_.rows()); }
  double fnorm() const { return mat_.norm(); }
  double trace() const { return mat_.trace().real(); }

 private:
  cmatrix_t mat_;
};

// Kronecker product with the first factor major: entry
// ((i*dimY + k), (j*dimY + l)) = X(i,j) * Y(k,l).
cmatrix_t kron(const cmatrix_t& x, const cmatrix_t& y);

// Transposition of the second tensor factor: entry (ik, jl) of the result
// equals entry (il, jk) of the input. An involution that preserves trace,
// Hermiticity and Frobenius norm.
HermitianOperator partial_transpose(const HermitianOperator& x, const BipartiteDims& dims);
cmatrix_t partial_transpose_raw(const cmatrix_t& x, const BipartiteDims& dims);

enum class Side { A, B };

// The d x d grid of d x d blocks of a bipartite operator. Side A collects
// A_kl with (A_kl)[i][j] = X[(i,k),(j,l)]; side B collects B_ij with
// (B_ij)[k][l] = X[(i,k),(j,l)]. Duality: B_ij(X)[k][l] = A_kl(X)[i][j].
class BlockFamily {
 public:
  BlockFamily(int d, std::vector<cmatrix_t> blocks);
  const cmatrix_t& operator()(int k, int l) const { return blocks_[k * d_ + l]; }
  int d() const { return d_; }
  const std::vector<cmatrix_t>& blocks() const { return blocks_; }

 private:
  int d_;
  std::vector<cmatrix_t> blocks_;
};

BlockFamily block_family(const HermitianOperator& x, const BipartiteDims& dims, Side side);

// Rebuilds the bipartite operator from its block family (inverse of
// block_family on either side).
cmatrix_t assemble_from_blocks(const BlockFamily& fam, Side side);

struct EigResult {
  rvector_t eigenvalues;  // ascending
  cmatrix_t eigenvectors; // columns, unitary
};

// Dense Hermitian eigendecomposition. Deterministic: the same input on the
// same build always yields the same output.
EigResult eig_hermitian(const HermitianOperator& x);

double min_eigenvalue(const HermitianOperator& x);

// Hilbert-Schmidt inner product tr(XY), real for Hermitian arguments.
double hs_inner(const HermitianOperator& x, const HermitianOperator& y);

// Dimension of the real span of a list of Hermitian operators, computed from
// the Gram matrix under hs_inner. Eigenvalues below 1e-10 times the largest
// count as zero.
int real_span_dim(const std::vector<HermitianOperator>& ops);

// Orthonormal basis (under hs_inner) of the orthogonal complement of
// span(ops) inside the real space of Hermitian operators of dimension `dim`,
// restricted to traceless operators when `within_traceless` is set.
std::vector<HermitianOperator> orth_complement(const std::vector<HermitianOperator>& ops,
                                               int dim, bool within_traceless);

// Frobenius norm of [X, Y] = XY - YX.
double commutator_norm(const cmatrix_t& x, const cmatrix_t& y);

// Whether |X X* - X* X|_F <= tol * |X|_F^2 (zero matrices count as normal).
bool is_normal(const cmatrix_t& x, double tol);

// Orthonormal Hermitian basis of the full operator space: matrix units
// symmetrized, diagonal units first, then (E_ij + E_ji)/sqrt(2) and
// i(E_ji - E_ij)/sqrt(2) for i < j in row-major order.
std::vector<HermitianOperator> hermitian_basis(int dim);

// Orthonormal Hermitian basis of the traceless subspace: the diagonal part
// uses the standard stair pattern diag(1,..,1,-k)/sqrt(k(k+1)).
std::vector<HermitianOperator> traceless_hermitian_basis(int dim);

// The 3+1 partition of a Hermitian 4x4 operator at row/column 4:
// A is the upper-left 3x3 block, a the first three entries of column 4,
// alpha the real (4,4) entry.
struct ReducedBlock {
  Eigen::Matrix3cd A;
  Eigen::Vector3cd a;
  double alpha;
};

}  // namespace corrwit

#endif  // CORRWIT_LINALG_HPP

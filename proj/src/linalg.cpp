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

#include "corrwit/linalg.hpp"

#include <cmath>
#include <string>

namespace corrwit {

namespace {

constexpr double kHermiticityRelTol = 1e-12;
constexpr double kRankRelTol = 1e-10;

}  // namespace

HermitianOperator::HermitianOperator(cmatrix_t m) : mat_(std::move(m)) {
  if (mat_.rows() != mat_.cols()) {
    throw std::invalid_argument("HermitianOperator: matrix is not square");
  }
  const double asym = (mat_ - mat_.adjoint()).norm() / 2.0;
  const double scale = mat_.norm();
  if (asym > kHermiticityRelTol * scale && asym > 0.0) {
    throw std::invalid_argument("HermitianOperator: anti-Hermitian part too large (" +
                                std::to_string(asym) + " vs norm " + std::to_string(scale) + ")");
  }
  const int n = dim();
  for (int i = 0; i < n; ++i) {
    mat_(i, i) = complex_t(mat_(i, i).real(), 0.0);
    for (int j = i + 1; j < n; ++j) {
      const complex_t v = 0.5 * (mat_(i, j) + std::conj(mat_(j, i)));
      mat_(i, j) = v;
      mat_(j, i) = std::conj(v);
    }
  }
}

cmatrix_t kron(const cmatrix_t& x, const cmatrix_t& y) {
  cmatrix_t out(x.rows() * y.rows(), x.cols() * y.cols());
  for (Eigen::Index i = 0; i < x.rows(); ++i)
    for (Eigen::Index j = 0; j < x.cols(); ++j)
      out.block(i * y.rows(), j * y.cols(), y.rows(), y.cols()) = x(i, j) * y;
  return out;
}

cmatrix_t partial_transpose_raw(const cmatrix_t& x, const BipartiteDims& dims) {
  const int d = dims.d;
  if (x.rows() != dims.D || x.cols() != dims.D) {
    throw std::invalid_argument("partial_transpose: dimension mismatch");
  }
  cmatrix_t out(dims.D, dims.D);
  for (int i = 0; i < d; ++i)
    for (int k = 0; k < d; ++k)
      for (int j = 0; j < d; ++j)
        for (int l = 0; l < d; ++l)
          out(i * d + k, j * d + l) = x(i * d + l, j * d + k);
  return out;
}

HermitianOperator partial_transpose(const HermitianOperator& x, const BipartiteDims& dims) {
  return HermitianOperator(partial_transpose_raw(x.mat(), dims));
}

BlockFamily::BlockFamily(int d, std::vector<cmatrix_t> blocks)
    : d_(d), blocks_(std::move(blocks)) {
  if (static_cast<int>(blocks_.size()) != d_ * d_) {
    throw std::invalid_argument("BlockFamily: expected d*d blocks");
  }
  for (const auto& b : blocks_) {
    if (b.rows() != d_ || b.cols() != d_) {
      throw std::invalid_argument("BlockFamily: block dimension mismatch");
    }
  }
}

BlockFamily block_family(const HermitianOperator& x, const BipartiteDims& dims, Side side) {
  const int d = dims.d;
  if (x.dim() != dims.D) throw std::invalid_argument("block_family: dimension mismatch");
  std::vector<cmatrix_t> blocks(static_cast<size_t>(d) * d, cmatrix_t(d, d));
  const cmatrix_t& m = x.mat();
  if (side == Side::A) {
    for (int k = 0; k < d; ++k)
      for (int l = 0; l < d; ++l)
        for (int i = 0; i < d; ++i)
          for (int j = 0; j < d; ++j)
            blocks[k * d + l](i, j) = m(i * d + k, j * d + l);
  } else {
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j)
        for (int k = 0; k < d; ++k)
          for (int l = 0; l < d; ++l)
            blocks[i * d + j](k, l) = m(i * d + k, j * d + l);
  }
  return BlockFamily(d, std::move(blocks));
}

cmatrix_t assemble_from_blocks(const BlockFamily& fam, Side side) {
  const int d = fam.d();
  cmatrix_t out = cmatrix_t::Zero(d * d, d * d);
  if (side == Side::A) {
    for (int k = 0; k < d; ++k)
      for (int l = 0; l < d; ++l)
        for (int i = 0; i < d; ++i)
          for (int j = 0; j < d; ++j)
            out(i * d + k, j * d + l) = fam(k, l)(i, j);
  } else {
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j)
        for (int k = 0; k < d; ++k)
          for (int l = 0; l < d; ++l)
            out(i * d + k, j * d + l) = fam(i, j)(k, l);
  }
  return out;
}

EigResult eig_hermitian(const HermitianOperator& x) {
  Eigen::SelfAdjointEigenSolver<cmatrix_t> solver(x.mat());
  if (solver.info() != Eigen::Success) {
    throw ConstructionError("eig_hermitian: eigensolver did not converge");
  }
  return EigResult{solver.eigenvalues(), solver.eigenvectors()};
}

double min_eigenvalue(const HermitianOperator& x) {
  Eigen::SelfAdjointEigenSolver<cmatrix_t> solver(x.mat(), Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw ConstructionError("min_eigenvalue: eigensolver did not converge");
  }
  return solver.eigenvalues()(0);
}

double hs_inner(const HermitianOperator& x, const HermitianOperator& y) {
  if (x.dim() != y.dim()) throw std::invalid_argument("hs_inner: dimension mismatch");
  return (x.mat() * y.mat()).trace().real();
}

namespace {

// Isometric real vectorization of a Hermitian matrix: diagonal entries, then
// sqrt(2) * (Re, Im) of the upper triangle. Euclidean norm equals |X|_F.
rvector_t hvec(const cmatrix_t& m) {
  const int n = static_cast<int>(m.rows());
  rvector_t v(n * n);
  int p = 0;
  for (int i = 0; i < n; ++i) v(p++) = m(i, i).real();
  const double s = std::sqrt(2.0);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      v(p++) = s * m(i, j).real();
      v(p++) = s * m(i, j).imag();
    }
  return v;
}

cmatrix_t hunvec(const rvector_t& v, int n) {
  cmatrix_t m(n, n);
  int p = 0;
  for (int i = 0; i < n; ++i) m(i, i) = complex_t(v(p++), 0.0);
  const double s = 1.0 / std::sqrt(2.0);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      const double re = v(p++) * s;
      const double im = v(p++) * s;
      m(i, j) = complex_t(re, im);
      m(j, i) = complex_t(re, -im);
    }
  return m;
}

}  // namespace

int real_span_dim(const std::vector<HermitianOperator>& ops) {
  if (ops.empty()) return 0;
  const int n = static_cast<int>(ops.size());
  Eigen::MatrixXd gram(n, n);
  for (int a = 0; a < n; ++a)
    for (int b = a; b < n; ++b) {
      const double g = hs_inner(ops[a], ops[b]);
      gram(a, b) = g;
      gram(b, a) = g;
    }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(gram, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw ConstructionError("real_span_dim: eigensolver did not converge");
  }
  const double lmax = solver.eigenvalues()(n - 1);
  if (lmax <= 0.0) return 0;
  int rank = 0;
  for (int i = 0; i < n; ++i)
    if (solver.eigenvalues()(i) > kRankRelTol * lmax) ++rank;
  return rank;
}

std::vector<HermitianOperator> orth_complement(const std::vector<HermitianOperator>& ops,
                                               int dim, bool within_traceless) {
  if (dim < 1) throw std::invalid_argument("orth_complement: dimension must be >= 1");
  for (const auto& op : ops) {
    if (op.dim() != dim) throw std::invalid_argument("orth_complement: dimension mismatch");
  }
  const int n2 = dim * dim;
  Eigen::MatrixXd b = Eigen::MatrixXd::Zero(n2, n2);
  for (const auto& op : ops) {
    const rvector_t v = hvec(op.mat());
    b.noalias() += v * v.transpose();
  }
  if (within_traceless) {
    const rvector_t vi = hvec(cmatrix_t::Identity(dim, dim));
    b.noalias() += vi * vi.transpose();
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(b);
  if (solver.info() != Eigen::Success) {
    throw ConstructionError("orth_complement: eigensolver did not converge");
  }
  const double lmax = solver.eigenvalues()(n2 - 1);
  const double thr = lmax > 0.0 ? kRankRelTol * lmax : 0.0;
  std::vector<HermitianOperator> basis;
  for (int i = 0; i < n2; ++i) {
    if (solver.eigenvalues()(i) <= thr) {
      basis.emplace_back(hunvec(solver.eigenvectors().col(i), dim));
    }
  }
  return basis;
}

double commutator_norm(const cmatrix_t& x, const cmatrix_t& y) {
  if (x.rows() != x.cols() || y.rows() != y.cols() || x.rows() != y.rows()) {
    throw std::invalid_argument("commutator_norm: dimension mismatch");
  }
  return (x * y - y * x).norm();
}

bool is_normal(const cmatrix_t& x, double tol) {
  if (x.rows() != x.cols()) throw std::invalid_argument("is_normal: matrix is not square");
  const double scale = x.norm();
  if (scale == 0.0) return true;
  return (x * x.adjoint() - x.adjoint() * x).norm() <= tol * scale * scale;
}

std::vector<HermitianOperator> hermitian_basis(int dim) {
  std::vector<HermitianOperator> basis;
  basis.reserve(static_cast<size_t>(dim) * dim);
  const double s = 1.0 / std::sqrt(2.0);
  for (int i = 0; i < dim; ++i) {
    cmatrix_t m = cmatrix_t::Zero(dim, dim);
    m(i, i) = 1.0;
    basis.emplace_back(std::move(m));
  }
  for (int i = 0; i < dim; ++i)
    for (int j = i + 1; j < dim; ++j) {
      cmatrix_t x = cmatrix_t::Zero(dim, dim);
      x(i, j) = s;
      x(j, i) = s;
      basis.emplace_back(std::move(x));
      cmatrix_t y = cmatrix_t::Zero(dim, dim);
      y(i, j) = complex_t(0.0, -s);
      y(j, i) = complex_t(0.0, s);
      basis.emplace_back(std::move(y));
    }
  return basis;
}

std::vector<HermitianOperator> traceless_hermitian_basis(int dim) {
  std::vector<HermitianOperator> basis;
  basis.reserve(static_cast<size_t>(dim) * dim - 1);
  for (int k = 1; k < dim; ++k) {
    cmatrix_t m = cmatrix_t::Zero(dim, dim);
    const double norm = std::sqrt(static_cast<double>(k) * (k + 1));
    for (int i = 0; i < k; ++i) m(i, i) = 1.0 / norm;
    m(k, k) = -static_cast<double>(k) / norm;
    basis.emplace_back(std::move(m));
  }
  const double s = 1.0 / std::sqrt(2.0);
  for (int i = 0; i < dim; ++i)
    for (int j = i + 1; j < dim; ++j) {
      cmatrix_t x = cmatrix_t::Zero(dim, dim);
      x(i, j) = s;
      x(j, i) = s;
      basis.emplace_back(std::move(x));
      cmatrix_t y = cmatrix_t::Zero(dim, dim);
      y(i, j) = complex_t(0.0, -s);
      y(j, i) = complex_t(0.0, s);
      basis.emplace_back(std::move(y));
    }
  return basis;
}

}  // namespace corrwit

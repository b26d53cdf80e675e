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

#include "corrwit/states.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace corrwit {

namespace {

constexpr double kPsdTol = -1e-10;
constexpr double kTraceTol = 1e-12;
constexpr double kWeightFloor = 1e-3;

cmatrix_t random_ginibre(int rows, int cols, Prng& rng) {
  cmatrix_t g(rows, cols);
  const double s = 1.0 / std::sqrt(2.0);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) {
      const double re = rng.gaussian();
      const double im = rng.gaussian();
      g(i, j) = complex_t(re * s, im * s);
    }
  return g;
}

}  // namespace

std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

seed_t derive_seed(seed_t master, std::uint64_t stream) {
  return mix64(master + (stream + 1) * 0x9E3779B97F4A7C15ULL);
}

double Prng::gaussian() {
  if (have_spare_) {
    have_spare_ = false;
    return spare_;
  }
  const double u1 = 1.0 - uniform();  // (0, 1]
  const double u2 = uniform();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double t = 2.0 * std::numbers::pi * u2;
  spare_ = r * std::sin(t);
  have_spare_ = true;
  return r * std::cos(t);
}

DensityMatrix::DensityMatrix(HermitianOperator op) : op_(std::move(op)) {
  const double tr = op_.trace();
  if (std::abs(tr - 1.0) > kTraceTol) {
    throw std::invalid_argument("DensityMatrix: trace " + std::to_string(tr) + " is not 1");
  }
  const double lmin = min_eigenvalue(op_);
  if (lmin < kPsdTol) {
    throw std::invalid_argument("DensityMatrix: smallest eigenvalue " + std::to_string(lmin) +
                                " is negative");
  }
}

Direction::Direction(const HermitianOperator& op)
    : op_([&] {
        cmatrix_t m = op.mat();
        const int n = op.dim();
        const complex_t tr = m.trace();
        m -= (tr / static_cast<double>(n)) * cmatrix_t::Identity(n, n);
        const double norm = m.norm();
        if (norm <= 1e-14 * (op.fnorm() + 1.0)) {
          throw std::invalid_argument("Direction: traceless part is numerically zero");
        }
        m /= norm;
        return HermitianOperator(std::move(m));
      }()) {}

cvector_t canonical_max_entangled(int d) {
  if (d < 2) throw std::invalid_argument("canonical_max_entangled: d must be >= 2");
  cvector_t psi = cvector_t::Zero(d * d);
  const double a = 1.0 / std::sqrt(static_cast<double>(d));
  for (int j = 0; j < d; ++j) psi(j * d + j) = a;
  return psi;
}

cvector_t max_entangled(const cmatrix_t& u, const cmatrix_t& v, int d) {
  if (u.rows() != d || u.cols() != d || v.rows() != d || v.cols() != d) {
    throw std::invalid_argument("max_entangled: unitary dimension mismatch");
  }
  const cmatrix_t id = cmatrix_t::Identity(d, d);
  if ((u.adjoint() * u - id).norm() > 1e-12 || (v.adjoint() * v - id).norm() > 1e-12) {
    throw std::invalid_argument("max_entangled: input is not unitary to 1e-12");
  }
  cvector_t psi = cvector_t::Zero(d * d);
  const double a = 1.0 / std::sqrt(static_cast<double>(d));
  for (int j = 0; j < d; ++j)
    for (int i = 0; i < d; ++i)
      for (int k = 0; k < d; ++k) psi(i * d + k) += a * u(i, j) * v(k, j);
  return psi;
}

cmatrix_t reduced_state(const cvector_t& psi, const BipartiteDims& dims, Side side) {
  const int d = dims.d;
  if (psi.size() != dims.D) throw std::invalid_argument("reduced_state: dimension mismatch");
  cmatrix_t out = cmatrix_t::Zero(d, d);
  if (side == Side::A) {
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j)
        for (int k = 0; k < d; ++k) out(i, j) += psi(i * d + k) * std::conj(psi(j * d + k));
  } else {
    for (int k = 0; k < d; ++k)
      for (int l = 0; l < d; ++l)
        for (int i = 0; i < d; ++i) out(k, l) += psi(i * d + k) * std::conj(psi(i * d + l));
  }
  return out;
}

DensityMatrix isotropic_boundary_state(const cvector_t& psi, int d) {
  const BipartiteDims dims(d);
  if (psi.size() != dims.D) {
    throw std::invalid_argument("isotropic_boundary_state: dimension mismatch");
  }
  const cmatrix_t ref = cmatrix_t::Identity(d, d) / static_cast<double>(d);
  if ((reduced_state(psi, dims, Side::A) - ref).norm() > 1e-10 ||
      (reduced_state(psi, dims, Side::B) - ref).norm() > 1e-10) {
    throw std::invalid_argument("isotropic_boundary_state: psi is not maximally entangled");
  }
  cmatrix_t m = (psi * psi.adjoint()) / static_cast<double>(d + 1);
  m += cmatrix_t::Identity(dims.D, dims.D) / static_cast<double>(d * (d + 1));
  return DensityMatrix(HermitianOperator(std::move(m)));
}

HermitianOperator flip_operator(int d) {
  const BipartiteDims dims(d);
  cmatrix_t f = cmatrix_t::Zero(dims.D, dims.D);
  for (int i = 0; i < d; ++i)
    for (int k = 0; k < d; ++k) f(i * d + k, k * d + i) = 1.0;
  return HermitianOperator(std::move(f));
}

cmatrix_t random_unitary(int dim, Prng& rng) {
  const cmatrix_t g = random_ginibre(dim, dim, rng);
  Eigen::HouseholderQR<cmatrix_t> qr(g);
  cmatrix_t q = qr.householderQ();
  const cmatrix_t r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < dim; ++j) {
    const complex_t rjj = r(j, j);
    const double a = std::abs(rjj);
    if (a > 0.0) q.col(j) *= rjj / a;
  }
  return q;
}

cmatrix_t random_unitary(int dim, seed_t seed) {
  Prng rng(seed);
  return random_unitary(dim, rng);
}

Direction random_direction(const BipartiteDims& dims, seed_t seed) {
  Prng rng(seed);
  const cmatrix_t g = random_ginibre(dims.D, dims.D, rng);
  const cmatrix_t h = 0.5 * (g + g.adjoint());
  return Direction(HermitianOperator(h));
}

Direction random_cq_invariant_direction(const BipartiteDims& dims, seed_t seed) {
  Prng rng(seed);
  const cmatrix_t g = random_ginibre(dims.d, dims.d, rng);
  cmatrix_t xi = 0.5 * (g + g.adjoint());
  xi -= (xi.trace() / static_cast<double>(dims.d)) * cmatrix_t::Identity(dims.d, dims.d);
  return Direction(HermitianOperator(kron(cmatrix_t::Identity(dims.d, dims.d), xi)));
}

DensityMatrix random_density_full_rank(int dim, Prng& rng) {
  if (dim < 1) throw std::invalid_argument("random_density_full_rank: dimension must be >= 1");
  const cmatrix_t g = random_ginibre(dim, dim, rng);
  cmatrix_t w = g * g.adjoint();
  w /= w.trace().real();
  cmatrix_t rho = (1.0 - kWeightFloor) * w +
                  (kWeightFloor / static_cast<double>(dim)) * cmatrix_t::Identity(dim, dim);
  return DensityMatrix(HermitianOperator(0.5 * (rho + rho.adjoint())));
}

DensityMatrix random_density_full_rank(int dim, seed_t seed) {
  Prng rng(seed);
  return random_density_full_rank(dim, rng);
}

std::vector<double> simplex_weights(int n, double floor, Prng& rng) {
  if (n < 1 || floor < 0.0 || floor * n >= 1.0) {
    throw std::invalid_argument("simplex_weights: invalid arguments");
  }
  std::vector<double> w(n);
  double total = 0.0;
  for (auto& x : w) {
    x = -std::log(1.0 - rng.uniform());
    total += x;
  }
  const double rest = 1.0 - floor * n;
  for (auto& x : w) x = floor + rest * (x / total);
  return w;
}

DensityMatrix assemble_cq(const cmatrix_t& basis, const std::vector<double>& weights,
                          const std::vector<cmatrix_t>& etas) {
  const int d = static_cast<int>(basis.rows());
  if (basis.cols() != d || static_cast<int>(weights.size()) != d ||
      static_cast<int>(etas.size()) != d) {
    throw std::invalid_argument("assemble_cq: size mismatch");
  }
  if ((basis.adjoint() * basis - cmatrix_t::Identity(d, d)).norm() > 1e-10) {
    throw std::invalid_argument("assemble_cq: basis is not orthonormal");
  }
  cmatrix_t rho = cmatrix_t::Zero(d * d, d * d);
  for (int i = 0; i < d; ++i) {
    const cmatrix_t proj = basis.col(i) * basis.col(i).adjoint();
    rho += weights[i] * kron(proj, etas[i]);
  }
  return DensityMatrix(HermitianOperator(0.5 * (rho + rho.adjoint())));
}

DensityMatrix sample_cq(const BipartiteDims& dims, seed_t seed) {
  Prng basis_rng(derive_seed(seed, 0));
  Prng weight_rng(derive_seed(seed, 1));
  const cmatrix_t p = random_unitary(dims.d, basis_rng);
  const std::vector<double> w = simplex_weights(dims.d, kWeightFloor, weight_rng);
  std::vector<cmatrix_t> etas;
  etas.reserve(dims.d);
  for (int i = 0; i < dims.d; ++i) {
    Prng eta_rng(derive_seed(seed, 2 + static_cast<std::uint64_t>(i)));
    etas.push_back(random_density_full_rank(dims.d, eta_rng).mat());
  }
  return assemble_cq(p, w, etas);
}

DensityMatrix sample_qc(const BipartiteDims& dims, seed_t seed) {
  Prng basis_rng(derive_seed(seed, 0));
  Prng weight_rng(derive_seed(seed, 1));
  const cmatrix_t p = random_unitary(dims.d, basis_rng);
  const std::vector<double> w = simplex_weights(dims.d, kWeightFloor, weight_rng);
  cmatrix_t rho = cmatrix_t::Zero(dims.D, dims.D);
  for (int i = 0; i < dims.d; ++i) {
    Prng eta_rng(derive_seed(seed, 2 + static_cast<std::uint64_t>(i)));
    const cmatrix_t eta = random_density_full_rank(dims.d, eta_rng).mat();
    const cmatrix_t proj = p.col(i) * p.col(i).adjoint();
    rho += w[i] * kron(eta, proj);
  }
  return DensityMatrix(HermitianOperator(0.5 * (rho + rho.adjoint())));
}

DensityMatrix sample_cc(const BipartiteDims& dims, seed_t seed) {
  Prng a_rng(derive_seed(seed, 0));
  Prng b_rng(derive_seed(seed, 1));
  Prng weight_rng(derive_seed(seed, 2));
  const cmatrix_t p = random_unitary(dims.d, a_rng);
  const cmatrix_t q = random_unitary(dims.d, b_rng);
  const std::vector<double> w = simplex_weights(dims.D, kWeightFloor, weight_rng);
  cmatrix_t rho = cmatrix_t::Zero(dims.D, dims.D);
  for (int i = 0; i < dims.d; ++i) {
    const cmatrix_t pi = p.col(i) * p.col(i).adjoint();
    for (int j = 0; j < dims.d; ++j) {
      const cmatrix_t qj = q.col(j) * q.col(j).adjoint();
      rho += w[i * dims.d + j] * kron(pi, qj);
    }
  }
  return DensityMatrix(HermitianOperator(0.5 * (rho + rho.adjoint())));
}

DensityMatrix product_state(const DensityMatrix& sigma, const DensityMatrix& eta) {
  return DensityMatrix(HermitianOperator(kron(sigma.mat(), eta.mat())));
}

DensityMatrix sample_product(const BipartiteDims& dims, seed_t seed) {
  Prng a_rng(derive_seed(seed, 0));
  Prng b_rng(derive_seed(seed, 1));
  return product_state(random_density_full_rank(dims.d, a_rng),
                       random_density_full_rank(dims.d, b_rng));
}

}  // namespace corrwit

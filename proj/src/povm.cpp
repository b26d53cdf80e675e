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

#include "corrwit/povm.hpp"

#include <cmath>

namespace corrwit {

namespace {

constexpr double kPsdTol = -1e-10;
constexpr double kNormResidualTol = 1e-10;
constexpr double kKernelMembershipTol = 1e-9;
constexpr int kMaxHalvings = 40;

void check_elements(const Povm& povm) {
  if (povm.elements.empty()) throw std::invalid_argument("Povm: no elements");
  for (const auto& e : povm.elements) {
    if (e.dim() != povm.dims.D) throw std::invalid_argument("Povm: element dimension mismatch");
  }
}

cmatrix_t inverse_sqrt(const HermitianOperator& s) {
  const EigResult eig = eig_hermitian(s);
  const double lmax = eig.eigenvalues(s.dim() - 1);
  if (eig.eigenvalues(0) <= 1e-12 * lmax || lmax <= 0.0) {
    throw ConstructionError("inverse_sqrt: operator is numerically singular");
  }
  rvector_t inv = eig.eigenvalues.cwiseSqrt().cwiseInverse();
  return eig.eigenvectors * inv.asDiagonal() * eig.eigenvectors.adjoint();
}

}  // namespace

PovmValidation validate(const Povm& povm) {
  check_elements(povm);
  double worst = 0.0;
  cmatrix_t sum = cmatrix_t::Zero(povm.dims.D, povm.dims.D);
  for (const auto& e : povm.elements) {
    worst = std::min(worst, min_eigenvalue(e));
    sum += e.mat();
  }
  const double residual = (sum - cmatrix_t::Identity(povm.dims.D, povm.dims.D)).norm();
  return PovmValidation{worst >= kPsdTol && residual <= kNormResidualTol, worst, residual};
}

std::vector<HermitianOperator> identity_tensor_basis(const BipartiteDims& dims) {
  const cmatrix_t id = cmatrix_t::Identity(dims.d, dims.d);
  const double norm = std::sqrt(static_cast<double>(dims.d));
  std::vector<HermitianOperator> basis;
  basis.reserve(static_cast<size_t>(dims.d) * dims.d - 1);
  for (const auto& xi : traceless_hermitian_basis(dims.d)) {
    basis.emplace_back(kron(id, xi.mat()) / norm);
  }
  return basis;
}

PovmAnalysis analyze(const Povm& povm) {
  check_elements(povm);
  PovmAnalysis out;
  out.dim_e = real_span_dim(povm.elements);
  out.xe_basis = orth_complement(povm.elements, povm.dims.D, true);
  out.dim_xe = static_cast<int>(out.xe_basis.size());
  out.informationally_complete = out.dim_xe == 0;
  out.decides_cq = true;
  const auto kernel_target = identity_tensor_basis(povm.dims);
  for (const auto& x : out.xe_basis) {
    cmatrix_t proj = cmatrix_t::Zero(povm.dims.D, povm.dims.D);
    for (const auto& g : kernel_target) proj += hs_inner(g, x) * g.mat();
    if ((x.mat() - proj).norm() > kKernelMembershipTol) {
      out.decides_cq = false;
      break;
    }
  }
  return out;
}

Povm build_minimal_cq_povm(const BipartiteDims& dims, double epsilon) {
  if (!(epsilon > 0.0) || epsilon > 1.0) {
    throw std::invalid_argument("build_minimal_cq_povm: epsilon must be in (0, 1]");
  }
  const auto kernel = identity_tensor_basis(dims);
  const auto g = orth_complement(kernel, dims.D, true);
  const int m = static_cast<int>(g.size()) + 1;  // d^4 - d^2 + 1
  const cmatrix_t id = cmatrix_t::Identity(dims.D, dims.D);
  cmatrix_t gsum = cmatrix_t::Zero(dims.D, dims.D);
  for (const auto& gj : g) gsum += gj.mat();

  double eps = epsilon;
  for (int halvings = 0; halvings <= kMaxHalvings; ++halvings, eps *= 0.5) {
    Povm povm{dims, {}};
    povm.elements.reserve(m);
    povm.elements.emplace_back((id - eps * gsum) / static_cast<double>(m));
    for (const auto& gj : g) {
      povm.elements.emplace_back((id + eps * gj.mat()) / static_cast<double>(m));
    }
    bool psd = true;
    for (const auto& e : povm.elements) {
      if (min_eigenvalue(e) < 0.0) {
        psd = false;
        break;
      }
    }
    if (psd) return povm;
  }
  throw ConstructionError("build_minimal_cq_povm: elements stayed indefinite after 40 halvings");
}

std::vector<double> statistics(const Povm& povm, const DensityMatrix& rho) {
  check_elements(povm);
  if (rho.dim() != povm.dims.D) throw std::invalid_argument("statistics: dimension mismatch");
  std::vector<double> p;
  p.reserve(povm.elements.size());
  for (const auto& e : povm.elements) p.push_back(hs_inner(e, rho.op()));
  return p;
}

bool distinguishes(const Povm& povm, const DensityMatrix& rho1, const DensityMatrix& rho2,
                   double tol) {
  const std::vector<double> p1 = statistics(povm, rho1);
  const std::vector<double> p2 = statistics(povm, rho2);
  for (size_t j = 0; j < p1.size(); ++j) {
    if (std::abs(p1[j] - p2[j]) > tol) return true;
  }
  return false;
}

Povm random_povm(const BipartiteDims& dims, int n_elements, seed_t seed) {
  if (n_elements < 1) throw std::invalid_argument("random_povm: need at least one element");
  Prng rng(seed);
  const double s = 1.0 / std::sqrt(2.0);
  std::vector<cmatrix_t> raw;
  raw.reserve(n_elements);
  cmatrix_t sum = cmatrix_t::Zero(dims.D, dims.D);
  for (int j = 0; j < n_elements; ++j) {
    cmatrix_t gin(dims.D, dims.D);
    for (int r = 0; r < dims.D; ++r)
      for (int c = 0; c < dims.D; ++c)
        gin(r, c) = complex_t(rng.gaussian() * s, rng.gaussian() * s);
    cmatrix_t w = gin * gin.adjoint();
    sum += w;
    raw.push_back(std::move(w));
  }
  const cmatrix_t si = inverse_sqrt(HermitianOperator(0.5 * (sum + sum.adjoint())));
  Povm povm{dims, {}};
  povm.elements.reserve(n_elements);
  for (const auto& w : raw) {
    const cmatrix_t e = si * w * si;
    povm.elements.emplace_back(0.5 * (e + e.adjoint()));
  }
  return povm;
}

Povm remove_and_renormalize(const Povm& povm, int index) {
  check_elements(povm);
  if (index < 0 || index >= static_cast<int>(povm.elements.size())) {
    throw std::invalid_argument("remove_and_renormalize: index out of range");
  }
  if (povm.elements.size() < 2) {
    throw std::invalid_argument("remove_and_renormalize: need at least two elements");
  }
  cmatrix_t sum = cmatrix_t::Zero(povm.dims.D, povm.dims.D);
  for (int j = 0; j < static_cast<int>(povm.elements.size()); ++j) {
    if (j != index) sum += povm.elements[static_cast<size_t>(j)].mat();
  }
  const cmatrix_t si = inverse_sqrt(HermitianOperator(0.5 * (sum + sum.adjoint())));
  Povm out{povm.dims, {}};
  out.elements.reserve(povm.elements.size() - 1);
  for (int j = 0; j < static_cast<int>(povm.elements.size()); ++j) {
    if (j == index) continue;
    const cmatrix_t e = si * povm.elements[static_cast<size_t>(j)].mat() * si;
    out.elements.emplace_back(0.5 * (e + e.adjoint()));
  }
  return out;
}

}  // namespace corrwit

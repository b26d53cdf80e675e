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

#include "corrwit/witness.hpp"

#include <cmath>
#include <numbers>

namespace corrwit {

namespace {

constexpr double kLambdaStart = 0.1;
constexpr double kLambdaFloor = 1e-6;
constexpr double kPsdTol = -1e-10;
constexpr double kNegativityTol = 1e-8;
constexpr double kCommutatorTarget = 1e-8;
constexpr double kScalarRelTol = 1e-10;

cmatrix_t w_injection(const BipartiteDims& dims) {
  const int d = dims.d;
  cmatrix_t w = cmatrix_t::Zero(dims.D, 4);
  const double s = 1.0 / std::sqrt(2.0);
  w(0, 0) = 1.0;              // |0,0>
  w(d + 1, 1) = 1.0;          // |1,1>
  w(1, 2) = s;                // (|0,1> + |1,0>)/sqrt(2)
  w(d, 2) = s;
  w(1, 3) = s;                // (|0,1> - |1,0>)/sqrt(2)
  w(d, 3) = -s;
  return w;
}

// Unitary whose first two columns span {e_p, e_r}, completed with the
// remaining standard basis vectors in ascending order.
cmatrix_t span_pair_unitary(int d, int p, int r) {
  cmatrix_t u = cmatrix_t::Zero(d, d);
  u(p, 0) = 1.0;
  const int second = (r != p) ? r : (p == 0 ? 1 : 0);
  u(second, 1) = 1.0;
  int col = 2;
  for (int i = 0; i < d && col < d; ++i) {
    if (i == p || i == second) continue;
    u(i, col++) = 1.0;
  }
  return u;
}

double row4_norm(const Eigen::Matrix4cd& m) { return m.row(3).norm(); }

Eigen::Matrix4cd compress(const cmatrix_t& w, const cmatrix_t& op, const cmatrix_t& u,
                          const cmatrix_t& v) {
  const cmatrix_t uv = kron(u, v);
  const Eigen::Matrix4cd out = w.adjoint() * uv.adjoint() * op * uv * w;
  return 0.5 * (out + out.adjoint()).eval();
}

DensityMatrix perturbed(const DensityMatrix& base, const Direction& delta, double lambda) {
  return DensityMatrix(HermitianOperator(base.mat() + lambda * delta.mat()));
}

ReducedBlock partition_block(const Eigen::Matrix4cd& m) {
  ReducedBlock block;
  block.A = m.topLeftCorner<3, 3>();
  block.a = m.block<3, 1>(0, 3);
  block.alpha = m(3, 3).real();
  return block;
}

// Index of the d x d block of `fam` farthest from a multiple of the
// identity, together with that distance.
std::pair<int, double> most_nonscalar_block(const BlockFamily& fam) {
  const int d = fam.d();
  int best = 0;
  double best_dist = -1.0;
  for (int idx = 0; idx < d * d; ++idx) {
    const cmatrix_t& m = fam.blocks()[idx];
    const complex_t c = m.trace() / static_cast<double>(d);
    const double dist = (m - c * cmatrix_t::Identity(d, d)).norm();
    if (dist > best_dist) {
      best_dist = dist;
      best = idx;
    }
  }
  return {best, best_dist};
}

cmatrix_t flip_conjugate(const cmatrix_t& m, const BipartiteDims& dims) {
  const cmatrix_t f = flip_operator(dims.d).mat();
  return f * m * f;
}

ClassCrossingCertificate mirror_certificate(const ClassCrossingCertificate& cert,
                                            const Direction& delta, const BipartiteDims& dims,
                                            CrossingKind kind, double tol) {
  const DensityMatrix base(HermitianOperator(flip_conjugate(cert.base.mat(), dims)));
  const DensityMatrix kappa(HermitianOperator(flip_conjugate(cert.kappa.mat(), dims)));
  return ClassCrossingCertificate{kind,
                                  delta,
                                  base,
                                  cert.lambda,
                                  kappa,
                                  cc_check(base, dims, tol),
                                  cc_check(kappa, dims, tol)};
}

}  // namespace

Eigen::Matrix4cd embed_w(const HermitianOperator& x, const BipartiteDims& dims) {
  if (x.dim() != dims.D) throw std::invalid_argument("embed_w: dimension mismatch");
  const cmatrix_t w = w_injection(dims);
  const Eigen::Matrix4cd out = w.adjoint() * x.mat() * w;
  return 0.5 * (out + out.adjoint()).eval();
}

std::pair<cmatrix_t, cmatrix_t> select_unitaries(const Direction& delta,
                                                 const BipartiteDims& dims) {
  const int d = dims.d;
  if (delta.dim() != dims.D) throw std::invalid_argument("select_unitaries: dimension mismatch");
  const cmatrix_t dt = partial_transpose_raw(delta.mat(), dims);

  int p = 0, q = 0, r = 0, s = 0;
  double best = -1.0;
  for (int row = 0; row < dims.D; ++row)
    for (int col = 0; col < dims.D; ++col) {
      const double a = std::abs(dt(row, col));
      if (a > best) {
        best = a;
        p = row / d;
        q = row % d;
        r = col / d;
        s = col % d;
      }
    }
  if (best <= 1e-12 * delta.op().fnorm()) {
    throw ConstructionError("select_unitaries: direction is numerically zero");
  }

  const cmatrix_t u = span_pair_unitary(d, p, r);
  const cmatrix_t v0 = span_pair_unitary(d, q, s);
  const cmatrix_t w = w_injection(dims);

  // Candidate V corrections are compared in the frame that actually drives
  // the spectrum of the perturbed partial transpose; the returned V is the
  // complex conjugate of the accepted candidate, so callers can feed it to
  // max_entangled directly.
  const Eigen::Matrix4cd block0 = compress(w, dt, u, v0);
  const double scale = block0.norm();
  const double thr = scale / 8.0;

  if (row4_norm(block0) >= thr) {
    return {u, v0.conjugate()};
  }
  if (std::abs(block0(2, 2)) >= thr) {
    cmatrix_t t0 = cmatrix_t::Identity(d, d);
    t0(1, 1) = -1.0;
    return {u, (v0 * t0).conjugate()};
  }
  const complex_t ph = std::polar(1.0, std::numbers::pi / 4.0);
  cmatrix_t tp = cmatrix_t::Identity(d, d);
  tp(0, 0) = 0.0;
  tp(1, 1) = 0.0;
  tp(0, 1) = ph;
  tp(1, 0) = std::conj(ph);
  cmatrix_t tm = tp.adjoint();
  const double np = row4_norm(compress(w, dt, u, v0 * tp));
  const double nm = row4_norm(compress(w, dt, u, v0 * tm));
  const cmatrix_t chosen = (np >= nm) ? v0 * tp : v0 * tm;
  return {u, chosen.conjugate()};
}

ReducedBlock reduced_block(const Direction& delta, const cmatrix_t& u, const cmatrix_t& v,
                           const BipartiteDims& dims) {
  if (delta.dim() != dims.D || u.rows() != dims.d || v.rows() != dims.d) {
    throw std::invalid_argument("reduced_block: dimension mismatch");
  }
  const cmatrix_t dt = partial_transpose_raw(delta.mat(), dims);
  const cmatrix_t w = w_injection(dims);
  return partition_block(compress(w, dt, u, v.conjugate()));
}

double choose_lambda(const ReducedBlock& block, const DensityMatrix& base,
                     const Direction& delta, const BipartiteDims& dims) {
  if (base.dim() != dims.D || delta.dim() != dims.D) {
    throw std::invalid_argument("choose_lambda: dimension mismatch");
  }
  const double sign = (std::abs(block.alpha) > 1e-12 && block.alpha > 0.0) ? -1.0 : 1.0;
  for (double mag = kLambdaStart; mag >= kLambdaFloor; mag *= 0.5) {
    const double lambda = sign * mag;
    const HermitianOperator kappa(base.mat() + lambda * delta.mat());
    if (min_eigenvalue(kappa) < kPsdTol) continue;
    const double pt_min = min_eigenvalue(partial_transpose(kappa, dims));
    if (pt_min <= -kNegativityTol) return lambda;
  }
  throw ConstructionError("choose_lambda: no admissible perturbation size above 1e-6");
}

EntanglementWitnessCertificate build_entangling_perturbation(const Direction& delta,
                                                             const BipartiteDims& dims) {
  const auto [u, v] = select_unitaries(delta, dims);
  const ReducedBlock block = reduced_block(delta, u, v, dims);
  const double anchor = std::max(std::abs(block.alpha), block.a.norm());
  if (anchor < 1e-10 * delta.op().fnorm()) {
    throw ConstructionError("build_entangling_perturbation: degenerate reduced block");
  }
  const DensityMatrix base = isotropic_boundary_state(max_entangled(u, v, dims.d), dims.d);
  const double lambda = choose_lambda(block, base, delta, dims);
  DensityMatrix kappa = perturbed(base, delta, lambda);
  const double pt_min = min_eigenvalue(partial_transpose(kappa.op(), dims));
  return EntanglementWitnessCertificate{delta, u, v, lambda, std::move(kappa), pt_min, block};
}

std::pair<Direction, double> flat_direction_counterexample(int d) {
  const BipartiteDims dims(d);
  cmatrix_t star = cmatrix_t::Zero(dims.D, dims.D);
  star(0, 0) = 1.0;
  star(dims.D - 1, dims.D - 1) = -1.0;
  const double lambda_max = 2.0 / static_cast<double>(d * (d + 1));

  const DensityMatrix base = isotropic_boundary_state(canonical_max_entangled(d), d);
  const cmatrix_t base_pt = partial_transpose(base.op(), dims).mat();
  for (int i = 0; i <= 100; ++i) {
    const double lambda = -lambda_max + (2.0 * lambda_max) * (static_cast<double>(i) / 100.0);
    const double lmin = min_eigenvalue(HermitianOperator(base_pt + lambda * star));
    if (lmin < -1e-12) {
      throw ConstructionError("flat_direction_counterexample: interior grid point not PSD");
    }
  }
  return {Direction(HermitianOperator(std::move(star))), lambda_max};
}

DensityMatrix find_noncommuting_state(const cmatrix_t& a) {
  if (a.rows() != a.cols() || a.rows() < 2) {
    throw std::invalid_argument("find_noncommuting_state: matrix must be square, dim >= 2");
  }
  const int d = static_cast<int>(a.rows());
  const double scale = a.norm();
  const complex_t c = a.trace() / static_cast<double>(d);
  if ((a - c * cmatrix_t::Identity(d, d)).norm() <= kScalarRelTol * scale) {
    throw std::invalid_argument("find_noncommuting_state: matrix is a multiple of the identity");
  }
  const auto basis = traceless_hermitian_basis(d);
  int best = 0;
  double best_comm = -1.0;
  for (size_t i = 0; i < basis.size(); ++i) {
    const double cn = commutator_norm(a, basis[i].mat());
    if (cn > best_comm) {
      best_comm = cn;
      best = static_cast<int>(i);
    }
  }
  const HermitianOperator& dir = basis[static_cast<size_t>(best)];
  const EigResult eig = eig_hermitian(dir);
  const double opnorm =
      std::max(std::abs(eig.eigenvalues(0)), std::abs(eig.eigenvalues(d - 1)));
  const double mu = 0.5 / opnorm;
  cmatrix_t sigma = (cmatrix_t::Identity(d, d) + mu * dir.mat()) / static_cast<double>(d);
  DensityMatrix out{HermitianOperator(std::move(sigma))};
  if (commutator_norm(a, out.mat()) < 1e-10 * scale) {
    throw ConstructionError("find_noncommuting_state: commutator collapsed numerically");
  }
  return out;
}

DensityMatrix find_coherent_noncommuting_state(const cmatrix_t& a) {
  DensityMatrix sigma0 = find_noncommuting_state(a);
  if (std::abs(sigma0.mat()(0, 1)) > 1e-12) return sigma0;
  const int d = sigma0.dim();
  const double scale = a.norm();
  cmatrix_t coh = cmatrix_t::Identity(d, d);
  coh(0, 1) = 1.0;
  coh(1, 0) = 1.0;
  coh /= static_cast<double>(d);
  for (double mu = 0.1; mu >= 1e-6; mu *= 0.1) {
    cmatrix_t m = (1.0 - mu) * sigma0.mat() + mu * coh;
    DensityMatrix sigma{HermitianOperator(std::move(m))};
    if (commutator_norm(a, sigma.mat()) >= 1e-10 * scale &&
        std::abs(sigma.mat()(0, 1)) > 0.0) {
      return sigma;
    }
  }
  throw ConstructionError("find_coherent_noncommuting_state: no admissible mixing weight");
}

ClassCrossingCertificate build_noncq_perturbation(const Direction& delta,
                                                  const BipartiteDims& dims) {
  if (delta.dim() != dims.D) {
    throw std::invalid_argument("build_noncq_perturbation: dimension mismatch");
  }
  const int d = dims.d;
  const double tol = kDetectTol;
  const BlockFamily fam = block_family(delta.op(), dims, Side::A);
  const auto [idx, dist] = most_nonscalar_block(fam);
  if (dist <= kScalarRelTol * delta.op().fnorm()) {
    throw ConstructionError(
        "build_noncq_perturbation: invariant direction (all first-factor blocks are "
        "multiples of the identity)");
  }
  const int p = idx / d;
  const cmatrix_t& apq = fam.blocks()[idx];
  const DensityMatrix sigma = find_noncommuting_state(apq);
  const int t = (p == 0) ? 1 : 0;
  cmatrix_t tt = cmatrix_t::Zero(d, d);
  tt(t, t) = 1.0;
  cmatrix_t base_mat = 0.5 * kron(sigma.mat(), tt) +
                       (0.5 / static_cast<double>(dims.D)) *
                           cmatrix_t::Identity(dims.D, dims.D);
  const DensityMatrix base{HermitianOperator(std::move(base_mat))};

  for (double lambda = kLambdaStart; lambda >= kLambdaFloor; lambda *= 0.5) {
    const HermitianOperator kappa_op(base.mat() + lambda * delta.mat());
    if (min_eigenvalue(kappa_op) < kPsdTol) continue;
    const BlockFamily kfam = block_family(kappa_op, dims, Side::A);
    if (commutator_norm(kfam(p, idx % d), kfam(t, t)) < kCommutatorTarget) continue;
    const DensityMatrix kappa(kappa_op);
    const CcResult base_check = cc_check(base, dims, tol);
    const CcResult kappa_check = cc_check(kappa, dims, tol);
    if (!base_check.is_cc || kappa_check.cq.is_cq) continue;
    return ClassCrossingCertificate{CrossingKind::noncq, delta,  base,
                                    lambda,              kappa, base_check,
                                    kappa_check};
  }
  throw ConstructionError("build_noncq_perturbation: no admissible perturbation size above 1e-6");
}

ClassCrossingCertificate build_noncc_perturbation(const Direction& delta,
                                                  const BipartiteDims& dims) {
  if (delta.dim() != dims.D) {
    throw std::invalid_argument("build_noncc_perturbation: dimension mismatch");
  }
  const BlockFamily fam = block_family(delta.op(), dims, Side::A);
  if (most_nonscalar_block(fam).second > kScalarRelTol * delta.op().fnorm()) {
    ClassCrossingCertificate cert = build_noncq_perturbation(delta, dims);
    cert.kind = CrossingKind::noncc;
    return cert;
  }
  // Directions with all first-factor blocks scalar are exactly the
  // I tensor Xi family; their mirror image never is, so cross on the
  // second factor instead.
  const Direction mirrored(HermitianOperator(flip_conjugate(delta.mat(), dims)));
  const ClassCrossingCertificate cert = build_noncq_perturbation(mirrored, dims);
  ClassCrossingCertificate out =
      mirror_certificate(cert, delta, dims, CrossingKind::noncc, kDetectTol);
  if (out.base_check.is_cc && !out.kappa_check.is_cc) return out;
  throw ConstructionError("build_noncc_perturbation: mirrored certificate failed to verify");
}

ClassCrossingCertificate build_non_cq_or_qc_perturbation(const Direction& delta,
                                                         const BipartiteDims& dims) {
  if (delta.dim() != dims.D) {
    throw std::invalid_argument("build_non_cq_or_qc_perturbation: dimension mismatch");
  }
  const int d = dims.d;
  const double tol = kDetectTol;
  const BlockFamily fam = block_family(delta.op(), dims, Side::A);
  const auto [idx, dist] = most_nonscalar_block(fam);
  if (dist <= kScalarRelTol * delta.op().fnorm()) {
    const Direction mirrored(HermitianOperator(flip_conjugate(delta.mat(), dims)));
    const ClassCrossingCertificate cert = build_non_cq_or_qc_perturbation(mirrored, dims);
    ClassCrossingCertificate out =
        mirror_certificate(cert, delta, dims, CrossingKind::non_cq_or_qc, tol);
    if ((out.base_check.cq.is_cq || out.base_check.qc.is_cq) && !out.kappa_check.cq.is_cq &&
        !out.kappa_check.qc.is_cq) {
      return out;
    }
    throw ConstructionError(
        "build_non_cq_or_qc_perturbation: mirrored certificate failed to verify");
  }
  const int p = idx / d;
  const cmatrix_t& apq = fam.blocks()[idx];
  const DensityMatrix sigma = find_coherent_noncommuting_state(apq);
  const int t = (p == 0) ? 1 : 0;
  cmatrix_t tt = cmatrix_t::Zero(d, d);
  tt(t, t) = 1.0;
  const DensityMatrix gamma0 = find_noncommuting_state(tt);
  cmatrix_t gamma = 0.5 * gamma0.mat() +
                    (0.5 / static_cast<double>(d)) * cmatrix_t::Identity(d, d);
  cmatrix_t base_mat = 0.5 * kron(sigma.mat(), tt) +
                       (0.5 / static_cast<double>(d)) *
                           kron(cmatrix_t::Identity(d, d), gamma);
  const DensityMatrix base{HermitianOperator(std::move(base_mat))};

  for (double lambda = kLambdaStart; lambda >= kLambdaFloor; lambda *= 0.5) {
    const HermitianOperator kappa_op(base.mat() + lambda * delta.mat());
    if (min_eigenvalue(kappa_op) < kPsdTol) continue;
    const BlockFamily afam = block_family(kappa_op, dims, Side::A);
    if (commutator_norm(afam(p, idx % d), afam(t, t)) < kCommutatorTarget) continue;
    const BlockFamily bfam = block_family(kappa_op, dims, Side::B);
    if (commutator_norm(bfam(0, 1), bfam(0, 0)) < kCommutatorTarget) continue;
    const DensityMatrix kappa(kappa_op);
    const CcResult base_check = cc_check(base, dims, tol);
    const CcResult kappa_check = cc_check(kappa, dims, tol);
    if (!base_check.cq.is_cq || kappa_check.cq.is_cq || kappa_check.qc.is_cq) continue;
    return ClassCrossingCertificate{CrossingKind::non_cq_or_qc,
                                    delta,
                                    base,
                                    lambda,
                                    kappa,
                                    base_check,
                                    kappa_check};
  }
  throw ConstructionError(
      "build_non_cq_or_qc_perturbation: no admissible perturbation size above 1e-6");
}

double largest_psd_lambda(const DensityMatrix& base, const Direction& delta, double start) {
  if (base.dim() != delta.dim()) {
    throw std::invalid_argument("largest_psd_lambda: dimension mismatch");
  }
  if (start <= 0.0) throw std::invalid_argument("largest_psd_lambda: start must be positive");
  for (double lambda = start; lambda >= 1e-12; lambda *= 0.5) {
    const HermitianOperator kappa(base.mat() + lambda * delta.mat());
    if (min_eigenvalue(kappa) >= kPsdTol) return lambda;
  }
  throw ConstructionError("largest_psd_lambda: no PSD perturbation size above 1e-12");
}

}  // namespace corrwit

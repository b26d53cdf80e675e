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

#include <doctest.h>

#include <cmath>
#include <set>

#include "corrwit/states.hpp"
#include "test_util.hpp"

using namespace corrwit;
using namespace corrwit_test;

TEST_CASE("prng streams are reproducible and seed-separated") {
  Prng a(42), b(42), c(43);
  bool all_equal = true, any_diff = false;
  for (int i = 0; i < 100; ++i) {
    const double x = a.uniform();
    all_equal = all_equal && (x == b.uniform());
    any_diff = any_diff || (x != c.uniform());
    CHECK(x >= 0.0);
    CHECK(x < 1.0);
  }
  CHECK(all_equal);
  CHECK(any_diff);
}

TEST_CASE("derived sub-seeds do not collide") {
  std::set<seed_t> seen;
  for (std::uint64_t i = 0; i < 200; ++i) seen.insert(derive_seed(7, i));
  CHECK(seen.size() == 200);
  CHECK(derive_seed(7, 0) != derive_seed(8, 0));
}

TEST_CASE("gaussian samples have roughly standard moments") {
  Prng rng(2024);
  const int n = 20000;
  double sum = 0.0, sq = 0.0;
  for (int i = 0; i < n; ++i) {
    const double x = rng.gaussian();
    sum += x;
    sq += x * x;
  }
  const double mean = sum / n;
  const double var = sq / n - mean * mean;
  CHECK(std::abs(mean) < 0.03);
  CHECK(std::abs(var - 1.0) < 0.05);
}

TEST_CASE("canonical maximally entangled state") {
  const cvector_t psi = canonical_max_entangled(2);
  const double s = 1.0 / std::sqrt(2.0);
  CHECK(std::abs(psi(0) - s) < 1e-15);
  CHECK(std::abs(psi(1)) == 0.0);
  CHECK(std::abs(psi(2)) == 0.0);
  CHECK(std::abs(psi(3) - s) < 1e-15);
  for (int d : {2, 3, 4}) {
    const BipartiteDims dims(d);
    const cvector_t p = canonical_max_entangled(d);
    CHECK(p.norm() == doctest::Approx(1.0).epsilon(1e-14));
    const cmatrix_t target = cmatrix_t::Identity(d, d) / static_cast<double>(d);
    CHECK((reduced_state(p, dims, Side::A) - target).norm() < 1e-13);
    CHECK((reduced_state(p, dims, Side::B) - target).norm() < 1e-13);
  }
}

TEST_CASE("rotated maximally entangled states") {
  CHECK_THROWS_AS(max_entangled(2.0 * cmatrix_t::Identity(2, 2), cmatrix_t::Identity(2, 2), 2),
                  std::invalid_argument);
  for (int d : {2, 3}) {
    const BipartiteDims dims(d);
    const cmatrix_t u = random_unitary(d, seed_t{50} + static_cast<seed_t>(d));
    const cmatrix_t v = random_unitary(d, seed_t{60} + static_cast<seed_t>(d));
    const cvector_t psi = max_entangled(u, v, d);
    CHECK((psi - oracle_kron(u, v) * canonical_max_entangled(d)).norm() < 1e-13);
    const cmatrix_t target = cmatrix_t::Identity(d, d) / static_cast<double>(d);
    CHECK((reduced_state(psi, dims, Side::A) - target).norm() < 1e-12);
    CHECK((reduced_state(psi, dims, Side::B) - target).norm() < 1e-12);
  }
  const int d = 3;
  const cmatrix_t eye = cmatrix_t::Identity(d, d);
  CHECK((max_entangled(eye, eye, d) - canonical_max_entangled(d)).norm() == 0.0);
}

TEST_CASE("flip operator spectrum and action") {
  for (int d : {2, 3}) {
    const BipartiteDims dims(d);
    const HermitianOperator f = flip_operator(d);
    CHECK((f.mat() - oracle_flip(d)).norm() == 0.0);
    CHECK((f.mat() * f.mat() - cmatrix_t::Identity(dims.D, dims.D)).norm() == 0.0);
    const EigResult eig = eig_hermitian(f);
    int plus = 0, minus = 0;
    for (int i = 0; i < dims.D; ++i) {
      if (eig.eigenvalues(i) > 0.0) ++plus;
      else ++minus;
      CHECK(std::abs(std::abs(eig.eigenvalues(i)) - 1.0) < 1e-12);
    }
    CHECK(plus == d * (d + 1) / 2);
    CHECK(minus == d * (d - 1) / 2);

    Prng rng(70 + d);
    cvector_t x(d), y(d);
    for (int i = 0; i < d; ++i) {
      x(i) = complex_t(rng.gaussian(), rng.gaussian());
      y(i) = complex_t(rng.gaussian(), rng.gaussian());
    }
    const cvector_t xy = oracle_kron(x, y);
    const cvector_t yx = oracle_kron(y, x);
    CHECK((f.mat() * xy - yx).norm() < 1e-13);

    const cvector_t psi = canonical_max_entangled(d);
    const cmatrix_t proj = static_cast<double>(d) * (psi * psi.adjoint());
    CHECK((partial_transpose(f, dims).mat() - proj).norm() < 1e-13);
  }
}

TEST_CASE("isotropic boundary state spectrum") {
  const DensityMatrix rho = isotropic_boundary_state(canonical_max_entangled(2), 2);
  const EigResult eig = eig_hermitian(rho.op());
  CHECK(eig.eigenvalues(0) == doctest::Approx(1.0 / 6.0).epsilon(1e-13));
  CHECK(eig.eigenvalues(1) == doctest::Approx(1.0 / 6.0).epsilon(1e-13));
  CHECK(eig.eigenvalues(2) == doctest::Approx(1.0 / 6.0).epsilon(1e-13));
  CHECK(eig.eigenvalues(3) == doctest::Approx(0.5).epsilon(1e-13));
  cvector_t sep = cvector_t::Zero(4);
  sep(0) = 1.0;
  CHECK_THROWS_AS(isotropic_boundary_state(sep, 2), std::invalid_argument);
}

TEST_CASE("isotropic boundary state sits on the ppt boundary") {
  for (int d : {2, 3, 4}) {
    const BipartiteDims dims(d);
    const cmatrix_t u = random_unitary(d, seed_t{80} + static_cast<seed_t>(d));
    const cmatrix_t v = random_unitary(d, seed_t{90} + static_cast<seed_t>(d));
    const DensityMatrix rho = isotropic_boundary_state(max_entangled(u, v, d), d);
    const double lmin = min_eigenvalue(partial_transpose(rho.op(), dims));
    CHECK(std::abs(lmin) < 1e-12);
  }
}

TEST_CASE("random unitaries are unitary and reproducible") {
  for (int dim : {2, 5}) {
    const cmatrix_t u = random_unitary(dim, 123);
    CHECK((u.adjoint() * u - cmatrix_t::Identity(dim, dim)).norm() < 1e-12);
    CHECK((u - random_unitary(dim, 123)).norm() == 0.0);
    CHECK((u - random_unitary(dim, 124)).norm() > 1e-3);
  }
}

TEST_CASE("random directions are traceless unit vectors") {
  const BipartiteDims dims(3);
  const Direction delta = random_direction(dims, 7);
  CHECK(std::abs(delta.op().trace()) < 1e-13);
  CHECK(delta.op().fnorm() == doctest::Approx(1.0).epsilon(1e-13));
  CHECK((delta.mat() - random_direction(dims, 7).mat()).norm() == 0.0);
  CHECK((delta.mat() - random_direction(dims, 8).mat()).norm() > 1e-3);
  CHECK_THROWS_AS(Direction(HermitianOperator(cmatrix_t::Identity(3, 3))),
                  std::invalid_argument);
}

TEST_CASE("invariant directions have scalar first-factor blocks") {
  for (int d : {2, 3}) {
    const BipartiteDims dims(d);
    const Direction xi = random_cq_invariant_direction(dims, 31);
    CHECK(std::abs(xi.op().trace()) < 1e-13);
    CHECK(xi.op().fnorm() == doctest::Approx(1.0).epsilon(1e-13));
    const BlockFamily fam = block_family(xi.op(), dims, Side::A);
    for (int k = 0; k < d; ++k)
      for (int l = 0; l < d; ++l) {
        const cmatrix_t& blk = fam(k, l);
        const complex_t c = blk.trace() / static_cast<double>(d);
        CHECK((blk - c * cmatrix_t::Identity(d, d)).norm() < 1e-13);
      }
  }
}

TEST_CASE("full-rank densities respect the weight floor") {
  const DensityMatrix rho = random_density_full_rank(9, seed_t{5});
  CHECK(rho.op().trace() == doctest::Approx(1.0).epsilon(1e-13));
  CHECK(min_eigenvalue(rho.op()) >= 1e-3 / 9.0 - 1e-12);
}

TEST_CASE("simplex weights sum to one above the floor") {
  Prng rng(33);
  const auto w = simplex_weights(5, 0.01, rng);
  double total = 0.0;
  for (double x : w) {
    CHECK(x >= 0.01);
    total += x;
  }
  CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
  CHECK_THROWS_AS(simplex_weights(5, 0.3, rng), std::invalid_argument);
}

TEST_CASE("density matrix construction rejects non-states") {
  cmatrix_t big = 2.0 * cmatrix_t::Identity(2, 2);
  CHECK_THROWS_AS(DensityMatrix{HermitianOperator(big)}, std::invalid_argument);
  cmatrix_t indef = cmatrix_t::Zero(2, 2);
  indef(0, 0) = 1.5;
  indef(1, 1) = -0.5;
  CHECK_THROWS_AS(DensityMatrix{HermitianOperator(indef)}, std::invalid_argument);
}

TEST_CASE("class samples are reproducible valid densities") {
  for (int d : {2, 3}) {
    const BipartiteDims dims(d);
    const DensityMatrix cq = sample_cq(dims, 91);
    const DensityMatrix qc = sample_qc(dims, 92);
    const DensityMatrix cc = sample_cc(dims, 93);
    const DensityMatrix prod = sample_product(dims, 94);
    CHECK((cq.mat() - sample_cq(dims, 91).mat()).norm() == 0.0);
    CHECK((qc.mat() - sample_qc(dims, 92).mat()).norm() == 0.0);
    CHECK((cc.mat() - sample_cc(dims, 93).mat()).norm() == 0.0);
    CHECK((prod.mat() - sample_product(dims, 94).mat()).norm() == 0.0);
    CHECK(cq.dim() == dims.D);
  }
}

TEST_CASE("product states factor into their marginals") {
  const BipartiteDims dims(2);
  const DensityMatrix sigma = random_density_full_rank(2, seed_t{41});
  const DensityMatrix eta = random_density_full_rank(2, seed_t{42});
  const DensityMatrix rho = product_state(sigma, eta);
  CHECK((rho.mat() - oracle_kron(sigma.mat(), eta.mat())).norm() < 1e-14);
}

TEST_CASE("assemble_cq rejects a non-orthonormal basis") {
  const int d = 2;
  cmatrix_t basis = cmatrix_t::Ones(d, d);
  const std::vector<double> w = {0.5, 0.5};
  const cmatrix_t eta = cmatrix_t::Identity(d, d) / static_cast<double>(d);
  CHECK_THROWS_AS(assemble_cq(basis, w, {eta, eta}), std::invalid_argument);
}

/*
 * test_gates.cpp
 */
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "generators.hpp"
#include "qbrach/gates.hpp"

using namespace qbrach;
using namespace qbrach::testgen;

namespace {

const double pi = std::acos(-1.0);

// exp(M) by scaling and squaring of a truncated Taylor series
ComplexMatrix taylor_exp(const ComplexMatrix &m) {
  int s = 0;
  double nrm = m.max_abs() * double(m.dim());
  while (nrm > 0.25) {
    nrm /= 2.0;
    ++s;
  }
  const ComplexMatrix a = std::ldexp(1.0, -s) * m;
  ComplexMatrix term = ComplexMatrix::identity(m.dim()), sum = term;
  for (int k = 1; k < 30; ++k) {
    term = (1.0 / k) * (term * a);
    sum += term;
  }
  for (int i = 0; i < s; ++i) sum = sum * sum;
  return sum;
}

ComplexMatrix dft_reference(int n) {
  ComplexMatrix f(n);
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k) f(j, k) = std::polar(1.0 / std::sqrt(double(n)), 2.0 * pi * j * k / n);
  return f;
}

}  // namespace

TEST_CASE("group closure on known groups") {
  // cyclic group of order 3
  const cplx w = cube_root_of_unity();
  const auto c3 = group_closure({ComplexMatrix::diag({1.0, w, w * w})});
  CHECK(c3.order() == 3);
  CHECK(c3.abelian);
  // Pauli group modulo nothing: {+-1, +-i} x {1, sx, sy, sz} has order 16
  const auto pauli = group_closure({sigma_x(), sigma_y(), sigma_z()});
  CHECK(pauli.order() == 16);
  CHECK_FALSE(pauli.abelian);
  // multiplication table is a Latin square
  for (std::size_t i = 0; i < pauli.order(); ++i) {
    std::vector<int> seen(pauli.order(), 0);
    for (std::size_t j = 0; j < pauli.order(); ++j) seen[pauli.table[i][j]]++;
    for (int s : seen) CHECK(s == 1);
  }
  // an irrational rotation never closes
  const auto rot = expm_h(sigma_z(), std::sqrt(2.0));
  CHECK_THROWS_AS(group_closure({rot}), ClosureError);
}

TEST_CASE("dihedral permutations") {
  const auto s = dihedral_s();
  const auto g = group_closure({s.begin(), s.end()});
  CHECK(g.order() == 6);
  CHECK_FALSE(g.abelian);
  // two generators suffice
  CHECK(group_closure({s[1], s[4]}).order() == 6);
  for (const auto &m : s) {
    CHECK(verify_unitary(m) == 0.0);
    CHECK(g.index_of(m) < 6);
  }
}

TEST_CASE("DFT matrix R") {
  const auto r = dft_r();
  CHECK(dist(r, dft_reference(3)) < 1e-15);
  CHECK(dist(power(r, 4), ComplexMatrix::identity(3)) < 1e-14);
  // R^T R = R^2 is the permutation fixing index 0
  const auto p = r.transpose() * r;
  const ComplexMatrix perm{{1.0, 0.0, 0.0}, {0.0, 0.0, 1.0}, {0.0, 1.0, 0.0}};
  CHECK(dist(p, perm) < 1e-14);
  CHECK(group_closure({r}).order() == 4);
  for (const auto &rec : dft_checks()) CHECK(rec.status != Status::fail);
}

TEST_CASE("SU(3) transformations are unitary on random angles") {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 50; ++trial) {
    const double a = uniform(rng, -pi, pi), b = uniform(rng, -pi, pi);
    CHECK(verify_unitary(gate_d(a)) < 1e-12);
    CHECK(verify_unitary(gate_j(a)) < 1e-12);
    CHECK(verify_unitary(gate_q(a, b)) < 1e-12);
    CHECK(verify_unitary(su2_u2(a)) < 1e-12);
    CHECK(verify_unitary(su2_u5(a)) < 1e-12);
    CHECK(verify_unitary(su3_propagator_printed(a)) < 1e-12);
    CHECK(dist(su2_triple_product(a), sigma_z()) < 1e-14);
    // the elliptic matrix has spectrum {-1, 0, 1}
    const auto sp = hermitian_eig(elliptic_matrix(a, b));
    CHECK(std::abs(sp.values[0] + 1.0) < 1e-12);
    CHECK(std::abs(sp.values[1]) < 1e-12);
    CHECK(std::abs(sp.values[2] - 1.0) < 1e-12);
  }
}

TEST_CASE("J at zero angle") {
  CHECK(dist(power(gate_j(0.0), 4), ComplexMatrix::diag_real({-1.0, -1.0, 1.0})) < 1e-14);
}

TEST_CASE("eigenreflections from the definition are projectors") {
  std::mt19937_64 rng(42);
  for (int trial = 0; trial < 10; ++trial) {
    const auto e = eigenreflections(uniform(rng, -pi, pi));
    for (const auto *m : {&e.m1_def, &e.m2_def, &e.m3_def}) {
      CHECK(dist(*m * *m, *m) < 1e-12);
      CHECK(hermiticity_residual(*m) < 1e-14);
      CHECK(std::abs(m->trace() - 2.0) < 1e-12);
    }
    // the three rank-2 projectors sum to 2
    CHECK(dist(e.m1_def + e.m2_def + e.m3_def, 2.0 * ComplexMatrix::identity(3)) < 1e-12);
  }
}

TEST_CASE("shift operators move columns by alpha") {
  std::mt19937_64 rng(43);
  for (auto f : {ShiftFamily::d, ShiftFamily::q, ShiftFamily::j})
    for (int col = 1; col <= 3; ++col)
      for (int k = 0; k < 5; ++k) {
        const auto r = shift_check(f, col, uniform(rng, -pi, pi), uniform(rng, -pi, pi), uniform(rng, -pi, pi));
        CHECK(r.residual < 1e-12);
      }
}

TEST_CASE("SU(4) catalog unitarity") {
  const auto cat = su4_catalog();
  CHECK(cat.size() >= 9);
  for (const auto &g : cat) {
    CAPTURE(g.name);
    CHECK(g.matrix.dim() == 4);
    if (g.claimed_unitary && g.name != "U8a") CHECK(verify_unitary(g.matrix) < 1e-12);
  }
}

TEST_CASE("triangular semigroup") {
  std::mt19937_64 rng(44);
  for (int trial = 0; trial < 20; ++trial) {
    const TriangularElement a{gauss_c(rng), gauss_c(rng), gauss_c(rng)};
    const TriangularElement b{gauss_c(rng), gauss_c(rng), gauss_c(rng)};
    const auto ops = tri_ops(a, b);
    // closed under multiplication: unit upper-triangular
    CHECK(ops.product(0, 0) == cplx(1.0));
    CHECK(std::abs(ops.product(1, 0)) + std::abs(ops.product(2, 0)) + std::abs(ops.product(2, 1)) == 0.0);
    CHECK(std::abs(ops.product(0, 1) - (a.a + b.a)) < 1e-14);
    CHECK(std::abs(ops.product(0, 2) - (a.b + b.b + a.a * b.c)) < 1e-13);
    CHECK(dist(ops.square, ops.square_decomp.matrix()) < 1e-13);
    // the commutator sits in the corner and squares to zero
    CHECK(ops.commutator_nilpotency < 1e-13);
    const double t = uniform(rng, -2, 2);
    CHECK(dist(tri_exponential(a, t), taylor_exp((-I * t) * a.matrix())) < 1e-11);
    // dx/dt = A x solved by exp(At) x0
    const std::array<cplx, 3> x0{gauss_c(rng), gauss_c(rng), gauss_c(rng)};
    const auto x = tri_ode_solve(a, x0, t);
    const auto ref = taylor_exp(cplx(t) * a.matrix()) * CVector(x0.begin(), x0.end());
    for (int i = 0; i < 3; ++i) CHECK(std::abs(x[i] - ref[i]) < 1e-10 * (1.0 + std::abs(ref[i])));
  }
  for (int n = 1; n <= 8; ++n) {
    const auto [a, b] = dimension_count(n);
    CHECK(a == b);
  }
}

TEST_CASE("conjugate and verify_unitary") {
  std::mt19937_64 rng(45);
  const auto h = random_hermitian(rng, 3);
  const auto u = expm_h(random_hermitian(rng, 3), 1.0);
  CHECK(hermiticity_residual(conjugate(u, h)) < 1e-13);
  CHECK(std::abs(conjugate(u, h).trace() - h.trace()) < 1e-13);
  CHECK(verify_unitary(2.0 * u) > 1.0);
}

TEST_CASE("gate suite has no failures") {
  const auto recs = gates_checks(42);
  CHECK(recs.size() > 40);
  for (const auto &r : recs) {
    CAPTURE(r.id);
    CHECK(r.status != Status::fail);
  }
}

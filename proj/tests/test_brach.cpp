/*
 * test_brach.cpp
 */
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "generators.hpp"
#include "qbrach/brach.hpp"

using namespace qbrach;
using namespace qbrach::testgen;

namespace {

// random driver subspace of su(n) spanned by m random traceless Hermitian draws
ControlProblem random_problem(std::mt19937_64 &rng, std::size_t n, std::size_t m, double k) {
  std::vector<ComplexMatrix> d;
  for (std::size_t i = 0; i < m; ++i) d.push_back(random_traceless_hermitian(rng, n));
  return ControlProblem::with_complement(n, d, k);
}

ComplexMatrix random_in(std::mt19937_64 &rng, const std::vector<ComplexMatrix> &basis, std::size_t n) {
  ComplexMatrix r(n);
  for (const auto &e : basis) r += gauss_c(rng).real() * e;
  return r;
}

ComplexMatrix scale_to_k(const ComplexMatrix &h, double k) {
  return std::sqrt(2.0 * k / trace_inner(h, h)) * h;
}

}  // namespace

TEST_CASE("orthonormalize yields a trace-orthonormal set") {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<ComplexMatrix> in;
    for (int i = 0; i < 4; ++i) in.push_back(random_traceless_hermitian(rng, 3));
    in.push_back(in[0] + 2.0 * in[1]);  // dependent
    bool changed = false;
    const auto out = orthonormalize(in, &changed);
    CHECK(changed);
    REQUIRE(out.size() == 4);
    for (std::size_t a = 0; a < out.size(); ++a)
      for (std::size_t b = 0; b < out.size(); ++b)
        CHECK(std::abs(trace_inner(out[a], out[b]) - (a == b ? 1.0 : 0.0)) < 1e-12);
    // span preserved: each input is reproduced by projection
    for (const auto &m : in) CHECK(dist(project(out, m), m) < 1e-11);
  }
  bool changed = true;
  const auto basis = gell_mann_basis(3);
  std::vector<ComplexMatrix> scaled;
  for (const auto &g : basis) scaled.push_back((1.0 / std::sqrt(2.0)) * g);
  orthonormalize(scaled, &changed);
  CHECK_FALSE(changed);
}

TEST_CASE("complement problem partitions su(n)") {
  std::mt19937_64 rng(22);
  for (std::size_t n = 2; n <= 5; ++n) {
    const auto p = random_problem(rng, n, n, 1.0);
    CHECK(p.driver_basis().size() + p.constraint_basis().size() == n * n - 1);
    const auto x = random_traceless_hermitian(rng, n);
    CHECK(dist(p.project_driver(x) + p.project_constraint(x), x) < 1e-12);
    CHECK(std::abs(trace_inner(p.project_driver(x), p.project_constraint(x))) < 1e-12);
  }
}

TEST_CASE("control problem validation") {
  CHECK_THROWS_AS(ControlProblem(1, {sigma_x()}, {}, 1.0), DimensionError);
  CHECK_THROWS_AS(ControlProblem(2, {sigma_x()}, {sigma_z()}, 0.0), ValidationError);
  CHECK_THROWS_AS(ControlProblem(2, {}, {sigma_z()}, 1.0), ValidationError);
  CHECK_THROWS_AS(ControlProblem(2, {ComplexMatrix::identity(2)}, {}, 1.0), ValidationError);
  CHECK_THROWS_AS(ControlProblem(2, {sigma_x()}, {sigma_x() + sigma_z()}, 1.0), ValidationError);
  CHECK_THROWS_AS(ControlProblem(2, {gell_mann_basis(3)[0]}, {}, 1.0), DimensionError);
  const ControlProblem p(2, {sigma_x(), sigma_y()}, {sigma_z()}, 1.0);
  CHECK(p.was_adjusted());  // Pauli matrices have Tr(s^2) = 2
  CHECK_THROWS_AS(brach_rhs(sigma_z(), sigma_z(), p), ValidationError);
  CHECK_THROWS_AS(brach_rhs(sigma_x(), sigma_x(), p), ValidationError);
}

TEST_CASE("rhs decomposes -i[H,F] into the two spans") {
  std::mt19937_64 rng(23);
  const auto p = random_problem(rng, 3, 3, 1.0);
  const auto h = random_in(rng, p.driver_basis(), 3);
  const auto f = random_in(rng, p.constraint_basis(), 3);
  const auto r = brach_rhs(h, f, p);
  CHECK(r.residual < 1e-12);
  CHECK(dist(r.dH + r.dF, -I * commutator(h, f)) < 1e-12);
  // d/dt Tr H^2 = 2 Tr(H dH) = 2 Tr(-i H [H,F]) = 0
  CHECK(std::abs(trace_inner(h, r.dH)) < 1e-12);
}

TEST_CASE("SU(2) flow against the rotating closed form") {
  // F = w sz is conserved, H(t) = e^{iFt} H0 e^{-iFt},
  // psi(t) = e^{iFt} e^{-i(H0+F)t} psi0
  const ControlProblem p(2, {sigma_x(), sigma_y()}, {sigma_z()}, 1.0);
  const double w = 0.8;
  const ComplexMatrix h0 = sigma_x(), f0 = w * sigma_z();
  const CVector psi0{1.0, 0.0};
  const double T = 2.5;
  const auto tr = evolve(p, h0, f0, psi0, T, 1e-3);
  REQUIRE_FALSE(tr.aborted);
  for (const auto &s : tr.samples) {
    const auto h_exact = expm_h(f0, -s.t) * h0 * expm_h(f0, s.t);
    const auto psi_exact = expm_h(f0, -s.t) * expm_h(h0 + f0, s.t) * psi0;
    CHECK(dist(s.H, h_exact) < 1e-9);
    CHECK(dist(s.F, f0) < 1e-12);
    CHECK(dist(s.psi, psi_exact) < 1e-9);
  }
}

TEST_CASE("conservation laws on random control problems") {
  std::mt19937_64 rng(24);
  for (int trial = 0; trial < 6; ++trial) {
    const std::size_t n = 2 + trial % 3;
    const double k = uniform(rng, 0.5, 2.0);
    const auto p = random_problem(rng, n, n, k);
    const auto h0 = scale_to_k(random_in(rng, p.driver_basis(), n), k);
    const auto f0 = random_in(rng, p.constraint_basis(), n);
    const auto psi0 = random_state(rng, n);
    const auto tr = evolve(p, h0, f0, psi0, 2.0, 1e-3, {10});
    REQUIRE_FALSE(tr.aborted);
    const auto w = tr.worst();
    CHECK(w.norm_drift < 1e-10);
    CHECK(w.trh2_drift < 1e-8);
    CHECK(w.trhf < 1e-8);
    CHECK(w.lax_eig_drift < 1e-8);
    // <psi|(H+F)|psi> is conserved because i dL/dt = [H, L]
    const double e0 = inner(psi0, (h0 + f0) * psi0).real();
    const auto &last = tr.samples.back();
    CHECK(std::abs(inner(last.psi, (last.H + last.F) * last.psi).real() - e0) < 1e-9);
    CHECK(last.t == doctest::Approx(2.0));
  }
}

TEST_CASE("integrator converges at fourth order") {
  std::mt19937_64 rng(25);
  const auto p = random_problem(rng, 3, 4, 1.0);
  const auto h0 = scale_to_k(random_in(rng, p.driver_basis(), 3), 1.0);
  const auto f0 = random_in(rng, p.constraint_basis(), 3);
  const auto psi0 = random_state(rng, 3);
  const auto ref = evolve(p, h0, f0, psi0, 1.0, 1e-4).samples.back();
  const auto a = evolve(p, h0, f0, psi0, 1.0, 0.04).samples.back();
  const auto b = evolve(p, h0, f0, psi0, 1.0, 0.02).samples.back();
  const double ea = dist(a.H, ref.H), eb = dist(b.H, ref.H);
  CHECK(ea / eb > 12.0);
  CHECK(ea / eb < 20.0);
}

TEST_CASE("evolve input validation and abort") {
  const ControlProblem p(2, {sigma_x(), sigma_y()}, {sigma_z()}, 1.0);
  const ComplexMatrix h0 = sigma_x(), f0 = sigma_z();
  const CVector psi0{1.0, 0.0};
  CHECK_THROWS_AS(evolve(p, h0, f0, CVector{1.0, 1.0}, 1.0, 0.1), ValidationError);
  CHECK_THROWS_AS(evolve(p, 2.0 * h0, f0, psi0, 1.0, 0.1), ValidationError);
  CHECK_THROWS_AS(evolve(p, f0, f0, psi0, 1.0, 0.1), ValidationError);
  CHECK_THROWS_AS(evolve(p, h0, h0, psi0, 1.0, 0.1), ValidationError);
  CHECK_THROWS_AS(evolve(p, h0, f0, CVector{1.0, 0.0, 0.0}, 1.0, 0.1), DimensionError);
  CHECK_THROWS(evolve(p, h0, f0, psi0, 1.0, 0.0));
  CHECK_THROWS(evolve(p, h0, f0, psi0, -1.0, 0.1));
  // a huge step breaks the invariants and trips the hard limit
  EvolveOptions o;
  o.hard_limit = 1e-6;
  const auto tr = evolve(p, h0, 30.0 * f0, psi0, 5.0, 0.5, o);
  CHECK(tr.aborted);
  CHECK_FALSE(tr.abort_reason.empty());
}

TEST_CASE("g operator and boundary residual") {
  std::mt19937_64 rng(26);
  const auto h = random_traceless_hermitian(rng, 3), f = random_traceless_hermitian(rng, 3);
  const auto psi = random_state(rng, 3);
  const auto g = g_operator(h, f, psi);
  const auto l = h + f;
  CHECK(dist(g, l - inner(psi, l * psi).real() * outer(psi, psi)) < 1e-14);
  // G psi is orthogonal to psi
  CHECK(std::abs(inner(psi, g * psi)) < 1e-13);
  const auto pr = outer(psi, psi);
  CHECK(boundary_residual(g, pr) == doctest::Approx(dist(g * pr + pr * g, g)));
  CHECK_THROWS_AS(boundary_residual(g, 2.0 * pr), ValidationError);
  CHECK_THROWS_AS(boundary_residual(g, ComplexMatrix::identity(3)), ValidationError);
}

TEST_CASE("qutrit observables and elliptic expectation formulas") {
  std::mt19937_64 rng(27);
  for (int trial = 0; trial < 20; ++trial) {
    const double a = uniform(rng, -2, 2), b = uniform(rng, -2, 2);
    const ComplexMatrix h{{0.0, a, 0.0}, {a, 0.0, -I * b}, {0.0, I * b, 0.0}};
    const auto psi = random_state(rng, 3);
    const auto o = observables(psi, h);
    CHECK(elliptic_expect_h(a, b, psi) == doctest::Approx(o.expect_h).epsilon(1e-12));
    CHECK(elliptic_expect_h2(a, b, psi) == doctest::Approx(o.expect_h2).epsilon(1e-12));
    CHECK(o.delta_e * o.delta_e == doctest::Approx(energy_variance(h, psi)).epsilon(1e-10));
    CHECK(o.probabilities[0] + o.probabilities[1] + o.probabilities[2] == doctest::Approx(1.0));
    // symmetric combinations are real, antisymmetric ones imaginary
    for (int j : {2, 3, 4}) CHECK(std::abs(o.f[j].imag()) < 1e-15);
    for (int j : {0, 1, 5}) CHECK(std::abs(o.f[j].real()) < 1e-15);
  }
  CHECK_THROWS_AS(observables(CVector{1.0, 0.0}, sigma_x()), DimensionError);
}

TEST_CASE("SU(2) vector form of the flow") {
  std::mt19937_64 rng(28);
  for (int trial = 0; trial < 20; ++trial) {
    const auto h = random_traceless_hermitian(rng, 2), f = random_traceless_hermitian(rng, 2);
    const auto vh = su2_vectorize(h);
    CHECK(dist(su2_devectorize(vh), h) < 1e-15);
    // <a|b> reproduces Tr(AB) for Hermitian operands
    CHECK(su2_pair(vh, su2_vectorize(f)).real() == doctest::Approx(trace_inner(h, f)).epsilon(1e-12));
    // rhs vector equals the vectorized commutator [H, F]
    const auto rhs = su2_vector_rhs(vh, su2_vectorize(f));
    const auto c = commutator(h, f);
    CHECK(std::abs(rhs[0] - std::sqrt(2.0) * c(0, 0)) < 1e-12);
    CHECK(std::abs(rhs[1] - c(0, 1)) < 1e-12);
    CHECK(std::abs(rhs[2] - c(1, 0)) < 1e-12);
  }
  CHECK_THROWS_AS(su2_vectorize(ComplexMatrix::identity(2)), ValidationError);
}

/*
 * test_special.cpp
 */
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "generators.hpp"
#include "qbrach/special.hpp"

using namespace qbrach;
using namespace qbrach::testgen;

namespace {

const double pi = std::acos(-1.0);

Polynomial random_poly(std::mt19937_64 &rng, int deg) {
  std::uniform_int_distribution<int> d(-9, 9);
  std::vector<rational> c;
  for (int k = 0; k <= deg; ++k) c.emplace_back(d(rng), 1 + std::abs(d(rng)));
  if (c.back() == 0) c.back() = 1;
  return Polynomial(c);
}

Polynomial linear(long long root) { return Polynomial::descending({1, -root}); }

}  // namespace

TEST_CASE("polynomial ring operations are exact") {
  std::mt19937_64 rng(51);
  for (int trial = 0; trial < 30; ++trial) {
    const auto a = random_poly(rng, 1 + trial % 5), b = random_poly(rng, 1 + trial % 3);
    const rational x(trial - 7, 3);
    CHECK((a * b).eval(x) == a.eval(x) * b.eval(x));
    CHECK((a + b).eval(x) == a.eval(x) + b.eval(x));
    CHECK((a - a).is_zero());
    CHECK((a * b).degree() == a.degree() + b.degree());
    const auto qr = divide(a * b + b, b);
    CHECK(qr.remainder.is_zero());
    CHECK(qr.quotient == a + Polynomial::constant(1));
    const auto qr2 = divide(a, b);
    CHECK(qr2.quotient * b + qr2.remainder == a);
    CHECK(qr2.remainder.degree() < b.degree());
    CHECK(a.compose_square().eval(x) == a.eval(x * x));
    CHECK(a.compose_square().even_part_in_square() == a);
  }
  CHECK_THROWS(Polynomial::descending({1, 1}).even_part_in_square());
  CHECK_THROWS(divide(Polynomial::constant(1), Polynomial()));
}

TEST_CASE("polynomial derivative against the power rule and differences") {
  const auto p = Polynomial::descending({3, 0, -2, 5});  // 3z^3 - 2z + 5
  CHECK(p.derivative() == Polynomial::descending({9, 0, -2}));
  CHECK(p.degree() == 3);
  CHECK(p.leading() == 3);
  CHECK(p.coeff(1) == -2);
  CHECK(p.coeff(7) == 0);
  std::mt19937_64 rng(52);
  const auto q = random_poly(rng, 6);
  const double x = 0.37, h = 1e-5;
  CHECK(q.derivative().eval(x) == doctest::Approx((q.eval(x + h) - q.eval(x - h)) / (2 * h)).epsilon(1e-8));
}

TEST_CASE("gcd and reduction") {
  const auto a = linear(1) * linear(2) * linear(2), b = linear(2) * linear(3);
  CHECK(poly_gcd(a, b) == linear(2));
  const RationalFunction r(a, b);
  const auto red = r.reduced();
  CHECK(red.den == linear(3));
  CHECK(std::abs(red.eval(cplx(0.5, 0.2)) - r.eval(cplx(0.5, 0.2))) < 1e-12);
}

TEST_CASE("elliptic polynomial identities") {
  const auto &e = ell_polys();
  CHECK(e.q + e.p33 == e.big_q);
  CHECK(e.b4.compose_square() == e.b1);
  CHECK(shifted_square_product(2) == Polynomial::descending({1, 0, 5, 0, 4, 0}));
}

TEST_CASE("cosine Laplace transform: exact against quadrature") {
  std::mt19937_64 rng(53);
  for (int trial = 0; trial < 5; ++trial) {
    const auto p = random_poly(rng, 2 + trial);
    const auto lp = laplace_cos_poly(p);
    for (double s : {0.5, 1.0, 2.5}) {
      const double num = laplace_cos_numeric(p, s);
      CHECK(lp.eval(s) == doctest::Approx(num).epsilon(1e-10));
    }
  }
  // L[cos](s) = s/(s^2+1)
  const auto lc = laplace_cos_poly(Polynomial::monomial(1));
  CHECK(lc.eval(2.0) == doctest::Approx(2.0 / 5.0).epsilon(1e-15));
  // L[z^3](s) = 6/s^4
  CHECK(laplace_poly(Polynomial::monomial(3)).eval(2.0) == doctest::Approx(6.0 / 16.0).epsilon(1e-15));
}

TEST_CASE("residues at the origin") {
  // 1/(s(s^2+1)) has residue 1; (s+2)/(s^2 (s-1)) has residue -3
  const RationalFunction a(Polynomial::constant(1), shifted_square_product(1));
  CHECK(residue_exact(a) == 1);
  const RationalFunction b(Polynomial::descending({1, 2}), Polynomial::descending({1, -1, 0, 0}));
  CHECK(residue_exact(b) == -3);
  const auto rb = residue_at_origin(b);
  CHECK(std::abs(rb.numeric - cplx(-3.0)) < 1e-12);
  CHECK(rb.radius < 1.0);

  const auto &e = ell_polys();
  CHECK(residue_exact(RationalFunction(e.b_q, e.r_q)) == 1);
  CHECK(residue_exact(RationalFunction(e.b_p, e.r_p)) == rational(1, 4));
  CHECK(std::abs(residue_at_origin(RationalFunction(e.b_q, e.r_q)).numeric - 1.0) < 1e-10);
  CHECK(std::abs(residue_at_origin(RationalFunction(e.b_p, e.r_p)).numeric - 0.25) < 1e-10);
}

TEST_CASE("root finding and classification") {
  // (z - 2)(z + 3) z (z^2 + 4)
  const auto p = linear(2) * linear(-3) * Polynomial::monomial(1) * Polynomial::descending({1, 0, 4});
  const auto rs = root_classify(p);
  CHECK(rs.zero == 1);
  CHECK(rs.real_pos == 1);
  CHECK(rs.real_neg == 1);
  CHECK(rs.pure_imag_pairs == 1);
  CHECK(rs.complex_pairs == 0);
  for (const auto &r : poly_roots(p)) CHECK(std::abs(p.eval(r)) < 1e-9);
  // z^4 + 4 has roots +-1 +- i: one quadruple
  const auto q = root_classify(Polynomial::descending({1, 0, 0, 0, 4}));
  CHECK(q.complex_pairs == 2);
  CHECK(q.complex_quads == 1);
  // a regular pentagon
  std::vector<cplx> pts;
  for (int k = 0; k < 5; ++k) pts.push_back(cplx(1.0, 2.0) + std::polar(3.0, 0.4 + 2 * pi * k / 5));
  CHECK(pentagon_defect(pts) < 1e-12);
  pts[2] *= 1.1;
  CHECK(pentagon_defect(pts) > 1e-3);
}

TEST_CASE("Chebyshev recursion against trigonometric forms") {
  std::mt19937_64 rng(54);
  CHECK(cheb_u(0, 0.3) == 0.0);
  CHECK(cheb_u(1, 0.3) == 1.0);
  for (int trial = 0; trial < 100; ++trial) {
    const double th = uniform(rng, 0.05, pi - 0.05), x = std::cos(th);
    const int m = trial % 11;
    CHECK(cheb_t(m, x) == doctest::Approx(std::cos(m * th)).epsilon(1e-12));
    // U_m(cos th) = sin(m th)/sin th with U_1 = 1
    CHECK(std::abs(cheb_u(m, x) - std::sin(m * th) / std::sin(th)) < 1e-11);
    const auto jet = cheb_t_jet(m, x);
    CHECK(jet[0] == doctest::Approx(cheb_t(m, x)));
    CHECK(std::abs(jet[1] - m * std::sin(m * th) / std::sin(th)) < 1e-10 * (1 + m * m));
    // (1 - x^2) T'' - x T' + m^2 T = 0
    CHECK(std::abs((1 - x * x) * jet[2] - x * jet[1] + m * m * jet[0]) < 1e-9);
  }
}

TEST_CASE("Bessel functions against the standard library") {
  std::mt19937_64 rng(55);
  for (int trial = 0; trial < 60; ++trial) {
    const int n = trial % 9;
    const double r = uniform(rng, 0.0, 15.0);
    CHECK(std::abs(bessel_j(n, r) - std::cyl_bessel_j(double(n), r)) < 1e-12);
    // J_n' = (J_{n-1} - J_{n+1})/2 and the Bessel equation
    const double jm = n == 0 ? -std::cyl_bessel_j(1.0, r) : std::cyl_bessel_j(double(n - 1), r);
    const double d1 = 0.5 * (jm - std::cyl_bessel_j(double(n + 1), r));
    CHECK(std::abs(bessel_j_prime(n, r) - d1) < 1e-12);
    if (r > 0.1) {
      const double j = bessel_j(n, r), d2 = bessel_j_second(n, r);
      CHECK(std::abs(r * r * d2 + r * d1 + (r * r - n * n) * j) < 1e-10 * (1 + r * r));
    }
  }
  // negative order symmetry
  CHECK(bessel_j(-3, 2.0) == doctest::Approx(-std::cyl_bessel_j(3.0, 2.0)).epsilon(1e-12));
}

TEST_CASE("spin-wave propagator") {
  // |K(dq, t)| = |J_dq(2t)|, and the lattice ODE reproduces K
  for (int dq = -4; dq <= 4; ++dq)
    CHECK(std::abs(std::abs(greens_spinwave(dq, 1.3)) - std::abs(std::cyl_bessel_j(double(std::abs(dq)), 2.6))) <
          1e-12);
  const double t = 2.0;
  const auto lat = spinwave_lattice(t);
  REQUIRE(lat.size() == 201);
  double total = 0.0;
  for (const auto &c : lat) total += std::norm(c);
  CHECK(total == doctest::Approx(1.0).epsilon(1e-9));
  for (int dq = -10; dq <= 10; ++dq) CHECK(std::abs(lat[100 + dq] - greens_spinwave(dq, t)) < 1e-6);
}

TEST_CASE("oscillator first-order equation") {
  std::mt19937_64 rng(56);
  for (int trial = 0; trial < 30; ++trial) {
    const double z = uniform(rng, -0.9, 0.9), a = uniform(rng, -1.5, 1.5);
    const auto r = oscillator_residuals(z, a, gauss_c(rng));
    CHECK(r.first_order < 1e-8);
  }
}

TEST_CASE("cosine frame identities") {
  auto psi = [](double z) { return std::exp(I * 2.0 * z) + z * z * z; };
  const auto r = cosine_frame_identities(psi, 1.1);
  CHECK(r.chi_second < 1e-6);
  CHECK(r.z_second < 1e-6);
  CHECK(r.z_second_nested < 1e-6);
  CHECK(r.cot_corrected < 1e-6);
  CHECK(r.cot_printed > 1e-3);
  CHECK_THROWS(cosine_frame_identities(psi, 0.01));
}

TEST_CASE("quadrature and weighted moments") {
  CHECK(gauss_chebyshev([](double u) { return u * u; }, 8) == doctest::Approx(pi / 2).epsilon(1e-14));
  CHECK(integrate([](double x) { return std::exp(x); }, 0.0, 1.0) == doctest::Approx(std::exp(1.0) - 1.0).epsilon(1e-14));
  for (double a : {0.0, 1.0, 2.0, 3.5}) CHECK(weight_norm(a) == doctest::Approx(weight_norm_numeric(a)).epsilon(1e-10));
  CHECK(weight_norm(0.0) == doctest::Approx(2.0));
  CHECK(weight_norm(2.0) == doctest::Approx(4.0 / 3.0));
  for (int m = 0; m <= 5; ++m) {
    // uniform weight: 1/(2m+1); weight 1-u^2: 3/((2m+1)(2m+3))
    CHECK(even_moment(m).eval(0.0) == doctest::Approx(1.0 / (2 * m + 1)).epsilon(1e-14));
    CHECK(even_moment(m).eval(2.0) == doctest::Approx(3.0 / ((2 * m + 1) * (2 * m + 3))).epsilon(1e-14));
  }
  // the Chebyshev-weighted integral of b1
  const auto &e = ell_polys();
  const double v = gauss_chebyshev([&](double u) { return e.b1.eval(u); }, 64);
  CHECK(std::abs(v / (12331.0 * pi / 128.0) - 1.0) < 1e-10);
}

TEST_CASE("special suite has no failures") {
  for (const auto &r : special_checks(42)) {
    CAPTURE(r.id);
    CHECK(r.status != Status::fail);
  }
}

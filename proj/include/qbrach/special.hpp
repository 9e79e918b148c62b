/*
 * special.hpp
 *
 * Exact polynomial and rational-function content (elliptic polynomials,
 * cosine-Laplace transforms, residues, weighted moments) and numerical
 * special functions (Chebyshev, Bessel, spin-wave propagator, the
 * cosine-transformed oscillator).
 */
#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "qbrach/matcore.hpp"
#include "qbrach/report.hpp"

namespace qbrach {

using rational = boost::multiprecision::cpp_rational;

// Exact polynomial, coefficients in ascending degree.
class Polynomial {
public:
  Polynomial() = default;
  explicit Polynomial(std::vector<rational> ascending);
  // printed order: highest degree first
  static Polynomial descending(std::initializer_list<long long> coeffs);
  static Polynomial monomial(int k, rational c = 1);
  static Polynomial constant(rational c) { return monomial(0, std::move(c)); }

  int degree() const { return int(c_.size()) - 1; }  // -1 for zero
  bool is_zero() const { return c_.empty(); }
  rational coeff(int k) const;
  const std::vector<rational> &coeffs() const { return c_; }
  const rational &leading() const;

  rational eval(const rational &x) const;
  double eval(double x) const;
  cplx eval(cplx x) const;

  Polynomial derivative() const;
  Polynomial compose_square() const;  // P(z^2)
  // P(z) = R(z^2) for even P; throws otherwise
  Polynomial even_part_in_square() const;
  Polynomial monic() const;
  std::string to_string(const std::string &var = "z") const;

  Polynomial &operator+=(const Polynomial &o);
  Polynomial &operator-=(const Polynomial &o);
  Polynomial &operator*=(const rational &s);
  friend bool operator==(const Polynomial &a, const Polynomial &b) { return a.c_ == b.c_; }

private:
  void trim();
  std::vector<rational> c_;
};

Polynomial operator+(Polynomial a, const Polynomial &b);
Polynomial operator-(Polynomial a, const Polynomial &b);
Polynomial operator*(const Polynomial &a, const Polynomial &b);
Polynomial operator*(rational s, Polynomial a);

struct PolyDivision {
  Polynomial quotient, remainder;
};
PolyDivision divide(const Polynomial &a, const Polynomial &b);
Polynomial poly_gcd(Polynomial a, Polynomial b);  // monic

struct RationalFunction {
  Polynomial num, den;
  RationalFunction() = default;
  RationalFunction(Polynomial n, Polynomial d);
  cplx eval(cplx s) const;
  double eval(double s) const;
  RationalFunction reduced() const;  // lowest terms, monic denominator
};

// s * prod_{k=1}^{n} (s^2 + k^2)
Polynomial shifted_square_product(int n);

struct EllipticPolynomials {
  Polynomial q, p, p33, big_q;
  Polynomial b_q, r_q, b_big_q, r_big_q, b_p, r_p;
  Polynomial b1, b2, b3, b4;
};
const EllipticPolynomials &ell_polys();

// Exact L[P(cos theta)](s) via the cosine Fourier expansion of P(cos theta).
RationalFunction laplace_cos_poly(const Polynomial &p);
// Exact int_0^inf P(z) e^{-sz} dz = sum c_k k!/s^{k+1}
RationalFunction laplace_poly(const Polynomial &p);
// Numeric int_0^inf P(cos theta) e^{-s theta} d theta, s > 0
double laplace_cos_numeric(const Polynomial &p, double s);

struct Residue {
  rational exact;
  cplx numeric;
  double radius = 0.0;
};
rational residue_exact(const RationalFunction &r);
// (1/2 pi i) contour integral on |s| = radius, shrunk when another pole is inside
Residue residue_at_origin(const RationalFunction &r, int nodes = 512, double radius = 0.1);

std::vector<cplx> poly_roots(const Polynomial &p);

struct RootStructure {
  std::vector<cplx> roots;
  int zero = 0;
  int real_pos = 0;
  int real_neg = 0;
  int pure_imag_pairs = 0;
  int complex_pairs = 0;   // conjugate pairs off both axes
  int complex_quads = 0;   // {z, -z, z*, -z*} among the complex pairs
  std::vector<double> moduli;
};
RootStructure root_classify(const Polynomial &p, double tol = 1e-8);

// Regularity of five points as a pentagon about their centroid:
// max(relative radius spread, max angular gap error / (2 pi / 5)).
double pentagon_defect(const std::vector<cplx> &pts);

// Chebyshev polynomials by the mixed recursion, U_0 = 0, U_1 = 1.
double cheb_t(int m, double x);
double cheb_u(int m, double x);
// value, first and second x-derivatives of T_m carried through the recursion
std::array<double, 3> cheb_t_jet(int m, double x);

// J_n(r) = (1/2pi) int e^{-i(n phi - r sin phi)} d phi, periodic trapezoid
double bessel_j(int n, double r, int nodes = 0);
double bessel_j_prime(int n, double r, int nodes = 0);
double bessel_j_second(int n, double r, int nodes = 0);
int bessel_default_nodes(int n, double r);

// K(dq, t) = (1/2pi) int e^{-i(p dq - 2t cos p)} dp
cplx greens_spinwave(int dq, double t, int nodes = 0);
cplx greens_spinwave_printed(int dq, double t);  // (-i)^dq J_dq(2t)
// Chain i dC_n/dt = 2 C_n - C_{n+1} - C_{n-1} from C = delta_0, RK4 on
// `sites` sites centred at 0, with the e^{-2it} energy shift removed.
std::vector<cplx> spinwave_lattice(double t, int sites = 201, double dt = 1e-3);

// beta0 e^{i acos z} e^{-i alpha sqrt(1 - z^2)}
cplx oscillator_beta(double z, double alpha, cplx beta0);

struct OscillatorResiduals {
  double first_order = 0.0;
  double second_order_printed = 0.0;    // i(1-z^2)b'' = b(-i(1-az)^2 - a s + z(1-az)/s)
  double second_order_rewritten = 0.0;  // (1-z^2)b'' + (a(1-z^2)/(1-az) - z)b' + (1-az)^2 b
};
OscillatorResiduals oscillator_residuals(double z, double alpha, cplx beta0, double h = 1e-4);

struct CosineFrameResiduals {
  double chi_second = 0.0;       // Psi_cc = (1-z^2)Psi_zz - z Psi_z
  double z_second = 0.0;         // (1-z^2)Psi_zz = Psi_cc - cot Psi_c
  double z_second_nested = 0.0;  // Psi_zz = (1/sin) d/dc((1/sin) Psi_c)
  double cot_printed = 0.0;      // z Psi_z = cot Psi_c
  double cot_corrected = 0.0;    // z Psi_z = -cot Psi_c
  double product_printed = 0.0;  // Psi_cc = sqrt(1-z^2) d/dz(sqrt(1-z^2) Psi)
};
CosineFrameResiduals cosine_frame_identities(const std::function<cplx(double)> &psi, double chi);

// first and second derivatives by central differences with one Richardson step
std::array<cplx, 2> fd_derivatives(const std::function<cplx(double)> &f, double x, double h);

// int_{-1}^{1} f(u)/sqrt(1-u^2) du with n Chebyshev nodes
double gauss_chebyshev(const std::function<double(double)> &f, int n);
// composite Gauss-Legendre on [a,b]
double integrate(const std::function<double(double)> &f, double a, double b, int panels = 64);

// int_{-1}^{1} (1-u^2)^{alpha/2} du: closed form and quadrature
double weight_norm(double alpha);
double weight_norm_numeric(double alpha);
// E[u^{2m}] under (1-u^2)^{alpha/2}, as an exact function of alpha
RationalFunction even_moment(int m);
// sum_m c_{2m} E[u^{2m}] for an even polynomial, reduced
RationalFunction weighted_marginal(const Polynomial &even_poly);
// prod_{n=0}^{3} (alpha + 2(n+1) + 1)
Polynomial weighted_denominator();
Polynomial weighted_numerator_printed();  // p(alpha)

std::vector<CheckRecord> special_checks(std::uint64_t seed = 42);

}  // namespace qbrach

/*
 * catalog.cpp
 */
#include "qbrach/catalog.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "qbrach/log.hpp"

namespace qbrach {

namespace {

constexpr double pi = std::numbers::pi;

// distance of x to the nearest integer multiple of step
double lattice_residual(double x, double step) {
  return std::abs(x - std::round(x / step) * step);
}

ComplexMatrix e13_pair(cplx kappa) {
  ComplexMatrix m(3);
  m(0, 2) = kappa;
  m(2, 0) = std::conj(kappa);
  return m;
}

// exp(+iFt) exp(-i(H0+F)t), the rotating-frame propagator for constant F
TimeOperator frame_propagator(const ComplexMatrix &h0, const ComplexMatrix &f) {
  const ComplexMatrix l = h0 + f;
  return [f, l](double t) { return expm_h(f, -t) * expm_h(l, t); };
}

double real_param(const std::map<std::string, cplx> &p, const std::string &key) {
  const cplx v = p.at(key);
  if (std::abs(v.imag()) > 0.0) throw ValidationError("parameter " + key + " must be real");
  return v.real();
}

}  // namespace

double Scenario::fidelity_at(double t) const {
  if (!target) throw std::logic_error("scenario " + name + " has no target state");
  return fidelity(*target, state_at(t, psi0));
}

Scenario scenario_su2(double k, double omega, cplx eps0) {
  if (!(k > 0.0)) throw ValidationError("k must be positive");
  if (std::abs(std::norm(eps0) - k) > 1e-10 * std::max(1.0, k))
    throw ValidationError("energy mismatch: |eps0|^2 must equal k");
  const ComplexMatrix h0{{0.0, eps0}, {std::conj(eps0), 0.0}};
  const ComplexMatrix f = omega * sigma_z();
  const double wp = std::sqrt(k + omega * omega);

  Scenario s;
  s.name = "su2";
  s.dim = 2;
  s.params = {{"k", k}, {"Omega", omega}, {"eps0", eps0}};
  s.hamiltonian_at = [eps0, omega](double t) {
    const cplx e = eps0 * std::exp(2.0 * I * omega * t);
    return ComplexMatrix{{0.0, e}, {std::conj(e), 0.0}};
  };
  s.constraint_at = [f](double) { return f; };
  s.propagator_at = frame_propagator(h0, f);
  // (H0 + F)^2 = W'^2 1, so the inner exponential is a rotation
  s.state_at = [h0, f, omega, wp](double t, const CVector &psi) {
    const ComplexMatrix inner_u = std::cos(wp * t) * ComplexMatrix::identity(2) +
                                  (-I * std::sin(wp * t) / wp) * (h0 + f);
    const ComplexMatrix outer_u = ComplexMatrix::diag({std::exp(I * omega * t), std::exp(-I * omega * t)});
    return outer_u * (inner_u * psi);
  };
  s.psi0 = {1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0)};
  s.target = CVector{1.0 / std::sqrt(2.0), -1.0 / std::sqrt(2.0)};
  s.min_time = pi / (2.0 * std::sqrt(k));
  s.period = omega != 0.0 ? pi / std::abs(omega) : 2.0 * pi / std::sqrt(k);
  s.quantization = {
      {"Omega' T is a multiple of pi/2", [wp](double t) { return lattice_residual(wp * t, pi / 2); }},
      {"Omega T is a multiple of pi/2", [omega](double t) { return lattice_residual(omega * t, pi / 2); }},
  };
  s.problem.emplace(2, std::vector<ComplexMatrix>{sigma_x(), sigma_y()},
                    std::vector<ComplexMatrix>{sigma_z()}, k);
  return s;
}

double su2_quantized_time(double k, int n, int m) {
  if (!(k > 0.0) || n * n <= m * m) throw ValidationError("need k > 0 and n^2 > m^2");
  return 0.5 * pi * std::sqrt(double(n * n - m * m) / k);
}

Scenario scenario_so3(double nz, cplx eps, double u, cplx k1, cplx k2) {
  const double r = std::sqrt(nz * nz + std::norm(eps));
  if (!(r > 0.0)) throw ValidationError("SO(3) scenario needs R > 0");
  const ComplexMatrix h{{nz, 0.0, eps}, {0.0, 0.0, 0.0}, {std::conj(eps), 0.0, -nz}};
  const ComplexMatrix f0{{u, k1, 0.0}, {std::conj(k1), -2.0 * u, k2}, {0.0, std::conj(k2), u}};
  const ComplexMatrix outer13 = ComplexMatrix::diag_real({1.0, 0.0, 1.0});

  Scenario s;
  s.name = "so3";
  s.dim = 3;
  s.params = {{"nz", nz}, {"eps", eps}, {"u", u}, {"K1", k1}, {"K2", k2}};
  s.hamiltonian_at = [h](double) { return h; };
  s.constraint_at = [h, f0](double t) { return expm_h(h, t) * f0 * expm_h(h, -t); };
  s.propagator_at = [h, r, outer13](double t) {
    return ComplexMatrix::identity(3) + (-I * std::sin(r * t) / r) * h +
           cplx(std::cos(r * t) - 1.0) * outer13;
  };
  s.state_at = [nz, eps, r](double t, const CVector &p) {
    const double c = std::cos(r * t), sn = std::sin(r * t) / r;
    return CVector{c * p[0] - I * sn * (nz * p[0] + eps * p[2]), p[1],
                   c * p[2] - I * sn * (std::conj(eps) * p[0] - nz * p[2])};
  };
  s.psi0 = {1.0, 0.0, 0.0};
  s.period = 2.0 * pi / r;
  s.quantization = {
      {"R T is a multiple of pi (sign flip)", [r](double t) { return lattice_residual(r * t, pi); }},
  };
  s.problem = ControlProblem::with_complement(
      3, {ComplexMatrix::diag_real({1.0, 0.0, -1.0}), sym_x(3, 0, 2), sym_y(3, 0, 2)}, r * r);
  return s;
}

namespace {

struct EllipticZ {
  cplx z1, z2, z3;
};

EllipticZ elliptic_printed_z(double r, double omega, const std::array<cplx, 3> &d) {
  const cplx dp = (d[0] + d[2]) / std::sqrt(2.0), dm = (d[0] - d[2]) / std::sqrt(2.0);
  return {omega * d[1] - I * r * dm, -I * r * d[1] + omega * dm, dp};
}

}  // namespace

CVector elliptic_printed_initial(double r, double omega, const std::array<cplx, 3> &d) {
  const auto z = elliptic_printed_z(r, omega, d);
  const double wp2 = r * r + omega * omega;
  return {z.z3, (omega * z.z2 + I * r * z.z1) / wp2, -I * (omega * z.z1 + I * r * z.z2) / wp2};
}

CVector elliptic_printed_state(double r, double omega, const std::array<cplx, 3> &d, double t) {
  const auto z = elliptic_printed_z(r, omega, d);
  const double wp = std::sqrt(r * r + omega * omega);
  const double sp = std::sin(wp * t), cp = std::cos(wp * t);
  const double c = std::cos(omega * t), s = std::sin(omega * t);
  const cplx c1 = -(sp / wp) * (I * z.z2 * r / wp + omega * (z.z1 / wp * cp - z.z3 * sp)) +
                  c * (z.z3 * cp + z.z1 * sp / wp);
  const cplx c2 = (omega * z.z2 + I * r * (z.z1 * cp - z.z3 * sp)) / (wp * wp);
  const cplx c3 = (c / wp) * (I * z.z2 * r / wp + omega * (z.z1 * cp / wp - z.z3 * sp)) -
                  I * s * (z.z3 * cp + z.z1 / wp * sp);
  return {c1, c2, c3};
}

Scenario scenario_su3_elliptic(double r, double omega, const std::array<cplx, 3> &delta0) {
  if (!(r > 0.0)) throw ValidationError("elliptic scenario needs R > 0");
  const double dn = std::sqrt(std::norm(delta0[0]) + std::norm(delta0[1]) + std::norm(delta0[2]));
  if (std::abs(dn - 1.0) > 1e-10) throw ValidationError("Delta0 must be normalized");
  const ComplexMatrix h0 = r * sym_x(3, 0, 1);
  const ComplexMatrix f = omega * sym_x(3, 0, 2);
  const double wp = std::sqrt(r * r + omega * omega);

  Scenario s;
  s.name = "su3-elliptic";
  s.dim = 3;
  s.params = {{"R", r}, {"Omega", omega}, {"Delta1", delta0[0]}, {"Delta2", delta0[1]},
              {"Delta3", delta0[2]}};
  s.hamiltonian_at = [r, omega](double t) {
    const double c = std::cos(omega * t), sn = std::sin(omega * t);
    return ComplexMatrix{{0.0, r * c, 0.0}, {r * c, 0.0, -I * r * sn}, {0.0, I * r * sn, 0.0}};
  };
  s.constraint_at = [f](double) { return f; };
  s.propagator_at = frame_propagator(h0, f);
  // Closed form of exp(iFt) exp(-i(H0+F)t) psi, written through
  // z-parameters of the initial state.
  s.state_at = [r, omega, wp](double t, const CVector &p) {
    const cplx z1 = -I * (r * p[1] + omega * p[2]);
    const cplx z2 = omega * p[1] - r * p[2];
    const cplx z3 = p[0];
    const double sp = std::sin(wp * t), cp = std::cos(wp * t);
    const cplx w = z1 * cp - wp * z3 * sp;
    const cplx phi1 = z3 * cp + z1 * sp / wp;
    const cplx phi2 = (omega * z2 + I * r * w) / (wp * wp);
    const cplx phi3 = (I / (wp * wp)) * (I * r * z2 + omega * w);
    const double c = std::cos(omega * t), sn = std::sin(omega * t);
    return CVector{c * phi1 + I * sn * phi3, phi2, I * sn * phi1 + c * phi3};
  };
  s.psi0 = elliptic_printed_initial(r, omega, delta0);
  s.period = omega != 0.0 ? 2.0 * pi / std::abs(omega) : 2.0 * pi / r;
  s.problem = ControlProblem::with_complement(3, {sym_x(3, 0, 1), sym_y(3, 1, 2)}, r * r);
  return s;
}

double geodesic_theta(cplx kappa) {
  if (std::abs(kappa) == 0.0) throw ValidationError("kappa must be nonzero");
  return 0.5 * pi - std::arg(kappa);
}

CVector geodesic_printed_state(double eps1, cplx kappa, double t) {
  const double k = std::abs(kappa);
  const double d = std::sqrt(k * k + eps1 * eps1);
  return {std::cos(t * d) * std::cos(k * t) + (k / d) * std::sin(k * t) * std::sin(t * d),
          -I * eps1 / d * std::sin(t * d),
          I * std::conj(kappa) *
              (std::sin(k * t) * std::cos(t * d) / k - std::sin(t * d) * std::cos(k * t) / d)};
}

ComplexMatrix geodesic_printed_hamiltonian(double eps1, cplx kappa, double theta, double t) {
  const double k = std::abs(kappa);
  const double c = std::cos(k * t), sn = std::sin(k * t);
  return eps1 * ComplexMatrix{{0.0, c, 0.0},
                              {c, 0.0, std::exp(-I * theta) * sn},
                              {0.0, std::exp(I * theta) * sn, 0.0}};
}

Scenario scenario_su3_geodesic(double eps1, cplx kappa, double theta) {
  if (!(eps1 > 0.0)) throw ValidationError("eps1(0) must be real and positive");
  if (std::abs(kappa) == 0.0) throw ValidationError("kappa must be nonzero");
  if (std::abs(std::exp(-I * theta) + I * kappa / std::abs(kappa)) > 1e-10)
    throw ValidationError("theta is inconsistent with kappa: need exp(-i theta) = -i kappa/|kappa|");
  const ComplexMatrix h0 = eps1 * sym_x(3, 0, 1);
  const ComplexMatrix f = e13_pair(kappa);
  const double k = std::abs(kappa);
  const double d = std::sqrt(k * k + eps1 * eps1);

  Scenario s;
  s.name = "su3-geodesic";
  s.dim = 3;
  s.params = {{"R", eps1}, {"kappa", kappa}, {"theta", theta}};
  s.hamiltonian_at = [eps1, kappa, theta](double t) {
    return geodesic_printed_hamiltonian(eps1, kappa, theta, t);
  };
  s.constraint_at = [f](double) { return f; };
  s.propagator_at = frame_propagator(h0, f);
  const CVector e1{1.0, 0.0, 0.0};
  const auto u = s.propagator_at;
  // the printed closed form is for psi0 = e1; other states go through U
  s.state_at = [eps1, kappa, e1, u](double t, const CVector &p) {
    if (dist(p, e1) == 0.0) return geodesic_printed_state(eps1, kappa, t);
    return u(t) * p;
  };
  s.psi0 = e1;
  s.target = CVector{0.0, 0.0, 1.0};
  s.min_time = pi / (2.0 * k);
  s.period = 2.0 * pi / k;
  s.quantization = {
      {"sin(T Delta) = 0", [d](double t) { return std::abs(std::sin(t * d)); }},
      {"cos(T |kappa|) = 0", [k](double t) { return std::abs(std::cos(t * k)); }},
      {"|kappa| = |eps1(0)|/sqrt(3)", [k, eps1](double) { return std::abs(k - eps1 / std::sqrt(3.0)); }},
  };
  std::vector<ComplexMatrix> driver{sym_x(3, 0, 1), sym_y(3, 0, 1), sym_x(3, 1, 2), sym_y(3, 1, 2)};
  s.problem = ControlProblem::with_complement(3, std::move(driver), eps1 * eps1);
  return s;
}

Scenario scenario_su3_geodesic(double eps1, cplx kappa) {
  return scenario_su3_geodesic(eps1, kappa, geodesic_theta(kappa));
}

std::array<CVector, 3> frenet_eigenvectors(double curvature, double torsion) {
  const double r = std::hypot(curvature, torsion);
  if (r == 0.0) throw ValidationError("Frenet eigenvectors need K^2 + T^2 > 0");
  const double c = curvature / r, s = torsion / r, h = 1.0 / std::sqrt(2.0);
  return {CVector{I * c * h, h, -I * s * h}, CVector{I * s, 0.0, I * c},
          CVector{-I * c * h, h, I * s * h}};
}

Scenario scenario_frenet(double a, double b, double c, double n, double eta) {
  const double r = std::hypot(n, b);
  if (!(r > 0.0)) throw ValidationError("Frenet scenario needs K(0)^2 + T(0)^2 > 0");
  auto kt = [=](double t) { return c * std::sin(eta * t) + n * std::cos(eta * t); };
  auto tt = [=](double t) { return a * std::sin(eta * t) + b * std::cos(eta * t); };
  const double span = eta != 0.0 ? 2.0 * pi / std::abs(eta) : 1.0;
  for (int j = 0; j <= 64; ++j) {
    const double t = span * j / 64.0;
    if (std::abs(kt(t) * kt(t) + tt(t) * tt(t) - r * r) > 1e-10 * r * r)
      throw ValidationError("circle constraint violated: K^2 + T^2 is not constant");
  }
  if (eta != 0.0 && (std::abs(c + b) > 1e-10 * r || std::abs(n - a) > 1e-10 * r))
    throw ValidationError("parameters do not solve dK/dt = -eta T, dT/dt = eta K (need C = -B, N = A)");

  const ComplexMatrix y12 = sym_y(3, 0, 1), y23 = sym_y(3, 1, 2);
  const ComplexMatrix f = eta * sym_y(3, 0, 2);
  const ComplexMatrix h0 = n * y12 + b * y23;

  Scenario s;
  s.name = "frenet";
  s.dim = 3;
  s.params = {{"A", a}, {"B", b}, {"C", c}, {"N", n}, {"eta", eta}};
  s.hamiltonian_at = [kt, tt, y12, y23](double t) { return kt(t) * y12 + tt(t) * y23; };
  s.constraint_at = [f](double) { return f; };
  s.propagator_at = frame_propagator(h0, f);
  const auto u = s.propagator_at;
  s.state_at = [u](double t, const CVector &p) { return u(t) * p; };
  s.psi0 = {1.0, 0.0, 0.0};
  s.period = eta != 0.0 ? 2.0 * pi / std::abs(eta) : 2.0 * pi / r;
  s.problem = ControlProblem::with_complement(3, {y12, y23}, r * r);
  return s;
}

double su4_bell_time(double lambda_x) { return pi / (8.0 * lambda_x); }
double su4_printed_time(double lambda_x) { return pi / lambda_x; }

CVector su4_printed_state(double lambda_x, double t) {
  const double h = 1.0 / std::sqrt(2.0);
  return {h * std::cos(2.0 * lambda_x * t), 0.0, 0.0, -I * h * std::sin(2.0 * lambda_x * t)};
}

Scenario scenario_su4_heisenberg(double lambda_x) {
  if (!(lambda_x != 0.0)) throw ValidationError("lambda_x must be nonzero");
  const ComplexMatrix xx = kron(sigma_x(), sigma_x()), yy = kron(sigma_y(), sigma_y()),
                      zz = kron(sigma_z(), sigma_z());
  const ComplexMatrix id2 = ComplexMatrix::identity(2);
  const ComplexMatrix h = lambda_x * xx - lambda_x * yy;
  const ComplexMatrix f0 = 0.3 * kron(sigma_x(), id2) + 0.2 * kron(id2, sigma_z()) +
                           0.1 * kron(sigma_x(), sigma_y());

  Scenario s;
  s.name = "su4-heisenberg";
  s.dim = 4;
  s.params = {{"lambda_x", lambda_x}};
  s.hamiltonian_at = [h](double) { return h; };
  s.constraint_at = [h, f0](double t) { return expm_h(h, t) * f0 * expm_h(h, -t); };
  s.propagator_at = [h](double t) { return expm_h(h, t); };
  // H = 2 lambda_x (E14 + E41): a rotation of the (1,4) pair, identity on (2,3)
  s.state_at = [lambda_x](double t, const CVector &p) {
    const double c = std::cos(2.0 * lambda_x * t), sn = std::sin(2.0 * lambda_x * t);
    return CVector{c * p[0] - I * sn * p[3], p[1], p[2], c * p[3] - I * sn * p[0]};
  };
  s.psi0 = {1.0, 0.0, 0.0, 0.0};
  s.target = CVector{1.0 / std::sqrt(2.0), 0.0, 0.0, -I / std::sqrt(2.0)};
  s.min_time = su4_bell_time(lambda_x);
  s.period = pi / std::abs(lambda_x);
  s.quantization = {
      {"|c1|^2 = |c4|^2 = 1/2",
       [lambda_x](double t) { return std::abs(std::pow(std::cos(2.0 * lambda_x * t), 2) - 0.5); }},
  };
  s.problem = ControlProblem::with_complement(4, {xx, yy, zz}, 4.0 * lambda_x * lambda_x);
  return s;
}

ComplexMatrix dirac_h0(const DiracParams &p) {
  const cplx e = p.eps;
  return ComplexMatrix{{p.alpha, 0.0, p.pz, e},
                       {0.0, p.alpha, std::conj(e), -p.pz},
                       {p.pz, e, -p.alpha, 0.0},
                       {std::conj(e), -p.pz, 0.0, -p.alpha}};
}

ComplexMatrix dirac_w() {
  return (1.0 / std::sqrt(2.0)) * kron(sigma_x() + sigma_z(), ComplexMatrix::identity(2));
}

ComplexMatrix dirac_p(const DiracParams &p, bool normalized) {
  // b = alpha 1 + i beta.sigma with beta.sigma the Hermitian block of H0
  const ComplexMatrix bs{{p.pz, p.eps}, {std::conj(p.eps), -p.pz}};
  const ComplexMatrix b = p.alpha * ComplexMatrix::identity(2) + I * bs;
  ComplexMatrix m(4);
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) {
      m(i, j) = i == j ? 1.0 : 0.0;
      m(i, j + 2) = i == j ? 1.0 : 0.0;
      m(i + 2, j) = b(i, j);
      m(i + 2, j + 2) = -b(i, j);
    }
  return normalized ? (1.0 / std::sqrt(2.0)) * m : m;
}

Scenario scenario_dirac(const DiracParams &p) {
  const double e2 = p.alpha * p.alpha + p.pz * p.pz + std::norm(p.eps);
  if (std::abs(e2 - 1.0) > 1e-10)
    throw ValidationError("Dirac normalization violated: alpha^2 + pz^2 + |eps|^2 must be 1");
  const ComplexMatrix bblk{{p.pz, p.eps}, {std::conj(p.eps), -p.pz}};
  const ComplexMatrix ablk{{p.a[0], p.a[1]}, {p.a[2], p.a[3]}};
  if (std::abs((bblk * ablk).trace().real()) > 1e-12)
    throw ValidationError("Dirac constraint block violates Tr(HF) = 0 (need Re Tr(A0 A) = 0)");

  const ComplexMatrix h0 = dirac_h0(p);
  const ComplexMatrix z = ComplexMatrix::diag_real({1.0, 1.0, -1.0, -1.0});
  const ComplexMatrix a_adj = ablk.adjoint();

  Scenario s;
  s.name = "dirac";
  s.dim = 4;
  s.params = {{"alpha", p.alpha}, {"pz", p.pz}, {"eps", p.eps}, {"xi1", p.xi1}, {"xi2", p.xi2},
              {"a11", p.a[0]},    {"a12", p.a[1]}, {"a21", p.a[2]}, {"a22", p.a[3]}};
  s.hamiltonian_at = [p, bblk](double t) {
    ComplexMatrix h(4);
    const cplx up = std::exp(-2.0 * I * t), dn = std::exp(2.0 * I * t);
    for (std::size_t i = 0; i < 2; ++i) {
      h(i, i) = p.alpha;
      h(i + 2, i + 2) = -p.alpha;
      for (std::size_t j = 0; j < 2; ++j) {
        h(i, j + 2) = up * bblk(i, j);  // A0^dagger = A0 for the Hermitian block
        h(i + 2, j) = dn * bblk(i, j);
      }
    }
    return h;
  };
  s.constraint_at = [p, ablk, a_adj](double t) {
    ComplexMatrix f(4);
    f(0, 1) = p.xi1;
    f(1, 0) = std::conj(p.xi1);
    f(2, 3) = p.xi2;
    f(3, 2) = std::conj(p.xi2);
    const cplx up = std::exp(-2.0 * I * t), dn = std::exp(2.0 * I * t);
    for (std::size_t i = 0; i < 2; ++i)
      for (std::size_t j = 0; j < 2; ++j) {
        f(i, j + 2) = up * ablk(i, j);
        f(i + 2, j) = dn * a_adj(i, j);
      }
    return f;
  };
  // H(t) = exp(-iZt) H0 exp(iZt) gives U = exp(-iZt) exp(-i(H0 - Z)t)
  const ComplexMatrix shifted = h0 - z;
  s.propagator_at = [z, shifted](double t) { return expm_h(z, t) * expm_h(shifted, t); };
  const auto u = s.propagator_at;
  s.state_at = [u](double t, const CVector &psi) { return u(t) * psi; };
  s.psi0 = {1.0, 0.0, 0.0, 0.0};
  s.min_time = pi;
  s.period = pi;
  return s;
}

const char *family_name(FamilyKind k) {
  switch (k) {
  case FamilyKind::antidiagonal: return "antidiagonal";
  case FamilyKind::tridiagonal: return "tridiagonal";
  case FamilyKind::diagonal: return "diagonal";
  }
  return "?";
}

namespace {

std::vector<ComplexMatrix> diagonal_basis(std::size_t n) {
  std::vector<ComplexMatrix> out;
  for (std::size_t l = 1; l < n; ++l) {
    ComplexMatrix d(n);
    for (std::size_t i = 0; i < l; ++i) d(i, i) = 1.0;
    d(l, l) = -double(l);
    out.push_back(d);
  }
  return out;
}

template <class Pred>
std::vector<ComplexMatrix> offdiag_basis(std::size_t n, Pred keep) {
  std::vector<ComplexMatrix> out;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (keep(i, j)) {
        out.push_back(sym_x(n, i, j));
        out.push_back(sym_y(n, i, j));
      }
  return out;
}

ComplexMatrix random_combination(const std::vector<ComplexMatrix> &basis, std::size_t n,
                                 std::mt19937_64 &rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  ComplexMatrix m(n);
  for (const auto &b : basis) m += u(rng) * b;
  return m;
}

}  // namespace

FamilyInstance family_sun(std::size_t n, FamilyKind kind, std::mt19937_64 &rng) {
  if (n < 2 || n > 8) throw ValidationError("family dimension must be in 2..8");
  std::vector<ComplexMatrix> hb, fb;
  switch (kind) {
  case FamilyKind::antidiagonal:
    hb = diagonal_basis(n);
    for (auto &m : offdiag_basis(n, [n](std::size_t i, std::size_t j) { return i + j == n - 1; }))
      hb.push_back(m);
    fb = offdiag_basis(n, [n](std::size_t i, std::size_t j) { return i + j != n - 1; });
    break;
  case FamilyKind::tridiagonal:
    hb = offdiag_basis(n, [](std::size_t i, std::size_t j) { return j - i == 1; });
    fb = diagonal_basis(n);
    for (auto &m : offdiag_basis(n, [](std::size_t i, std::size_t j) { return j - i >= 2; }))
      fb.push_back(m);
    break;
  case FamilyKind::diagonal:
    hb = diagonal_basis(n);
    fb = offdiag_basis(n, [](std::size_t, std::size_t) { return true; });
    break;
  }
  const ComplexMatrix h0 = random_combination(hb, n, rng);
  const ComplexMatrix f0 = random_combination(fb, n, rng);
  const double k = 0.5 * trace_inner(h0, h0);
  CVector psi0(n, 0.0);
  psi0[0] = 1.0;
  return {kind, n, ControlProblem(n, hb, fb, k), h0, f0, psi0};
}

const char *recurrence_name(Recurrence r) {
  switch (r) {
  case Recurrence::constant: return "constant";
  case Recurrence::periodic: return "periodic";
  case Recurrence::neither: return "neither";
  }
  return "?";
}

RecurrenceResult classify_recurrence(const std::vector<double> &times,
                                     const std::vector<ComplexMatrix> &series, double tol) {
  RecurrenceResult res;
  if (series.size() < 3) return res;
  const ComplexMatrix &x0 = series.front();
  std::vector<double> d(series.size());
  double dmax = 0.0, scale = 1.0;
  for (std::size_t k = 0; k < series.size(); ++k) {
    d[k] = dist(series[k], x0);
    dmax = std::max(dmax, d[k]);
    scale = std::max(scale, series[k].max_abs());
  }
  if (dmax <= tol) {
    res.kind = Recurrence::constant;
    res.residual = dmax;
    return res;
  }

  const double coarse = 1e-2 * scale;
  bool departed = false;
  double best = dmax;
  for (std::size_t k = 1; k + 1 < series.size(); ++k) {
    if (d[k] > 10.0 * coarse) departed = true;
    if (!departed || d[k] > coarse || d[k] > d[k - 1] || d[k] > d[k + 1]) continue;
    // quadratic interpolation of every entry through three samples, then
    // minimize the deviation over the bracket
    const double ta = times[k - 1], tb = times[k], tc = times[k + 1];
    double local_best = d[k], t_best = tb;
    const int fine = 2000;
    for (int j = 0; j <= fine; ++j) {
      const double t = ta + (tc - ta) * j / fine;
      const double la = (t - tb) * (t - tc) / ((ta - tb) * (ta - tc));
      const double lb = (t - ta) * (t - tc) / ((tb - ta) * (tb - tc));
      const double lc = (t - ta) * (t - tb) / ((tc - ta) * (tc - tb));
      const ComplexMatrix q = la * series[k - 1] + lb * series[k] + lc * series[k + 1];
      const double dv = dist(q, x0);
      if (dv < local_best) {
        local_best = dv;
        t_best = t;
      }
    }
    best = std::min(best, local_best);
    if (local_best <= tol) {
      res.kind = Recurrence::periodic;
      res.period = t_best;
      res.residual = local_best;
      return res;
    }
  }
  res.residual = best;
  return res;
}

std::vector<Partition> su3_partitions(bool classify, double t_max, double dt) {
  struct PartitionDef {
    std::string label;
    std::vector<ComplexMatrix> hb, fb;
  };
  const auto diag = diagonal_basis(3);
  auto join = [](std::vector<ComplexMatrix> a, const std::vector<ComplexMatrix> &b) {
    a.insert(a.end(), b.begin(), b.end());
    return a;
  };
  const std::vector<ComplexMatrix> x12{sym_x(3, 0, 1), sym_y(3, 0, 1)};
  const std::vector<ComplexMatrix> x13{sym_x(3, 0, 2), sym_y(3, 0, 2)};
  const std::vector<ComplexMatrix> x23{sym_x(3, 1, 2), sym_y(3, 1, 2)};
  const ComplexMatrix lam3 = ComplexMatrix::diag_real({1.0, -1.0, 0.0});
  const ComplexMatrix lam8 = ComplexMatrix::diag_real({1.0, 1.0, -2.0});

  const std::vector<PartitionDef> defs{
      {"diagonal | full off-diagonal", diag, join(join(x12, x13), x23)},
      {"diagonal + corner kappa | tridiagonal eps", join(diag, x13), join(x12, x23)},
      {"corner kappa | tridiagonal eps + diagonal", x13, join(join(x12, x23), diag)},
      {"(theta, beta) block | gamma diagonal + eps column", join({lam3}, x12), join(join({lam8}, x13), x23)},
  };

  // fixed coefficients so the report is reproducible
  const std::vector<double> hc{0.7, -0.4, 0.5, 0.3}, fc{0.35, 0.25, -0.3, 0.2, 0.15, -0.1};
  std::vector<Partition> out;
  for (const auto &sp : defs) {
    ComplexMatrix h0(3), f0(3);
    for (std::size_t i = 0; i < sp.hb.size(); ++i) h0 += hc[i % hc.size()] * sp.hb[i];
    for (std::size_t i = 0; i < sp.fb.size(); ++i) f0 += fc[i % fc.size()] * sp.fb[i];
    ControlProblem prob(3, sp.hb, sp.fb, 0.5 * trace_inner(h0, h0));
    Partition part{sp.label, prob, h0, f0, {}, {}};
    if (classify) {
      const Trajectory tr = evolve(prob, h0, f0, {1.0, 0.0, 0.0}, t_max, dt);
      std::vector<double> ts;
      std::vector<ComplexMatrix> hs, fs;
      for (const auto &smp : tr.samples) {
        ts.push_back(smp.t);
        hs.push_back(smp.H);
        fs.push_back(smp.F);
      }
      part.h_class = classify_recurrence(ts, hs);
      part.f_class = classify_recurrence(ts, fs);
    }
    out.push_back(std::move(part));
  }
  return out;
}

std::vector<CheckRecord> ValidationReport::records() const {
  const double tol = tolerance;
  std::vector<CheckRecord> r;
  const std::string p = scenario + ".";
  r.push_back(check(p + "unitarity", unitarity, 1e-10));
  r.push_back(check(p + "propagator_at_zero", propagator_at_zero, 1e-12));
  r.push_back(check(p + "propagator_vs_ordered_exponential", propagator_vs_ordered, tol));
  r.push_back(check(p + "state_vs_propagator", state_vs_propagator, 1e-10));
  r.push_back(check(p + "trace_hf", trhf, 1e-8));
  if (hamiltonian_vs_evolve >= 0.0) r.push_back(check(p + "hamiltonian_vs_evolve", hamiltonian_vs_evolve, tol));
  if (state_vs_evolve >= 0.0) r.push_back(check(p + "state_vs_evolve", state_vs_evolve, tol));
  for (std::size_t i = 0; i < quantization_residuals.size(); ++i)
    r.push_back(check(p + "quantization_" + std::to_string(i), quantization_residuals[i], 1e-8));
  if (fidelity_at_min_time)
    r.push_back(check(p + "infidelity_at_min_time", 1.0 - *fidelity_at_min_time, 1e-8));
  return r;
}

ValidationReport validate(const Scenario &s, double tol, double dt) {
  ValidationReport rep;
  rep.scenario = s.name;
  rep.tolerance = tol;
  const double span = std::min(s.period, 20.0);
  const auto id = ComplexMatrix::identity(s.dim);
  rep.propagator_at_zero = dist(s.propagator_at(0.0), id);
  for (int j = 0; j < 100; ++j) {
    const double t = span * j / 99.0;
    const ComplexMatrix u = s.propagator_at(t);
    rep.unitarity = std::max(rep.unitarity, unitarity_residual(u));
    rep.state_vs_propagator = std::max(rep.state_vs_propagator, dist(s.state_at(t, s.psi0), u * s.psi0));
    if (s.constraint_at)
      rep.trhf = std::max(rep.trhf, std::abs(trace_inner(s.hamiltonian_at(t), s.constraint_at(t))));
  }
  rep.propagator_vs_ordered = dist(s.propagator_at(span), ordered_exponential(s.hamiltonian_at, span, dt));

  if (s.problem) {
    EvolveOptions opts;
    opts.record_stride = std::max<std::size_t>(1, std::size_t(span / dt / 200.0));
    const Trajectory tr = evolve(*s.problem, s.hamiltonian_at(0.0), s.constraint_at(0.0), s.psi0, span, dt, opts);
    rep.hamiltonian_vs_evolve = 0.0;
    rep.state_vs_evolve = 0.0;
    for (const auto &smp : tr.samples) {
      rep.hamiltonian_vs_evolve = std::max(rep.hamiltonian_vs_evolve, dist(smp.H, s.hamiltonian_at(smp.t)));
      rep.state_vs_evolve = std::max(rep.state_vs_evolve, dist(smp.psi, s.state_at(smp.t, s.psi0)));
    }
    if (tr.aborted) {
      rep.hamiltonian_vs_evolve = std::numeric_limits<double>::infinity();
      rep.state_vs_evolve = std::numeric_limits<double>::infinity();
    }
  }
  if (s.min_time) {
    for (const auto &q : s.quantization) rep.quantization_residuals.push_back(q.residual(*s.min_time));
    if (s.target) rep.fidelity_at_min_time = s.fidelity_at(*s.min_time);
  }
  return rep;
}

std::vector<std::string> scenario_names() {
  return {"su2", "so3", "su3-elliptic", "su3-geodesic", "frenet", "su4-heisenberg", "dirac", "sun-family",
          "su3-partitions"};
}

Scenario make_scenario(const std::string &name, const std::map<std::string, cplx> &overrides) {
  std::map<std::string, cplx> p;
  if (name == "su2") p = {{"k", 1.0}, {"Omega", 0.0}};
  else if (name == "so3") p = {{"nz", 0.6}, {"eps", 0.8}, {"u", 0.2}, {"K1", cplx(0.1, 0.05)}, {"K2", 0.15}};
  else if (name == "su3-elliptic")
    p = {{"R", 1.0}, {"Omega", 0.5}, {"Delta1", 1.0 / std::sqrt(2.0)}, {"Delta2", 0.5}, {"Delta3", 0.5}};
  else if (name == "su3-geodesic") p = {{"R", 1.0}};
  else if (name == "frenet") p = {{"A", 1.0}, {"B", 0.0}, {"C", 0.0}, {"N", 1.0}, {"eta", 0.5}};
  else if (name == "su4-heisenberg") p = {{"lambda_x", 1.0}};
  else if (name == "dirac") {
    const DiracParams d;
    p = {{"alpha", d.alpha}, {"pz", d.pz}, {"eps", d.eps}, {"xi1", d.xi1}, {"xi2", d.xi2},
         {"a11", d.a[0]},    {"a12", d.a[1]}, {"a21", d.a[2]}, {"a22", d.a[3]}};
  } else if (name == "sun-family" || name == "su3-partitions")
    throw UnknownScenario(name + " is a problem family without a closed-form scenario");
  else
    throw UnknownScenario("unknown scenario: " + name);

  // optional keys that are derived when absent
  const std::vector<std::string> optional_keys =
      name == "su2" ? std::vector<std::string>{"eps0"}
                    : name == "su3-geodesic" ? std::vector<std::string>{"kappa", "theta"}
                                             : std::vector<std::string>{};
  for (const auto &[k, v] : overrides) {
    if (!p.count(k) && std::find(optional_keys.begin(), optional_keys.end(), k) == optional_keys.end())
      throw ValidationError("unknown parameter '" + k + "' for scenario " + name);
    p[k] = v;
  }

  if (name == "su2") {
    const double k = real_param(p, "k");
    if (!(k > 0.0)) throw ValidationError("k must be positive");
    const cplx eps0 = p.count("eps0") ? p.at("eps0") : I * std::sqrt(k);
    return scenario_su2(k, real_param(p, "Omega"), eps0);
  }
  if (name == "so3")
    return scenario_so3(real_param(p, "nz"), p.at("eps"), real_param(p, "u"), p.at("K1"), p.at("K2"));
  if (name == "su3-elliptic")
    return scenario_su3_elliptic(real_param(p, "R"), real_param(p, "Omega"),
                                 {p.at("Delta1"), p.at("Delta2"), p.at("Delta3")});
  if (name == "su3-geodesic") {
    const double r = real_param(p, "R");
    const cplx kappa = p.count("kappa") ? p.at("kappa") : cplx(r / std::sqrt(3.0));
    if (p.count("theta")) return scenario_su3_geodesic(r, kappa, real_param(p, "theta"));
    return scenario_su3_geodesic(r, kappa);
  }
  if (name == "frenet")
    return scenario_frenet(real_param(p, "A"), real_param(p, "B"), real_param(p, "C"), real_param(p, "N"),
                           real_param(p, "eta"));
  if (name == "su4-heisenberg") return scenario_su4_heisenberg(real_param(p, "lambda_x"));
  DiracParams d;
  d.alpha = real_param(p, "alpha");
  d.pz = real_param(p, "pz");
  d.eps = p.at("eps");
  d.xi1 = p.at("xi1");
  d.xi2 = p.at("xi2");
  d.a = {p.at("a11"), p.at("a12"), p.at("a21"), p.at("a22")};
  return scenario_dirac(d);
}

}  // namespace qbrach

namespace qbrach {

namespace {

// central-difference derivative of a matrix-valued function
ComplexMatrix derivative(const TimeOperator &m, double t, double h = 1e-5) {
  return (1.0 / (2.0 * h)) * (m(t + h) - m(t - h));
}

double schrodinger_residual(const TimeOperator &h, const std::function<CVector(double)> &psi, double t_max) {
  double worst = 0.0;
  const double step = 1e-5;
  for (int j = 1; j < 50; ++j) {
    const double t = t_max * j / 50.0;
    CVector d = psi(t + step);
    const CVector m = psi(t - step);
    for (std::size_t i = 0; i < d.size(); ++i) d[i] = I * (d[i] - m[i]) / (2.0 * step);
    worst = std::max(worst, dist(d, h(t) * psi(t)));
  }
  return worst;
}

// min over phases of ||U - e^{i phi} 1||_max, phase taken from the trace
double distance_to_phase_identity(const ComplexMatrix &u) {
  const cplx tr = u.trace();
  const cplx phase = std::abs(tr) > 0.0 ? tr / std::abs(tr) : cplx(1.0);
  return dist(u, phase * ComplexMatrix::identity(u.dim()));
}

void append(std::vector<CheckRecord> &out, std::vector<CheckRecord> more) {
  out.insert(out.end(), std::make_move_iterator(more.begin()), std::make_move_iterator(more.end()));
}

std::vector<CheckRecord> su2_checks() {
  std::vector<CheckRecord> out;
  // n = 2, m = 1 with W' T = pi and W T = pi/2
  const double t = su2_quantized_time(1.0, 2, 1);
  out.push_back(check("su2.quantized_time_n2_m1", std::abs(t - 0.5 * pi * std::sqrt(3.0)), 1e-14));
  const double omega = pi / (2.0 * t);
  const Scenario s = scenario_su2(1.0, omega, I);
  out.push_back(check("su2.quantized_time_energy", std::abs((pi / t) * (pi / t) - omega * omega - 1.0), 1e-12));
  double q = 0.0;
  for (const auto &c : s.quantization) q = std::max(q, c.residual(t));
  out.push_back(check("su2.quantized_time_residuals", q, 1e-12));
  // 2 W T = pi, so H(T) = -H(0)
  out.push_back(check("su2.hamiltonian_sign_at_quantized_time", dist(s.hamiltonian_at(t), -1.0 * s.hamiltonian_at(0.0)), 1e-12));
  const Scenario base = make_scenario("su2", {});
  out.push_back(check("su2.min_time_sqrt_k", std::abs(*base.min_time - pi / 2.0), 1e-15));
  return out;
}

std::vector<CheckRecord> so3_checks() {
  std::vector<CheckRecord> out;
  const Scenario s = make_scenario("so3", {});
  const double r = std::sqrt(std::norm(s.params.at("nz")) + std::norm(s.params.at("eps")));
  // the sign flip acts on the (1,3) subspace, where psi0 = e1 lives
  const double h = 1.0 / std::sqrt(3.0);
  const CVector psi{h, cplx(0.0, h), h};
  double flip = 0.0, full = 0.0;
  for (const CVector &v : {s.psi0, CVector{0.6, 0.0, cplx(0.0, 0.8)}}) {
    CVector flipped = s.state_at(pi / r, v);
    for (auto &c : flipped) c = -c;
    flip = std::max(flip, dist(flipped, v));
    full = std::max(full, dist(s.state_at(2.0 * pi / r, v), v));
  }
  full = std::max(full, dist(s.state_at(2.0 * pi / r, psi), psi));
  out.push_back(check("so3.sign_flip_at_pi_over_r", flip, 1e-8));
  out.push_back(check("so3.period_2pi_over_r", full, 1e-8));
  double c2 = 0.0;
  for (int j = 0; j < 100; ++j) c2 = std::max(c2, std::abs(s.state_at(0.37 * j, psi)[1] - psi[1]));
  out.push_back(check("so3.c2_constant", c2, 1e-12));
  return out;
}

std::vector<CheckRecord> elliptic_checks() {
  std::vector<CheckRecord> out;
  const double r = 1.0, omega = 0.5;
  const std::array<cplx, 3> d{1.0 / std::sqrt(2.0), 0.5, 0.5};
  const Scenario s = scenario_su3_elliptic(r, omega, d);
  out.push_back(check("su3-elliptic.initial_state_matches_printed",
                      dist(s.state_at(0.0, s.psi0), elliptic_printed_initial(r, omega, d)), 1e-14));
  const double span = 2.0 * pi / omega;
  out.push_back(check("su3-elliptic.schrodinger_residual",
                      schrodinger_residual(s.hamiltonian_at, [&](double t) { return s.state_at(t, s.psi0); }, span),
                      1e-6));
  out.push_back(reported("su3-elliptic.printed_state_schrodinger_residual",
                         schrodinger_residual(s.hamiltonian_at,
                                              [&](double t) { return elliptic_printed_state(r, omega, d, t); }, span),
                         1e-6, "printed c1, c2, c3 components"));
  double cayley = 0.0, comm = 0.0, anti = 0.0, integral = 0.0;
  auto hdot = [&](double t) {
    const double a = -r * omega * std::sin(omega * t), b = r * omega * std::cos(omega * t);
    return ComplexMatrix{{0.0, a, 0.0}, {a, 0.0, -I * b}, {0.0, I * b, 0.0}};
  };
  const double period = 1.3;
  for (int j = 0; j < 40; ++j) {
    const double t = 0.31 * j;
    const ComplexMatrix hm = s.hamiltonian_at(t);
    const ComplexMatrix h2 = hm * hm;
    cayley = std::max(cayley, dist(h2 * hm, r * r * hm));
    comm = std::max(comm, dist(commutator(hdot(t), h2), r * r * hdot(t)));
    anti = std::max(anti, dist(anticommutator(hdot(t), h2), r * r * hdot(t)));
    // Simpson integral of H over [t, t + period]
    const int n = 400;
    ComplexMatrix acc(3);
    for (int k = 0; k <= n; ++k) {
      const double w = (k == 0 || k == n) ? 1.0 : (k % 2 ? 4.0 : 2.0);
      acc += w * s.hamiltonian_at(t + period * k / n);
    }
    acc *= cplx(period / (3.0 * n));
    const double so = std::sin(omega * t), co = std::cos(omega * t);
    const double sT = std::sin(omega * period), cT = std::cos(omega * period);
    const ComplexMatrix printed =
        (r / omega * so) * ComplexMatrix{{0.0, cT - 1.0, 0.0}, {cT - 1.0, 0.0, -I * sT}, {0.0, I * sT, 0.0}} +
        (r / omega * co) * ComplexMatrix{{0.0, sT, 0.0}, {sT, 0.0, I * (cT - 1.0)}, {0.0, -I * (cT - 1.0), 0.0}};
    integral = std::max(integral, dist(acc, printed));
  }
  out.push_back(check("su3-elliptic.cayley_hamilton_cubic", cayley, 1e-10));
  out.push_back(reported("su3-elliptic.derivative_commutator", comm, 1e-8, "[dH/dt, H^2] = C dH/dt"));
  out.push_back(check("su3-elliptic.derivative_anticommutator", anti, 1e-8));
  out.push_back(check("su3-elliptic.interval_integral", integral, 1e-8));
  return out;
}

std::vector<CheckRecord> geodesic_checks() {
  std::vector<CheckRecord> out;
  const Scenario s = make_scenario("su3-geodesic", {});
  const cplx kappa = s.params.at("kappa");
  const double eps1 = s.params.at("R").real();
  const ComplexMatrix f = s.constraint_at(0.0), h0 = s.hamiltonian_at(0.0);
  double frame = 0.0;
  for (int j = 0; j < 60; ++j) {
    const double t = 0.2 * j;
    frame = std::max(frame, dist(s.hamiltonian_at(t), expm_h(f, -t) * h0 * expm_h(f, t)));
  }
  out.push_back(check("su3-geodesic.printed_hamiltonian_vs_frame", frame, 1e-12));
  out.push_back(check("su3-geodesic.transfer_time", std::abs(*s.min_time - std::sqrt(3.0) * pi / 2.0), 1e-14));
  const CVector e1{1.0, 0.0, 0.0};
  const ComplexMatrix p = outer(e1, e1);
  out.push_back(check("su3-geodesic.boundary_condition_t0", boundary_residual(g_operator(h0, f, e1), p), 1e-10));
  const double delta = std::sqrt(std::norm(kappa) + eps1 * eps1);
  out.push_back(check("su3-geodesic.c2_zero_when_sin_t_delta_zero",
                      std::abs(s.state_at(2.0 * pi / delta, e1)[1]), 1e-12));
  // complex kappa with derived theta
  const cplx kc = std::polar(1.0 / std::sqrt(3.0), 0.9);
  const Scenario sc = scenario_su3_geodesic(1.0, kc);
  out.push_back(check("su3-geodesic.complex_kappa_transfer", 1.0 - sc.fidelity_at(*sc.min_time), 1e-8));
  double printed = 0.0;
  for (int j = 0; j < 50; ++j)
    printed = std::max(printed, dist(geodesic_printed_state(1.0, kc, 0.1 * j), sc.propagator_at(0.1 * j) * e1));
  out.push_back(check("su3-geodesic.printed_state_vs_propagator", printed, 1e-12));
  // periodic H gives U(nT) = U(T)^n; proportionality to 1 is only reported
  const double tq = s.period;
  out.push_back(check("su3-geodesic.floquet_power", dist(s.propagator_at(3.0 * tq), power(s.propagator_at(tq), 3)), 1e-9));
  out.push_back(reported("su3-geodesic.floquet_phase_identity", distance_to_phase_identity(s.propagator_at(tq)), 1e-8,
                         "U(T) against e^{-i w T} 1 at the period of H"));
  return out;
}

std::vector<CheckRecord> frenet_checks() {
  std::vector<CheckRecord> out;
  const Scenario s = make_scenario("frenet", {});
  const double r = 1.0;
  double eig = 0.0, vec = 0.0;
  for (int j = 0; j < 100; ++j) {
    const double t = s.period * j / 99.0;
    const ComplexMatrix h = s.hamiltonian_at(t);
    const auto sp = hermitian_eig(h);
    eig = std::max({eig, std::abs(sp.values[0] + r), std::abs(sp.values[1]), std::abs(sp.values[2] - r)});
    const double k = h(0, 1).imag(), tor = h(1, 2).imag();
    const auto v = frenet_eigenvectors(k, tor);
    const double lambdas[3] = {r, 0.0, -r};
    for (int i = 0; i < 3; ++i) {
      CVector lv = v[i];
      for (auto &c : lv) c *= lambdas[i];
      vec = std::max(vec, dist(h * v[i], lv));
    }
  }
  out.push_back(check("frenet.eigenvalue_drift", eig, 1e-10));
  out.push_back(check("frenet.printed_eigenvectors", vec, 1e-12));
  return out;
}

std::vector<CheckRecord> su4_checks() {
  std::vector<CheckRecord> out;
  const double lx = 1.0;
  const Scenario s = scenario_su4_heisenberg(lx);
  out.push_back(check("su4-heisenberg.bell_infidelity", 1.0 - s.fidelity_at(su4_bell_time(lx)), 1e-8));
  out.push_back(reported("su4-heisenberg.printed_state_norm_defect",
                         std::abs(norm(su4_printed_state(lx, 0.0)) - 1.0), 1e-12, "printed 1/sqrt2 prefactor"));
  out.push_back(reported("su4-heisenberg.printed_time_infidelity", 1.0 - s.fidelity_at(su4_printed_time(lx)), 1e-8,
                         "T = pi/lambda_x"));
  const Trajectory tr = evolve(*s.problem, s.hamiltonian_at(0.0), s.constraint_at(0.0), s.psi0, s.period, 1e-4,
                               {.record_stride = 100});
  out.push_back(check("su4-heisenberg.lambda_constant", su4_lambda_drift(tr), 1e-10));
  return out;
}

std::vector<CheckRecord> dirac_checks() {
  std::vector<CheckRecord> out;
  const DiracParams p;
  const Scenario s = scenario_dirac(p);
  const auto id = ComplexMatrix::identity(4);
  double sq = 0.0, per = 0.0, det = 0.0, frame = 0.0, brach = 0.0;
  const ComplexMatrix h0 = s.hamiltonian_at(0.0);
  for (int j = 0; j < 100; ++j) {
    const double t = pi * j / 99.0;
    const ComplexMatrix h = s.hamiltonian_at(t);
    sq = std::max(sq, dist(h * h, id));
    per = std::max(per, dist(s.hamiltonian_at(t + pi), h));
    ComplexMatrix hk = id, h0k = id;
    for (int k = 1; k <= 4; ++k) {
      hk = hk * h;
      h0k = h0k * h0;
      det = std::max(det, std::abs(hk.trace() - h0k.trace()));
    }
    const ComplexMatrix up = ComplexMatrix::diag({std::exp(I * t), std::exp(I * t), std::exp(-I * t), std::exp(-I * t)});
    frame = std::max(frame, dist(up * h0 * up.adjoint(), h));
    const ComplexMatrix lhs = derivative(s.hamiltonian_at, t) + derivative(s.constraint_at, t);
    brach = std::max(brach, dist(lhs, -I * commutator(h, s.constraint_at(t))));
  }
  out.push_back(check("dirac.h_squared_identity", sq, 1e-10));
  out.push_back(check("dirac.period_pi", per, 1e-10));
  out.push_back(check("dirac.characteristic_polynomial_constant", det, 1e-10));
  out.push_back(reported("dirac.printed_frame_sign", frame, 1e-10, "diag(e^{it}, e^{-it}) conjugation of H(0)"));
  out.push_back(reported("dirac.printed_constraint_brach_residual", brach, 1e-6, "i d(H+F)/dt = [H,F]"));

  const ComplexMatrix w = dirac_w();
  out.push_back(check("dirac.w_unitary", unitarity_residual(w), 1e-14));
  out.push_back(check("dirac.w_hermitian", dist(w, w.adjoint()), 1e-15));
  const ComplexMatrix bs{{p.pz, p.eps}, {std::conj(p.eps), -p.pz}};
  const ComplexMatrix b = p.alpha * ComplexMatrix::identity(2) + I * bs;
  auto blocks = [](const ComplexMatrix &a, const ComplexMatrix &bb, const ComplexMatrix &c, const ComplexMatrix &d) {
    ComplexMatrix m(4);
    for (std::size_t i = 0; i < 2; ++i)
      for (std::size_t j = 0; j < 2; ++j) {
        m(i, j) = a(i, j);
        m(i, j + 2) = bb(i, j);
        m(i + 2, j) = c(i, j);
        m(i + 2, j + 2) = d(i, j);
      }
    return m;
  };
  const auto one = ComplexMatrix::identity(2);
  const auto zero = ComplexMatrix::zero(2);
  const ComplexMatrix second = blocks(p.alpha * one, -I * bs, I * bs, -p.alpha * one);
  out.push_back(reported("dirac.second_block_form", dist(h0, second), 1e-12, "[[a, -i b.s], [i b.s, -a]]"));
  const ComplexMatrix hw_claim = blocks(zero, b, b.adjoint(), zero);
  out.push_back(reported("dirac.hw_block_form", dist(w * h0 * w.adjoint(), hw_claim), 1e-12, "first form"));
  out.push_back(reported("dirac.hw_block_form_second", dist(w * second * w.adjoint(), hw_claim), 1e-12,
                         "second form"));
  out.push_back(reported("dirac.p_unitary_printed", unitarity_residual(dirac_p(p, false)), 1e-12));
  const ComplexMatrix pn = dirac_p(p, true);
  out.push_back(check("dirac.p_unitary_normalized", unitarity_residual(pn), 1e-12));
  out.push_back(reported("dirac.hwp_sigma_z", dist(pn * hw_claim * pn.adjoint(), kron(sigma_z(), one)), 1e-12));
  return out;
}

std::vector<CheckRecord> family_checks(std::uint64_t seed) {
  std::vector<CheckRecord> out;
  std::mt19937_64 rng(seed);
  for (std::size_t n = 2; n <= 6; ++n)
    for (auto kind : {FamilyKind::antidiagonal, FamilyKind::tridiagonal, FamilyKind::diagonal}) {
      const FamilyInstance fam = family_sun(n, kind, rng);
      const Trajectory tr = evolve(fam.problem, fam.h0, fam.f0, fam.psi0, 2.0, 1e-3, {.record_stride = 20});
      const std::string id = "sun-family." + std::string(family_name(kind)) + ".n" + std::to_string(n);
      double hconst = 0.0;
      for (const auto &smp : tr.samples) hconst = std::max(hconst, dist(smp.H, fam.h0));
      if (kind == FamilyKind::diagonal)
        out.push_back(check(id + ".h_constant", hconst, 1e-6));
      else
        out.push_back(reported(id + ".h_constant", hconst, 1e-6));
      const Diagnostics w = tr.worst();
      out.push_back(check(id + ".lax_spectrum_drift", w.lax_eig_drift, 1e-7));
      if (kind == FamilyKind::tridiagonal)
        out.push_back(reported(id + ".h_spectrum_drift", w.eig_drift, 1e-7));
      else
        out.push_back(check(id + ".h_spectrum_drift", w.eig_drift, 1e-7));
    }
  return out;
}

std::vector<CheckRecord> partition_checks() {
  std::vector<CheckRecord> out;
  const auto parts = su3_partitions(true, 50.0, 1e-3);
  for (std::size_t i = 0; i < parts.size(); ++i) {
    const auto &pt = parts[i];
    const std::string id = "su3-partitions." + std::to_string(i + 1);
    if (i == 0)
      out.push_back(check(id + ".h_constant", pt.h_class.kind == Recurrence::constant ? pt.h_class.residual : 1.0, 1e-6));
    out.push_back(reported(id + ".h_" + recurrence_name(pt.h_class.kind), pt.h_class.residual, 1e-6,
                           pt.label + (pt.h_class.kind == Recurrence::periodic
                                           ? ", period " + std::to_string(pt.h_class.period)
                                           : "")));
    out.push_back(reported(id + ".f_" + recurrence_name(pt.f_class.kind), pt.f_class.residual, 1e-6,
                           pt.label + (pt.f_class.kind == Recurrence::periodic
                                           ? ", period " + std::to_string(pt.f_class.period)
                                           : "")));
  }
  return out;
}

}  // namespace

double su4_lambda_drift(const Trajectory &tr) {
  const ComplexMatrix xx = kron(sigma_x(), sigma_x()), yy = kron(sigma_y(), sigma_y()),
                      zz = kron(sigma_z(), sigma_z());
  auto coords = [&](const ComplexMatrix &h) {
    return std::array<double, 3>{trace_inner(h, xx) / 4.0, trace_inner(h, yy) / 4.0, trace_inner(h, zz) / 4.0};
  };
  if (tr.samples.empty()) return 0.0;
  const auto l0 = coords(tr.samples.front().H);
  double worst = tr.aborted ? std::numeric_limits<double>::infinity() : 0.0;
  for (const auto &smp : tr.samples) {
    const auto l = coords(smp.H);
    for (int i = 0; i < 3; ++i) worst = std::max(worst, std::abs(l[i] - l0[i]));
  }
  return worst;
}

std::vector<CheckRecord> catalog_checks(std::uint64_t seed) {
  std::vector<CheckRecord> out;
  for (const auto &name : scenario_names()) {
    if (name == "sun-family" || name == "su3-partitions") continue;
    append(out, validate(make_scenario(name, {})).records());
  }
  append(out, su2_checks());
  append(out, so3_checks());
  append(out, elliptic_checks());
  append(out, geodesic_checks());
  append(out, frenet_checks());
  append(out, su4_checks());
  append(out, dirac_checks());
  append(out, family_checks(seed));
  append(out, partition_checks());
  return out;
}

}  // namespace qbrach

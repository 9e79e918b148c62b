/*
 * gates.cpp
 */
#include "qbrach/gates.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

namespace qbrach {

namespace {

constexpr double pi = std::numbers::pi;
const double rt2 = std::sqrt(2.0);

}  // namespace

double verify_unitary(const ComplexMatrix &m) {
  const auto id = ComplexMatrix::identity(m.dim());
  return std::max(dist(m.adjoint() * m, id), dist(m * m.adjoint(), id));
}

ComplexMatrix conjugate(const ComplexMatrix &u, const ComplexMatrix &h) {
  require_same_dim(u, h);
  return u * h * u.adjoint();
}

std::size_t GroupTable::index_of(const ComplexMatrix &m, double tol) const {
  for (std::size_t i = 0; i < elements.size(); ++i)
    if (dist(elements[i], m) <= tol) return i;
  return elements.size();
}

GroupTable group_closure(const std::vector<ComplexMatrix> &generators, double tol, std::size_t max_order) {
  GroupTable g;
  for (const auto &m : generators)
    if (g.index_of(m, tol) == g.elements.size()) g.elements.push_back(m);
  // multiply until no new element appears
  for (std::size_t i = 0; i < g.elements.size(); ++i)
    for (std::size_t j = 0; j <= i; ++j)
      for (const auto &p : {g.elements[i] * g.elements[j], g.elements[j] * g.elements[i]}) {
        if (g.index_of(p, tol) != g.elements.size()) continue;
        if (g.elements.size() == max_order)
          throw ClosureError("group closure exceeds " + std::to_string(max_order) + " elements");
        g.elements.push_back(p);
      }
  const std::size_t n = g.elements.size();
  g.table.assign(n, std::vector<std::size_t>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      g.table[i][j] = g.index_of(g.elements[i] * g.elements[j], tol);
      if (g.table[i][j] == n) throw ClosureError("product left the closed set");
    }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (g.table[i][j] != g.table[j][i]) g.abelian = false;
  return g;
}

ComplexMatrix su2_u1() { return (1.0 / rt2) * ComplexMatrix{{1.0, -1.0}, {1.0, 1.0}}; }

ComplexMatrix su2_u2_printed(double theta) {
  const cplx em = std::exp(-I * theta), ep = std::exp(I * theta);
  return (1.0 / rt2) * ComplexMatrix{{em, -em}, {ep, em}};
}

ComplexMatrix su2_u2(double theta) {
  const cplx em = std::exp(-I * theta), ep = std::exp(I * theta);
  return (1.0 / rt2) * ComplexMatrix{{em, -em}, {ep, ep}};
}

ComplexMatrix su2_u3(double chi) {
  const double s = std::sin(chi), c = std::cos(chi);
  return ComplexMatrix{{s, -I * c}, {I * c, -s}};
}

ComplexMatrix su2_u4() { return sigma_x(); }

ComplexMatrix su2_u5(double alpha) {
  const cplx e = std::exp(-I * alpha);
  return (1.0 / rt2) * ComplexMatrix{{e, -e}, {1.0, 1.0}};
}

ComplexMatrix su2_u6_printed(double v) {
  return std::exp(I * v) * ComplexMatrix::diag({1.0, std::exp(-2.0 * I * v)});
}

ComplexMatrix su2_triple_product(double alpha) {
  const cplx em = std::exp(-I * alpha), ep = std::exp(I * alpha);
  const ComplexMatrix a{{1.0, em}, {1.0, -em}};
  const ComplexMatrix b{{0.0, em}, {ep, 0.0}};
  const ComplexMatrix c{{1.0, 1.0}, {ep, -ep}};
  return 0.5 * (a * b * c);
}

ComplexMatrix gate_l() { return ComplexMatrix::diag_real({1.0, -1.0, 0.0}); }

ComplexMatrix gate_n() { return ComplexMatrix{{0.0, 0.0, 1.0}, {0.0, 1.0, 0.0}, {1.0, 0.0, 0.0}}; }

ComplexMatrix gate_d(double t) {
  const double c = std::cos(t), s = std::sin(t);
  return ComplexMatrix{{-I * c / rt2, I * c / rt2, I * s},
                       {1.0 / rt2, 1.0 / rt2, 0.0},
                       {I * s / rt2, -I * s / rt2, I * c}};
}

ComplexMatrix gate_j(double phi) {
  const double c = std::cos(phi), s = std::sin(phi);
  return ComplexMatrix{{c / rt2, -c / rt2, -s}, {1.0 / rt2, 1.0 / rt2, 0.0}, {I * s / rt2, -I * s / rt2, I * c}};
}

ComplexMatrix gate_q(double phi, double rho) {
  const double c = std::cos(phi), s = std::sin(phi);
  const cplx ep = std::exp(I * rho), em = std::exp(-I * rho);
  return ComplexMatrix{{c / rt2, -c / rt2, I * em * s},
                       {1.0 / rt2, 1.0 / rt2, 0.0},
                       {I * ep * s / rt2, -I * ep * s / rt2, c}};
}

ComplexMatrix elliptic_matrix(double phi, double rho) {
  const double c = std::cos(phi), s = std::sin(phi);
  return ComplexMatrix{{0.0, c, 0.0},
                       {c, 0.0, -I * std::exp(-I * rho) * s},
                       {0.0, I * std::exp(I * rho) * s, 0.0}};
}

ComplexMatrix su3_propagator_printed(double theta) {
  const double c = std::cos(theta), s = std::sin(theta);
  return ComplexMatrix{{1.0 + (c - 1.0) * c * c, -I * s * c, -I * (c - 1.0) * s * c},
                       {-I * s * c, c, -s * s},
                       {I * (c - 1.0) * s * c, s * s, 1.0 + (c - 1.0) * s * s}};
}

Eigenreflections eigenreflections(double xi) {
  auto printed = [](double x) {
    const double s = std::sin(x), c = std::cos(x);
    const ComplexMatrix m1 = 0.5 * ComplexMatrix{{1.0 + s * s, -c, I * s * c},
                                                 {-c, 1.0, I * s},
                                                 {-I * s * c, -I * s, 1.0 + c * c}};
    const ComplexMatrix m2{{s * s, 0.0, -I * s * c}, {0.0, 1.0, 0.0}, {I * s * c, 0.0, 1.0 + c * c}};
    const ComplexMatrix m3 = 0.5 * ComplexMatrix{{1.0 + s * s, c, I * s * c},
                                                 {c, 1.0, -I * s},
                                                 {-I * s * c, I * s, 1.0 + c * c}};
    return std::array<ComplexMatrix, 3>{m1, m2, m3};
  };
  Eigenreflections e;
  const auto p = printed(xi);
  e.m1 = p[0];
  e.m2 = p[1];
  e.m3 = p[2];
  const ComplexMatrix j = gate_j(xi);
  const auto id = ComplexMatrix::identity(3);
  e.m1_def = id - outer(j.column(0), j.column(0));
  e.m2_def = id - outer(j.column(2), j.column(2));
  e.m3_def = id - outer(j.column(1), j.column(1));
  e.identity_residual = dist(printed(-xi)[1], e.m1 + e.m3);
  e.definitional_residual = {dist(e.m1, e.m1_def), dist(e.m2, e.m2_def), dist(e.m3, e.m3_def)};
  return e;
}

const char *shift_family_name(ShiftFamily f) {
  switch (f) {
  case ShiftFamily::d: return "D";
  case ShiftFamily::q: return "Q";
  case ShiftFamily::j: return "J";
  }
  return "?";
}

std::vector<ComplexMatrix> shift_variants(ShiftFamily f, double alpha, double rho) {
  const double c = std::cos(alpha), s = std::sin(alpha);
  auto rot = [c](cplx top, cplx bottom) {
    return ComplexMatrix{{c, 0.0, top}, {0.0, 1.0, 0.0}, {bottom, 0.0, c}};
  };
  switch (f) {
  case ShiftFamily::d: return {rot(s, -s), rot(-s, s)};
  case ShiftFamily::q: {
    const cplx em = I * std::exp(-I * rho) * s, ep = I * std::exp(I * rho) * s;
    return {rot(em, ep), rot(em, -ep)};
  }
  case ShiftFamily::j: return {rot(I * s, I * s), rot(-I * s, -I * s), rot(-I * s, I * s)};
  }
  return {};
}

CVector shift_column(ShiftFamily f, int column, double sigma, double rho) {
  if (column < 1 || column > 3) throw ValidationError("column index must be 1..3");
  const ComplexMatrix m = f == ShiftFamily::d ? gate_d(sigma) : f == ShiftFamily::q ? gate_q(sigma, rho) : gate_j(sigma);
  return m.column(std::size_t(column - 1));
}

ShiftResult shift_check(ShiftFamily f, int column, double sigma, double alpha, double rho) {
  const CVector from = shift_column(f, column, sigma, rho), to = shift_column(f, column, sigma + alpha, rho);
  const auto variants = shift_variants(f, alpha, rho);
  ShiftResult best{std::numeric_limits<double>::infinity(), 0};
  for (std::size_t v = 0; v < variants.size(); ++v) {
    const double r = dist(variants[v] * from, to);
    if (r < best.residual) best = {r, v};
  }
  return best;
}

cplx cube_root_of_unity() { return 0.5 * cplx(-1.0, std::sqrt(3.0)); }

ComplexMatrix dft_r() {
  const cplx z = cube_root_of_unity(), zc = std::conj(z);
  return (1.0 / std::sqrt(3.0)) * ComplexMatrix{{1.0, 1.0, 1.0}, {1.0, z, zc}, {1.0, zc, z}};
}

ComplexMatrix dft_split_q(double theta) {
  auto k = [theta](int n) { return std::exp(I * (theta * n)); };
  return ComplexMatrix{{1.0, 1.0, 1.0}, {1.0, k(1), k(3)}, {1.0, k(3), k(5)}};
}

ComplexMatrix dft_split_w(double chi) {
  auto w = [chi](int n) { return std::exp(I * (chi * n)); };
  return ComplexMatrix{{1.0, 1.0, 1.0}, {1.0, w(1), w(2)}, {1.0, w(2), w(4)}};
}

ComplexMatrix dft_split_j(double theta) {
  auto j = [theta](int n) { return std::exp(I * (theta * n)); };
  return ComplexMatrix{{1.0, 1.0, 1.0}, {1.0, j(1), j(2)}, {1.0, j(2), j(3)}};
}

ComplexMatrix dft_x() { return ComplexMatrix{{0.0, 1.0, 0.0}, {1.0, 0.0, 1.0}, {0.0, 1.0, 0.0}}; }
ComplexMatrix dft_y() { return ComplexMatrix{{0.0, -I, 0.0}, {I, 0.0, -I}, {0.0, I, 0.0}}; }
ComplexMatrix dft_z() { return ComplexMatrix::diag_real({1.0, 0.0, -1.0}); }

ComplexMatrix dft_hw_printed(double chi) {
  auto w = [chi](int n) { return std::exp(I * (chi * n)); };
  return ComplexMatrix{{0.0, 1.0 - w(-1), 1.0 - w(-2)}, {1.0 - w(1), 0.0, 1.0 - w(-1)}, {1.0 - w(2), 1.0 - w(1), 0.0}};
}

std::vector<CheckRecord> dft_checks() {
  std::vector<CheckRecord> out;
  const cplx z = cube_root_of_unity(), zc = std::conj(z);
  out.push_back(check("dft.z_unit_modulus", std::abs(std::norm(z) - 1.0), 1e-15));
  out.push_back(check("dft.z_squared_conjugate", std::abs(z * z - zc), 1e-15));
  out.push_back(check("dft.z_from_conjugate_squared", std::abs(zc * zc - z), 1e-15));
  out.push_back(check("dft.z_cubed_one", std::abs(z * z * z - 1.0), 1e-15));
  out.push_back(check("dft.z_euler", std::abs(z - std::exp(2.0 * pi * I / 3.0)), 1e-15));

  const ComplexMatrix r = dft_r();
  const auto id = ComplexMatrix::identity(3);
  const ComplexMatrix perm{{1.0, 0.0, 0.0}, {0.0, 0.0, 1.0}, {0.0, 1.0, 0.0}};
  out.push_back(check("dft.r_unitary", verify_unitary(r), 1e-12));
  out.push_back(check("dft.r_fourth_power", dist(power(r, 4), id), 1e-14));
  out.push_back(check("dft.rt_r_permutation", dist(r.transpose() * r, perm), 1e-14));
  out.push_back(check("dft.r_rt_permutation", dist(r * r.transpose(), perm), 1e-14));
  const ComplexMatrix r_powers =
      (1.0 / std::sqrt(3.0)) * ComplexMatrix{{1.0, 1.0, 1.0}, {1.0, z, z * z}, {1.0, z * z, std::pow(z, 4)}};
  out.push_back(check("dft.r_power_form", dist(r, r_powers), 1e-14));

  const ComplexMatrix x = dft_x(), y = dft_y(), zz = dft_z();
  out.push_back(check("dft.commutator_xy", dist(commutator(x, y), 2.0 * I * zz), 1e-15));
  out.push_back(check("dft.commutator_xz", dist(commutator(x, zz), -I * y), 1e-15));
  out.push_back(check("dft.commutator_yz", dist(commutator(y, zz), I * x), 1e-15));

  const double chi = 0.4, theta = 0.7;
  const ComplexMatrix l = ComplexMatrix::diag_real({1.0, -1.0, 0.0});
  const ComplexMatrix hw = dft_split_w(chi) * l * dft_split_w(chi).adjoint();
  out.push_back(check("dft.hw_printed_form", dist(hw, dft_hw_printed(chi)), 1e-14));
  out.push_back(check("dft.hw_entry_21", std::abs(hw(1, 0) - (1.0 - std::exp(I * chi))), 1e-15));
  auto kp = [](double a, int n) { return std::exp(I * (a * n)); };
  const ComplexMatrix hq = dft_split_q(theta) * l * dft_split_q(theta).adjoint();
  const ComplexMatrix hq_printed{{0.0, 1.0 - kp(theta, -1), 1.0 - kp(theta, -3)},
                                 {1.0 - kp(theta, 1), 0.0, 1.0 - kp(theta, -2)},
                                 {1.0 - kp(theta, 3), 1.0 - kp(theta, 2), 0.0}};
  out.push_back(check("dft.hq_printed_form", dist(hq, hq_printed), 1e-14));
  const ComplexMatrix hj = dft_split_j(theta) * l * dft_split_j(theta).adjoint();
  out.push_back(check("dft.hj_printed_form", dist(hj, dft_hw_printed(theta)), 1e-14));
  for (const auto &[name, m] : {std::pair{"w", dft_split_w(chi)}, {"q", dft_split_q(theta)}, {"j", dft_split_j(theta)}})
    out.push_back(check_at_least(std::string("dft.split_") + name + "_not_unitary", verify_unitary(m), 1e-3));

  // De Moivre expansions
  const double c = std::cos(theta), s = std::sin(theta);
  const cplx k3_printed = c * (4.0 * c * c - 3.0) + I * s * (4.0 * s * s - 3.0);
  out.push_back(reported("dft.k_cubed_printed", std::abs(k3_printed - kp(theta, 3)), 1e-14,
                         "sin term sign"));
  out.push_back(check("dft.k_cubed_exact", std::abs(c * (4.0 * c * c - 3.0) + I * s * (3.0 - 4.0 * s * s) - kp(theta, 3)), 1e-14));
  out.push_back(check("dft.k_squared", std::abs(2.0 * c * c - 1.0 + 2.0 * I * s * c - kp(theta, 2)), 1e-14));
  const cplx one_minus_j2 = 1.0 - kp(theta, 2);
  out.push_back(reported("dft.one_minus_j2_middle_step", std::abs(2.0 * (c * c - 1.0) - 2.0 * I * s * c - one_minus_j2), 1e-14));
  out.push_back(check("dft.one_minus_j2_final", std::abs(2.0 * s * s - 2.0 * I * s * c - one_minus_j2), 1e-14));
  double herm = 0.0;
  for (int l2 = 1; l2 <= 6; ++l2) herm = std::max(herm, std::abs(1.0 - kp(theta, -l2) - std::conj(1.0 - kp(theta, l2))));
  out.push_back(check("dft.conjugation_symmetry", herm, 1e-15));
  return out;
}

std::array<ComplexMatrix, 6> dihedral_s() {
  auto perm = [](int a, int b, int c) {
    ComplexMatrix m(3);
    m(0, std::size_t(a)) = 1.0;
    m(1, std::size_t(b)) = 1.0;
    m(2, std::size_t(c)) = 1.0;
    return m;
  };
  return {perm(0, 1, 2), perm(2, 1, 0), perm(0, 2, 1), perm(1, 0, 2), perm(2, 0, 1), perm(1, 2, 0)};
}

std::vector<CheckRecord> quarter_angle_gates(double rho) {
  std::vector<CheckRecord> out;
  const double h = 1.0 / rt2;
  const cplx ep = std::exp(I * rho), em = std::exp(-I * rho);
  struct Printed {
    std::string name;
    ComplexMatrix printed, built;
  };
  const std::vector<Printed> list{
      {"q0", ComplexMatrix{{h, -h, 0.0}, {h, h, 0.0}, {0.0, 0.0, 1.0}}, gate_q(0.0, rho)},
      {"q_pi", ComplexMatrix{{-h, h, 0.0}, {h, h, 0.0}, {0.0, 0.0, -1.0}}, gate_q(pi, rho)},
      {"q_half_pi", ComplexMatrix{{0.0, 0.0, I * em}, {h, h, 0.0}, {I * ep * h, -I * ep * h, 0.0}}, gate_q(pi / 2, rho)},
      {"q_three_half_pi", ComplexMatrix{{0.0, 0.0, -I * em}, {h, h, 0.0}, {-I * ep * h, I * ep * h, 0.0}},
       gate_q(1.5 * pi, rho)},
      {"j0", ComplexMatrix{{h, -h, 0.0}, {h, h, 0.0}, {0.0, 0.0, I}}, gate_j(0.0)},
      {"j_pi", ComplexMatrix{{-h, h, 0.0}, {h, h, 0.0}, {0.0, 0.0, -I}}, gate_j(pi)},
      {"j_half_pi", ComplexMatrix{{0.0, 0.0, -1.0}, {h, h, 0.0}, {I * h, -I * h, 0.0}}, gate_j(pi / 2)},
      {"j_three_half_pi", ComplexMatrix{{0.0, 0.0, 1.0}, {h, h, 0.0}, {-I * h, I * h, 0.0}}, gate_j(1.5 * pi)},
      {"d0", ComplexMatrix{{-I * h, I * h, 0.0}, {h, h, 0.0}, {0.0, 0.0, I}}, gate_d(0.0)},
      {"d_pi", ComplexMatrix{{I * h, -I * h, 0.0}, {h, h, 0.0}, {0.0, 0.0, -I}}, gate_d(pi)},
      {"d_half_pi", ComplexMatrix{{0.0, 0.0, I}, {h, h, 0.0}, {I * h, -I * h, 0.0}}, gate_d(pi / 2)},
      {"d_three_half_pi", ComplexMatrix{{0.0, 0.0, -I}, {h, h, 0.0}, {-I * h, I * h, 0.0}}, gate_d(1.5 * pi)},
  };
  for (const auto &p : list) {
    out.push_back(check("quarter." + p.name + "_matches_family", dist(p.printed, p.built), 1e-15));
    out.push_back(check("quarter." + p.name + "_unitary", verify_unitary(p.printed), 1e-12));
  }
  const ComplexMatrix q0 = gate_q(0.0, rho), d0 = gate_d(0.0), j0 = gate_j(0.0), dh = gate_d(pi / 2);
  out.push_back(check("quarter.q0_squared", dist(q0 * q0, ComplexMatrix{{0.0, -1.0, 0.0}, {1.0, 0.0, 0.0}, {0.0, 0.0, 1.0}}), 1e-15));
  out.push_back(check("quarter.d0_squared",
                      dist(d0 * d0, 0.5 * ComplexMatrix{{I - 1.0, I + 1.0, 0.0}, {1.0 - I, I + 1.0, 0.0}, {0.0, 0.0, -2.0}}),
                      1e-15));
  out.push_back(check("quarter.j0_fourth_power", dist(power(j0, 4), ComplexMatrix::diag_real({-1.0, -1.0, 1.0})), 1e-14));
  out.push_back(reported("quarter.d_commutator_printed",
                         dist(commutator(d0, dh), ComplexMatrix{{I, I, 0.0}, {I, -I, 0.0}, {0.0, 0.0, 0.0}}), 1e-14));
  out.push_back(reported("quarter.d_anticommutator_printed",
                         dist(anticommutator(d0, dh), ComplexMatrix{{1.0, -1.0, 0.0}, {1.0, 1.0, 0.0}, {0.0, 0.0, 2.0}}),
                         1e-14));
  return out;
}

std::vector<GateEntry> su4_catalog() {
  const double h = 1.0 / rt2;
  auto scaled = [](double f, ComplexMatrix m) { return f * m; };
  const ComplexMatrix u8a{{1.0, 1.0, -1.0, 1.0}, {1.0, 1.0, 1.0, -1.0}, {-1.0, 1.0, 1.0, 1.0}, {1.0, -1.0, 1.0, 1.0}};
  std::vector<GateEntry> out{
      {"U3", ComplexMatrix{{0.0, 0.0, 1.0, 0.0}, {0.0, 0.0, 0.0, 1.0}, {1.0, 0.0, 0.0, 0.0}, {0.0, 1.0, 0.0, 0.0}}},
      {"U4", scaled(h, ComplexMatrix{{1.0, 0.0, 1.0, 0.0}, {I, 0.0, -I, 0.0}, {0.0, 1.0, 0.0, 1.0}, {0.0, -I, 0.0, I}})},
      {"U5", scaled(h, ComplexMatrix{{1.0, -I, 0.0, 0.0}, {1.0, I, 0.0, 0.0}, {0.0, 0.0, 1.0, -I}, {0.0, 0.0, 1.0, I}})},
      {"U6", scaled(h, ComplexMatrix{{1.0, 0.0, 1.0, 0.0}, {0.0, 1.0, 0.0, 1.0}, {1.0, 0.0, -1.0, 0.0}, {0.0, 1.0, 0.0, -1.0}})},
      {"U7", scaled(h, ComplexMatrix{{1.0, 0.0, 0.0, 1.0}, {0.0, 1.0, 1.0, 0.0}, {0.0, 1.0, -1.0, 0.0}, {1.0, 0.0, 0.0, -1.0}})},
      {"U8a", scaled(h, u8a)},
      {"U8a_half", scaled(0.5, u8a)},  // prefactor that makes the printed sign pattern unitary
      {"U8b", scaled(0.5, ComplexMatrix{{1.0, 1.0, 1.0, 1.0}, {1.0, -I, -1.0, I}, {1.0, -1.0, 1.0, -1.0}, {1.0, I, -1.0, -I}})},
      {"U9", ComplexMatrix{{1.0, 0.0, 0.0, 0.0}, {0.0, 0.0, 0.0, 1.0}, {0.0, 1.0, 0.0, 0.0}, {0.0, 0.0, 1.0, 0.0}}},
      {"U10", ComplexMatrix{{1.0, 0.0, 0.0, 0.0}, {0.0, 1.0, 0.0, 0.0}, {0.0, 0.0, 0.0, 1.0}, {0.0, 0.0, 1.0, 0.0}}},
      {"W", scaled(h, kron(sigma_x() + sigma_z(), ComplexMatrix::identity(2)))},
  };
  return out;
}

ComplexMatrix TriangularElement::matrix() const {
  return ComplexMatrix{{1.0, a, b}, {0.0, 1.0, c}, {0.0, 0.0, 1.0}};
}

TriOps tri_ops(const TriangularElement &a, const TriangularElement &ap) {
  TriOps r;
  const ComplexMatrix m = a.matrix(), mp = ap.matrix();
  r.product = m * mp;
  r.square = m * m;
  r.square_decomp = {2.0 * a.a, 2.0 * a.b + a.c * a.a, 2.0 * a.c};
  r.x = r.square - m;
  r.commutator = commutator(m, mp);
  r.commutator_nilpotency = (r.commutator * r.commutator).max_abs();
  return r;
}

ComplexMatrix tri_exponential(const TriangularElement &a, double t) {
  const ComplexMatrix n = a.matrix() - ComplexMatrix::identity(3);
  const ComplexMatrix series = ComplexMatrix::identity(3) + (-I * t) * n + (-0.5 * t * t) * (n * n);
  return std::exp(-I * t) * series;
}

std::array<cplx, 3> tri_ode_solve(const TriangularElement &a, const std::array<cplx, 3> &x0, double t) {
  const double e = std::exp(t);
  const cplx x3 = x0[2] * e;
  const cplx x2 = (x0[1] + a.c * x0[2] * t) * e;
  const cplx x1 = (x0[0] + (a.a * x0[1] + a.b * x0[2]) * t + a.a * a.c * x0[2] * (0.5 * t * t)) * e;
  return {x1, x2, x3};
}

std::pair<long long, long long> dimension_count(int n) {
  long long sum = 0;
  for (int j = 1; j < n; ++j) sum += j;
  return {1LL * n * n, n + 2 * sum};
}

namespace {

void append(std::vector<CheckRecord> &out, std::vector<CheckRecord> more) {
  out.insert(out.end(), std::make_move_iterator(more.begin()), std::make_move_iterator(more.end()));
}

std::vector<CheckRecord> su2_gate_checks(std::mt19937_64 &rng) {
  std::vector<CheckRecord> out;
  std::uniform_real_distribution<double> ang(-pi, pi);
  double u1 = verify_unitary(su2_u1()), u4 = verify_unitary(su2_u4()), u2 = 0.0, u2p = 0.0, u3 = 0.0, u5 = 0.0,
         u6 = 0.0, u3_prod = 0.0, u3_prod_printed = 0.0, u6_exp = 0.0, triple = 0.0;
  for (int k = 0; k < 20; ++k) {
    const double x = ang(rng);
    u2 = std::max(u2, verify_unitary(su2_u2(x)));
    u2p = std::max(u2p, verify_unitary(su2_u2_printed(x)));
    u3 = std::max(u3, verify_unitary(su2_u3(x)));
    u5 = std::max(u5, verify_unitary(su2_u5(x)));
    u6 = std::max(u6, verify_unitary(su2_u6_printed(x)));
    u3_prod = std::max(u3_prod, dist(I * (su2_u1() * su2_u2(x)), su2_u3(x)));
    u3_prod_printed = std::max(u3_prod_printed, dist(I * (su2_u1() * su2_u2_printed(x)), su2_u3(x)));
    u6_exp = std::max(u6_exp, dist(su2_u6_printed(x), expm_h(sigma_z(), x)));
    triple = std::max(triple, dist(su2_triple_product(x), sigma_z()));
  }
  out.push_back(check("su2.u1_unitary", u1, 1e-15));
  out.push_back(reported("su2.u2_printed_unitary", u2p, 1e-12, "printed (2,2) entry e^{-i theta}"));
  out.push_back(check("su2.u2_unitary", u2, 1e-12, "(2,2) entry e^{i theta}"));
  out.push_back(check("su2.u3_unitary", u3, 1e-12));
  out.push_back(check("su2.u3_equals_i_u1_u2", u3_prod, 1e-14));
  out.push_back(reported("su2.u3_equals_i_u1_u2_printed", u3_prod_printed, 1e-14));
  out.push_back(check("su2.u4_unitary", u4, 1e-15));
  out.push_back(check("su2.u5_unitary", u5, 1e-12));
  out.push_back(check("su2.u6_unitary", u6, 1e-12));
  out.push_back(reported("su2.u6_equals_exp_minus_i_sigma_z", u6_exp, 1e-14, "printed entries equal exp(+i v sigma_z)"));
  out.push_back(check("su2.triple_product_sigma_z", triple, 1e-14));
  return out;
}

std::vector<CheckRecord> su3_gate_checks(std::mt19937_64 &rng) {
  std::vector<CheckRecord> out;
  std::uniform_real_distribution<double> ang(-pi, pi);
  std::normal_distribution<double> gauss;
  double ud = 0.0, uj = 0.0, uq = 0.0, jl = 0.0, ql = 0.0, nswap = 0.0, prop = 0.0;
  for (int k = 0; k < 20; ++k) {
    const double x = ang(rng), rho = ang(rng);
    ud = std::max(ud, verify_unitary(gate_d(x)));
    uj = std::max(uj, verify_unitary(gate_j(x)));
    uq = std::max(uq, verify_unitary(gate_q(x, rho)));
    jl = std::max(jl, dist(conjugate(gate_j(x), gate_l()), elliptic_matrix(x)));
    ql = std::max(ql, dist(conjugate(gate_q(x, rho), gate_l()), elliptic_matrix(x, rho)));
    const cplx e1(gauss(rng), gauss(rng)), e2(gauss(rng), gauss(rng));
    const ComplexMatrix h{{0.0, e1, 0.0}, {std::conj(e1), 0.0, e2}, {0.0, std::conj(e2), 0.0}};
    const ComplexMatrix swapped{{0.0, std::conj(e2), 0.0}, {e2, 0.0, std::conj(e1)}, {0.0, e1, 0.0}};
    nswap = std::max(nswap, dist(conjugate(gate_n(), h), swapped));
    prop = std::max(prop, verify_unitary(su3_propagator_printed(x)));
  }
  out.push_back(check("su3.d_unitary", ud, 1e-12));
  out.push_back(check("su3.d_unitary_t0.7", verify_unitary(gate_d(0.7)), 1e-12));
  out.push_back(check("su3.j_unitary", uj, 1e-12));
  out.push_back(check("su3.q_unitary", uq, 1e-12));
  out.push_back(check("su3.n_unitary", verify_unitary(gate_n()), 1e-15));
  out.push_back(check("su3.j_l_conjugation_elliptic", jl, 1e-14));
  out.push_back(check("su3.q_l_conjugation_elliptic", ql, 1e-14));
  out.push_back(check("su3.n_swaps_couplings", nswap, 1e-15));
  out.push_back(check("su3.printed_propagator_unitary", prop, 1e-12));

  const Eigenreflections e = eigenreflections(0.3);
  out.push_back(check("eigenreflection.hermitian",
                      std::max({hermiticity_residual(e.m1), hermiticity_residual(e.m2), hermiticity_residual(e.m3)}), 1e-15));
  out.push_back(check("eigenreflection.m1_definitional", e.definitional_residual[0], 1e-15));
  out.push_back(reported("eigenreflection.m2_definitional", e.definitional_residual[1], 1e-15));
  out.push_back(check("eigenreflection.m3_definitional", e.definitional_residual[2], 1e-15));
  out.push_back(reported("eigenreflection.identity_m2_m1_m3", e.identity_residual, 1e-14, "M2(-xi) = M1(xi) + M3(xi)"));
  out.push_back(check("eigenreflection.m2_at_zero", dist(eigenreflections(0.0).m2, ComplexMatrix::diag_real({0.0, 1.0, 2.0})), 1e-15));
  return out;
}

std::vector<CheckRecord> shift_checks(std::mt19937_64 &rng) {
  std::vector<CheckRecord> out;
  std::uniform_real_distribution<double> ang(-pi, pi);
  for (auto f : {ShiftFamily::d, ShiftFamily::q, ShiftFamily::j})
    for (int col = 1; col <= 3; ++col) {
      double worst = 0.0;
      std::size_t variant = 0;
      for (int k = 0; k < 20; ++k) {
        const ShiftResult r = shift_check(f, col, ang(rng), ang(rng), ang(rng));
        if (r.residual >= worst) variant = r.variant;
        worst = std::max(worst, r.residual);
      }
      out.push_back(check(std::string("shift.") + shift_family_name(f) + ".col" + std::to_string(col), worst, 1e-12,
                          "variant " + std::to_string(variant + 1)));
    }
  out.push_back(check("shift.D.col1_sigma0.2_alpha0.5_first_variant",
                      dist(shift_variants(ShiftFamily::d, 0.5)[0] * shift_column(ShiftFamily::d, 1, 0.2),
                           shift_column(ShiftFamily::d, 1, 0.7)),
                      1e-12));
  return out;
}

std::vector<CheckRecord> group_checks() {
  std::vector<CheckRecord> out;
  const auto s = dihedral_s();
  const GroupTable g = group_closure({s.begin(), s.end()});
  out.push_back(check("dihedral.order_6", std::abs(double(g.order()) - 6.0), 0.0));
  out.push_back(check("dihedral.non_abelian", g.abelian ? 1.0 : 0.0, 0.0));
  out.push_back(check("dihedral.s5_squared_is_s6", dist(s[4] * s[4], s[5]), 0.0));
  double perm = 0.0;
  for (const auto &m : s) perm = std::max(perm, verify_unitary(m));
  out.push_back(check("dihedral.unitary", perm, 1e-15));
  const GroupTable r = group_closure({dft_r()});
  out.push_back(check("dft.r_cyclic_order_4", std::abs(double(r.order()) - 4.0), 0.0));
  return out;
}

std::vector<CheckRecord> su4_checks_list() {
  std::vector<CheckRecord> out;
  for (const auto &g : su4_catalog()) {
    if (g.name == "U8a")
      out.push_back(reported("su4." + g.name + "_unitary", verify_unitary(g.matrix), 1e-12, "printed 1/sqrt2 prefactor"));
    else
      out.push_back(check("su4." + g.name + "_unitary", verify_unitary(g.matrix), 1e-12));
  }
  const ComplexMatrix w = su4_catalog().back().matrix;
  out.push_back(check("su4.W_hermitian", dist(w, w.adjoint()), 1e-15));
  out.push_back(check("su4.W_squared_identity", dist(w * w, ComplexMatrix::identity(4)), 1e-15));
  return out;
}

std::vector<CheckRecord> triangular_checks(std::mt19937_64 &rng) {
  std::vector<CheckRecord> out;
  std::normal_distribution<double> g;
  auto draw = [&] { return TriangularElement{cplx(g(rng), g(rng)), cplx(g(rng), g(rng)), cplx(g(rng), g(rng))}; };
  double unit = 0.0, sq = 0.0, ax = 0.0, comm = 0.0, printed_comm = 0.0, nil = 0.0, assoc = 0.0, expo = 0.0,
         x_printed = 0.0, omega_printed = 0.0;
  for (int k = 0; k < 20; ++k) {
    const TriangularElement a = draw(), ap = draw(), app = draw();
    const TriOps r = tri_ops(a, ap);
    unit = std::max({unit, std::abs(r.product(0, 0) - 1.0), std::abs(r.product(1, 1) - 1.0),
                     std::abs(r.product(2, 2) - 1.0), std::abs(r.product(1, 0)), std::abs(r.product(2, 0)),
                     std::abs(r.product(2, 1))});
    sq = std::max(sq, dist(r.square, r.square_decomp.matrix()));
    ax = std::max(ax, dist(commutator(a.matrix(), r.x), ComplexMatrix::zero(3)));
    const ComplexMatrix x_print{{1.0, a.a, a.b + a.c * a.a}, {0.0, 1.0, a.c}, {0.0, 0.0, 1.0}};
    x_printed = std::max(x_printed, dist(a.matrix() + x_print, r.square));
    comm = std::max(comm, dist(r.commutator, (a.a * ap.c - ap.a * a.c) * ComplexMatrix::unit(3, 0, 2)));
    ComplexMatrix pc(3);
    pc(0, 2) = pc(1, 2) = a.b - ap.b;
    printed_comm = std::max(printed_comm, dist(r.commutator, pc));
    nil = std::max(nil, r.commutator_nilpotency);
    assoc = std::max(assoc, dist((a.matrix() * ap.matrix()) * app.matrix(), a.matrix() * (ap.matrix() * app.matrix())));
    // Taylor series of exp(-iAt) as the oracle
    const double t = 0.37 * (k + 1) / 20.0;
    ComplexMatrix term = ComplexMatrix::identity(3), sum = term;
    for (int n = 1; n < 40; ++n) {
      term = (-I * t / double(n)) * (term * a.matrix());
      sum += term;
    }
    expo = std::max(expo, dist(tri_exponential(a, t), sum));
    const ComplexMatrix om = ComplexMatrix::diag_real({g(rng), g(rng), g(rng)});
    const ComplexMatrix om_print{{1.0, a.a * (om(0, 0) - om(1, 1)), a.b * (om(0, 0) - om(2, 2))},
                                 {0.0, 1.0, a.c * (om(1, 1) - om(2, 2))},
                                 {0.0, 0.0, 1.0}};
    omega_printed = std::max(omega_printed, dist(commutator(a.matrix(), om), om_print));
  }
  out.push_back(check("triangular.product_unit_upper", unit, 1e-14));
  out.push_back(check("triangular.square_decomposition", sq, 1e-13));
  out.push_back(check("triangular.square_minus_a_commutes", ax, 1e-13));
  out.push_back(reported("triangular.printed_x_decomposition", x_printed, 1e-13, "printed X has unit diagonal"));
  out.push_back(check("triangular.commutator_direct", comm, 1e-13));
  out.push_back(reported("triangular.commutator_printed", printed_comm, 1e-13, "(b - b')(E13 + E23)"));
  out.push_back(check("triangular.commutator_nilpotent", nil, 1e-14));
  out.push_back(check("triangular.associative", assoc, 1e-13));
  out.push_back(check("triangular.exponential_series", expo, 1e-13));
  out.push_back(reported("triangular.omega_commutator_printed", omega_printed, 1e-13, "unit diagonal and sign"));

  // ODE: exact solution against RK4
  double rk = 0.0;
  for (int k = 0; k < 5; ++k) {
    const TriangularElement a = draw();
    const std::array<cplx, 3> x0{cplx(g(rng), g(rng)), cplx(g(rng), g(rng)), cplx(g(rng), g(rng))};
    const ComplexMatrix m = a.matrix();
    CVector x(x0.begin(), x0.end());
    const double dt = 1e-3, t_end = 1.0;
    auto f = [&m](const CVector &v) { return m * v; };
    for (int s = 0; s < 1000; ++s) {
      const CVector k1 = f(x);
      CVector tmp(3);
      for (int i = 0; i < 3; ++i) tmp[i] = x[i] + 0.5 * dt * k1[i];
      const CVector k2 = f(tmp);
      for (int i = 0; i < 3; ++i) tmp[i] = x[i] + 0.5 * dt * k2[i];
      const CVector k3 = f(tmp);
      for (int i = 0; i < 3; ++i) tmp[i] = x[i] + dt * k3[i];
      const CVector k4 = f(tmp);
      for (int i = 0; i < 3; ++i) x[i] += dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    }
    const auto exact = tri_ode_solve(a, x0, t_end);
    rk = std::max(rk, dist(x, CVector(exact.begin(), exact.end())) / std::exp(t_end));
  }
  out.push_back(check("triangular.ode_vs_rk4", rk, 1e-8));
  const double kk = 0.4, t = 0.9;
  const auto sol = tri_ode_solve({0.0, 0.0, 1.0}, {0.0, kk, 1.0}, t);
  out.push_back(check("triangular.ode_printed_x2", std::abs(sol[1] - (kk + t) * std::exp(t)), 1e-14));

  long long worst = 0;
  for (int n = 2; n <= 8; ++n) {
    const auto [lhs, rhs] = dimension_count(n);
    worst = std::max(worst, std::llabs(lhs - rhs));
  }
  out.push_back(check("triangular.dimension_count", double(worst), 0.0));
  return out;
}

}  // namespace

std::vector<CheckRecord> gates_checks(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<CheckRecord> out;
  append(out, su2_gate_checks(rng));
  append(out, su3_gate_checks(rng));
  append(out, shift_checks(rng));
  append(out, dft_checks());
  append(out, group_checks());
  append(out, quarter_angle_gates());
  append(out, su4_checks_list());
  append(out, triangular_checks(rng));
  return out;
}

}  // namespace qbrach

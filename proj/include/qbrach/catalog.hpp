/*
 * catalog.hpp
 *
 * Closed-form time-optimal solutions. Each scenario carries analytic
 * H(t), F(t), U(t,0), psi(t) and its minimum-time data, and can be
 * cross-checked against the integrator.
 */
#pragma once

#include <array>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "qbrach/brach.hpp"
#include "qbrach/matcore.hpp"
#include "qbrach/report.hpp"

namespace qbrach {

struct UnknownScenario : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct QuantCondition {
  std::string description;
  std::function<double(double)> residual;  // evaluated at a candidate time T
};

using StateMap = std::function<CVector(double, const CVector &)>;

struct Scenario {
  std::string name;
  std::size_t dim = 0;
  std::map<std::string, cplx> params;
  TimeOperator hamiltonian_at;
  TimeOperator constraint_at;
  TimeOperator propagator_at;
  StateMap state_at;
  CVector psi0;
  std::optional<CVector> target;
  std::optional<double> min_time;
  double period = 0.0;  // characteristic time used for grids
  std::vector<QuantCondition> quantization;
  std::optional<ControlProblem> problem;

  double fidelity_at(double t) const;
};

// SU(2), H(t) = [[0, e0 e^{2iWt}], [c.c., 0]], F = W sigma_z.
Scenario scenario_su2(double k, double omega, cplx eps0);
// T with W'T = n pi/2, WT = m pi/2 for k: T = (pi/2) sqrt((n^2 - m^2)/k).
double su2_quantized_time(double k, int n, int m);

// SO(3) constant H = nz(E11 - E33) + eps E13 + h.c.; F built from (u, K1, K2).
Scenario scenario_so3(double nz, cplx eps, double u = 0.2, cplx k1 = {0.1, 0.05}, cplx k2 = 0.15);

// Elliptic H(t) = R[[0,cos Wt,0],[cos Wt,0,-i sin Wt],[0,i sin Wt,0]].
Scenario scenario_su3_elliptic(double r, double omega, const std::array<cplx, 3> &delta0);
// Printed component formulas, kept verbatim for the discrepancy report.
CVector elliptic_printed_state(double r, double omega, const std::array<cplx, 3> &delta0, double t);
CVector elliptic_printed_initial(double r, double omega, const std::array<cplx, 3> &delta0);

// Geodesic: H(0) = eps1 (E12 + E21), F = kappa E13 + kappa* E31, psi0 = e1.
// eps1 must be real positive; theta must satisfy e^{-i theta} = -i kappa/|kappa|.
Scenario scenario_su3_geodesic(double eps1, cplx kappa, double theta);
Scenario scenario_su3_geodesic(double eps1, cplx kappa);
double geodesic_theta(cplx kappa);
CVector geodesic_printed_state(double eps1, cplx kappa, double t);
ComplexMatrix geodesic_printed_hamiltonian(double eps1, cplx kappa, double theta, double t);

// Frenet: K = C sin + N cos, T = A sin + B cos; needs C = -B, N = A.
Scenario scenario_frenet(double a, double b, double c, double n, double eta);
// Printed |->, |0>, |+> with cos -> K/R and sin -> T/R.
std::array<CVector, 3> frenet_eigenvectors(double curvature, double torsion);

// Two-qubit Heisenberg with lambda_y = -lambda_x, lambda_z = 0.
Scenario scenario_su4_heisenberg(double lambda_x);
double su4_bell_time(double lambda_x);
double su4_printed_time(double lambda_x);
CVector su4_printed_state(double lambda_x, double t);
// max |lambda_j(t) - lambda_j(0)| of the XX, YY, ZZ coordinates along a trajectory
double su4_lambda_drift(const Trajectory &tr);

struct DiracParams {
  double alpha = 0.6;
  double pz = 0.48;
  cplx eps = 0.64;
  cplx xi1 = 0.3;
  cplx xi2 = cplx(0.0, 0.2);
  std::array<cplx, 4> a = {cplx(0.0, 0.2), 0.1, -0.1, cplx(0.0, 0.3)};  // row-major 2x2
};
Scenario scenario_dirac(const DiracParams &p = {});
ComplexMatrix dirac_h0(const DiracParams &p);
ComplexMatrix dirac_w();
ComplexMatrix dirac_p(const DiracParams &p, bool normalized);

enum class FamilyKind { antidiagonal, tridiagonal, diagonal };
const char *family_name(FamilyKind k);

struct FamilyInstance {
  FamilyKind kind;
  std::size_t n;
  ControlProblem problem;
  ComplexMatrix h0, f0;
  CVector psi0;
};

FamilyInstance family_sun(std::size_t n, FamilyKind kind, std::mt19937_64 &rng);

enum class Recurrence { constant, periodic, neither };
const char *recurrence_name(Recurrence r);

struct RecurrenceResult {
  Recurrence kind = Recurrence::neither;
  double period = 0.0;
  double residual = 0.0;
};

struct Partition {
  std::string label;
  ControlProblem problem;
  ComplexMatrix h0, f0;
  RecurrenceResult h_class, f_class;
};

// The four printed SU(3) splittings, first display as H and second as F,
// with fixed parameter values. Classification runs when classify is true.
std::vector<Partition> su3_partitions(bool classify = true, double t_max = 50.0, double dt = 1e-3);

RecurrenceResult classify_recurrence(const std::vector<double> &times,
                                     const std::vector<ComplexMatrix> &series, double tol = 1e-6);

struct ValidationReport {
  std::string scenario;
  double tolerance = 1e-6;
  double unitarity = 0.0;
  double propagator_at_zero = 0.0;
  double propagator_vs_ordered = 0.0;
  double state_vs_propagator = 0.0;
  double hamiltonian_vs_evolve = -1.0;  // -1 when no control problem
  double state_vs_evolve = -1.0;
  double trhf = 0.0;
  std::vector<double> quantization_residuals;
  std::optional<double> fidelity_at_min_time;

  std::vector<CheckRecord> records() const;
};

ValidationReport validate(const Scenario &s, double tol = 1e-6, double dt = 1e-4);

// Default instances used by the CLI and the catalog suite.
std::vector<std::string> scenario_names();
Scenario make_scenario(const std::string &name, const std::map<std::string, cplx> &overrides);

std::vector<CheckRecord> catalog_checks(std::uint64_t seed = 42);

}  // namespace qbrach

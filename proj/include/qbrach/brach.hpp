/*
 * brach.hpp
 *
 * Brachistochrone engine. H lives in the driver span, F in the constraint
 * span, and both follow i d(H+F)/dt = [H, F] while the state obeys
 * i dpsi/dt = H psi.
 */
#pragma once

#include <array>
#include <string>
#include <vector>

#include "qbrach/matcore.hpp"

namespace qbrach {

class ControlProblem {
public:
  // Bases are orthonormalized under Tr(AB); a warning is logged when the
  // input was not already orthogonal.
  ControlProblem(std::size_t dim, std::vector<ComplexMatrix> driver,
                 std::vector<ComplexMatrix> constraint, double energy_bound_k);

  // Constraint span = orthogonal complement of the driver inside su(n).
  static ControlProblem with_complement(std::size_t dim, std::vector<ComplexMatrix> driver,
                                        double energy_bound_k);

  std::size_t dim() const { return dim_; }
  const std::vector<ComplexMatrix> &driver_basis() const { return driver_; }
  const std::vector<ComplexMatrix> &constraint_basis() const { return constraint_; }
  double energy_bound_k() const { return k_; }
  bool was_adjusted() const { return adjusted_; }

  ComplexMatrix project_driver(const ComplexMatrix &m) const;
  ComplexMatrix project_constraint(const ComplexMatrix &m) const;
  std::vector<double> driver_coords(const ComplexMatrix &m) const;
  std::vector<double> constraint_coords(const ComplexMatrix &m) const;

private:
  std::size_t dim_;
  std::vector<ComplexMatrix> driver_, constraint_;
  double k_;
  bool adjusted_ = false;
};

// Gram-Schmidt under Tr(AB); drops dependent elements. Sets *changed when
// the input was not orthonormal.
std::vector<ComplexMatrix> orthonormalize(const std::vector<ComplexMatrix> &basis,
                                          bool *changed = nullptr);
ComplexMatrix project(const std::vector<ComplexMatrix> &orthonormal_basis, const ComplexMatrix &m);

struct RhsResult {
  ComplexMatrix dH, dF;
  double residual = 0.0;  // part of -i[H,F] outside both spans
};

RhsResult brach_rhs(const ComplexMatrix &h, const ComplexMatrix &f, const ControlProblem &problem,
                    double span_tol = 1e-8);

struct BrachState {
  double t = 0.0;
  ComplexMatrix H, F;
  CVector psi;
};

struct Diagnostics {
  double norm_drift = 0.0;
  double trh2_drift = 0.0;   // relative
  double trhf = 0.0;         // |Tr(HF)|
  double eig_drift = 0.0;    // spectrum of H, relative to its spectral radius
  double lax_eig_drift = 0.0;  // spectrum of H+F
};

struct EvolveOptions {
  std::size_t record_stride = 1;
  double renorm_threshold = 1e-12;
  double hard_limit = 1e-4;
};

struct Trajectory {
  std::vector<BrachState> samples;
  std::vector<Diagnostics> diagnostics;
  bool aborted = false;
  std::string abort_reason;

  Diagnostics worst() const;
};

Trajectory evolve(const ControlProblem &problem, const ComplexMatrix &h0, const ComplexMatrix &f0,
                  const CVector &psi0, double t_max, double dt, const EvolveOptions &opts = {});

// (H+F) - <psi|(H+F)|psi> |psi><psi|
ComplexMatrix g_operator(const ComplexMatrix &h, const ComplexMatrix &f, const CVector &psi);

// ||{G,P} - G||_max
double boundary_residual(const ComplexMatrix &g, const ComplexMatrix &p, double tol = 1e-10);

struct Observables {
  std::array<cplx, 6> f{};
  double expect_h = 0.0;
  double expect_h2 = 0.0;
  double delta_e = 0.0;
  std::array<double, 3> probabilities{};
};

Observables observables(const CVector &psi, const ComplexMatrix &h);

// Printed expectation formulas for H = [[0,a,0],[a,0,-ib],[0,ib,0]].
double elliptic_expect_h(double alpha, double beta, const CVector &psi);
double elliptic_expect_h2(double alpha, double beta, const CVector &psi);

using SU2Vector = std::array<cplx, 3>;

// (sqrt2 m11, m12, m21)
SU2Vector su2_vectorize(const ComplexMatrix &m);
ComplexMatrix su2_devectorize(const SU2Vector &v);
std::array<ComplexMatrix, 3> su2_control_matrices();
// sum_j |j> <f|A_j|h>, the value of i d/dt(|h>+|f>)
SU2Vector su2_vector_rhs(const SU2Vector &h, const SU2Vector &f);
cplx su2_pair(const SU2Vector &a, const SU2Vector &b);  // <a|b>

}  // namespace qbrach

/*
 * gates.hpp
 *
 * Printed unitary families for SU(2), SU(3) and SU(4), kept verbatim,
 * with reconstructed versions where the printed entries are inconsistent.
 * Also the unit upper-triangular semigroup.
 */
#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "qbrach/matcore.hpp"
#include "qbrach/report.hpp"

namespace qbrach {

struct ClosureError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// max(||M^dag M - 1||, ||M M^dag - 1||)
double verify_unitary(const ComplexMatrix &m);
// U H U^dag
ComplexMatrix conjugate(const ComplexMatrix &u, const ComplexMatrix &h);

struct GroupTable {
  std::vector<ComplexMatrix> elements;
  std::vector<std::vector<std::size_t>> table;  // table[i][j] = index of e_i e_j
  bool abelian = true;
  std::size_t order() const { return elements.size(); }
  std::size_t index_of(const ComplexMatrix &m, double tol = 1e-9) const;
};

// Closes the generators under multiplication; throws ClosureError past max_order.
GroupTable group_closure(const std::vector<ComplexMatrix> &generators, double tol = 1e-9,
                         std::size_t max_order = 24);

// SU(2) list
ComplexMatrix su2_u1();
ComplexMatrix su2_u2_printed(double theta);
ComplexMatrix su2_u2(double theta);  // (2,2) entry e^{i theta}
ComplexMatrix su2_u3(double chi);
ComplexMatrix su2_u4();
ComplexMatrix su2_u5(double alpha);
ComplexMatrix su2_u6_printed(double vartheta);  // e^{i v} diag(1, e^{-2iv})
// (1/2)[[1, e^{-ia}],[1, -e^{-ia}]] . [[0, e^{-ia}],[e^{ia}, 0]] . [[1, 1],[e^{ia}, -e^{ia}]]
ComplexMatrix su2_triple_product(double alpha);

// SU(3) transformations
ComplexMatrix gate_l();  // diag(1, -1, 0)
ComplexMatrix gate_n();
ComplexMatrix gate_d(double t);
ComplexMatrix gate_j(double phi);
ComplexMatrix gate_q(double phi, double rho);
ComplexMatrix elliptic_matrix(double phi, double rho = 0.0);
ComplexMatrix su3_propagator_printed(double theta);

struct Eigenreflections {
  ComplexMatrix m1, m2, m3;        // printed
  ComplexMatrix m1_def, m2_def, m3_def;  // 1 - |v><v| from the columns of J(xi)
  double identity_residual = 0.0;  // ||M2(-xi) - M1(xi) - M3(xi)||
  std::array<double, 3> definitional_residual{};
};
Eigenreflections eigenreflections(double xi);

// Shift operators acting on the columns of D, Q, J
enum class ShiftFamily { d, q, j };
const char *shift_family_name(ShiftFamily f);
std::vector<ComplexMatrix> shift_variants(ShiftFamily f, double alpha, double rho = 0.3);
CVector shift_column(ShiftFamily f, int column, double sigma, double rho = 0.3);

struct ShiftResult {
  double residual = 0.0;
  std::size_t variant = 0;  // index into shift_variants
};
ShiftResult shift_check(ShiftFamily f, int column, double sigma, double alpha, double rho = 0.3);

// DFT family
cplx cube_root_of_unity();
ComplexMatrix dft_r();
ComplexMatrix dft_split_q(double theta);
ComplexMatrix dft_split_w(double chi);
ComplexMatrix dft_split_j(double theta);
ComplexMatrix dft_x();
ComplexMatrix dft_y();
ComplexMatrix dft_z();
ComplexMatrix dft_hw_printed(double chi);
std::vector<CheckRecord> dft_checks();

std::array<ComplexMatrix, 6> dihedral_s();
std::vector<CheckRecord> quarter_angle_gates(double rho = 0.3);

struct GateEntry {
  std::string name;
  ComplexMatrix matrix;
  bool claimed_unitary = true;
};
// U3..U10 (both printed U8) and W
std::vector<GateEntry> su4_catalog();

struct TriangularElement {
  cplx a, b, c;
  ComplexMatrix matrix() const;
};
struct TriOps {
  ComplexMatrix product;
  ComplexMatrix square;
  TriangularElement square_decomp;  // A(2a, 2b + ca, 2c)
  ComplexMatrix x;                  // A^2 - A
  ComplexMatrix commutator;
  double commutator_nilpotency = 0.0;  // ||[A,A']^2||
};
TriOps tri_ops(const TriangularElement &a, const TriangularElement &ap);
// exp(-iAt) = e^{-it}(1 - iNt - N^2 t^2/2), N = A - 1
ComplexMatrix tri_exponential(const TriangularElement &a, double t);
// exact solution of dx/dt = A x
std::array<cplx, 3> tri_ode_solve(const TriangularElement &a, const std::array<cplx, 3> &x0, double t);

// n^2 and n + 2 sum_{j<n} j
std::pair<long long, long long> dimension_count(int n);

std::vector<CheckRecord> gates_checks(std::uint64_t seed = 42);

}  // namespace qbrach

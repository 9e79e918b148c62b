/*
 * matcore.hpp
 *
 * Dense complex matrices for small Hilbert spaces: algebra, Hermitian
 * spectral decomposition, exponentials and frame transforms.
 */
#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <vector>

namespace qbrach {

using cplx = std::complex<double>;
using CVector = std::vector<cplx>;

inline constexpr cplx I{0.0, 1.0};

struct ValidationError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct DimensionError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

class ComplexMatrix {
public:
  ComplexMatrix() = default;
  explicit ComplexMatrix(std::size_t n);
  ComplexMatrix(std::initializer_list<std::initializer_list<cplx>> rows);

  static ComplexMatrix identity(std::size_t n);
  static ComplexMatrix zero(std::size_t n) { return ComplexMatrix(n); }
  static ComplexMatrix diag(const CVector &d);
  static ComplexMatrix diag_real(const std::vector<double> &d);
  // Single-entry matrix E_ij (0-based).
  static ComplexMatrix unit(std::size_t n, std::size_t i, std::size_t j);

  std::size_t dim() const { return n_; }
  cplx &operator()(std::size_t i, std::size_t j) { return a_[i * n_ + j]; }
  const cplx &operator()(std::size_t i, std::size_t j) const { return a_[i * n_ + j]; }
  const std::vector<cplx> &data() const { return a_; }

  ComplexMatrix adjoint() const;
  ComplexMatrix transpose() const;
  ComplexMatrix conj() const;
  cplx trace() const;
  double max_abs() const;
  bool finite() const;
  CVector column(std::size_t j) const;

  ComplexMatrix &operator+=(const ComplexMatrix &o);
  ComplexMatrix &operator-=(const ComplexMatrix &o);
  ComplexMatrix &operator*=(cplx s);

private:
  std::size_t n_ = 0;
  std::vector<cplx> a_;
};

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix &b);
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix &b);
ComplexMatrix operator-(ComplexMatrix a);
ComplexMatrix operator*(const ComplexMatrix &a, const ComplexMatrix &b);
ComplexMatrix operator*(cplx s, ComplexMatrix a);
ComplexMatrix operator*(ComplexMatrix a, cplx s);
inline ComplexMatrix operator*(double s, const ComplexMatrix &a) { return cplx(s) * a; }
CVector operator*(const ComplexMatrix &a, const CVector &v);

// max-norm distance
double dist(const ComplexMatrix &a, const ComplexMatrix &b);
double dist(const CVector &a, const CVector &b);

ComplexMatrix kron(const ComplexMatrix &a, const ComplexMatrix &b);
ComplexMatrix outer(const CVector &a, const CVector &b);  // |a><b|
ComplexMatrix power(const ComplexMatrix &a, int k);

cplx inner(const CVector &a, const CVector &b);  // <a|b>
double norm(const CVector &v);
CVector normalized(const CVector &v);
double fidelity(const CVector &a, const CVector &b);  // |<a|b>|^2

// Pauli matrices and the generalized Gell-Mann basis of su(n).
ComplexMatrix sigma_x();
ComplexMatrix sigma_y();
ComplexMatrix sigma_z();
// Symmetric X_jk = E_jk + E_kj, antisymmetric Y_jk = -i E_jk + i E_kj (0-based).
ComplexMatrix sym_x(std::size_t n, std::size_t j, std::size_t k);
ComplexMatrix sym_y(std::size_t n, std::size_t j, std::size_t k);
std::vector<ComplexMatrix> gell_mann_basis(std::size_t n);

double hermiticity_residual(const ComplexMatrix &m);
double unitarity_residual(const ComplexMatrix &m);
void require_hermitian(const ComplexMatrix &m, double tol = 1e-12, const char *what = "matrix");
void require_same_dim(const ComplexMatrix &a, const ComplexMatrix &b);

class HermitianOperator {
public:
  HermitianOperator() = default;
  explicit HermitianOperator(ComplexMatrix m, bool traceless = false, double tol = 1e-12);

  const ComplexMatrix &matrix() const { return m_; }
  bool traceless() const { return traceless_; }
  std::size_t dim() const { return m_.dim(); }
  operator const ComplexMatrix &() const { return m_; }

private:
  ComplexMatrix m_;
  bool traceless_ = false;
};

struct Spectrum {
  std::vector<double> values;  // ascending
  ComplexMatrix vectors;       // columns
};

ComplexMatrix traceless_gauge(const ComplexMatrix &m);
ComplexMatrix commutator(const ComplexMatrix &a, const ComplexMatrix &b);
ComplexMatrix anticommutator(const ComplexMatrix &a, const ComplexMatrix &b);
double trace_inner(const ComplexMatrix &a, const ComplexMatrix &b);

Spectrum hermitian_eig(const ComplexMatrix &m, double tol = 1e-12);

// exp(-i H t)
ComplexMatrix expm_h(const ComplexMatrix &h, double t);

// 1 - i sin(rho theta)/rho H + (cos(rho theta) - 1)/rho^2 H^2, for H^3 = rho^2 H
ComplexMatrix expm_spectral_zero_sym(const ComplexMatrix &h, double rho, double theta,
                                     double tol = 1e-8);

double energy_variance(const ComplexMatrix &h, const CVector &psi);

using TimeOperator = std::function<ComplexMatrix(double)>;

// t -> dS/dt + exp(-iS) H exp(iS)
TimeOperator picture_transform(TimeOperator h, TimeOperator s, TimeOperator ds_dt);

// Midpoint-sampled product of exp(-i H(t_k + dt/2) dt), latest step leftmost.
ComplexMatrix ordered_exponential(const TimeOperator &h, double t_max, double dt);

}  // namespace qbrach

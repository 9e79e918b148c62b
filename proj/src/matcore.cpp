/*
 * matcore.cpp
 */
#include "qbrach/matcore.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace qbrach {

ComplexMatrix::ComplexMatrix(std::size_t n) : n_(n), a_(n * n, cplx(0.0)) {
  if (n == 0) throw DimensionError("matrix dimension must be positive");
}

ComplexMatrix::ComplexMatrix(std::initializer_list<std::initializer_list<cplx>> rows) {
  n_ = rows.size();
  if (n_ == 0) throw DimensionError("matrix dimension must be positive");
  a_.reserve(n_ * n_);
  for (const auto &r : rows) {
    if (r.size() != n_) throw DimensionError("matrix rows must be square");
    a_.insert(a_.end(), r.begin(), r.end());
  }
}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
  ComplexMatrix m(n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::diag(const CVector &d) {
  ComplexMatrix m(d.size());
  for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
  return m;
}

ComplexMatrix ComplexMatrix::diag_real(const std::vector<double> &d) {
  ComplexMatrix m(d.size());
  for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
  return m;
}

ComplexMatrix ComplexMatrix::unit(std::size_t n, std::size_t i, std::size_t j) {
  ComplexMatrix m(n);
  m(i, j) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::adjoint() const {
  ComplexMatrix r(n_);
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j) r(j, i) = std::conj((*this)(i, j));
  return r;
}

ComplexMatrix ComplexMatrix::transpose() const {
  ComplexMatrix r(n_);
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j) r(j, i) = (*this)(i, j);
  return r;
}

ComplexMatrix ComplexMatrix::conj() const {
  ComplexMatrix r(*this);
  for (auto &x : r.a_) x = std::conj(x);
  return r;
}

cplx ComplexMatrix::trace() const {
  cplx s = 0.0;
  for (std::size_t i = 0; i < n_; ++i) s += (*this)(i, i);
  return s;
}

double ComplexMatrix::max_abs() const {
  double m = 0.0;
  for (const auto &x : a_) m = std::max(m, std::abs(x));
  return m;
}

bool ComplexMatrix::finite() const {
  return std::all_of(a_.begin(), a_.end(),
                     [](const cplx &x) { return std::isfinite(x.real()) && std::isfinite(x.imag()); });
}

CVector ComplexMatrix::column(std::size_t j) const {
  CVector c(n_);
  for (std::size_t i = 0; i < n_; ++i) c[i] = (*this)(i, j);
  return c;
}

ComplexMatrix &ComplexMatrix::operator+=(const ComplexMatrix &o) {
  if (o.n_ != n_) throw DimensionError("dimension mismatch in +");
  for (std::size_t k = 0; k < a_.size(); ++k) a_[k] += o.a_[k];
  return *this;
}

ComplexMatrix &ComplexMatrix::operator-=(const ComplexMatrix &o) {
  if (o.n_ != n_) throw DimensionError("dimension mismatch in -");
  for (std::size_t k = 0; k < a_.size(); ++k) a_[k] -= o.a_[k];
  return *this;
}

ComplexMatrix &ComplexMatrix::operator*=(cplx s) {
  for (auto &x : a_) x *= s;
  return *this;
}

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix &b) { return a += b; }
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix &b) { return a -= b; }
ComplexMatrix operator-(ComplexMatrix a) { return a *= -1.0; }
ComplexMatrix operator*(cplx s, ComplexMatrix a) { return a *= s; }
ComplexMatrix operator*(ComplexMatrix a, cplx s) { return a *= s; }

ComplexMatrix operator*(const ComplexMatrix &a, const ComplexMatrix &b) {
  require_same_dim(a, b);
  const std::size_t n = a.dim();
  ComplexMatrix r(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) {
      const cplx aik = a(i, k);
      if (aik == 0.0) continue;
      for (std::size_t j = 0; j < n; ++j) r(i, j) += aik * b(k, j);
    }
  return r;
}

CVector operator*(const ComplexMatrix &a, const CVector &v) {
  if (v.size() != a.dim()) throw DimensionError("dimension mismatch in matrix-vector product");
  CVector r(v.size(), 0.0);
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < a.dim(); ++j) r[i] += a(i, j) * v[j];
  return r;
}

double dist(const ComplexMatrix &a, const ComplexMatrix &b) { return (a - b).max_abs(); }

double dist(const CVector &a, const CVector &b) {
  if (a.size() != b.size()) throw DimensionError("dimension mismatch in dist");
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

ComplexMatrix kron(const ComplexMatrix &a, const ComplexMatrix &b) {
  const std::size_t n = a.dim(), m = b.dim();
  ComplexMatrix r(n * m);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < m; ++k)
        for (std::size_t l = 0; l < m; ++l) r(i * m + k, j * m + l) = a(i, j) * b(k, l);
  return r;
}

ComplexMatrix outer(const CVector &a, const CVector &b) {
  if (a.size() != b.size()) throw DimensionError("dimension mismatch in outer");
  ComplexMatrix r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r(i, j) = a[i] * std::conj(b[j]);
  return r;
}

ComplexMatrix power(const ComplexMatrix &a, int k) {
  if (k < 0) throw std::invalid_argument("negative matrix power");
  ComplexMatrix r = ComplexMatrix::identity(a.dim());
  for (int i = 0; i < k; ++i) r = r * a;
  return r;
}

cplx inner(const CVector &a, const CVector &b) {
  if (a.size() != b.size()) throw DimensionError("dimension mismatch in inner product");
  cplx s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += std::conj(a[i]) * b[i];
  return s;
}

double norm(const CVector &v) {
  double s = 0.0;
  for (const auto &x : v) s += std::norm(x);
  return std::sqrt(s);
}

CVector normalized(const CVector &v) {
  const double n = norm(v);
  if (n == 0.0) throw ValidationError("cannot normalize the zero vector");
  CVector r(v);
  for (auto &x : r) x /= n;
  return r;
}

double fidelity(const CVector &a, const CVector &b) { return std::norm(inner(a, b)); }

ComplexMatrix sigma_x() { return {{0.0, 1.0}, {1.0, 0.0}}; }
ComplexMatrix sigma_y() { return {{0.0, -I}, {I, 0.0}}; }
ComplexMatrix sigma_z() { return {{1.0, 0.0}, {0.0, -1.0}}; }

ComplexMatrix sym_x(std::size_t n, std::size_t j, std::size_t k) {
  ComplexMatrix m(n);
  m(j, k) = 1.0;
  m(k, j) = 1.0;
  return m;
}

ComplexMatrix sym_y(std::size_t n, std::size_t j, std::size_t k) {
  ComplexMatrix m(n);
  m(j, k) = -I;
  m(k, j) = I;
  return m;
}

std::vector<ComplexMatrix> gell_mann_basis(std::size_t n) {
  std::vector<ComplexMatrix> basis;
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t k = j + 1; k < n; ++k) {
      basis.push_back(sym_x(n, j, k));
      basis.push_back(sym_y(n, j, k));
    }
  for (std::size_t l = 1; l < n; ++l) {
    ComplexMatrix d(n);
    const double s = std::sqrt(2.0 / double(l * (l + 1)));
    for (std::size_t i = 0; i < l; ++i) d(i, i) = s;
    d(l, l) = -s * double(l);
    basis.push_back(d);
  }
  return basis;
}

double hermiticity_residual(const ComplexMatrix &m) { return dist(m, m.adjoint()); }

double unitarity_residual(const ComplexMatrix &m) {
  const auto id = ComplexMatrix::identity(m.dim());
  return std::max(dist(m.adjoint() * m, id), dist(m * m.adjoint(), id));
}

void require_hermitian(const ComplexMatrix &m, double tol, const char *what) {
  if (!m.finite()) throw ValidationError(std::string(what) + " has non-finite entries");
  const double r = hermiticity_residual(m);
  if (r > tol * std::max(1.0, m.max_abs()))
    throw ValidationError(std::string(what) + " is not Hermitian (residual " + std::to_string(r) + ")");
}

void require_same_dim(const ComplexMatrix &a, const ComplexMatrix &b) {
  if (a.dim() != b.dim())
    throw DimensionError("dimension mismatch: " + std::to_string(a.dim()) + " vs " +
                         std::to_string(b.dim()));
}

HermitianOperator::HermitianOperator(ComplexMatrix m, bool traceless, double tol)
    : m_(std::move(m)), traceless_(traceless) {
  require_hermitian(m_, tol, "operator");
  if (traceless && std::abs(m_.trace()) > tol * std::max(1.0, m_.max_abs()))
    throw ValidationError("operator is not traceless");
}

ComplexMatrix traceless_gauge(const ComplexMatrix &m) {
  require_hermitian(m);
  const cplx shift = m.trace() / double(m.dim());
  ComplexMatrix r(m);
  for (std::size_t i = 0; i < m.dim(); ++i) r(i, i) -= shift.real();
  return r;
}

ComplexMatrix commutator(const ComplexMatrix &a, const ComplexMatrix &b) { return a * b - b * a; }

ComplexMatrix anticommutator(const ComplexMatrix &a, const ComplexMatrix &b) { return a * b + b * a; }

double trace_inner(const ComplexMatrix &a, const ComplexMatrix &b) {
  require_same_dim(a, b);
  double s = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t k = 0; k < a.dim(); ++k) s += (a(i, k) * b(k, i)).real();
  return s;
}

Spectrum hermitian_eig(const ComplexMatrix &m, double tol) {
  require_hermitian(m, tol, "eigen input");
  const std::size_t n = m.dim();
  ComplexMatrix a(m);
  ComplexMatrix v = ComplexMatrix::identity(n);
  for (std::size_t i = 0; i < n; ++i) a(i, i) = a(i, i).real();

  const double scale = std::max(m.max_abs(), 1e-300);
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) off = std::max(off, std::abs(a(p, q)));
    if (off <= 1e-17 * scale) break;

    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) {
        const double bq = std::abs(a(p, q));
        if (bq <= 1e-18 * scale) continue;
        const cplx ph = a(p, q) / bq;  // e^{i phi}
        const double app = a(p, p).real(), aqq = a(q, q).real();
        const double zeta = (aqq - app) / (2.0 * bq);
        const double t = (zeta >= 0 ? 1.0 : -1.0) / (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
        const double c = 1.0 / std::sqrt(1.0 + t * t), s = t * c;
        // V restricted to (p,q): [[c, s], [-s e^{-i phi}, c e^{-i phi}]]
        const cplx vpp = c, vpq = s, vqp = -s * std::conj(ph), vqq = c * std::conj(ph);
        for (std::size_t k = 0; k < n; ++k) {
          const cplx akp = a(k, p), akq = a(k, q);
          a(k, p) = akp * vpp + akq * vqp;
          a(k, q) = akp * vpq + akq * vqq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const cplx apk = a(p, k), aqk = a(q, k);
          a(p, k) = std::conj(vpp) * apk + std::conj(vqp) * aqk;
          a(q, k) = std::conj(vpq) * apk + std::conj(vqq) * aqk;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        a(p, p) = a(p, p).real();
        a(q, q) = a(q, q).real();
        for (std::size_t k = 0; k < n; ++k) {
          const cplx vkp = v(k, p), vkq = v(k, q);
          v(k, p) = vkp * vpp + vkq * vqp;
          v(k, q) = vkp * vpq + vkq * vqq;
        }
      }
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return a(x, x).real() < a(y, y).real(); });

  Spectrum out;
  out.values.resize(n);
  out.vectors = ComplexMatrix(n);
  for (std::size_t c = 0; c < n; ++c) {
    const std::size_t src = order[c];
    out.values[c] = a(src, src).real();
    double best = 0.0;
    for (std::size_t i = 0; i < n; ++i) best = std::max(best, std::abs(v(i, src)));
    std::size_t pivot = 0;
    for (std::size_t i = 0; i < n; ++i)
      if (std::abs(v(i, src)) >= best * (1.0 - 1e-10)) {
        pivot = i;
        break;
      }
    const cplx phase = std::conj(v(pivot, src)) / std::abs(v(pivot, src));
    for (std::size_t i = 0; i < n; ++i) out.vectors(i, c) = v(i, src) * phase;
    out.vectors(pivot, c) = std::abs(v(pivot, src));
  }
  return out;
}

ComplexMatrix expm_h(const ComplexMatrix &h, double t) {
  const Spectrum sp = hermitian_eig(h);
  const std::size_t n = h.dim();
  ComplexMatrix r(n);
  for (std::size_t k = 0; k < n; ++k) {
    const cplx e = std::exp(-I * sp.values[k] * t);
    for (std::size_t i = 0; i < n; ++i) {
      const cplx vik = sp.vectors(i, k) * e;
      for (std::size_t j = 0; j < n; ++j) r(i, j) += vik * std::conj(sp.vectors(j, k));
    }
  }
  return r;
}

ComplexMatrix expm_spectral_zero_sym(const ComplexMatrix &h, double rho, double theta, double tol) {
  require_hermitian(h);
  if (!(rho > 0.0)) throw ValidationError("rho must be positive");
  const ComplexMatrix h2 = h * h;
  if (dist(h2 * h, rho * rho * h) > tol)
    throw ValidationError("Cayley-Hamilton precondition H^3 = rho^2 H violated");
  const std::size_t n = h.dim();
  return ComplexMatrix::identity(n) + (-I * (std::sin(rho * theta) / rho)) * h +
         cplx((std::cos(rho * theta) - 1.0) / (rho * rho)) * h2;
}

double energy_variance(const ComplexMatrix &h, const CVector &psi) {
  if (psi.size() != h.dim()) throw DimensionError("dimension mismatch in energy_variance");
  const CVector hp = h * psi;
  const double e1 = inner(psi, hp).real();
  const double e2 = inner(hp, hp).real();
  return std::max(0.0, e2 - e1 * e1);
}

TimeOperator picture_transform(TimeOperator h, TimeOperator s, TimeOperator ds_dt) {
  return [h = std::move(h), s = std::move(s), ds = std::move(ds_dt)](double t) {
    const ComplexMatrix st = s(t);
    const ComplexMatrix ht = h(t);
    require_same_dim(st, ht);
    return ds(t) + expm_h(st, 1.0) * ht * expm_h(st, -1.0);
  };
}

ComplexMatrix ordered_exponential(const TimeOperator &h, double t_max, double dt) {
  if (!(dt > 0.0)) throw std::invalid_argument("dt must be positive");
  if (t_max < 0.0) throw std::invalid_argument("t_max must be nonnegative");
  const ComplexMatrix h0 = h(0.0);
  ComplexMatrix u = ComplexMatrix::identity(h0.dim());
  const auto steps = static_cast<long>(std::ceil(t_max / dt - 1e-9));
  double t = 0.0;
  for (long k = 0; k < steps; ++k) {
    const double step = std::min(dt, t_max - t);
    u = expm_h(h(t + 0.5 * step), step) * u;
    t += step;
  }
  return u;
}

}  // namespace qbrach

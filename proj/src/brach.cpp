/*
 * brach.cpp
 */
#include "qbrach/brach.hpp"

#include <algorithm>
#include <cmath>

#include "qbrach/log.hpp"

namespace qbrach {

namespace {

void require_traceless_hermitian(const ComplexMatrix &m, std::size_t dim, const char *what) {
  if (m.dim() != dim) throw DimensionError(std::string(what) + " has wrong dimension");
  require_hermitian(m, 1e-12, what);
  if (std::abs(m.trace()) > 1e-12 * std::max(1.0, m.max_abs()))
    throw ValidationError(std::string(what) + " is not traceless");
}

double spectral_drift(const std::vector<double> &a, const std::vector<double> &b) {
  double scale = 0.0, d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    scale = std::max(scale, std::abs(a[i]));
    d = std::max(d, std::abs(a[i] - b[i]));
  }
  return scale > 0.0 ? d / scale : d;
}

}  // namespace

std::vector<ComplexMatrix> orthonormalize(const std::vector<ComplexMatrix> &basis, bool *changed) {
  bool adj = false;
  for (std::size_t i = 0; i < basis.size() && !adj; ++i)
    for (std::size_t j = i; j < basis.size(); ++j) {
      const double want = i == j ? 1.0 : 0.0;
      if (std::abs(trace_inner(basis[i], basis[j]) - want) > 1e-12) {
        adj = true;
        break;
      }
    }

  std::vector<ComplexMatrix> out;
  for (const auto &b : basis) {
    ComplexMatrix v = b;
    // two passes of modified Gram-Schmidt
    for (int pass = 0; pass < 2; ++pass)
      for (const auto &e : out) v -= trace_inner(v, e) * e;
    const double n2 = trace_inner(v, v);
    if (n2 <= 1e-20 * std::max(1.0, trace_inner(b, b))) {
      adj = true;
      continue;
    }
    out.push_back((1.0 / std::sqrt(n2)) * v);
  }
  if (changed) *changed = adj;
  return out;
}

ComplexMatrix project(const std::vector<ComplexMatrix> &basis, const ComplexMatrix &m) {
  ComplexMatrix r(m.dim());
  for (const auto &e : basis) r += trace_inner(m, e) * e;
  return r;
}

ControlProblem::ControlProblem(std::size_t dim, std::vector<ComplexMatrix> driver,
                               std::vector<ComplexMatrix> constraint, double energy_bound_k)
    : dim_(dim), k_(energy_bound_k) {
  if (dim < 2) throw DimensionError("control problem needs dim >= 2");
  if (!(energy_bound_k > 0.0)) throw ValidationError("energy bound k must be positive");
  if (driver.empty()) throw ValidationError("driver basis is empty");
  for (const auto &d : driver) require_traceless_hermitian(d, dim, "driver basis element");
  for (const auto &g : constraint) require_traceless_hermitian(g, dim, "constraint basis element");

  bool cd = false, cc = false;
  driver_ = orthonormalize(driver, &cd);
  constraint_ = orthonormalize(constraint, &cc);
  adjusted_ = cd || cc;
  if (adjusted_) logger().info("control basis orthonormalized under Tr(AB)");

  for (const auto &d : driver_)
    for (const auto &g : constraint_)
      if (std::abs(trace_inner(d, g)) > 1e-10)
        throw ValidationError("driver and constraint subspaces are not trace-orthogonal");
}

ControlProblem ControlProblem::with_complement(std::size_t dim, std::vector<ComplexMatrix> driver,
                                               double energy_bound_k) {
  bool changed = false;
  const auto d = orthonormalize(driver, &changed);
  std::vector<ComplexMatrix> rest;
  for (const auto &g : gell_mann_basis(dim)) rest.push_back(g - project(d, g));
  return ControlProblem(dim, std::move(driver), orthonormalize(rest), energy_bound_k);
}

ComplexMatrix ControlProblem::project_driver(const ComplexMatrix &m) const { return project(driver_, m); }

ComplexMatrix ControlProblem::project_constraint(const ComplexMatrix &m) const {
  if (constraint_.empty()) return ComplexMatrix(m.dim());
  return project(constraint_, m);
}

std::vector<double> ControlProblem::driver_coords(const ComplexMatrix &m) const {
  std::vector<double> c;
  for (const auto &e : driver_) c.push_back(trace_inner(m, e));
  return c;
}

std::vector<double> ControlProblem::constraint_coords(const ComplexMatrix &m) const {
  std::vector<double> c;
  for (const auto &e : constraint_) c.push_back(trace_inner(m, e));
  return c;
}

RhsResult brach_rhs(const ComplexMatrix &h, const ComplexMatrix &f, const ControlProblem &problem,
                    double span_tol) {
  require_same_dim(h, f);
  if (h.dim() != problem.dim()) throw DimensionError("operator dimension differs from problem");
  const double scale = std::max(1.0, std::max(h.max_abs(), f.max_abs()));
  if (dist(h, problem.project_driver(h)) > span_tol * scale)
    throw ValidationError("H is not in the driver span");
  if (dist(f, problem.project_constraint(f)) > span_tol * scale)
    throw ValidationError("F is not in the constraint span");

  const ComplexMatrix c = -I * commutator(h, f);
  RhsResult r;
  r.dH = problem.project_driver(c);
  r.dF = problem.project_constraint(c);
  r.residual = dist(c, r.dH + r.dF);
  return r;
}

Diagnostics Trajectory::worst() const {
  Diagnostics w;
  for (const auto &d : diagnostics) {
    w.norm_drift = std::max(w.norm_drift, d.norm_drift);
    w.trh2_drift = std::max(w.trh2_drift, d.trh2_drift);
    w.trhf = std::max(w.trhf, d.trhf);
    w.eig_drift = std::max(w.eig_drift, d.eig_drift);
    w.lax_eig_drift = std::max(w.lax_eig_drift, d.lax_eig_drift);
  }
  return w;
}

namespace {

struct Deriv {
  CVector psi;
  ComplexMatrix h, f;
};

Deriv joint_rhs(const ControlProblem &p, const CVector &psi, const ComplexMatrix &h,
                const ComplexMatrix &f) {
  const ComplexMatrix c = -I * commutator(h, f);
  CVector dpsi = h * psi;
  for (auto &x : dpsi) x *= -I;
  return {std::move(dpsi), p.project_driver(c), p.project_constraint(c)};
}

CVector axpy(const CVector &x, cplx a, const CVector &y) {
  CVector r(x);
  for (std::size_t i = 0; i < r.size(); ++i) r[i] += a * y[i];
  return r;
}

}  // namespace

Trajectory evolve(const ControlProblem &problem, const ComplexMatrix &h0, const ComplexMatrix &f0,
                  const CVector &psi0, double t_max, double dt, const EvolveOptions &opts) {
  if (!(dt > 0.0)) throw std::invalid_argument("dt must be positive");
  if (!(t_max >= 0.0)) throw std::invalid_argument("t_max must be nonnegative");
  const std::size_t n = problem.dim();
  if (h0.dim() != n || f0.dim() != n || psi0.size() != n)
    throw DimensionError("initial data dimension differs from problem");
  if (std::abs(norm(psi0) - 1.0) > 1e-10) throw ValidationError("psi0 is not normalized");

  const double scale = std::max(1.0, std::max(h0.max_abs(), f0.max_abs()));
  if (dist(h0, problem.project_driver(h0)) > 1e-8 * scale)
    throw ValidationError("H0 is not in the driver span");
  if (dist(f0, problem.project_constraint(f0)) > 1e-8 * scale)
    throw ValidationError("F0 is not in the constraint span");
  const double trh2_0 = trace_inner(h0, h0);
  if (std::abs(trace_inner(h0, f0)) > 1e-8) throw ValidationError("Tr(H0 F0) is not zero");
  if (std::abs(0.5 * trh2_0 - problem.energy_bound_k()) > 1e-8 * problem.energy_bound_k())
    throw ValidationError("Tr(H0^2)/2 differs from the energy bound k");

  const auto eig_h0 = hermitian_eig(h0).values;
  const auto eig_l0 = hermitian_eig(h0 + f0).values;

  Trajectory traj;
  CVector psi = psi0;
  ComplexMatrix h = h0, f = f0;

  auto diagnose = [&](bool with_spectrum) {
    Diagnostics d;
    d.norm_drift = std::abs(norm(psi) - 1.0);
    d.trh2_drift = std::abs(trace_inner(h, h) - trh2_0) / trh2_0;
    d.trhf = std::abs(trace_inner(h, f));
    if (with_spectrum) {
      d.eig_drift = spectral_drift(eig_h0, hermitian_eig(h).values);
      d.lax_eig_drift = spectral_drift(eig_l0, hermitian_eig(h + f).values);
    }
    return d;
  };

  traj.samples.push_back({0.0, h, f, psi});
  traj.diagnostics.push_back(diagnose(true));

  const auto steps = static_cast<long>(std::ceil(t_max / dt - 1e-9));
  const std::size_t stride = std::max<std::size_t>(1, opts.record_stride);
  double t = 0.0;
  for (long k = 1; k <= steps; ++k) {
    const double step = std::min(dt, t_max - t);
    const Deriv k1 = joint_rhs(problem, psi, h, f);
    const Deriv k2 = joint_rhs(problem, axpy(psi, 0.5 * step, k1.psi), h + (0.5 * step) * k1.h,
                               f + (0.5 * step) * k1.f);
    const Deriv k3 = joint_rhs(problem, axpy(psi, 0.5 * step, k2.psi), h + (0.5 * step) * k2.h,
                               f + (0.5 * step) * k2.f);
    const Deriv k4 =
        joint_rhs(problem, axpy(psi, step, k3.psi), h + step * k3.h, f + step * k3.f);
    for (std::size_t i = 0; i < n; ++i)
      psi[i] += step / 6.0 * (k1.psi[i] + 2.0 * k2.psi[i] + 2.0 * k3.psi[i] + k4.psi[i]);
    h = problem.project_driver(h + (step / 6.0) * (k1.h + 2.0 * k2.h + 2.0 * k3.h + k4.h));
    f = problem.project_constraint(f + (step / 6.0) * (k1.f + 2.0 * k2.f + 2.0 * k3.f + k4.f));
    t = (k == steps) ? t_max : t + step;

    const double nrm = norm(psi);
    if (std::abs(nrm - 1.0) > opts.renorm_threshold)
      for (auto &x : psi) x /= nrm;

    const bool record = (std::size_t(k) % stride == 0) || k == steps;
    Diagnostics d = diagnose(record);
    const double drift = std::max({std::abs(nrm - 1.0), d.trh2_drift, d.trhf, d.lax_eig_drift});
    if (drift > opts.hard_limit || !h.finite() || !f.finite()) {
      traj.aborted = true;
      traj.abort_reason = "invariant drift " + std::to_string(drift) + " at t=" + std::to_string(t);
      logger().error("evolve aborted: {}", traj.abort_reason);
      if (!record) d = diagnose(true);
      traj.samples.push_back({t, h, f, psi});
      traj.diagnostics.push_back(d);
      break;
    }
    if (record) {
      traj.samples.push_back({t, h, f, psi});
      traj.diagnostics.push_back(d);
    }
  }
  logger().debug("evolve: {} samples, t_max={}, dt={}", traj.samples.size(), t_max, dt);
  return traj;
}

ComplexMatrix g_operator(const ComplexMatrix &h, const ComplexMatrix &f, const CVector &psi) {
  require_same_dim(h, f);
  if (psi.size() != h.dim()) throw DimensionError("state dimension differs from operators");
  const ComplexMatrix l = h + f;
  const cplx e = inner(psi, l * psi);
  return l - e.real() * outer(psi, psi);
}

double boundary_residual(const ComplexMatrix &g, const ComplexMatrix &p, double tol) {
  require_same_dim(g, p);
  if (dist(p * p, p) > tol || hermiticity_residual(p) > tol)
    throw ValidationError("P is not a Hermitian projector");
  if (std::abs(p.trace() - 1.0) > tol) throw ValidationError("P is not a rank-one projector");
  return dist(anticommutator(g, p), g);
}

Observables observables(const CVector &psi, const ComplexMatrix &h) {
  if (psi.size() != 3 || h.dim() != 3) throw DimensionError("observables need dimension 3");
  const cplx c1 = psi[0], c2 = psi[1], c3 = psi[2];
  Observables o;
  o.f[0] = c1 * std::conj(c3) - std::conj(c1) * c3;
  o.f[1] = c2 * std::conj(c3) - std::conj(c2) * c3;
  o.f[2] = c1 * std::conj(c2) + std::conj(c1) * c2;
  o.f[3] = c2 * std::conj(c3) + std::conj(c2) * c3;
  o.f[4] = c1 * std::conj(c3) + std::conj(c1) * c3;
  o.f[5] = c1 * std::conj(c2) - std::conj(c1) * c2;
  const CVector hp = h * psi;
  o.expect_h = inner(psi, hp).real();
  o.expect_h2 = inner(hp, hp).real();
  o.delta_e = std::sqrt(std::max(0.0, o.expect_h2 - o.expect_h * o.expect_h));
  for (int j = 0; j < 3; ++j) o.probabilities[j] = std::norm(psi[j]);
  return o;
}

double elliptic_expect_h(double alpha, double beta, const CVector &c) {
  const cplx v = alpha * (std::conj(c[0]) * c[1] + c[0] * std::conj(c[1])) +
                 I * beta * (c[1] * std::conj(c[2]) - std::conj(c[1]) * c[2]);
  return v.real();
}

double elliptic_expect_h2(double alpha, double beta, const CVector &c) {
  const double p1 = std::norm(c[0]), p2 = std::norm(c[1]), p3 = std::norm(c[2]);
  const cplx v = alpha * alpha * (p1 + p2) + beta * beta * (p2 + p3) +
                 I * beta * alpha * (c[0] * std::conj(c[2]) - std::conj(c[0]) * c[2]);
  return v.real();
}

SU2Vector su2_vectorize(const ComplexMatrix &m) {
  if (m.dim() != 2) throw DimensionError("su2_vectorize needs a 2x2 matrix");
  require_hermitian(m, 1e-12, "su2 operand");
  if (std::abs(m.trace()) > 1e-12 * std::max(1.0, m.max_abs()))
    throw ValidationError("su2 operand is not traceless");
  return {std::sqrt(2.0) * m(0, 0), m(0, 1), m(1, 0)};
}

ComplexMatrix su2_devectorize(const SU2Vector &v) {
  const cplx d = v[0] / std::sqrt(2.0);
  return {{d, v[1]}, {v[2], -d}};
}

std::array<ComplexMatrix, 3> su2_control_matrices() {
  const double r = std::sqrt(2.0);
  return {ComplexMatrix{{0.0, 0.0, 0.0}, {0.0, r, 0.0}, {0.0, 0.0, -r}},
          ComplexMatrix{{0.0, -r, 0.0}, {0.0, 0.0, 0.0}, {r, 0.0, 0.0}},
          ComplexMatrix{{0.0, 0.0, r}, {-r, 0.0, 0.0}, {0.0, 0.0, 0.0}}};
}

cplx su2_pair(const SU2Vector &a, const SU2Vector &b) {
  cplx s = 0.0;
  for (int i = 0; i < 3; ++i) s += std::conj(a[i]) * b[i];
  return s;
}

SU2Vector su2_vector_rhs(const SU2Vector &h, const SU2Vector &f) {
  const auto a = su2_control_matrices();
  const CVector hv(h.begin(), h.end());
  SU2Vector out{};
  for (int j = 0; j < 3; ++j) {
    const CVector ah = a[j] * hv;
    cplx s = 0.0;
    for (int i = 0; i < 3; ++i) s += std::conj(f[i]) * ah[i];
    out[j] = s;
  }
  return out;
}

}  // namespace qbrach

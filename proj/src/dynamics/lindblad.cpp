#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include <Eigen/Eigenvalues>
#include <Eigen/SparseLU>

#include "qmech/dynamics.hpp"
#include "qmech/error.hpp"
#include "qmech/kernels.hpp"

namespace qmech {
namespace {

std::span<cplx> flat(CMatrix& m) { return {m.data(), static_cast<std::size_t>(m.size())}; }

// RK4 stepper holding the effective non-Hermitian Hamiltonian and the scaled
// jump operators.
class Stepper {
 public:
  explicit Stepper(const LindbladModel& model) : heff_(model.hamiltonian.data()) {
    const cplx half_i{0.0, 0.5};
    for (const auto& ch : model.channels) {
      if (ch.rate == 0.0) continue;
      CMatrix j = std::sqrt(ch.rate) * ch.op.data();
      heff_ -= half_i * (j.adjoint() * j);
      jumps_.push_back(std::move(j));
    }
    const auto n = heff_.rows();
    k1_.resize(n, n);
    k2_.resize(n, n);
    k3_.resize(n, n);
    k4_.resize(n, n);
    tmp_.resize(n, n);
  }

  void derivative(const CMatrix& rho, CMatrix& out) const {
    const cplx minus_i{0.0, -1.0};
    out.noalias() = minus_i * (heff_ * rho);
    out.noalias() -= minus_i * (rho * heff_.adjoint());
    for (const auto& j : jumps_) out.noalias() += j * rho * j.adjoint();
  }

  void step(CMatrix& rho, double dt) {
    derivative(rho, k1_);
    kernels::cwaxpy(flat(rho), 0.5 * dt, flat(k1_), flat(tmp_));
    derivative(tmp_, k2_);
    kernels::cwaxpy(flat(rho), 0.5 * dt, flat(k2_), flat(tmp_));
    derivative(tmp_, k3_);
    kernels::cwaxpy(flat(rho), dt, flat(k3_), flat(tmp_));
    derivative(tmp_, k4_);
    kernels::caxpy(dt / 6.0, flat(k1_), flat(rho));
    kernels::caxpy(dt / 3.0, flat(k2_), flat(rho));
    kernels::caxpy(dt / 3.0, flat(k3_), flat(rho));
    kernels::caxpy(dt / 6.0, flat(k4_), flat(rho));
  }

 private:
  CMatrix heff_;
  std::vector<CMatrix> jumps_;
  CMatrix k1_, k2_, k3_, k4_, tmp_;
};

struct StepAudit {
  double drift = 0.0;
  double hermiticity = 0.0;
};

// Symmetrize and renormalize after a step; returns what was removed.
StepAudit tidy(CMatrix& rho, double dt) {
  StepAudit audit;
  audit.hermiticity = kernels::hermitize(flat(rho), static_cast<std::size_t>(rho.rows()));
  const double tr = rho.trace().real();
  audit.drift = std::abs(tr - 1.0);
  if (!std::isfinite(tr) || audit.drift > 1e-4) {
    throw Error(ErrorKind::StepInstability, "lindblad: trace moved by " + std::to_string(audit.drift) +
                                                " in one step of " + std::to_string(dt) + " ns; use a smaller step");
  }
  if (rho.cwiseAbs().maxCoeff() > 1.0 + 1e-4) {
    throw Error(ErrorKind::StepInstability,
                "lindblad: density matrix element exceeds 1 after a step of " + std::to_string(dt) + " ns; use a smaller step");
  }
  rho /= tr;
  return audit;
}

SparseMatrix to_sparse(const CMatrix& m) { return m.sparseView(0.0, 0.0); }

SparseMatrix sparse_kron(const SparseMatrix& a, const SparseMatrix& b) {
  std::vector<Eigen::Triplet<cplx>> trips;
  trips.reserve(static_cast<std::size_t>(a.nonZeros() * b.nonZeros()));
  for (int ka = 0; ka < a.outerSize(); ++ka) {
    for (SparseMatrix::InnerIterator ia(a, ka); ia; ++ia) {
      for (int kb = 0; kb < b.outerSize(); ++kb) {
        for (SparseMatrix::InnerIterator ib(b, kb); ib; ++ib) {
          trips.emplace_back(ia.row() * b.rows() + ib.row(), ia.col() * b.cols() + ib.col(), ia.value() * ib.value());
        }
      }
    }
  }
  SparseMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  out.setFromTriplets(trips.begin(), trips.end());
  return out;
}

SparseMatrix sparse_identity(Eigen::Index n) {
  SparseMatrix id(n, n);
  id.setIdentity();
  return id;
}

}  // namespace

void LindbladModel::validate() const {
  if (!hamiltonian.is_hermitian() && hamiltonian.hermiticity_residual() > 1e-12 * std::max(1.0, hamiltonian.max_abs())) {
    throw Error(ErrorKind::ContractViolation, "lindblad: Hamiltonian is not Hermitian");
  }
  if (n_th < 0) throw Error(ErrorKind::InvalidArgument, "lindblad: n_th must be non-negative");
  for (const auto& ch : channels) {
    if (ch.rate < 0) throw Error(ErrorKind::InvalidArgument, "lindblad: channel rates must be non-negative");
    if (!(ch.op.space() == hamiltonian.space())) {
      throw Error(ErrorKind::InvalidDimension, "lindblad: channel acts on a different space");
    }
  }
}

void add_thermal_channels(LindbladModel& model, const Operator& b, double gamma_m, double n_th) {
  if (gamma_m < 0 || n_th < 0) throw Error(ErrorKind::InvalidArgument, "thermal channels: negative rate or occupancy");
  model.n_th = n_th;
  model.channels.push_back({b, gamma_m * (n_th + 1.0)});
  model.channels.push_back({b.adjoint(), gamma_m * n_th});
}

void TimeGrid::validate() const {
  if (!(t1 > t0)) throw Error(ErrorKind::InvalidArgument, "time grid: t1 must exceed t0");
  if (steps < 2) throw Error(ErrorKind::InvalidArgument, "time grid: steps must be >= 2");
}

double default_step(const LindbladModel& model) {
  const RVector e = eig_hermitian(model.hamiltonian.data()).values;
  double omega = e.size() ? e(e.size() - 1) - e(0) : 0.0;
  for (const auto& ch : model.channels) {
    if (ch.rate == 0.0) continue;
    const CMatrix ll = ch.op.data().adjoint() * ch.op.data();
    Eigen::SelfAdjointEigenSolver<CMatrix> es(ll, Eigen::EigenvaluesOnly);
    omega += ch.rate * es.eigenvalues().maxCoeff();
  }
  if (omega <= 0.0) return 0.0;
  return 2.0 * std::numbers::pi / (100.0 * omega);
}

Trajectory lindblad_evolve(const LindbladModel& model, const DensityMatrix& rho0, const TimeGrid& grid,
                           EvolveOptions options) {
  model.validate();
  grid.validate();
  if (!(rho0.space() == model.hamiltonian.space())) {
    throw Error(ErrorKind::InvalidDimension, "lindblad_evolve: state and model spaces differ");
  }
  const double spacing = (grid.t1 - grid.t0) / (grid.steps - 1);
  double dt = options.dt > 0 ? options.dt : default_step(model);
  if (dt <= 0.0 || dt > spacing) dt = spacing;
  const int sub = static_cast<int>(std::ceil(spacing / dt - 1e-9));
  dt = spacing / sub;

  Trajectory traj;
  traj.dt = dt;
  traj.times.reserve(static_cast<std::size_t>(grid.steps));
  traj.states.reserve(static_cast<std::size_t>(grid.steps));

  Stepper stepper(model);
  CMatrix rho = rho0.matrix();
  const bool idle = model.channels.empty() && model.hamiltonian.max_abs() == 0.0;
  for (int k = 0; k < grid.steps; ++k) {
    if (k > 0 && !idle) {
      for (int s = 0; s < sub; ++s) {
        stepper.step(rho, dt);
        const StepAudit audit = tidy(rho, dt);
        traj.max_trace_drift = std::max(traj.max_trace_drift, audit.drift);
        traj.max_hermiticity_fix = std::max(traj.max_hermiticity_fix, audit.hermiticity);
      }
    }
    DensityMatrix state = DensityMatrix::unchecked(rho0.space(), rho);
    if (options.check_positivity) {
      const double lo = state.min_eigenvalue();
      if (lo < -1e-6) {
        throw Error(ErrorKind::PositivityViolation, "lindblad_evolve: eigenvalue " + std::to_string(lo) + " at t = " +
                                                        std::to_string(grid.at(k)) + " ns");
      }
    }
    traj.times.push_back(grid.at(k));
    traj.states.push_back(std::move(state));
  }
  return traj;
}

SparseMatrix liouvillian(const LindbladModel& model) {
  model.validate();
  const Eigen::Index n = model.hamiltonian.dim();
  const SparseMatrix id = sparse_identity(n);
  const cplx i{0.0, 1.0};
  const SparseMatrix h = to_sparse(model.hamiltonian.data());
  SparseMatrix out = -i * sparse_kron(id, h) + i * sparse_kron(SparseMatrix(h.transpose()), id);
  for (const auto& ch : model.channels) {
    if (ch.rate == 0.0) continue;
    const SparseMatrix l = to_sparse(ch.op.data());
    const SparseMatrix ll = to_sparse(ch.op.data().adjoint() * ch.op.data());
    out += ch.rate * (sparse_kron(SparseMatrix(l.conjugate()), l) - 0.5 * sparse_kron(id, ll) -
                      0.5 * sparse_kron(SparseMatrix(ll.transpose()), id));
  }
  out.prune(cplx{0.0, 0.0});
  out.makeCompressed();
  return out;
}

DensityMatrix steady_state(const LindbladModel& model) {
  const Eigen::Index n = model.hamiltonian.dim();
  const SparseMatrix l = liouvillian(model);
  std::vector<Eigen::Triplet<cplx>> trips;
  trips.reserve(static_cast<std::size_t>(l.nonZeros() + n));
  for (int k = 0; k < l.outerSize(); ++k) {
    for (SparseMatrix::InnerIterator it(l, k); it; ++it) {
      if (it.row() != 0) trips.emplace_back(it.row(), it.col(), it.value());
    }
  }
  for (Eigen::Index d = 0; d < n; ++d) trips.emplace_back(0, d * n + d, cplx{1.0, 0.0});
  SparseMatrix a(l.rows(), l.cols());
  a.setFromTriplets(trips.begin(), trips.end());
  a.makeCompressed();

  Eigen::SparseLU<SparseMatrix, Eigen::COLAMDOrdering<int>> lu;
  lu.compute(a);
  if (lu.info() != Eigen::Success) {
    throw Error(ErrorKind::NonConvergence, "steady_state: Liouvillian factorization failed (steady state not unique?)");
  }
  CVector rhs = CVector::Zero(l.rows());
  rhs(0) = 1.0;
  const CVector x = lu.solve(rhs);
  if (lu.info() != Eigen::Success || !x.allFinite()) {
    throw Error(ErrorKind::NonConvergence, "steady_state: solve failed");
  }
  CMatrix rho = Eigen::Map<const CMatrix>(x.data(), n, n);
  kernels::hermitize(flat(rho), static_cast<std::size_t>(n));
  rho /= rho.trace().real();
  return DensityMatrix::unchecked(model.hamiltonian.space(), std::move(rho));
}

DensityMatrix steady_state_by_integration(const LindbladModel& model, const DensityMatrix& rho0, double window,
                                          double tol, double max_time) {
  model.validate();
  if (!(window > 0)) throw Error(ErrorKind::InvalidArgument, "steady_state_by_integration: window must be positive");
  double dt = default_step(model);
  if (dt <= 0.0 || dt > window) dt = window;
  const int sub = static_cast<int>(std::ceil(window / dt - 1e-9));
  dt = window / sub;
  Stepper stepper(model);
  CMatrix rho = rho0.matrix();
  for (double t = 0.0; t < max_time; t += window) {
    const CMatrix before = rho;
    for (int s = 0; s < sub; ++s) {
      stepper.step(rho, dt);
      tidy(rho, dt);
    }
    if ((rho - before).cwiseAbs().maxCoeff() < tol) return DensityMatrix::unchecked(rho0.space(), std::move(rho));
  }
  throw Error(ErrorKind::NonConvergence, "steady_state_by_integration: no convergence within " +
                                             std::to_string(max_time) + " ns");
}

}  // namespace qmech

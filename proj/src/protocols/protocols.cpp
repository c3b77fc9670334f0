#include "qmech/protocols.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "qmech/error.hpp"
#include "qmech/linalg.hpp"

namespace qmech {
namespace {

void guard_amplitude(double beta, int dim, const char* where) {
  if (!(beta * beta + 5.0 * beta < dim)) {
    throw Error(ErrorKind::TruncationRisk, std::string(where) + ": |beta| = " + std::to_string(beta) +
                                               " needs more than " + std::to_string(dim) + " mechanical levels");
  }
}

CMatrix conditional_propagator(double g0, double t, int dim) {
  const SpaceDims space{2, dim};
  const Operator a = destroy(dim);
  const Operator h = embed(pauli(Pauli::z), 0, space) * embed(a + a.adjoint(), 1, space);
  return unitary_propagator(Operator::hermitian(space, (g0 * h).data()), t);
}

CVector qubit_input(QubitInput input) {
  CVector q = CVector::Zero(2);
  switch (input) {
    case QubitInput::g:
      q(0) = 1.0;
      break;
    case QubitInput::e:
      q(1) = 1.0;
      break;
    case QubitInput::plus:
      q(0) = q(1) = 1.0 / std::sqrt(2.0);
      break;
  }
  return q;
}

CVector with_vacuum(const CVector& q, int dim) {
  CVector psi = CVector::Zero(2 * dim);
  psi(0) = q(0);
  psi(dim) = q(1);
  return psi;
}

cplx mean_annihilation(const CVector& mech) {
  cplx acc = 0.0;
  for (Eigen::Index n = 1; n < mech.size(); ++n) acc += std::conj(mech(n - 1)) * std::sqrt(static_cast<double>(n)) * mech(n);
  return acc;
}

}  // namespace

EncodingRun encode(double g0, double t, QubitInput input, int mech_dim) {
  if (t < 0) throw Error(ErrorKind::InvalidArgument, "encode: t must be non-negative");
  const double amp = std::abs(g0 * t);
  guard_amplitude(amp, mech_dim, "encode");
  const CVector psi = conditional_propagator(g0, t, mech_dim) * with_vacuum(qubit_input(input), mech_dim);

  EncodingRun run;
  run.g0 = g0;
  run.t = t;
  run.beta = cplx{0.0, g0 * t};
  run.joint = StateVector::normalized(SpaceDims{2, mech_dim}, psi);
  if (input == QubitInput::plus) {
    const CVector mg = std::sqrt(2.0) * psi.head(mech_dim);
    const CVector me = std::sqrt(2.0) * psi.tail(mech_dim);
    run.branch_overlap = me.dot(mg);
    run.mean_b = 0.5 * (mean_annihilation(mg) + mean_annihilation(me));
    return run;
  }
  const CVector m = input == QubitInput::g ? CVector(psi.head(mech_dim)) : CVector(psi.tail(mech_dim));
  run.mech = StateVector::normalized(SpaceDims{mech_dim}, m);
  run.mean_b = mean_annihilation(run.mech->amplitudes());
  const cplx expected = input == QubitInput::g ? run.beta : -run.beta;
  run.fidelity = fidelity(*run.mech, coherent_state(expected, mech_dim));
  return run;
}

CatPreparation cat_prepare(double g0, double t, Outcome outcome, int mech_dim) {
  const double amp = std::abs(g0 * t);
  guard_amplitude(amp, mech_dim, "cat_prepare");
  CVector psi = conditional_propagator(g0, t, mech_dim) * with_vacuum(qubit_input(QubitInput::plus), mech_dim);
  // exp(-i pi/4 sigma_y) in the (g, e) ordering.
  const double r = 1.0 / std::sqrt(2.0);
  const CVector g = psi.head(mech_dim), e = psi.tail(mech_dim);
  const CVector keep = outcome == Outcome::g ? CVector(r * (g + e)) : CVector(r * (e - g));
  const double p = keep.squaredNorm();
  if (p < 1e-300) throw Error(ErrorKind::ProtocolInvalid, "cat_prepare: outcome has zero probability");
  CatPreparation cat{cplx{0.0, -g0 * t}, outcome, StateVector::normalized(SpaceDims{mech_dim}, keep), p, 0.0};
  cat.parity = expect(parity(mech_dim), cat.mech).real();
  return cat;
}

std::vector<LoopSegment> square_loop(double side_time, bool reversed) {
  const double h = 0.5 * std::numbers::pi;
  std::vector<LoopSegment> plan{{side_time, 0.0}, {side_time, h}, {side_time, 2 * h}, {side_time, 3 * h}};
  if (reversed) {
    // phi -> -phi reflects each leg -i e^{-i phi} through the imaginary axis
    for (auto& seg : plan) seg.phase = seg.phase == 0.0 ? 0.0 : 4 * h - seg.phase;
  }
  return plan;
}

ForceSenseRun force_sense(double eta, double g0, const std::vector<LoopSegment>& plan, int mech_dim,
                          bool joint_check) {
  if (plan.empty()) throw Error(ErrorKind::ProtocolInvalid, "force_sense: empty segment plan");
  const cplx i{0.0, 1.0};
  ForceSenseRun run;
  run.eta = eta;
  run.g0 = g0;
  run.plan = plan;

  // Branch started in g has sigma_z = -1, the one started in e has +1.
  struct Branch {
    double s;
    cplx beta = 0.0;
    double phase = 0.0;
  };
  Branch from_g{-1.0}, from_e{+1.0};
  cplx conditional = 0.0;
  double reach = 0.0;
  for (const auto& seg : plan) {
    if (seg.duration < 0) throw Error(ErrorKind::InvalidArgument, "force_sense: negative segment duration");
    conditional += from_g.s * g0 * std::exp(-i * seg.phase) * seg.duration;
    for (Branch* b : {&from_g, &from_e}) {
      const cplx f = b->s * g0 * std::exp(-i * seg.phase) + eta;
      const cplx end = b->beta - i * f * seg.duration;
      b->phase += std::imag(end * std::conj(b->beta));
      b->beta = end;
      reach = std::max(reach, std::abs(end));
      if (seg.pi_pulse_after) b->s = -b->s;
    }
    run.path_g.push_back(from_g.beta);
    run.path_e.push_back(from_e.beta);
  }
  if (std::abs(conditional) > 1e-9) {
    throw Error(ErrorKind::ProtocolInvalid, "force_sense: conditional displacement does not close (residual " +
                                                std::to_string(std::abs(conditional)) + ")");
  }
  // After an odd number of pi pulses the branch that started in g ends in e.
  const bool swapped = from_g.s > 0;
  const double theta_end_e = swapped ? from_g.phase : from_e.phase;
  const double theta_end_g = swapped ? from_e.phase : from_g.phase;
  run.phi_t = theta_end_e - theta_end_g;
  run.sigma_x = std::cos(run.phi_t);
  run.sigma_y = -std::sin(run.phi_t);
  run.phi_joint = std::numeric_limits<double>::quiet_NaN();

  if (joint_check) {
    guard_amplitude(reach, mech_dim, "force_sense");
    const SpaceDims space{2, mech_dim};
    const Operator a = destroy(mech_dim);
    const Operator sz = embed(pauli(Pauli::z), 0, space);
    const Operator b = embed(a, 1, space);
    const CMatrix flip = embed(pauli(Pauli::x), 0, space).data();
    CVector psi = with_vacuum(qubit_input(QubitInput::plus), mech_dim);
    for (const auto& seg : plan) {
      const Operator cond = std::exp(i * seg.phase) * b + std::exp(-i * seg.phase) * b.adjoint();
      const Operator h = g0 * (sz * cond) + eta * (b + b.adjoint());
      psi = unitary_propagator(Operator::hermitian(space, h.data()), seg.duration) * psi;
      if (seg.pi_pulse_after) psi = flip * psi;
    }
    // <e|rho_q|g> = sum_m psi(e, m) conj(psi(g, m)).
    const cplx coherence = psi.head(mech_dim).dot(psi.tail(mech_dim));
    run.phi_joint = std::arg(coherence);
  }
  return run;
}

void CoolingCheckParams::validate() const {
  if (!(omega_b > 0)) throw Error(ErrorKind::InvalidArgument, "cooling: omega_b must be positive");
  if (gamma < 0 || gamma_m < 0 || n_th < 0 || drive < 0) {
    throw Error(ErrorKind::InvalidArgument, "cooling: rates, drive and n_th must be non-negative");
  }
  if (mech_dim < 2) throw Error(ErrorKind::InvalidDimension, "cooling: mech_dim must be >= 2");
}

CoolingCheck cold_bath_cooling_check(const CoolingCheckParams& p) {
  p.validate();
  const int d = p.mech_dim;
  const SpaceDims space{2, d};
  const Operator b = embed(destroy(d), 1, space);
  const Operator sz = embed(pauli(Pauli::z), 0, space);
  Operator h = (0.5 * p.detuning) * sz + p.omega_b * (b.adjoint() * b) + p.g * (sz * (b + b.adjoint())) +
               (0.5 * p.drive) * embed(pauli(Pauli::x), 0, space);
  LindbladModel model{Operator::hermitian(space, h.data()), {}, 0.0};
  model.channels.push_back({embed(pauli(Pauli::minus), 0, space), p.gamma});
  add_thermal_channels(model, b, p.gamma_m, p.n_th);
  const DensityMatrix rho = steady_state(model);
  const double total = expect(b.adjoint() * b, rho).real();
  const cplx mean = expect(b, rho);
  const double fluct = total - std::norm(mean);
  return {fluct, total, p.n_th, fluct < p.n_th};
}

}  // namespace qmech

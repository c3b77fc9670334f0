#include "qmech/optomech.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include <Eigen/Eigenvalues>
#include <boost/math/tools/minima.hpp>

#include "qmech/error.hpp"
#include "qmech/linalg.hpp"

namespace qmech {
namespace {

constexpr double kPi = std::numbers::pi;

double squared(double x) { return x * x; }

ClassicalSolution solution_for(const OptoParams& p, double n_guess) {
  const cplx i{0.0, 1.0};
  const double k = 2.0 * p.g_single * p.omega_b / (0.25 * squared(p.gamma_m) + squared(p.omega_b));
  const double delta = p.delta_a - p.g_single * k * n_guess;
  const cplx alpha = -i * p.epsilon / (0.5 * p.kappa_total() + i * delta);
  const double n = std::norm(alpha);
  const cplx beta = -i * p.g_single * n / (0.5 * p.gamma_m + i * p.omega_b);
  const cplx da = -(0.5 * p.kappa_total() + i * (p.delta_a + p.g_single * 2.0 * beta.real())) * alpha - i * p.epsilon;
  const cplx db = -(0.5 * p.gamma_m + i * p.omega_b) * beta - i * p.g_single * n;
  return {alpha, beta, std::max(std::abs(da), std::abs(db))};
}

double evolve_population(const LindbladModel& model, DensityMatrix& rho, double t, int index) {
  if (t > 0) {
    const Trajectory tr = lindblad_evolve(model, rho, TimeGrid{0.0, t, 2});
    rho = tr.states.back();
  }
  return rho.matrix()(index, index).real();
}

}  // namespace

void OptoParams::validate() const {
  if (kappa < 0 || kappa1 < 0 || kappa2 < 0 || gamma_m < 0) throw Error(ErrorKind::InvalidArgument, "optomech: rates must be non-negative");
  if (!(omega_b > 0)) throw Error(ErrorKind::InvalidArgument, "optomech: omega_b must be positive");
}

ClassicalSteady classical_steady(const OptoParams& p) {
  p.validate();
  ClassicalSteady out;
  if (p.epsilon == 0.0) {
    out.roots.push_back({0.0, 0.0, 0.0});
    return out;
  }
  const double k = 2.0 * p.g_single * p.omega_b / (0.25 * squared(p.gamma_m) + squared(p.omega_b));
  const double c = p.g_single * k;
  const double a0 = -squared(p.epsilon);
  const double a1 = squared(0.5 * p.kappa_total()) + squared(p.delta_a);
  const double a2 = -2.0 * p.delta_a * c;
  const double a3 = c * c;
  auto f = [&](double n) { return ((a3 * n + a2) * n + a1) * n + a0; };
  auto df = [&](double n) { return (3.0 * a3 * n + 2.0 * a2) * n + a1; };

  std::vector<double> candidates;
  if (a3 == 0.0) {
    if (a1 <= 0.0) throw Error(ErrorKind::NonConvergence, "classical_steady: undamped resonant drive has no fixed point");
    candidates.push_back(-a0 / a1);
  } else {
    Eigen::Matrix3d companion = Eigen::Matrix3d::Zero();
    companion(0, 0) = -a2 / a3;
    companion(0, 1) = -a1 / a3;
    companion(0, 2) = -a0 / a3;
    companion(1, 0) = 1.0;
    companion(2, 1) = 1.0;
    const Eigen::Vector3cd roots = Eigen::EigenSolver<Eigen::Matrix3d>(companion, false).eigenvalues();
    for (const auto& r : roots) {
      if (std::abs(r.imag()) <= 1e-7 * std::max(1.0, std::abs(r)) && r.real() > 0.0) candidates.push_back(r.real());
    }
  }
  std::sort(candidates.begin(), candidates.end());
  std::vector<double> polished;
  for (double n : candidates) {
    for (int it = 0; it < 50; ++it) {
      const double d = df(n);
      if (d == 0.0) break;
      const double step = f(n) / d;
      n -= step;
      if (std::abs(step) <= 1e-15 * std::max(1.0, std::abs(n))) break;
    }
    if (n > 0.0 && (polished.empty() || std::abs(n - polished.back()) > 1e-9 * std::max(1.0, n))) polished.push_back(n);
  }
  if (polished.empty()) throw Error(ErrorKind::NonConvergence, "classical_steady: no positive photon-number root");
  for (double n : polished) out.roots.push_back(solution_for(p, n));
  out.bistable = out.roots.size() > 1;
  out.alpha = out.roots.front().alpha;
  out.beta = out.roots.front().beta;
  return out;
}

LinearizedModel linearize(const OptoParams& params, const ClassicalSteady& steady, double omega_q,
                          double qubit_coupling, LinearFlavor flavor, LinearDims dims) {
  params.validate();
  const SpaceDims space{2, dims.mech, dims.cavity};
  const Operator sz = embed(pauli(Pauli::z), 0, space);
  const Operator sm = embed(pauli(Pauli::minus), 0, space);
  const Operator b = embed(destroy(dims.mech), 1, space);
  const Operator a = embed(destroy(dims.cavity), 2, space);

  LinearizedModel m{steady.alpha, steady.beta, params.g_single * std::abs(steady.alpha),
                    params.delta_a + 2.0 * params.g_single * steady.beta.real(), omega_q, 0.0,
                    std::abs(steady.alpha) < 10.0, Operator::zero(space)};
  const double re2 = 2.0 * steady.beta.real();  // beta + beta^*
  Operator h = params.omega_b * (b.adjoint() * b) + m.delta * (a.adjoint() * a);
  if (flavor == LinearFlavor::longitudinal) {
    m.qubit_frequency = omega_q + 2.0 * qubit_coupling * re2;
    h += (0.5 * m.qubit_frequency) * sz + qubit_coupling * (sz * (b + b.adjoint())) +
         m.g_alpha * ((a + a.adjoint()) * (b + b.adjoint()));
  } else {
    m.dropped_drive = std::abs(qubit_coupling * re2);
    h += (0.5 * omega_q) * sz + qubit_coupling * (b.adjoint() * sm + b * sm.adjoint()) +
         m.g_alpha * (a.adjoint() * b + a * b.adjoint());
  }
  m.hamiltonian = Operator::hermitian(space, h.data());
  return m;
}

namespace {

struct TransduceStages {
  SpaceDims space;
  LindbladModel stage1, stage2;
};

TransduceStages transduce_stages(const TransduceParams& p) {
  if (!(p.g_tm > 0 && p.g_alpha > 0)) throw Error(ErrorKind::InvalidArgument, "transduce: both couplings must be positive");
  if (p.gamma < 0 || p.gamma_m < 0 || p.n_th < 0 || p.kappa < 0) {
    throw Error(ErrorKind::InvalidArgument, "transduce: rates must be non-negative");
  }
  const SpaceDims space{2, 2, 2};
  const Operator sz = embed(pauli(Pauli::z), 0, space);
  const Operator sm = embed(pauli(Pauli::minus), 0, space);
  const Operator b = embed(destroy(2), 1, space);
  const Operator a = embed(destroy(2), 2, space);
  const Operator exchange = b.adjoint() * sm + b * sm.adjoint();
  const Operator splitter = a.adjoint() * b + a * b.adjoint();

  auto losses = [&](LindbladModel& model) {
    model.channels.push_back({sm, p.gamma});
    add_thermal_channels(model, b, p.gamma_m, p.n_th);
    model.channels.push_back({a, p.kappa});
  };
  LindbladModel stage1{Operator::hermitian(space, (p.g_tm * exchange).data()), {}, p.n_th};
  losses(stage1);
  const Operator h2 = (0.5 * p.qubit_detuning) * sz + p.g_alpha * splitter + p.residual_g_tm * exchange;
  LindbladModel stage2{Operator::hermitian(space, h2.data()), {}, p.n_th};
  losses(stage2);
  return {space, std::move(stage1), std::move(stage2)};
}

}  // namespace

TransduceReport transduce(const TransduceParams& p, double t1, double t2) {
  const TransduceStages st = transduce_stages(p);
  const SpaceDims& space = st.space;
  const LindbladModel& stage1 = st.stage1;
  const LindbladModel& stage2 = st.stage2;

  // Basis index of |q, m, c> is 4q + 2m + c.
  constexpr int kG10 = 2, kG01 = 1;
  TransduceReport rep;
  rep.oracle_t1 = kPi / (2.0 * p.g_tm);
  rep.oracle_t2 = kPi / (2.0 * p.g_alpha);
  const int excited[] = {1, 0, 0};
  const DensityMatrix start = DensityMatrix::from_pure(StateVector::basis(space, excited));

  if (t1 <= 0.0) {
    auto loss = [&](double t) {
      DensityMatrix rho = start;
      return -evolve_population(stage1, rho, t, kG10);
    };
    t1 = boost::math::tools::brent_find_minima(loss, 0.5 * rep.oracle_t1, 1.5 * rep.oracle_t1, 30).first;
  }
  DensityMatrix after1 = start;
  rep.stage1_transfer = evolve_population(stage1, after1, t1, kG10);
  if (t2 <= 0.0) {
    auto loss = [&](double t) {
      DensityMatrix rho = after1;
      return -evolve_population(stage2, rho, t, kG01);
    };
    t2 = boost::math::tools::brent_find_minima(loss, 0.5 * rep.oracle_t2, 1.5 * rep.oracle_t2, 30).first;
  }
  DensityMatrix after2 = after1;
  rep.fidelity = evolve_population(stage2, after2, t2, kG01);
  rep.t1 = t1;
  rep.t2 = t2;

  CVector plus = CVector::Zero(8);
  plus(0) = plus(4) = 1.0 / std::sqrt(2.0);
  DensityMatrix rho = DensityMatrix::from_pure(StateVector(space, plus));
  evolve_population(stage1, rho, t1, 0);
  evolve_population(stage2, rho, t2, 0);
  const int keep[] = {2};
  const DensityMatrix optics = partial_trace(rho, keep);
  CVector target(2);
  target << 1.0 / std::sqrt(2.0), -1.0 / std::sqrt(2.0);
  rep.superposition_fidelity = target.dot(optics.matrix() * target).real();
  return rep;
}

TransduceTrace transduce_trace(const TransduceParams& p, double t1, double t2, int samples) {
  if (!(t1 > 0 && t2 > 0)) throw Error(ErrorKind::InvalidArgument, "transduce_trace: stage times must be positive");
  if (samples < 2) throw Error(ErrorKind::InvalidDimension, "transduce_trace: samples must be >= 2");
  const TransduceStages st = transduce_stages(p);
  const Operator pe = embed(pauli(Pauli::plus) * pauli(Pauli::minus), 0, st.space);
  const Operator nb = embed(number(2), 1, st.space);
  const Operator na = embed(number(2), 2, st.space);
  const int excited[] = {1, 0, 0};
  DensityMatrix rho = DensityMatrix::from_pure(StateVector::basis(st.space, excited));
  TransduceTrace out;
  double offset = 0.0;
  for (const auto& [model, t] : {std::pair{&st.stage1, t1}, std::pair{&st.stage2, t2}}) {
    const Trajectory tr = lindblad_evolve(*model, rho, TimeGrid{0.0, t, samples});
    for (std::size_t k = (offset > 0 ? 1 : 0); k < tr.states.size(); ++k) {
      out.t.push_back(offset + tr.times[k]);
      out.qubit.push_back(expect(pe, tr.states[k]).real());
      out.phonons.push_back(expect(nb, tr.states[k]).real());
      out.photons.push_back(expect(na, tr.states[k]).real());
    }
    rho = tr.states.back();
    offset += t;
  }
  return out;
}

double beam_splitter_transfer_time(double g_alpha) {
  if (!(g_alpha > 0)) throw Error(ErrorKind::InvalidArgument, "beam_splitter_transfer_time: coupling must be positive");
  const SpaceDims space{2, 2};
  const Operator b = embed(destroy(2), 0, space);
  const Operator a = embed(destroy(2), 1, space);
  const EigenSystem es = eig_hermitian(Operator::hermitian(space, (g_alpha * (a.adjoint() * b + a * b.adjoint())).data()));
  // |1_m, 0_p> is index 2, |0_m, 1_p> index 1.
  auto loss = [&](double t) { return -std::norm(unitary_propagator(es, t)(1, 2)); };
  const double guess = kPi / (2.0 * g_alpha);
  return boost::math::tools::brent_find_minima(loss, 0.5 * guess, 1.5 * guess, 40).first;
}

ReadoutTrace longitudinal_readout_via_optics(double g_alpha, cplx beta_enc, cplx alpha_ref,
                                             const std::vector<double>& times, int samples, int dim) {
  if (!(g_alpha > 0)) throw Error(ErrorKind::InvalidArgument, "readout: coupling must be positive");
  // The exchange conserves total number; both modes must hold the combined amplitude.
  const double total = std::sqrt(std::norm(beta_enc) + std::norm(alpha_ref));
  if (!(total * total + 5.0 * total < dim)) {
    throw Error(ErrorKind::TruncationRisk, "readout: amplitudes need more than " + std::to_string(dim) + " levels per mode");
  }
  const SpaceDims space{dim, dim};
  const Operator b = embed(destroy(dim), 0, space);
  const Operator a = embed(destroy(dim), 1, space);
  const EigenSystem es = eig_hermitian(Operator::hermitian(space, (g_alpha * (a.adjoint() * b + a * b.adjoint())).data()));
  const CMatrix na = (a.adjoint() * a).data(), nb = (b.adjoint() * b).data();
  const CVector mech = coherent_state(beta_enc, dim).amplitudes();
  const CVector cav = coherent_state(alpha_ref, dim).amplitudes();
  CVector psi0(dim * dim);
  for (int m = 0; m < dim; ++m) psi0.segment(m * dim, dim) = mech(m) * cav;
  const CVector coeff = es.vectors.adjoint() * psi0;

  auto at = [&](double t) {
    const CVector phases = (cplx{0.0, -t} * es.values.cast<cplx>()).array().exp();
    const CVector psi = es.vectors * (phases.asDiagonal() * coeff);
    return std::pair{psi.dot(na * psi).real(), psi.dot(nb * psi).real()};
  };
  ReadoutTrace out;
  for (double t : times) {
    const auto [pa, pb] = at(t);
    out.t.push_back(t);
    out.photons.push_back(pa);
    out.phonons.push_back(pb);
  }
  const double threshold = 0.5 * (std::norm(beta_enc) + std::norm(alpha_ref));
  for (int n = 0; n < samples; ++n) {
    const double t = (2 * n + 1) * kPi / (4.0 * g_alpha);
    const double photons = at(t).first;
    const bool present = photons > threshold;
    out.sample_times.push_back(t);
    out.sample_photons.push_back(photons);
    out.infer_ground.push_back(present == (n % 2 == 0));
  }
  return out;
}

double lorentzian_spectrum(double linewidth, double detuning, double w) {
  if (linewidth <= 0.0) return 0.0;
  return linewidth / (squared(0.5 * linewidth) + squared(detuning + w));
}

CoolingRates cooling_rates(const CoolingRateInputs& in) {
  if (in.qubit_linewidth < 0 || in.kappa < 0) throw Error(ErrorKind::InvalidArgument, "cooling_rates: negative linewidth");
  auto rate = [&](double w) {
    return squared(in.g_l) * lorentzian_spectrum(in.qubit_linewidth, in.qubit_detuning, w) +
           squared(in.g_alpha) * lorentzian_spectrum(in.kappa, in.cavity_detuning, w);
  };
  return {rate(in.omega), rate(-in.omega)};
}

}  // namespace qmech

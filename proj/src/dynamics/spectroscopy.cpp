#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include "qmech/dynamics.hpp"
#include "qmech/error.hpp"
#include "qmech/parallel.hpp"
#include "qmech/units.hpp"

namespace qmech {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

using MeanField = std::array<cplx, 3>;  // <b>, <sigma_->, <sigma_z>

MeanField mean_field_rhs(const SemiclassicalParams& p, double omega_d, const MeanField& y) {
  const cplx i{0.0, 1.0};
  const cplx b = y[0], s = y[1], z = y[2];
  MeanField d;
  d[0] = -(0.5 * p.gamma_m + i * (p.omega_b - omega_d)) * b - i * p.g * s;
  d[1] = -(0.5 * (p.gamma + p.gamma_phi) + i * (p.omega_q - omega_d)) * s + i * p.g * b * z + i * p.omega_r * z;
  d[2] = -p.gamma * (z + 1.0) - 2.0 * i * p.g * b * std::conj(s) + 2.0 * i * p.g * std::conj(b) * s +
         2.0 * i * p.omega_r * (s - std::conj(s));
  return d;
}

MeanField rk4(const SemiclassicalParams& p, double omega_d, const MeanField& y, double dt) {
  auto add = [](const MeanField& a, const MeanField& k, double h) {
    return MeanField{a[0] + h * k[0], a[1] + h * k[1], a[2] + h * k[2]};
  };
  const MeanField k1 = mean_field_rhs(p, omega_d, y);
  const MeanField k2 = mean_field_rhs(p, omega_d, add(y, k1, 0.5 * dt));
  const MeanField k3 = mean_field_rhs(p, omega_d, add(y, k2, 0.5 * dt));
  const MeanField k4 = mean_field_rhs(p, omega_d, add(y, k3, dt));
  MeanField out;
  for (int c = 0; c < 3; ++c) out[c] = y[c] + dt / 6.0 * (k1[c] + 2.0 * k2[c] + 2.0 * k3[c] + k4[c]);
  return out;
}

SpectrumPoint mean_field_point(const SemiclassicalParams& p, double omega_d) {
  const double window = kTwoPi / p.omega_b;
  const double fastest = std::max({std::abs(p.omega_b - omega_d), std::abs(p.omega_q - omega_d), p.g, p.omega_r,
                                   p.gamma, p.gamma_m, p.gamma + p.gamma_phi});
  const double dt_max = kTwoPi / (50.0 * fastest);
  const int sub = std::max(1, static_cast<int>(std::ceil(window / dt_max)));
  const double dt = window / sub;

  MeanField y{cplx{0.0}, cplx{0.0}, cplx{-1.0}};
  const auto periods = static_cast<long>(p.max_periods);
  for (long k = 0; k < periods; ++k) {
    const MeanField before = y;
    for (int s = 0; s < sub; ++s) y = rk4(p, omega_d, y, dt);
    double change = 0.0, size = 0.0;
    for (int c = 0; c < 3; ++c) {
      change = std::max(change, std::abs(y[c] - before[c]));
      size = std::max(size, std::abs(y[c]));
    }
    if (change < 1e-8 * size) return {omega_d, 0.5 * (y[2].real() + 1.0), true};
  }
  return {omega_d, 0.5 * (y[2].real() + 1.0), false};
}

}  // namespace

std::vector<RabiTrace> rabi_experiment(const RabiConfig& cfg) {
  cfg.grid.validate();
  if (cfg.mech_dim < 2) throw Error(ErrorKind::InvalidDimension, "rabi: mech_dim must be >= 2");
  if (!(cfg.omega_b > 0)) throw Error(ErrorKind::InvalidArgument, "rabi: omega_b must be positive");
  if (cfg.g < 0 || cfg.omega_r < 0 || cfg.gamma < 0 || cfg.gamma_phi < 0 || cfg.gamma_m < 0 || cfg.n_th < 0) {
    throw Error(ErrorKind::InvalidArgument, "rabi: couplings, drive and rates must be non-negative");
  }
  std::vector<RabiTrace> out(cfg.fluxes.size());
  parallel_for(cfg.fluxes.size(), cfg.threads, [&](std::size_t idx) {
    const double flux = cfg.fluxes[idx];
    const QubitEigensystem eig = diagonalize(cfg.qubit, BiasPoint{flux, 0.0});
    const double f01 = eig.energies(1) - eig.energies(0);
    const double n_ge = std::abs(matrix_elements(eig, MatrixElement::charge_n, 2)(0, 1));

    const int d = cfg.mech_dim;
    const SpaceDims space{2, d};
    const JCModel jc{units::angular(f01 - cfg.omega_b), 0.0, units::angular(cfg.g * n_ge)};
    const Operator sx = embed(pauli(Pauli::x), 0, space);
    LindbladModel model{jc_hamiltonian(jc, d) + (0.5 * units::angular(cfg.omega_r)) * sx, {}, 0.0};
    const Operator sm = embed(pauli(Pauli::minus), 0, space);
    const Operator pe = sm.adjoint() * sm;
    model.channels.push_back({sm, units::angular(cfg.gamma)});
    model.channels.push_back({pe, units::angular(cfg.gamma_phi)});
    const Operator b = embed(destroy(d), 1, space);
    add_thermal_channels(model, b, units::angular(cfg.gamma_m), cfg.n_th);

    const int start[] = {1, 0};
    const DensityMatrix rho0 = DensityMatrix::from_pure(StateVector::basis(space, start));
    const Trajectory traj = lindblad_evolve(model, rho0, cfg.grid);
    const Operator nb = embed(number(d), 1, space);

    RabiTrace& tr = out[idx];
    tr.flux = flux;
    tr.detuning = f01 - cfg.omega_b;
    tr.coupling = cfg.g * n_ge;
    for (std::size_t k = 0; k < traj.states.size(); ++k) {
      tr.t.push_back(traj.times[k]);
      tr.p_e.push_back(expect(pe, traj.states[k]).real());
      tr.log_neg.push_back(log_negativity(traj.states[k]));
      tr.phonons.push_back(expect(nb, traj.states[k]).real());
    }
  });
  return out;
}

std::vector<SpectrumPoint> semiclassical_spectrum(const SemiclassicalParams& params,
                                                  const std::vector<double>& omega_d, int threads) {
  if (!(params.omega_b > 0)) throw Error(ErrorKind::InvalidArgument, "semiclassical: omega_b must be positive");
  if (params.gamma_m < 0 || params.gamma < 0 || params.gamma_phi < 0 || params.g < 0) {
    throw Error(ErrorKind::InvalidArgument, "semiclassical: rates must be non-negative");
  }
  if (!(params.omega_r > 0) || params.omega_r > params.gamma) {
    throw Error(ErrorKind::InvalidArgument, "semiclassical: probe must satisfy 0 < Omega_R <= gamma (linear response)");
  }
  std::vector<SpectrumPoint> out(omega_d.size());
  parallel_for(omega_d.size(), threads, [&](std::size_t i) { out[i] = mean_field_point(params, omega_d[i]); });
  return out;
}

void NumberSplitParams::validate() const {
  if (gamma < 0 || gamma_b < 0 || omega_r < 0) throw Error(ErrorKind::InvalidArgument, "number_splitting: negative rate");
  if (mech_dim < 2) throw Error(ErrorKind::InvalidDimension, "number_splitting: mech_dim must be >= 2");
  if (epsilon != 0.0 && mech_dim < 8) {
    throw Error(ErrorKind::InvalidDimension, "number_splitting: a driven mode needs mech_dim >= 8");
  }
}

LindbladModel number_splitting_model(const NumberSplitParams& p, double x) {
  p.validate();
  const int d = p.mech_dim;
  const SpaceDims space{2, d};
  const Operator sz = embed(pauli(Pauli::z), 0, space);
  const Operator sx = embed(pauli(Pauli::x), 0, space);
  const Operator b = embed(destroy(d), 1, space);
  const Operator nb = embed(number(d), 1, space);
  Operator h = (0.5 * (p.delta_t - x)) * sz + p.chi * (sz * nb) + p.delta_m * nb + p.epsilon * (b + b.adjoint()) +
               (0.5 * p.omega_r) * sx;
  LindbladModel model{Operator::hermitian(space, h.data()), {}, 0.0};
  model.channels.push_back({embed(pauli(Pauli::minus), 0, space), p.gamma});
  model.channels.push_back({b, p.gamma_b});
  return model;
}

std::vector<SpectrumPoint> number_splitting(const NumberSplitParams& params, const std::vector<double>& x,
                                            int threads) {
  params.validate();
  const SpaceDims space{2, params.mech_dim};
  const Operator sm = embed(pauli(Pauli::minus), 0, space);
  const Operator pe = sm.adjoint() * sm;
  std::vector<SpectrumPoint> out(x.size());
  parallel_for(x.size(), threads, [&](std::size_t i) {
    const DensityMatrix rho = steady_state(number_splitting_model(params, x[i]));
    out[i] = {x[i], expect(pe, rho).real(), true};
  });
  return out;
}

std::vector<Peak> find_peaks(const std::vector<double>& x, const std::vector<double>& y, double rel_prominence) {
  if (x.size() != y.size()) throw Error(ErrorKind::InvalidArgument, "find_peaks: size mismatch");
  std::vector<Peak> peaks;
  const std::size_t n = y.size();
  if (n < 3) return peaks;
  const double top = *std::max_element(y.begin(), y.end());
  const double floor = *std::min_element(y.begin(), y.end());
  const double threshold = rel_prominence * (top - floor);
  for (std::size_t i = 1; i + 1 < n; ++i) {
    if (!(y[i] > y[i - 1] && y[i] >= y[i + 1])) continue;
    double left = y[i], right = y[i];
    for (std::size_t j = i; j-- > 0;) {
      if (y[j] > y[i]) break;
      left = std::min(left, y[j]);
    }
    for (std::size_t j = i + 1; j < n; ++j) {
      if (y[j] > y[i]) break;
      right = std::min(right, y[j]);
    }
    if (y[i] - std::max(left, right) < threshold) continue;
    const double curv = y[i - 1] - 2.0 * y[i] + y[i + 1];
    double shift = 0.0;
    if (curv < 0.0) shift = 0.5 * (y[i - 1] - y[i + 1]) / curv;
    const double h = shift >= 0.0 ? x[i + 1] - x[i] : x[i] - x[i - 1];
    peaks.push_back({x[i] + shift * h, y[i] - 0.25 * (y[i - 1] - y[i + 1]) * shift});
  }
  return peaks;
}

}  // namespace qmech

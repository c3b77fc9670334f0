#pragma once

#include <vector>

#include <Eigen/SparseCore>

#include "qmech/circuit.hpp"
#include "qmech/operator.hpp"
#include "qmech/qubit_mech.hpp"

// Every frequency and rate in this header is angular (rad/ns) unless a field
// says GHz; times are in ns.
namespace qmech {

struct Channel {
  Operator op;
  double rate;  // D[op] enters with this prefactor
};

struct LindbladModel {
  Operator hamiltonian;
  std::vector<Channel> channels;
  double n_th = 0.0;  // bookkeeping only; thermal channels are explicit

  void validate() const;
};

/// Appends gamma_m (n_th + 1) D[b] and gamma_m n_th D[b^dag].
void add_thermal_channels(LindbladModel& model, const Operator& b, double gamma_m, double n_th);

struct TimeGrid {
  double t0 = 0.0;
  double t1 = 1.0;
  int steps = 2;  // stored samples, endpoints included

  double at(int k) const { return t0 + (t1 - t0) * k / (steps - 1); }
  void validate() const;
};

struct EvolveOptions {
  double dt = 0.0;  // 0 picks 2 pi / (100 omega_max)
  bool check_positivity = true;
};

struct Trajectory {
  std::vector<double> times;
  std::vector<DensityMatrix> states;
  double dt = 0.0;
  double max_trace_drift = 0.0;     // largest raw |Tr - 1| change in one step
  double max_hermiticity_fix = 0.0; // largest residual removed by symmetrizing
};

/// Fixed-step RK4 on d rho/dt = -i[H, rho] + sum rate D[L] rho. The state is
/// symmetrized and renormalized after every step. Throws StepInstability
/// when one step moves the trace by more than 1e-4 or an element exceeds 1,
/// PositivityViolation when a stored state has an eigenvalue below -1e-6.
Trajectory lindblad_evolve(const LindbladModel& model, const DensityMatrix& rho0, const TimeGrid& grid,
                           EvolveOptions options = {});

/// Default step for `model`.
double default_step(const LindbladModel& model);

using SparseMatrix = Eigen::SparseMatrix<cplx>;

/// Column-stacked superoperator: vec(L rho) = liouvillian(model) vec(rho).
SparseMatrix liouvillian(const LindbladModel& model);

/// Unique steady state from a sparse LU solve of the Liouvillian with one row
/// replaced by the trace condition.
DensityMatrix steady_state(const LindbladModel& model);

/// Steady state by integrating from rho0 until the largest element change over
/// `window` ns falls below `tol`. Throws NonConvergence after `max_time` ns.
DensityMatrix steady_state_by_integration(const LindbladModel& model, const DensityMatrix& rho0, double window,
                                          double tol = 1e-10, double max_time = 1e6);

// Rabi experiment. Inputs are cyclic (GHz) here because they mix circuit
// parameters with rates; conversion to angular happens inside.
struct RabiConfig {
  TransmonParams qubit;
  std::vector<double> fluxes;
  double omega_b = 4.5;   // GHz
  double g = 0.001;       // g_T, GHz
  double omega_r = 1e-5;  // drive, GHz
  double gamma = 0.0;
  double gamma_phi = 0.0;
  double gamma_m = 0.0;
  double n_th = 0.0;
  int mech_dim = 4;
  TimeGrid grid;
  int threads = 1;
};

struct RabiTrace {
  double flux = 0;
  double detuning = 0;  // f01 - omega_b, GHz
  double coupling = 0;  // g |n_ge|, GHz
  std::vector<double> t, p_e, log_neg, phonons;
};

/// Resonant-frame JC model (Delta/2) sigma_z + G(sigma_+ b + sigma_- b^dag) +
/// (Omega_R/2) sigma_x with G = 2 pi g |n_ge|, started in |e, 0>.
std::vector<RabiTrace> rabi_experiment(const RabiConfig& config);

struct SemiclassicalParams {
  double omega_b = 0, omega_q = 0;
  double g = 0;
  double gamma_m = 0, gamma = 0, gamma_phi = 0;
  double omega_r = 0;  // probe amplitude
  double max_periods = 2e5;
};

struct SpectrumPoint {
  double x;
  double p_e;
  bool converged;
};

/// Steady-state P_e of the three mean-field equations for each drive
/// frequency in `omega_d`.
std::vector<SpectrumPoint> semiclassical_spectrum(const SemiclassicalParams& params,
                                                  const std::vector<double>& omega_d, int threads = 1);

struct NumberSplitParams {
  double chi = 0;
  double delta_t = 0;
  double delta_m = 0;  // mechanical drive detuning; chi puts it on resonance with the g-shifted mode
  double epsilon = 0;
  double omega_r = 0;
  double gamma = 0, gamma_b = 0;
  int mech_dim = 20;

  void validate() const;
};

/// Dispersive Hamiltonian with the probe detuning x entering as
/// Delta_T - x, so that Fock peak n sits at x = Delta_T + 2 chi n.
LindbladModel number_splitting_model(const NumberSplitParams& params, double x);

std::vector<SpectrumPoint> number_splitting(const NumberSplitParams& params, const std::vector<double>& x,
                                            int threads = 1);

struct Peak {
  double x;
  double height;
};

/// Local maxima whose prominence exceeds `rel_prominence` of the tallest
/// value, refined by a parabola through the three neighbouring samples.
std::vector<Peak> find_peaks(const std::vector<double>& x, const std::vector<double>& y,
                             double rel_prominence = 0.05);

}  // namespace qmech

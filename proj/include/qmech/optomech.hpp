#pragma once

#include <vector>

#include "qmech/dynamics.hpp"
#include "qmech/operator.hpp"

// Angular units (rad/ns) throughout; times in ns.
namespace qmech {

struct OptoParams {
  double delta_a = 0;    // omega_a - omega_d
  double g_single = 0;   // single-photon optomechanical coupling
  double kappa = 0;
  double kappa1 = 0;     // input port; the field decays at (kappa + kappa1)/2
  double kappa2 = 0;     // intrinsic noise port, bookkeeping only
  double epsilon = 0;    // drive amplitude in the rotating frame
  double omega_b = 0;
  double gamma_m = 0;

  double kappa_total() const { return kappa + kappa1; }
  void validate() const;
};

struct ClassicalSolution {
  cplx alpha;
  cplx beta;
  double residual;
};

struct ClassicalSteady {
  cplx alpha;               // lowest-occupation root
  cplx beta;
  bool bistable = false;    // more than one physical root
  std::vector<ClassicalSolution> roots;
};

/// Fixed points of the classical cavity/mechanics pair. The photon number n
/// solves n [(kappa_t/2)^2 + (Delta_a - g K n)^2] = eps^2 with
/// K = 2 g omega_b / (gamma^2/4 + omega_b^2).
ClassicalSteady classical_steady(const OptoParams& params);

enum class LinearFlavor { longitudinal, transverse_rwa };

struct LinearDims {
  int mech = 6;
  int cavity = 6;
};

struct LinearizedModel {
  cplx alpha;
  cplx beta;
  double g_alpha = 0;          // g |alpha|
  double delta = 0;            // Delta_a + g (beta + beta^*)
  double qubit_frequency = 0;  // after the classical mechanical shift
  double dropped_drive = 0;    // |G_tm (beta + beta^*)|, transverse flavor
  bool weak_enhancement = false;  // |alpha| < 10
  Operator hamiltonian;        // qubit (x) mechanics (x) cavity
};

/// Longitudinal: (W/2) sz + w_b b^dag b + G_L (b + b^dag) sz + Delta a^dag a
///   + G_a (a + a^dag)(b + b^dag), with W = omega_q + 2 G_L (beta + beta^*).
/// Transverse RWA: (omega_q/2) sz + w_b b^dag b + Delta a^dag a
///   + G_tm (b^dag s- + b s+) + G_a (a^dag b + a b^dag).
LinearizedModel linearize(const OptoParams& params, const ClassicalSteady& steady, double omega_q,
                          double qubit_coupling, LinearFlavor flavor, LinearDims dims = {});

struct TransduceParams {
  double g_tm = 0;        // qubit-mechanics exchange
  double g_alpha = 0;     // mechanics-optics beam splitter (stage 2)
  double qubit_detuning = 0;  // stage 2 qubit offset
  double residual_g_tm = 0;   // exchange left on during stage 2
  double gamma = 0;       // qubit decay
  double gamma_m = 0;
  double n_th = 0;
  double kappa = 0;       // total optical decay
};

struct TransduceReport {
  double t1 = 0, t2 = 0;
  double stage1_transfer = 0;      // P(g, 1_m, 0_p) after stage 1
  double fidelity = 0;             // P(g, 0_m, 1_p) from |e, 0, 0>
  double superposition_fidelity = 0;  // |+> mapped to (|0> - |1>)/sqrt2 on the optics
  double oracle_t1 = 0, oracle_t2 = 0;  // pi / (2 G)
};

/// Double swap in the frame rotating at omega_b with one excitation per mode.
/// Stage times <= 0 are found by maximizing the transfer numerically.
TransduceReport transduce(const TransduceParams& params, double t1 = 0.0, double t2 = 0.0);

struct TransduceTrace {
  std::vector<double> t, qubit, phonons, photons;  // P(e), <b^dag b>, <a^dag a>
};

/// Populations through both stages, `samples` points per stage (stage 2
/// starts at t1).
TransduceTrace transduce_trace(const TransduceParams& params, double t1, double t2, int samples);

/// Time of the first maximum of |1_m, 0_p> -> |0_m, 1_p> under the beam
/// splitter alone, found numerically.
double beam_splitter_transfer_time(double g_alpha);

struct ReadoutTrace {
  std::vector<double> t, photons, phonons;
  std::vector<double> sample_times;     // (2n+1) pi / (4 G_a)
  std::vector<double> sample_photons;
  std::vector<bool> infer_ground;       // per sample, from presence or absence of photons
};

/// Mechanics and cavity exchange coherent amplitudes under G_a (a^dag b + a b^dag),
/// starting from |beta_enc>_m (x) |alpha_ref>_c.
ReadoutTrace longitudinal_readout_via_optics(double g_alpha, cplx beta_enc, cplx alpha_ref,
                                             const std::vector<double>& times, int samples = 4, int dim = 16);

struct CoolingRates {
  double gamma_minus = 0;
  double gamma_plus = 0;
  bool cools() const { return gamma_minus > gamma_plus; }
};

/// Lorentzian noise spectrum S(w) = k / ((k/2)^2 + (detuning + w)^2), with the
/// detuning defined as drive minus resonance (negative is red).
double lorentzian_spectrum(double linewidth, double detuning, double w);

struct CoolingRateInputs {
  double g_l = 0, g_alpha = 0;
  double qubit_linewidth = 0, qubit_detuning = 0;
  double kappa = 0, cavity_detuning = 0;
  double omega = 0;  // mechanical frequency
};

/// Gamma_- = G^2 S_zz(Omega) + G_a^2 S_aa(Omega), Gamma_+ at -Omega.
CoolingRates cooling_rates(const CoolingRateInputs& in);

}  // namespace qmech

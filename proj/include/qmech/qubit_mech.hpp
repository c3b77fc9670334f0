#pragma once

#include <optional>
#include <utility>

#include "qmech/circuit.hpp"

namespace qmech {

struct MechMode {
  double omega_b = 4.5;  // GHz
  int dim = 10;
  double x_zpf = 0.0;    // m
  double mass = 0.0;     // kg; when set and x_zpf is zero, x_zpf is derived

  double zpf() const;
  void validate() const;
};

/// sqrt(hbar / (2 m omega)) with omega = 2 pi f, f in GHz.
double zero_point_amplitude(double mass_kg, double omega_b_ghz);

struct ChargeCoupling {
  double g = 0.001;  // GHz
};

/// 4 E_C C_m x_zpf / e, with C_m the gate-charge derivative in C/m.
double charge_coupling_from_physical(double e_c_ghz, double c_m, double x_zpf);

struct FluxCoupling {
  double b_field = 0.0;  // T
  double length = 0.0;   // m
  double beta0 = 1.0;
  double phi_ac = 0.0;   // Phi_ac / Phi_0
  double omega_ac = 0.0; // GHz
  // Single-phonon scale in GHz (alpha x_0 for the transmon, g_Phi for the
  // fluxonium). Overrides the physical inputs when present.
  std::optional<double> g_direct;
};

/// pi E_J^max beta0 B l / Phi_0, in GHz per metre.
double flux_alpha(double e_j_max, const FluxCoupling& coupling);

enum class FluxFlavor { transmon_cos_theta, fluxonium_theta };

struct FluxCouplingReport {
  double g_single = 0;  // g_Tm or g_Phi, GHz
  double g_long = 0;    // (g/2)(theta_ee - theta_gg)
  double g_trans = 0;   // g theta_eg
  CMatrix theta;        // 2x2 projected elements
};

struct FluxCoupledModel {
  Operator hamiltonian;
  FluxCouplingReport report;
};

/// omega_b b^dag b + sum E_i |i><i| + g sum n_ij |i><j| (b + b^dag) on
/// [levels, mech.dim], energies measured from E_0. Counter-rotating terms kept.
Operator charge_coupled_hamiltonian(const QubitEigensystem& eig, const MechMode& mech,
                                    const ChargeCoupling& coupling, int levels = 2);

FluxCoupledModel flux_coupled_hamiltonian(const QubitEigensystem& eig, const MechMode& mech,
                                          const FluxCoupling& coupling, FluxFlavor flavor);

/// omega_b b^dag b + (omega_q/2) sigma_z + G sigma_z (b + b^dag).
Operator longitudinal_hamiltonian(double omega_q, double omega_b, double g, int mech_dim);

/// omega_b b^dag b + (omega_q/2) sigma_z + G sigma_x (b + b^dag).
Operator transverse_hamiltonian(double omega_q, double omega_b, double g, int mech_dim);

/// Jaynes-Cummings model. Frequencies in whatever unit the caller uses for
/// time evolution (rad/ns for jc_evolve).
struct JCModel {
  double omega_q = 0;
  double omega_b = 0;
  double g = 0;

  double delta() const { return omega_q - omega_b; }
};

/// (omega_q/2) sigma_z + omega_b b^dag b + G(sigma_+ b + sigma_- b^dag).
Operator jc_hamiltonian(const JCModel& model, int mech_dim);

struct JCDressed {
  double e_plus;
  double e_minus;
  double theta;  // mixing angle, tan(2 theta) = 2G sqrt(n+1) / Delta
};

/// E_pm = omega_b (n+1) +- Omega_n. The block of jc_hamiltonian sits lower
/// by omega_b/2; only E_+ - E_- is convention free.
JCDressed jc_dressed(const JCModel& model, int n);

struct JCAmplitudes {
  cplx excited;  // on |e, n>
  cplx ground;   // on |g, n+1>
};

/// Closed-form evolution of the n-th JC doublet in the frame rotating at
/// omega_b, where the common phase exp(-i omega_b (n + 1/2) t) is removed.
JCAmplitudes jc_evolve(const JCModel& model, int n, JCAmplitudes initial, double t);

struct ModulatedCoupling {
  double g0;    // GHz
  bool valid;   // 2 omega_b / |G_0| > 100
};

/// G_0 = (pi phi_ac / 2) (alpha x_0) (theta_ee - theta_gg). Throws
/// InvalidArgument when pi phi_ac >= 0.1.
ModulatedCoupling modulated_longitudinal_coupling(const FluxCoupling& coupling, double e_j_max, double x_zpf,
                                                  const CMatrix& theta, double omega_b);

struct AvoidedCrossing {
  double flux_resonance;  // root of f01 - omega_b
  double flux_gap;        // flux of the smallest dressed splitting
  double gap;             // GHz
  double n_ge;            // |<g|n|e>| at flux_gap
  double expected;        // 2 g |n_ge|
};

/// Lowest two dressed transitions of the charge-coupled model (E_1 - E_0,
/// E_2 - E_0) at one flux.
std::pair<double, double> dressed_branches(const QubitSpec& qubit, double flux, const MechMode& mech,
                                           const ChargeCoupling& coupling);

/// Locates the f01 = omega_b crossing in [flux_lo, flux_hi] and minimizes the
/// dressed splitting around it.
AvoidedCrossing find_avoided_crossing(const QubitSpec& qubit, const MechMode& mech,
                                      const ChargeCoupling& coupling, double flux_lo = 0.0, double flux_hi = 0.5);

/// Largest shift of the four lowest two-level dressed energies when level 2 of
/// the qubit is added to the charge-coupled model. Each energy is paired with
/// the nearest level of the larger model.
double level_two_leakage(const QubitEigensystem& eig, const MechMode& mech, const ChargeCoupling& coupling);

}  // namespace qmech

#pragma once

#include <optional>
#include <vector>

#include "qmech/dynamics.hpp"
#include "qmech/operator.hpp"

// Rates, couplings and forces are angular (rad/ns); times in ns.
namespace qmech {

enum class QubitInput { g, e, plus };

struct EncodingRun {
  double g0 = 0;
  double t = 0;
  cplx beta;                           // amplitude of the |g> branch, +i G0 t
  std::optional<StateVector> mech;     // for g or e input
  std::optional<StateVector> joint;    // qubit (x) mechanics, always set
  cplx mean_b;                         // <b> of the mechanical state
  double fidelity = 0;                 // to the analytic coherent state (g/e input)
  cplx branch_overlap;                 // <mech_e | mech_g> from the joint state (plus input)
};

/// Applies exp(-i G0 t sigma_z (b + b^dag)) to |q, 0>. Throws TruncationRisk
/// unless |G0 t|^2 + 5|G0 t| < mech_dim.
EncodingRun encode(double g0, double t, QubitInput input, int mech_dim = 40);

enum class Outcome { g, e };

struct CatPreparation {
  cplx beta;             // -i G0 t
  Outcome outcome;
  StateVector mech;
  double probability;
  double parity;
};

/// Prepares |+>, encodes, rotates by exp(-i pi/4 sigma_y) and projects the
/// qubit. Outcome g leaves |beta> + |-beta>, outcome e leaves |beta> - |-beta>.
CatPreparation cat_prepare(double g0, double t, Outcome outcome, int mech_dim = 40);

struct LoopSegment {
  double duration = 0;       // ns
  double phase = 0;          // coupling phase phi: G0 sigma_z (e^{i phi} b + e^{-i phi} b^dag)
  bool pi_pulse_after = false;
};

struct ForceSenseRun {
  double eta = 0;
  double g0 = 0;
  std::vector<LoopSegment> plan;
  double phi_t = 0;
  double sigma_x = 0;
  double sigma_y = 0;
  double phi_joint = 0;            // from the full joint unitary (nan when skipped)
  std::vector<cplx> path_g, path_e;  // branch amplitudes at segment ends, labelled by starting state
};

/// Conditional-displacement loop with a common force eta (b + b^dag), qubit
/// starting in |+>. Throws ProtocolInvalid unless the conditional part of the
/// displacement closes to 1e-9.
ForceSenseRun force_sense(double eta, double g0, const std::vector<LoopSegment>& plan, int mech_dim = 40,
                          bool joint_check = true);

/// Square loop of side g0 * side_time starting at the origin. `reversed` gives
/// the mirror-image loop, which encloses the same area with the opposite sense.
/// Retracing the same square backwards would not do: a uniform force couples
/// to the time-weighted centroid of the loop, which retracing leaves alone.
std::vector<LoopSegment> square_loop(double side_time, bool reversed = false);

struct CoolingCheckParams {
  double omega_b = 0;
  double g = 0;          // longitudinal coupling G
  double drive = 0;      // qubit Rabi amplitude Omega
  double detuning = 0;   // qubit minus drive frequency; +omega_b is the red sideband
  double gamma = 0;
  double gamma_m = 0;
  double n_th = 0;
  int mech_dim = 40;

  void validate() const;
};

struct CoolingCheck {
  double n_ss;         // <b^dag b> - |<b>|^2
  double n_total;      // <b^dag b>
  double n_th;
  bool cooled;         // n_ss < n_th
};

/// Steady state of (Delta/2) sigma_z + omega_b b^dag b + G sigma_z (b + b^dag)
/// + (Omega/2) sigma_x with qubit decay and a thermal mechanical bath.
CoolingCheck cold_bath_cooling_check(const CoolingCheckParams& params);

}  // namespace qmech

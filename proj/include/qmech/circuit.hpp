#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "qmech/linalg.hpp"
#include "qmech/operator.hpp"

namespace qmech {

/// Split-junction transmon / Cooper-pair box. Energies E/h in GHz.
struct TransmonParams {
  double e_j1 = 5.0;
  double e_j2 = 5.0;
  double e_c = 0.5;
  int n_charge = 20;  // charge states m in [-n_charge, n_charge]

  double e_j_max() const { return e_j1 + e_j2; }
  double asymmetry() const { return (e_j1 - e_j2) / (e_j1 + e_j2); }
  void validate() const;
};

struct FluxoniumParams {
  double e_j = 10.0;
  double e_c = 1.2;
  double e_l = 1.0;
  int n_fock = 60;

  void validate() const;
};

/// Flux in units of the flux quantum, gate charge in Cooper pairs.
struct BiasPoint {
  double flux = 0.0;
  double gate_charge = 0.0;
};

using QubitSpec = std::variant<TransmonParams, FluxoniumParams>;

enum class Basis { charge, oscillator };

struct QubitEigensystem {
  RVector energies;  // ascending, GHz
  CMatrix states;    // columns in the construction basis
  QubitSpec params;
  BiasPoint bias;
  Basis basis = Basis::charge;

  // Operators in the construction basis. `theta` is empty for charge builds.
  CMatrix charge;
  CMatrix theta;
  CMatrix cos_theta;

  int size() const { return static_cast<int>(energies.size()); }
};

double ej_eff(const TransmonParams& params, double flux);

/// 4E_C (m - n_g)^2 on the diagonal, -E_J/2 on the first off-diagonals.
Operator cpb_hamiltonian(double e_c, double ej_eff_value, double gate_charge, int n_charge);

struct ChargeQubitLevels {
  double e_el;   // 4E_C(1 - 2 n_g)
  double omega;  // qubit splitting
};

ChargeQubitLevels charge_qubit_levels(double e_c, double ej_eff_value, double gate_charge);

struct TransmonLevel {
  double energy;     // E_n
  double omega_t;    // sqrt(8 E_C E_J)
  double alpha;      // -E_C
  double alpha_r;    // alpha / (E_1 - E_0)
  bool soft_warning; // E_J/E_C below 50
};

/// Closed-form transmon level. Throws DegenerateJunction when E_J^eff <= 0
/// at this flux and InvalidArgument below E_J/E_C = 20.
TransmonLevel transmon_perturbative(const TransmonParams& params, double flux, int n);

/// Phase, charge, cos and sin matrices of the fluxonium oscillator basis.
struct FluxoniumOperators {
  CMatrix theta;
  CMatrix charge;
  CMatrix cos_theta;
  CMatrix sin_theta;
};

FluxoniumOperators fluxonium_operators(const FluxoniumParams& params);

/// 4E_C n^2 + E_L theta^2/2 - E_J cos(theta + 2 pi flux).
Operator fluxonium_hamiltonian(const FluxoniumParams& params, double flux);

/// Same circuit with the flux moved into the inductive term:
/// 4E_C n^2 + E_L (theta - 2 pi flux)^2 / 2 - E_J cos(theta).
Operator fluxonium_hamiltonian_quadratic_gauge(const FluxoniumParams& params, double flux);

/// Throws TruncationRisk if any of the lowest four levels moves by more than
/// `tol` GHz when n_fock grows by 10.
void check_fluxonium_truncation(const FluxoniumParams& params, double flux, double tol = 1e-6);

struct DiagonalizeOptions {
  bool truncation_guard = false;  // fluxonium only
};

QubitEigensystem diagonalize(const QubitSpec& qubit, const BiasPoint& bias, DiagonalizeOptions options = {});

enum class SweepAxis { flux, gate_charge };

struct SweepTable {
  SweepAxis axis = SweepAxis::flux;
  std::vector<double> parameter;
  std::vector<std::vector<double>> energies;     // [point][level]
  std::vector<std::vector<double>> transitions;  // [point][level-1], E_i - E_0

  int levels() const { return energies.empty() ? 0 : static_cast<int>(energies.front().size()); }
};

/// Lowest `k` levels at each point of `grid`; points are independent and are
/// spread over `threads` workers.
SweepTable spectrum_sweep(const QubitSpec& qubit, const BiasPoint& base, SweepAxis axis,
                          const std::vector<double>& grid, int k, int threads = 1);

enum class MatrixElement { charge_n, phase_theta, cos_theta };

CMatrix matrix_elements(const QubitEigensystem& eig, MatrixElement which, int levels);

}  // namespace qmech

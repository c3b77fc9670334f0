#pragma once

#include "qmech/circuit.hpp"

namespace qmech {

/// Readout cavity coupled through the qubit charge operator. GHz.
struct CavitySpec {
  double omega = 7.0;
  double g = 0.05;
};

struct DispersiveShifts {
  RVector lamb;             // eta_i = sum_l chi_il
  RVector chi;              // chi_i = sum_l (chi_il - chi_li)
  Eigen::MatrixXd pairwise; // chi_il
  int levels_used = 0;

  /// chi_e - chi_g, the state-dependent cavity pull.
  double two_chi() const { return chi(1) - chi(0); }
};

/// Second-order shifts chi_il = g^2 |n_il|^2 / (E_i - E_l - omega). Throws
/// NearResonance naming the pair when a denominator is within 1e-6 GHz.
DispersiveShifts sw_shifts(const QubitEigensystem& eig, const CavitySpec& cavity, int level_cutoff);

/// Cavity pull E(i, 1) - E(i, 0) - omega per qubit level from exact
/// diagonalization of the qubit-cavity Hamiltonian with counter-rotating
/// terms. Dressed states are identified by their largest bare overlap.
RVector exact_shift_oracle(const QubitEigensystem& eig, const CavitySpec& cavity, int photon_cutoff,
                           int level_cutoff);

}  // namespace qmech

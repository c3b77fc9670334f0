#pragma once

#include <span>
#include <vector>

#include "qmech/operator.hpp"

namespace qmech {

/// Truncated annihilation operator, a[n-1, n] = sqrt(n). Requires dim >= 2.
Operator destroy(int dim);
Operator create(int dim);
Operator number(int dim);

enum class Pauli { x, y, z, plus, minus };

/// 2x2 Pauli-type matrices in the (|g>, |e>) ordering with sigma_z|g> = -|g>.
/// plus = |e><g|, minus = |g><e|.
Operator pauli(Pauli which);

/// Lifts `op` into slot `slot` of `space`, identity elsewhere.
Operator embed(const Operator& op, int slot, const SpaceDims& space);

/// Kronecker product, a's slots first.
Operator kron(const Operator& a, const Operator& b);

struct EigenSystem {
  RVector values;   // ascending
  CMatrix vectors;  // columns; largest-magnitude component real positive
};

/// Hermitian eigendecomposition. Throws ContractViolation for an operator
/// that is not flagged Hermitian and fails the residual check.
EigenSystem eig_hermitian(const Operator& op);
EigenSystem eig_hermitian(const CMatrix& matrix);

/// exp(-i H t) for Hermitian H, through its eigendecomposition.
CMatrix unitary_propagator(const EigenSystem& h, double t);
CMatrix unitary_propagator(const Operator& h, double t);

/// exp(beta b^dagger - beta^* b) on a truncated Fock space. Throws
/// TruncationRisk unless |beta|^2 + 5|beta| < dim.
Operator displacement(cplx beta, int dim);

/// Fock amplitudes of the coherent state |beta>, truncated and renormalized.
StateVector coherent_state(cplx beta, int dim);

/// Photon-number parity (-1)^n.
Operator parity(int dim);

DensityMatrix partial_trace(const DensityMatrix& rho, std::span<const int> keep);

/// Bipartition: slots [0, cut) versus [cut, slots).
struct Bipartition {
  int cut = 1;
};

/// Partial transpose on the second party.
CMatrix partial_transpose(const DensityMatrix& rho, Bipartition cut);

/// E_N = log2(2N + 1), N = |sum of negative eigenvalues of rho^T_B|.
double log_negativity(const DensityMatrix& rho, Bipartition cut = {});

/// Rectangular phase-space grid, alpha = x + i p.
struct PhaseGrid {
  double x_min = -4, x_max = 4;
  double p_min = -4, p_max = 4;
  int nx = 81, np = 81;

  double x(int i) const;
  double p(int j) const;
  double cell_area() const;
};

struct WignerField {
  PhaseGrid grid;
  std::vector<double> values;  // row-major in p, then x: values[j * nx + i]
  double integral = 0;         // sum(W) * dx dp
  bool accuracy_warning = false;

  double at(int i, int j) const { return values[static_cast<std::size_t>(j) * grid.nx + i]; }
};

/// W(alpha) = (2/pi) Tr[rho D(alpha) Pi D(alpha)^dagger] on `grid`, evaluated
/// by the Laguerre recurrence over Fock indices. `accuracy_warning` is set when
/// the integral deviates from 1 by more than 1e-3 (grid too small for the state).
WignerField wigner(const DensityMatrix& rho, const PhaseGrid& grid);

/// Point value by the same recurrence, for spot checks.
double wigner_at(const DensityMatrix& rho, cplx alpha);

}  // namespace qmech

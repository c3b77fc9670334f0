#include "qmech/circuit.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "qmech/error.hpp"
#include "qmech/parallel.hpp"

namespace qmech {
namespace {

constexpr double kPi = std::numbers::pi;

// Extra oscillator states used when forming cos/sin of the phase, so that the
// retained block is close to the projection of the exact operator.
int padded_fock(int n_fock) { return 2 * n_fock + 20; }

CMatrix ladder(int dim) { return destroy(dim).data(); }

CMatrix theta_matrix(const FluxoniumParams& p, int dim) {
  const double ell = std::pow(8.0 * p.e_c / p.e_l, 0.25);
  const CMatrix a = ladder(dim);
  return (ell / std::sqrt(2.0)) * (a + a.adjoint());
}

CMatrix charge_matrix(const FluxoniumParams& p, int dim) {
  const double inv = std::pow(p.e_l / (8.0 * p.e_c), 0.25);
  const CMatrix a = ladder(dim);
  return cplx{0.0, inv / std::sqrt(2.0)} * (a.adjoint() - a);
}

CMatrix harmonic_part(const FluxoniumParams& p, int dim) {
  const double omega = std::sqrt(8.0 * p.e_c * p.e_l);
  CMatrix h = CMatrix::Zero(dim, dim);
  for (int n = 0; n < dim; ++n) h(n, n) = omega * (n + 0.5);
  return h;
}

}  // namespace

void TransmonParams::validate() const {
  if (!(e_j1 > 0 && e_j2 > 0 && e_c > 0)) {
    throw Error(ErrorKind::InvalidArgument, "transmon: e_j1, e_j2, e_c must be positive");
  }
  if (n_charge < 5) throw Error(ErrorKind::InvalidDimension, "transmon: n_charge must be >= 5");
}

void FluxoniumParams::validate() const {
  if (!(e_j > 0 && e_c > 0 && e_l > 0)) {
    throw Error(ErrorKind::InvalidArgument, "fluxonium: e_j, e_c, e_l must be positive");
  }
  if (n_fock < 20) throw Error(ErrorKind::InvalidDimension, "fluxonium: n_fock must be >= 20");
}

double ej_eff(const TransmonParams& params, double flux) {
  const double c = std::cos(kPi * flux);
  const double s = std::sin(kPi * flux);
  const double d = params.asymmetry();
  return params.e_j_max() * std::sqrt(c * c + d * d * s * s);
}

Operator cpb_hamiltonian(double e_c, double ej_eff_value, double gate_charge, int n_charge) {
  if (n_charge < 5) throw Error(ErrorKind::InvalidDimension, "cpb_hamiltonian: n_charge must be >= 5");
  const int dim = 2 * n_charge + 1;
  CMatrix h = CMatrix::Zero(dim, dim);
  for (int k = 0; k < dim; ++k) {
    const double m = k - n_charge;
    h(k, k) = 4.0 * e_c * (m - gate_charge) * (m - gate_charge);
    if (k + 1 < dim) {
      h(k, k + 1) = -0.5 * ej_eff_value;
      h(k + 1, k) = -0.5 * ej_eff_value;
    }
  }
  return Operator::hermitian(SpaceDims{dim}, std::move(h));
}

ChargeQubitLevels charge_qubit_levels(double e_c, double ej_eff_value, double gate_charge) {
  const double e_el = 4.0 * e_c * (1.0 - 2.0 * gate_charge);
  return {e_el, std::hypot(ej_eff_value, e_el)};
}

TransmonLevel transmon_perturbative(const TransmonParams& params, double flux, int n) {
  if (n < 0) throw Error(ErrorKind::InvalidArgument, "transmon_perturbative: level index must be >= 0");
  const double ej = ej_eff(params, flux);
  if (!(ej > 1e-12 * params.e_j_max())) {
    throw Error(ErrorKind::DegenerateJunction, "transmon_perturbative: E_J^eff vanishes at flux " + std::to_string(flux));
  }
  const double ratio = ej / params.e_c;
  if (ratio < 20.0) {
    throw Error(ErrorKind::InvalidArgument,
                "transmon_perturbative: E_J/E_C = " + std::to_string(ratio) + " is below the transmon regime (20)");
  }
  const double ec = params.e_c;
  const double omega_t = std::sqrt(8.0 * ec * ej);
  auto level = [&](int k) {
    return omega_t * (k + 0.5) - ej - (ec / 12.0) * (6.0 * k * k + 6.0 * k + 3.0);
  };
  const double alpha = -ec;
  return {level(n), omega_t, alpha, alpha / (level(1) - level(0)), ratio < 50.0};
}

FluxoniumOperators fluxonium_operators(const FluxoniumParams& params) {
  params.validate();
  const int n = params.n_fock;
  const int big = padded_fock(n);
  const EigenSystem th = eig_hermitian(theta_matrix(params, big));
  const CVector c = th.values.array().cos().cast<cplx>();
  const CVector s = th.values.array().sin().cast<cplx>();
  FluxoniumOperators ops;
  ops.theta = theta_matrix(params, n);
  ops.charge = charge_matrix(params, n);
  ops.cos_theta = (th.vectors * c.asDiagonal() * th.vectors.adjoint()).topLeftCorner(n, n);
  ops.sin_theta = (th.vectors * s.asDiagonal() * th.vectors.adjoint()).topLeftCorner(n, n);
  ops.cos_theta = 0.5 * (ops.cos_theta + ops.cos_theta.adjoint()).eval();
  ops.sin_theta = 0.5 * (ops.sin_theta + ops.sin_theta.adjoint()).eval();
  return ops;
}

namespace {

Operator fluxonium_from_ops(const FluxoniumParams& p, const FluxoniumOperators& ops, double flux) {
  const double phi = 2.0 * kPi * flux;
  CMatrix h = harmonic_part(p, p.n_fock) -
              p.e_j * (std::cos(phi) * ops.cos_theta - std::sin(phi) * ops.sin_theta);
  return Operator::hermitian(SpaceDims{p.n_fock}, std::move(h));
}

}  // namespace

Operator fluxonium_hamiltonian(const FluxoniumParams& params, double flux) {
  return fluxonium_from_ops(params, fluxonium_operators(params), flux);
}

Operator fluxonium_hamiltonian_quadratic_gauge(const FluxoniumParams& params, double flux) {
  const FluxoniumOperators ops = fluxonium_operators(params);
  const double phi = 2.0 * kPi * flux;
  const int n = params.n_fock;
  CMatrix h = harmonic_part(params, n) - params.e_l * phi * ops.theta +
              0.5 * params.e_l * phi * phi * CMatrix::Identity(n, n) - params.e_j * ops.cos_theta;
  return Operator::hermitian(SpaceDims{n}, std::move(h));
}

void check_fluxonium_truncation(const FluxoniumParams& params, double flux, double tol) {
  FluxoniumParams bigger = params;
  bigger.n_fock += 10;
  const RVector a = eig_hermitian(fluxonium_hamiltonian(params, flux)).values;
  const RVector b = eig_hermitian(fluxonium_hamiltonian(bigger, flux)).values;
  const double shift = (a.head(4) - b.head(4)).cwiseAbs().maxCoeff();
  if (shift > tol) {
    throw Error(ErrorKind::TruncationRisk, "fluxonium: lowest levels move by " + std::to_string(shift) +
                                               " GHz when n_fock grows by 10; raise n_fock");
  }
}

QubitEigensystem diagonalize(const QubitSpec& qubit, const BiasPoint& bias, DiagonalizeOptions options) {
  QubitEigensystem out;
  out.params = qubit;
  out.bias = bias;
  if (const auto* t = std::get_if<TransmonParams>(&qubit)) {
    t->validate();
    const Operator h = cpb_hamiltonian(t->e_c, ej_eff(*t, bias.flux), bias.gate_charge, t->n_charge);
    const EigenSystem es = eig_hermitian(h);
    out.energies = es.values;
    out.states = es.vectors;
    out.basis = Basis::charge;
    const int dim = h.dim();
    out.charge = CMatrix::Zero(dim, dim);
    out.cos_theta = CMatrix::Zero(dim, dim);
    for (int k = 0; k < dim; ++k) {
      out.charge(k, k) = static_cast<double>(k - t->n_charge);
      if (k + 1 < dim) {
        out.cos_theta(k, k + 1) = 0.5;
        out.cos_theta(k + 1, k) = 0.5;
      }
    }
    return out;
  }
  const auto& f = std::get<FluxoniumParams>(qubit);
  const FluxoniumOperators ops = fluxonium_operators(f);
  if (options.truncation_guard) check_fluxonium_truncation(f, bias.flux);
  const EigenSystem es = eig_hermitian(fluxonium_from_ops(f, ops, bias.flux));
  out.energies = es.values;
  out.states = es.vectors;
  out.basis = Basis::oscillator;
  out.charge = ops.charge;
  out.theta = ops.theta;
  out.cos_theta = ops.cos_theta;
  return out;
}

SweepTable spectrum_sweep(const QubitSpec& qubit, const BiasPoint& base, SweepAxis axis,
                          const std::vector<double>& grid, int k, int threads) {
  const bool transmon = std::holds_alternative<TransmonParams>(qubit);
  const int basis = transmon ? 2 * std::get<TransmonParams>(qubit).n_charge + 1
                             : std::get<FluxoniumParams>(qubit).n_fock;
  if (k < 2 || k > basis / 2) {
    throw Error(ErrorKind::InvalidArgument, "spectrum_sweep: need 2 <= k <= " + std::to_string(basis / 2));
  }
  if (axis == SweepAxis::gate_charge && !transmon) {
    throw Error(ErrorKind::InvalidArgument, "spectrum_sweep: gate-charge sweeps need a charge-basis qubit");
  }

  SweepTable table;
  table.axis = axis;
  table.parameter = grid;
  table.energies.assign(grid.size(), {});
  table.transitions.assign(grid.size(), {});

  // The fluxonium phase functions do not depend on bias; build them once.
  std::optional<FluxoniumOperators> ops;
  if (!transmon) ops = fluxonium_operators(std::get<FluxoniumParams>(qubit));

  parallel_for(grid.size(), threads, [&](std::size_t i) {
    BiasPoint bias = base;
    (axis == SweepAxis::flux ? bias.flux : bias.gate_charge) = grid[i];
    RVector e;
    if (transmon) {
      const auto& t = std::get<TransmonParams>(qubit);
      e = eig_hermitian(cpb_hamiltonian(t.e_c, ej_eff(t, bias.flux), bias.gate_charge, t.n_charge)).values;
    } else {
      e = eig_hermitian(fluxonium_from_ops(std::get<FluxoniumParams>(qubit), *ops, bias.flux)).values;
    }
    std::vector<double> levels(e.data(), e.data() + k);
    std::vector<double> trans(static_cast<std::size_t>(k - 1));
    for (int j = 1; j < k; ++j) trans[static_cast<std::size_t>(j - 1)] = levels[static_cast<std::size_t>(j)] - levels[0];
    table.energies[i] = std::move(levels);
    table.transitions[i] = std::move(trans);
  });
  return table;
}

CMatrix matrix_elements(const QubitEigensystem& eig, MatrixElement which, int levels) {
  if (levels < 1 || levels > eig.size()) {
    throw Error(ErrorKind::InvalidArgument, "matrix_elements: levels out of range");
  }
  const CMatrix* op = nullptr;
  switch (which) {
    case MatrixElement::charge_n:
      op = &eig.charge;
      break;
    case MatrixElement::phase_theta:
      if (eig.basis == Basis::charge || eig.theta.size() == 0) {
        throw Error(ErrorKind::UnsupportedBasis, "matrix_elements: the phase operator is not defined in the charge basis");
      }
      op = &eig.theta;
      break;
    case MatrixElement::cos_theta:
      op = &eig.cos_theta;
      break;
  }
  const auto v = eig.states.leftCols(levels);
  CMatrix m = v.adjoint() * (*op) * v;
  return 0.5 * (m + m.adjoint());
}

}  // namespace qmech

#include "qmech/qubit_mech.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include <boost/math/tools/minima.hpp>
#include <boost/math/tools/roots.hpp>

#include "qmech/error.hpp"
#include "qmech/units.hpp"

namespace qmech {
namespace {

constexpr double kPi = std::numbers::pi;

Operator qubit_projector_sum(const CMatrix& block, const SpaceDims& space, int mech_dim) {
  const Operator q(SpaceDims{static_cast<int>(block.rows())}, block);
  const Operator a = destroy(mech_dim);
  return embed(q, 0, space) * embed(a + a.adjoint(), 1, space);
}

}  // namespace

double zero_point_amplitude(double mass_kg, double omega_b_ghz) {
  if (!(mass_kg > 0 && omega_b_ghz > 0)) throw Error(ErrorKind::InvalidArgument, "zero_point_amplitude: need mass, frequency > 0");
  return std::sqrt(units::kHbar / (2.0 * mass_kg * units::kTwoPi * omega_b_ghz * 1e9));
}

double MechMode::zpf() const {
  if (x_zpf > 0) return x_zpf;
  if (mass > 0) return zero_point_amplitude(mass, omega_b);
  return 0.0;
}

void MechMode::validate() const {
  if (!(omega_b > 0)) throw Error(ErrorKind::InvalidArgument, "mech: omega_b must be positive");
  if (dim < 2) throw Error(ErrorKind::InvalidDimension, "mech: dim must be >= 2");
  if (x_zpf < 0 || mass < 0) throw Error(ErrorKind::InvalidArgument, "mech: x_zpf and mass must be non-negative");
}

double charge_coupling_from_physical(double e_c_ghz, double c_m, double x_zpf) {
  constexpr double kElectron = 1.602176634e-19;
  return 4.0 * e_c_ghz * c_m * x_zpf / kElectron;
}

double flux_alpha(double e_j_max, const FluxCoupling& coupling) {
  return kPi * e_j_max * coupling.beta0 * coupling.b_field * coupling.length / units::kFluxQuantum;
}

Operator charge_coupled_hamiltonian(const QubitEigensystem& eig, const MechMode& mech,
                                    const ChargeCoupling& coupling, int levels) {
  mech.validate();
  if (levels < 2 || levels > eig.size()) throw Error(ErrorKind::InvalidArgument, "charge_coupled_hamiltonian: bad level count");
  const SpaceDims space{levels, mech.dim};
  CMatrix hq = CMatrix::Zero(levels, levels);
  for (int i = 0; i < levels; ++i) hq(i, i) = eig.energies(i) - eig.energies(0);
  const CMatrix n = matrix_elements(eig, MatrixElement::charge_n, levels);
  Operator h = embed(Operator::hermitian(SpaceDims{levels}, hq), 0, space) +
               mech.omega_b * embed(number(mech.dim), 1, space) +
               coupling.g * qubit_projector_sum(n, space, mech.dim);
  return Operator::hermitian(space, h.data());
}

FluxCoupledModel flux_coupled_hamiltonian(const QubitEigensystem& eig, const MechMode& mech,
                                          const FluxCoupling& coupling, FluxFlavor flavor) {
  mech.validate();
  if (coupling.b_field < 0 || coupling.length < 0 || coupling.beta0 < 0) {
    throw Error(ErrorKind::InvalidArgument, "flux coupling inputs must be non-negative");
  }
  FluxCouplingReport rep;
  double scale = 0.0;
  if (flavor == FluxFlavor::transmon_cos_theta) {
    const auto* t = std::get_if<TransmonParams>(&eig.params);
    if (!t) throw Error(ErrorKind::InvalidArgument, "flux_coupled_hamiltonian: transmon flavor needs a transmon");
    scale = coupling.g_direct ? *coupling.g_direct : flux_alpha(t->e_j_max(), coupling) * mech.zpf();
    rep.g_single = scale * std::sin(kPi * eig.bias.flux);
    rep.theta = matrix_elements(eig, MatrixElement::cos_theta, 2);
  } else {
    const auto* f = std::get_if<FluxoniumParams>(&eig.params);
    if (!f) throw Error(ErrorKind::InvalidArgument, "flux_coupled_hamiltonian: fluxonium flavor needs a fluxonium");
    rep.g_single = coupling.g_direct ? *coupling.g_direct
                                     : units::kTwoPi * f->e_l * coupling.b_field * coupling.length * mech.zpf() /
                                           units::kFluxQuantum;
    rep.theta = matrix_elements(eig, MatrixElement::phase_theta, 2);
  }
  rep.g_long = 0.5 * rep.g_single * (rep.theta(1, 1).real() - rep.theta(0, 0).real());
  rep.g_trans = rep.g_single * std::abs(rep.theta(1, 0));

  const SpaceDims space{2, mech.dim};
  CMatrix hq = CMatrix::Zero(2, 2);
  hq(1, 1) = eig.energies(1) - eig.energies(0);
  Operator h = embed(Operator::hermitian(SpaceDims{2}, hq), 0, space) +
               mech.omega_b * embed(number(mech.dim), 1, space) +
               rep.g_single * qubit_projector_sum(rep.theta, space, mech.dim);
  return {Operator::hermitian(space, h.data()), rep};
}

Operator longitudinal_hamiltonian(double omega_q, double omega_b, double g, int mech_dim) {
  const SpaceDims space{2, mech_dim};
  const Operator a = destroy(mech_dim);
  const Operator sz = embed(pauli(Pauli::z), 0, space);
  Operator h = omega_b * embed(number(mech_dim), 1, space) + (0.5 * omega_q) * sz +
               g * (sz * embed(a + a.adjoint(), 1, space));
  return Operator::hermitian(space, h.data());
}

Operator transverse_hamiltonian(double omega_q, double omega_b, double g, int mech_dim) {
  const SpaceDims space{2, mech_dim};
  const Operator a = destroy(mech_dim);
  Operator h = omega_b * embed(number(mech_dim), 1, space) + (0.5 * omega_q) * embed(pauli(Pauli::z), 0, space) +
               g * (embed(pauli(Pauli::x), 0, space) * embed(a + a.adjoint(), 1, space));
  return Operator::hermitian(space, h.data());
}

Operator jc_hamiltonian(const JCModel& model, int mech_dim) {
  const SpaceDims space{2, mech_dim};
  const Operator b = embed(destroy(mech_dim), 1, space);
  const Operator sp = embed(pauli(Pauli::plus), 0, space);
  Operator h = (0.5 * model.omega_q) * embed(pauli(Pauli::z), 0, space) + model.omega_b * embed(number(mech_dim), 1, space) +
               model.g * (sp * b + sp.adjoint() * b.adjoint());
  return Operator::hermitian(space, h.data());
}

JCDressed jc_dressed(const JCModel& model, int n) {
  if (n < 0) throw Error(ErrorKind::InvalidArgument, "jc_dressed: n must be >= 0");
  const double coupling = model.g * std::sqrt(n + 1.0);
  const double omega_n = std::hypot(coupling, 0.5 * model.delta());
  const double theta = 0.5 * std::atan2(2.0 * coupling, model.delta());
  return {model.omega_b * (n + 1) + omega_n, model.omega_b * (n + 1) - omega_n, theta};
}

JCAmplitudes jc_evolve(const JCModel& model, int n, JCAmplitudes initial, double t) {
  const double norm = std::norm(initial.excited) + std::norm(initial.ground);
  if (std::abs(norm - 1.0) > 1e-10) throw Error(ErrorKind::InvalidArgument, "jc_evolve: initial amplitudes not normalized");
  const JCDressed d = jc_dressed(model, n);
  const double omega_n = 0.5 * (d.e_plus - d.e_minus);
  const double c = std::cos(d.theta), s = std::sin(d.theta);
  // |+> = cos|e,n> + sin|g,n+1>, |-> = -sin|e,n> + cos|g,n+1>.
  const cplx c_plus = c * initial.excited + s * initial.ground;
  const cplx c_minus = -s * initial.excited + c * initial.ground;
  const cplx ph_plus = std::exp(cplx{0.0, -omega_n * t});
  const cplx ph_minus = std::conj(ph_plus);
  return {c_plus * ph_plus * c - c_minus * ph_minus * s, c_plus * ph_plus * s + c_minus * ph_minus * c};
}

ModulatedCoupling modulated_longitudinal_coupling(const FluxCoupling& coupling, double e_j_max, double x_zpf,
                                                  const CMatrix& theta, double omega_b) {
  if (coupling.phi_ac < 0) throw Error(ErrorKind::InvalidArgument, "modulated coupling: phi_ac must be non-negative");
  if (kPi * coupling.phi_ac >= 0.1) {
    throw Error(ErrorKind::InvalidArgument, "modulated coupling: pi*phi_ac = " + std::to_string(kPi * coupling.phi_ac) +
                                                " is not small (limit 0.1)");
  }
  const double scale = coupling.g_direct ? *coupling.g_direct : flux_alpha(e_j_max, coupling) * x_zpf;
  const double g0 = 0.5 * kPi * coupling.phi_ac * scale * (theta(1, 1).real() - theta(0, 0).real());
  const bool valid = g0 == 0.0 || 2.0 * omega_b / std::abs(g0) > 100.0;
  return {g0, valid};
}

std::pair<double, double> dressed_branches(const QubitSpec& qubit, double flux, const MechMode& mech,
                                           const ChargeCoupling& coupling) {
  const QubitEigensystem eig = diagonalize(qubit, BiasPoint{flux, 0.0});
  const RVector e = eig_hermitian(charge_coupled_hamiltonian(eig, mech, coupling, 2)).values;
  return {e(1) - e(0), e(2) - e(0)};
}

AvoidedCrossing find_avoided_crossing(const QubitSpec& qubit, const MechMode& mech,
                                      const ChargeCoupling& coupling, double flux_lo, double flux_hi) {
  auto detuning = [&](double flux) {
    const RVector e = diagonalize(qubit, BiasPoint{flux, 0.0}).energies;
    return e(1) - e(0) - mech.omega_b;
  };
  const double f_lo = detuning(flux_lo), f_hi = detuning(flux_hi);
  if (f_lo * f_hi > 0) {
    throw Error(ErrorKind::InvalidArgument, "find_avoided_crossing: f01 does not cross omega_b in the flux window");
  }
  boost::uintmax_t iters = 200;
  const auto root = boost::math::tools::toms748_solve(detuning, flux_lo, flux_hi, f_lo, f_hi,
                                                      boost::math::tools::eps_tolerance<double>(50), iters);
  const double flux_res = 0.5 * (root.first + root.second);

  auto gap = [&](double flux) {
    const auto [lo, hi] = dressed_branches(qubit, flux, mech, coupling);
    return hi - lo;
  };
  const double half = std::min({0.02, flux_res - flux_lo, flux_hi - flux_res});
  const auto best = boost::math::tools::brent_find_minima(gap, flux_res - half, flux_res + half, 40);

  const QubitEigensystem eig = diagonalize(qubit, BiasPoint{best.first, 0.0});
  const double n_ge = std::abs(matrix_elements(eig, MatrixElement::charge_n, 2)(0, 1));
  return {flux_res, best.first, best.second, n_ge, 2.0 * coupling.g * n_ge};
}

double level_two_leakage(const QubitEigensystem& eig, const MechMode& mech, const ChargeCoupling& coupling) {
  const RVector two = eig_hermitian(charge_coupled_hamiltonian(eig, mech, coupling, 2)).values;
  const RVector three = eig_hermitian(charge_coupled_hamiltonian(eig, mech, coupling, 3)).values;
  double worst = 0.0;
  for (int k = 0; k < 4; ++k) worst = std::max(worst, (three.array() - two(k)).abs().minCoeff());
  return worst;
}

}  // namespace qmech

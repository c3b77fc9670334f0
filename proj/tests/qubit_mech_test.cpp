#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "qmech/error.hpp"
#include "qmech/qubit_mech.hpp"
#include "qmech/units.hpp"
#include "oracles.hpp"

using namespace qmech;

namespace {
constexpr double kPi = std::numbers::pi;

const TransmonParams kFig6{5, 5, 0.5, 20};

// Independent bisection for f01(flux) = omega_b on [0, 0.5].
double bisect_resonance(double omega_b) {
  double lo = 0.0, hi = 0.499;
  auto f = [&](double x) {
    const auto e = diagonalize(kFig6, {x, 0});
    return e.energies(1) - e.energies(0) - omega_b;
  };
  for (int i = 0; i < 60; ++i) {
    const double mid = 0.5 * (lo + hi);
    (f(lo) * f(mid) <= 0 ? hi : lo) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

TEST(QubitMech, ZeroPointAmplitude) {
  const double m = 1e-15, f = 0.01;
  EXPECT_NEAR(zero_point_amplitude(m, f), std::sqrt(units::kHbar / (2 * m * units::kTwoPi * f * 1e9)), 1e-25);
  MechMode mode{f, 10, 0.0, m};
  EXPECT_NEAR(mode.zpf(), zero_point_amplitude(m, f), 1e-25);
}

TEST(QubitMech, ChargeCoupledIsTwoLevelBlock) {
  const auto e = diagonalize(kFig6, {0.2, 0});
  const MechMode mech{4.5, 5};
  const Operator h = charge_coupled_hamiltonian(e, mech, {0.001});
  EXPECT_EQ(h.space(), (SpaceDims{2, 5}));
  const double n01 = std::abs(matrix_elements(e, MatrixElement::charge_n, 2)(0, 1));
  // <g,1| H |e,0>
  EXPECT_NEAR(std::abs(h.data()(1, 5)), 0.001 * n01, 1e-12);
  EXPECT_NEAR(h.data()(5, 5).real(), e.energies(1) - e.energies(0), 1e-12);
}

TEST(QubitMech, JcDressedMatchesBlockDiagonalization) {
  const JCModel m{5.0, 4.6, 0.07};
  const Operator h = jc_hamiltonian(m, 8);
  for (int n = 0; n < 5; ++n) {
    // |e,n> index 8 + n, |g,n+1> index n + 1
    CMatrix block(2, 2);
    block << h.data()(8 + n, 8 + n), h.data()(8 + n, n + 1), h.data()(n + 1, 8 + n), h.data()(n + 1, n + 1);
    const auto es = eig_hermitian(block);
    const JCDressed d = jc_dressed(m, n);
    EXPECT_NEAR(es.values(1), d.e_plus - 0.5 * m.omega_b, 1e-12);
    EXPECT_NEAR(es.values(0), d.e_minus - 0.5 * m.omega_b, 1e-12);
  }
}

TEST(QubitMech, JcEvolveMatchesPropagator) {
  const JCModel m{1.3, 1.0, 0.2};
  const int dim = 6, n = 2;
  const double t = 3.7;
  const CMatrix u = unitary_propagator(jc_hamiltonian(m, dim), t);
  const cplx frame = std::exp(cplx(0, m.omega_b * (n + 0.5) * t));
  const JCAmplitudes a = jc_evolve(m, n, {1.0, 0.0}, t);
  EXPECT_NEAR(std::abs(a.excited - frame * u(dim + n, dim + n)), 0.0, 1e-12);
  EXPECT_NEAR(std::abs(a.ground - frame * u(n + 1, dim + n)), 0.0, 1e-12);
}

TEST(QubitMech, ResonantVacuumRabi) {
  const double g = 0.3;
  const JCModel m{2.0, 2.0, g};
  const JCAmplitudes full = jc_evolve(m, 0, {1.0, 0.0}, kPi / (2 * g));
  EXPECT_NEAR(std::norm(full.ground), 1.0, 1e-12);
  EXPECT_NEAR(std::abs(full.ground - cplx(0, -1)), 0.0, 1e-12);
  const JCAmplitudes half = jc_evolve(m, 0, {1.0, 0.0}, kPi / (4 * g));
  EXPECT_NEAR(std::abs(half.excited - 1 / std::sqrt(2.0)), 0.0, 1e-12);
  EXPECT_NEAR(std::abs(half.ground - cplx(0, -1 / std::sqrt(2.0))), 0.0, 1e-12);
}

TEST(QubitMech, AvoidedCrossingFig6) {
  const MechMode mech{4.5, 4};
  const AvoidedCrossing a = find_avoided_crossing(kFig6, mech, {0.001});
  EXPECT_NEAR(a.flux_resonance, bisect_resonance(4.5), 1e-6);
  EXPECT_NEAR(a.flux_gap, a.flux_resonance, 2e-3);
  EXPECT_LT(std::abs(a.gap - a.expected) / a.expected, 0.02);
  const AvoidedCrossing b = find_avoided_crossing(kFig6, mech, {0.0005});
  EXPECT_LT(std::abs(b.gap / a.gap - 0.5) / 0.5, 0.01);
}

TEST(QubitMech, LevelTwoLeakageSmallForTransmon) {
  const auto e = diagonalize(kFig6, {0.3, 0});
  EXPECT_LT(level_two_leakage(e, {4.5, 4}, {0.001}), 1e-3);
}

TEST(QubitMech, FluxoniumFlavorsByFlux) {
  const FluxoniumParams p;
  FluxCoupling c;
  c.g_direct = 0.01;
  const MechMode mech{8.5, 4};
  const auto lon = flux_coupled_hamiltonian(diagonalize(p, {0.3, 0}), mech, c, FluxFlavor::fluxonium_theta);
  const auto tr = flux_coupled_hamiltonian(diagonalize(p, {0.5, 0}), mech, c, FluxFlavor::fluxonium_theta);
  EXPECT_GT(std::abs(tr.report.g_trans), 10 * std::abs(tr.report.g_long));
  EXPECT_GT(std::abs(lon.report.g_long), std::abs(lon.report.g_trans));
  EXPECT_THROW(flux_coupled_hamiltonian(diagonalize(p, {0.3, 0}), mech, c, FluxFlavor::transmon_cos_theta), Error);
}

TEST(QubitMech, LongitudinalAndTransverseForms) {
  const Operator hl = longitudinal_hamiltonian(1.0, 0.5, 0.1, 4);
  const Operator sz = embed(pauli(Pauli::z), 0, {2, 4});
  EXPECT_LT(commutator(hl, sz).max_abs(), 1e-14);
  const Operator ht = transverse_hamiltonian(1.0, 0.5, 0.1, 4);
  EXPECT_GT(commutator(ht, sz).max_abs(), 0.1);
}

TEST(QubitMech, ModulatedCouplingLinearInAmplitude) {
  const auto f = diagonalize(FluxoniumParams{}, {0.3, 0});
  const CMatrix th = matrix_elements(f, MatrixElement::phase_theta, 2);
  FluxCoupling c;
  c.g_direct = 0.002;
  c.phi_ac = 0.01;
  const auto a = modulated_longitudinal_coupling(c, 10, 1e-15, th, 4.5);
  c.phi_ac = 0.02;
  const auto b = modulated_longitudinal_coupling(c, 10, 1e-15, th, 4.5);
  EXPECT_DOUBLE_EQ(b.g0, 2 * a.g0);
  EXPECT_TRUE(a.valid);
  c.phi_ac = 0.05;
  EXPECT_THROW(modulated_longitudinal_coupling(c, 10, 1e-15, th, 4.5), Error);
}

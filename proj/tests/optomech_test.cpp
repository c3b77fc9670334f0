#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "qmech/error.hpp"
#include "qmech/units.hpp"
#include "qmech/linalg.hpp"
#include "qmech/optomech.hpp"
#include "qmech/qubit_mech.hpp"

using namespace qmech;

namespace {
constexpr double kPi = std::numbers::pi;

OptoParams base() {
  OptoParams p;
  p.delta_a = 1.0;
  p.g_single = 0.0;
  p.kappa = 0.3;
  p.kappa1 = 0.1;
  p.epsilon = 0.5;
  p.omega_b = 2.0;
  p.gamma_m = 0.01;
  return p;
}
}  // namespace

TEST(Optomech, LinearCavityClosedForm) {
  const OptoParams p = base();
  const ClassicalSteady s = classical_steady(p);
  const cplx expect = cplx(0, -1) * p.epsilon / (0.5 * (p.kappa + p.kappa1) + cplx(0, p.delta_a));
  EXPECT_NEAR(std::abs(s.alpha - expect), 0.0, 1e-12);
  EXPECT_NEAR(std::abs(s.beta), 0.0, 1e-15);
  EXPECT_FALSE(s.bistable);
}

TEST(Optomech, SmallCouplingPerturbation) {
  OptoParams p = base();
  p.g_single = 1e-4;
  const ClassicalSteady s = classical_steady(p);
  const cplx a0 = classical_steady(base()).alpha;
  const cplx first = cplx(0, -1) * p.g_single * std::norm(a0) / (0.5 * p.gamma_m + cplx(0, p.omega_b));
  EXPECT_LT(std::abs(s.beta - first) / std::abs(first), 1e-3);
  EXPECT_LT(s.roots.front().residual, 1e-10);
}

TEST(Optomech, BistableRegionHasThreeRoots) {
  OptoParams p = base();
  p.g_single = 0.05;
  p.epsilon = 20.0;
  p.delta_a = 10.0;
  const ClassicalSteady s = classical_steady(p);
  EXPECT_TRUE(s.bistable);
  for (const auto& r : s.roots) EXPECT_LT(r.residual, 1e-8 * std::max(1.0, std::abs(r.alpha)));
}

TEST(Optomech, LongitudinalReducesToQubitMech) {
  OptoParams p = base();
  p.epsilon = 0.0;
  const ClassicalSteady s = classical_steady(p);
  const LinearDims dims{5, 3};
  const LinearizedModel m = linearize(p, s, 3.0, 0.2, LinearFlavor::longitudinal, dims);
  const Operator ref = kron(longitudinal_hamiltonian(3.0, p.omega_b, 0.2, dims.mech), Operator::identity(SpaceDims{3})) +
                       p.delta_a * embed(number(3), 2, SpaceDims{2, 5, 3});
  EXPECT_LT((m.hamiltonian.data() - ref.data()).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(Optomech, LongitudinalQubitShift) {
  OptoParams p = base();
  p.g_single = 1e-3;
  const ClassicalSteady s = classical_steady(p);
  const LinearizedModel m = linearize(p, s, 3.0, 0.2, LinearFlavor::longitudinal);
  EXPECT_NEAR(m.qubit_frequency, 3.0 + 2 * 0.2 * 2 * s.beta.real(), 1e-15);
  EXPECT_NEAR(m.g_alpha, p.g_single * std::abs(s.alpha), 1e-15);
  EXPECT_TRUE(m.weak_enhancement);
}

TEST(Optomech, TransverseConservesExcitations) {
  OptoParams p = base();
  p.g_single = 0.01;
  const ClassicalSteady s = classical_steady(p);
  const LinearDims dims{4, 4};
  const LinearizedModel m = linearize(p, s, 2.0, 0.1, LinearFlavor::transverse_rwa, dims);
  const SpaceDims sp{2, 4, 4};
  const Operator nq = embed(pauli(Pauli::plus) * pauli(Pauli::minus), 0, sp);
  const Operator total = nq + embed(number(4), 1, sp) + embed(number(4), 2, sp);
  EXPECT_LT(commutator(m.hamiltonian, total).max_abs(), 1e-12);
  EXPECT_GE(m.dropped_drive, 0.0);
}

TEST(Transduce, LosslessDoubleSwap) {
  const double g = units::angular(1e-3);
  TransduceParams p;
  p.g_tm = g;
  p.g_alpha = g;
  const TransduceReport r = transduce(p);
  EXPECT_GT(r.fidelity, 0.999);
  EXPECT_GT(r.stage1_transfer, 0.999);
  EXPECT_NEAR(r.t1 / r.oracle_t1, 1.0, 1e-3);
  EXPECT_NEAR(r.t2 / r.oracle_t2, 1.0, 1e-3);
  EXPECT_GT(r.superposition_fidelity, 0.999);
}

TEST(Transduce, LossesReduceFidelity) {
  const double g = units::angular(1e-3);
  TransduceParams p;
  p.g_tm = g;
  p.g_alpha = g;
  p.kappa = 0.1 * g;
  p.gamma = 0.1 * g;
  EXPECT_LT(transduce(p).fidelity, 0.99);
}

TEST(Transduce, BeamSplitterOracle) {
  const double g = units::angular(1e-3);
  const double t = beam_splitter_transfer_time(g);
  EXPECT_NEAR(t / (kPi / (2 * g)), 1.0, 1e-3);
  EXPECT_NEAR(t, 250.0, 0.25);
}

TEST(Readout, AmplitudesRotateIntoOptics) {
  const double g = 0.1;
  const cplx beta(0, 1.2);
  const double tq = kPi / (2 * g);
  const ReadoutTrace r = longitudinal_readout_via_optics(g, beta, 0.0, {0.0, 0.3 * tq, tq});
  EXPECT_NEAR(r.photons[2], std::norm(beta), 1e-8);
  EXPECT_NEAR(r.phonons[2], 0.0, 1e-8);
  EXPECT_NEAR(r.photons[1], std::norm(beta) * std::pow(std::sin(0.3 * kPi / 2), 2), 1e-8);
}

TEST(Readout, InterferenceDistinguishesEncoding) {
  const double g = 0.1, amp = 1.2;
  const ReadoutTrace ground = longitudinal_readout_via_optics(g, cplx(0, amp), amp, {});
  const ReadoutTrace excited = longitudinal_readout_via_optics(g, cplx(0, -amp), amp, {});
  const double pg = ground.sample_photons[0], pe = excited.sample_photons[0];
  EXPECT_GT(std::abs(pg - pe) / std::max(pg, pe), 0.5);
  for (std::size_t k = 0; k < ground.infer_ground.size(); ++k) {
    EXPECT_TRUE(ground.infer_ground[k]);
    EXPECT_FALSE(excited.infer_ground[k]);
  }
}

TEST(CoolingRates, ResolvedSidebandRatio) {
  const double k = 0.05, w = 1.0;
  CoolingRateInputs in;
  in.g_alpha = 0.01;
  in.kappa = k;
  in.cavity_detuning = -w;
  in.omega = w;
  const CoolingRates r = cooling_rates(in);
  EXPECT_NEAR(r.gamma_minus / r.gamma_plus, (k * k / 4 + 4 * w * w) / (k * k / 4), 1e-6);
  EXPECT_TRUE(r.cools());
  in.cavity_detuning = w;
  EXPECT_FALSE(cooling_rates(in).cools());
}

TEST(CoolingRates, LindbladCrossCheck) {
  // linearized cavity-mechanics pair in the drive frame, red and blue drive
  const double w = 1.0, ga = 0.005, kap = 0.2, gm = 0.002, nth = 1.0;
  auto phonons = [&](double delta_a) {
    const SpaceDims sp{12, 4};
    const Operator b = embed(destroy(12), 0, sp);
    const Operator a = embed(destroy(4), 1, sp);
    const Operator h = w * (b.adjoint() * b) + delta_a * (a.adjoint() * a) + ga * ((a + a.adjoint()) * (b + b.adjoint()));
    LindbladModel m{Operator::hermitian(sp, h.data()), {{a, kap}}, nth};
    add_thermal_channels(m, b, gm, nth);
    return expect(b.adjoint() * b, steady_state(m)).real();
  };
  CoolingRateInputs in;
  in.g_alpha = ga;
  in.kappa = kap;
  in.omega = w;
  in.cavity_detuning = -w;  // drive below resonance: Delta_a = +w
  EXPECT_TRUE(cooling_rates(in).cools());
  EXPECT_LT(phonons(+w), nth);
  in.cavity_detuning = +w;
  EXPECT_FALSE(cooling_rates(in).cools());
  EXPECT_GT(phonons(-w), nth);
}

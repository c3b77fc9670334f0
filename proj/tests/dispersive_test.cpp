#include <gtest/gtest.h>

#include <cmath>

#include "qmech/dispersive.hpp"
#include "qmech/error.hpp"

using namespace qmech;

namespace {

QubitEigensystem fig6_transmon() { return diagonalize(TransmonParams{5, 5, 0.5, 20}, {}); }

double sw_vs_exact(const QubitEigensystem& e, CavitySpec c) {
  const DispersiveShifts sw = sw_shifts(e, c, 8);
  const RVector pull = exact_shift_oracle(e, c, 6, 8);
  const double exact = pull(1) - pull(0);
  return std::abs(sw.two_chi() - exact) / std::abs(exact);
}

}  // namespace

TEST(Dispersive, TwoLevelHandEvaluation) {
  const auto e = fig6_transmon();
  const CavitySpec c{7.0, 0.05};
  const DispersiveShifts s = sw_shifts(e, c, 2);
  const double n = std::abs(matrix_elements(e, MatrixElement::charge_n, 2)(0, 1));
  const double w01 = e.energies(1) - e.energies(0);
  const double hand = c.g * c.g * n * n * (1 / (-w01 - c.omega) - 1 / (w01 - c.omega));
  EXPECT_NEAR(s.chi(0), hand, 1e-12);
  EXPECT_NEAR(s.chi(1), -hand, 1e-12);
  EXPECT_NEAR(s.lamb(0), s.pairwise(0, 1), 1e-15);
}

TEST(Dispersive, TransmonRwaNeighbourTerms) {
  const TransmonParams p{50, 50, 0.25, 30};  // E_J/E_C = 400
  const auto e = diagonalize(p, {});
  const CavitySpec c{8.0, 0.05};
  const DispersiveShifts s = sw_shifts(e, c, 5);
  const double n0 = std::pow(100.0 / 2.0, 0.25) / std::sqrt(2.0);
  for (int i = 0; i < 2; ++i) {
    const double closed = c.g * c.g * n0 * n0 * (i + 1) / (e.energies(i) - e.energies(i + 1) - c.omega);
    EXPECT_LT(std::abs(s.pairwise(i, i + 1) - closed) / std::abs(closed), 0.05) << i;
  }
}

TEST(Dispersive, DetunedOneGigahertzBelow) {
  const auto e = fig6_transmon();
  const double f01 = e.energies(1) - e.energies(0);
  EXPECT_LT(sw_vs_exact(e, {f01 - 1.0, 0.05}), 0.05);
}

TEST(Dispersive, ErrorScalesAsCouplingSquared) {
  const auto e = fig6_transmon();
  const double f01 = e.energies(1) - e.energies(0);
  const double r1 = sw_vs_exact(e, {f01 - 1.0, 0.05});
  const double r2 = sw_vs_exact(e, {f01 - 1.0, 0.025});
  EXPECT_GE(r1 / r2, 3.0);
}

TEST(Dispersive, NearResonanceGuard) {
  const auto e = fig6_transmon();
  const double f01 = e.energies(1) - e.energies(0);
  EXPECT_THROW(sw_shifts(e, {f01, 0.05}, 4), Error);
}

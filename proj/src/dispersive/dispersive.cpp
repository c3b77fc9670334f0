#include "qmech/dispersive.hpp"

#include <cmath>
#include <string>

#include "qmech/error.hpp"

namespace qmech {

DispersiveShifts sw_shifts(const QubitEigensystem& eig, const CavitySpec& cavity, int level_cutoff) {
  if (level_cutoff < 2 || level_cutoff > eig.size()) {
    throw Error(ErrorKind::InvalidArgument, "sw_shifts: level_cutoff out of range");
  }
  if (!(cavity.omega > 0) || cavity.g < 0) throw Error(ErrorKind::InvalidArgument, "sw_shifts: bad cavity");
  const CMatrix n = matrix_elements(eig, MatrixElement::charge_n, level_cutoff);
  const int k = level_cutoff;
  DispersiveShifts out;
  out.levels_used = k;
  out.pairwise = Eigen::MatrixXd::Zero(k, k);
  const double g2 = cavity.g * cavity.g;
  for (int i = 0; i < k; ++i) {
    for (int l = 0; l < k; ++l) {
      const double den = eig.energies(i) - eig.energies(l) - cavity.omega;
      if (std::abs(den) < 1e-6) {
        throw Error(ErrorKind::NearResonance, "sw_shifts: levels " + std::to_string(i) + " and " +
                                                  std::to_string(l) + " are resonant with the cavity");
      }
      out.pairwise(i, l) = g2 * std::norm(n(i, l)) / den;
    }
  }
  out.lamb = out.pairwise.rowwise().sum();
  out.chi = out.lamb - out.pairwise.colwise().sum().transpose();
  return out;
}

RVector exact_shift_oracle(const QubitEigensystem& eig, const CavitySpec& cavity, int photon_cutoff,
                           int level_cutoff) {
  if (photon_cutoff < 3) throw Error(ErrorKind::InvalidArgument, "exact_shift_oracle: photon_cutoff must be >= 3");
  if (level_cutoff < 2 || level_cutoff > eig.size()) {
    throw Error(ErrorKind::InvalidArgument, "exact_shift_oracle: level_cutoff out of range");
  }
  const int q = level_cutoff;
  const int nc = photon_cutoff + 1;
  const SpaceDims space{q, nc};
  const CMatrix nq = matrix_elements(eig, MatrixElement::charge_n, q);
  CMatrix hq = CMatrix::Zero(q, q);
  for (int i = 0; i < q; ++i) hq(i, i) = eig.energies(i) - eig.energies(0);

  const Operator qubit = Operator::hermitian(SpaceDims{q}, hq);
  const Operator charge = Operator::hermitian(SpaceDims{q}, nq);
  const Operator a = destroy(nc);
  const Operator x = a + a.adjoint();
  Operator h = embed(qubit, 0, space) + cavity.omega * embed(number(nc), 1, space) +
               cavity.g * (embed(charge, 0, space) * embed(x, 1, space));
  const EigenSystem es = eig_hermitian(Operator::hermitian(space, h.data()));

  auto dressed = [&](int i, int photons) {
    const int idx = i * nc + photons;
    Eigen::Index best = 0;
    es.vectors.row(idx).cwiseAbs().maxCoeff(&best);
    return es.values(best);
  };
  RVector pulls(q);
  for (int i = 0; i < q; ++i) pulls(i) = dressed(i, 1) - dressed(i, 0) - cavity.omega;
  return pulls;
}

}  // namespace qmech

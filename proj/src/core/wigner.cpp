#include <cmath>

#include "qmech/error.hpp"
#include "qmech/kernels.hpp"
#include "qmech/linalg.hpp"

namespace qmech {

double PhaseGrid::x(int i) const { return nx == 1 ? x_min : x_min + (x_max - x_min) * i / (nx - 1); }
double PhaseGrid::p(int j) const { return np == 1 ? p_min : p_min + (p_max - p_min) * j / (np - 1); }
double PhaseGrid::cell_area() const {
  const double dx = nx > 1 ? (x_max - x_min) / (nx - 1) : 1.0;
  const double dp = np > 1 ? (p_max - p_min) / (np - 1) : 1.0;
  return dx * dp;
}

namespace {

void require_single_mode(const DensityMatrix& rho) {
  if (rho.space().slots() != 1) {
    throw Error(ErrorKind::InvalidArgument, "wigner: expects a single-mode density matrix");
  }
}

}  // namespace

WignerField wigner(const DensityMatrix& rho, const PhaseGrid& grid) {
  require_single_mode(rho);
  if (grid.nx < 1 || grid.np < 1) throw Error(ErrorKind::InvalidArgument, "wigner: empty grid");
  const std::size_t npts = static_cast<std::size_t>(grid.nx) * static_cast<std::size_t>(grid.np);
  std::vector<double> re(npts), im(npts);
  for (int j = 0; j < grid.np; ++j) {
    for (int i = 0; i < grid.nx; ++i) {
      re[static_cast<std::size_t>(j) * grid.nx + i] = grid.x(i);
      im[static_cast<std::size_t>(j) * grid.nx + i] = grid.p(j);
    }
  }
  WignerField field{grid, std::vector<double>(npts), 0.0, false};
  const CMatrix& m = rho.matrix();
  const auto n = static_cast<std::size_t>(m.rows());
  kernels::wigner_points({m.data(), n * n}, n, re, im, field.values);

  double sum = 0.0;
  for (double w : field.values) sum += w;
  field.integral = sum * grid.cell_area();
  field.accuracy_warning = std::abs(field.integral - 1.0) > 1e-3;
  return field;
}

double wigner_at(const DensityMatrix& rho, cplx alpha) {
  require_single_mode(rho);
  const CMatrix& m = rho.matrix();
  const auto n = static_cast<std::size_t>(m.rows());
  const double re = alpha.real(), im = alpha.imag();
  double out = 0.0;
  kernels::wigner_points({m.data(), n * n}, n, {&re, 1}, {&im, 1}, {&out, 1});
  return out;
}

}  // namespace qmech

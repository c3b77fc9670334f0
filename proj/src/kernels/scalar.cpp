#include <cmath>
#include <numbers>
#include <vector>

#include "qmech/kernels.hpp"

namespace qmech::kernels::scalar {

void caxpy(cplx a, const cplx* x, cplx* y, std::size_t n) {
  for (std::size_t k = 0; k < n; ++k) y[k] += a * x[k];
}

void cwaxpy(const cplx* x, cplx a, const cplx* y, cplx* out, std::size_t n) {
  for (std::size_t k = 0; k < n; ++k) out[k] = x[k] + a * y[k];
}

double hermitize(cplx* a, std::size_t n) {
  double residual = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    cplx& d = a[j * n + j];
    residual = std::max(residual, 2.0 * std::abs(d.imag()));
    d = {d.real(), 0.0};
    for (std::size_t i = j + 1; i < n; ++i) {
      cplx& lower = a[j * n + i];  // (i, j)
      cplx& upper = a[i * n + j];  // (j, i)
      const cplx diff = lower - std::conj(upper);
      residual = std::max(residual, std::abs(diff));
      const cplx avg = 0.5 * (lower + std::conj(upper));
      lower = avg;
      upper = std::conj(avg);
    }
  }
  return residual;
}

// Row recurrence over Fock indices: w[k] tracks the (m, k) matrix element of
// the displaced-parity kernel while m advances.
void wigner_points(const cplx* rho, std::size_t n, const double* re, const double* im,
                   double* out, std::size_t npts) {
  std::vector<cplx> w(n);
  std::vector<double> sq(n);
  for (std::size_t k = 0; k < n; ++k) sq[k] = std::sqrt(static_cast<double>(k));

  for (std::size_t p = 0; p < npts; ++p) {
    const cplx alpha{re[p], im[p]};
    const cplx two_a = 2.0 * alpha;
    const cplx two_ac = std::conj(two_a);
    w[0] = std::exp(-2.0 * std::norm(alpha)) / std::numbers::pi;
    double acc = rho[0].real() * w[0].real();
    for (std::size_t k = 1; k < n; ++k) {
      w[k] = two_a * w[k - 1] / sq[k];
      acc += 2.0 * (rho[k * n] * w[k]).real();
    }
    for (std::size_t m = 1; m < n; ++m) {
      cplx prev = w[m];
      w[m] = (two_ac * prev - sq[m] * w[m - 1]) / sq[m];
      acc += (rho[m * n + m] * w[m]).real();
      for (std::size_t k = m + 1; k < n; ++k) {
        const cplx next = (two_a * w[k - 1] - sq[m] * prev) / sq[k];
        prev = w[k];
        w[k] = next;
        acc += 2.0 * (rho[k * n + m] * w[k]).real();
      }
    }
    out[p] = 2.0 * acc;
  }
}

}  // namespace qmech::kernels::scalar

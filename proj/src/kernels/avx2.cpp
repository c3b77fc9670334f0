#include <immintrin.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "qmech/kernels.hpp"

// Complex values are stored interleaved (re, im); one __m256d holds two.
namespace qmech::kernels::avx2 {
namespace {

inline __m256d cmul_scalar(__m256d x, __m256d ar, __m256d ai) {
  const __m256d swapped = _mm256_permute_pd(x, 0b0101);
  return _mm256_fmaddsub_pd(ar, x, _mm256_mul_pd(ai, swapped));
}

}  // namespace

void caxpy(cplx a, const cplx* x, cplx* y, std::size_t n) {
  const __m256d ar = _mm256_set1_pd(a.real());
  const __m256d ai = _mm256_set1_pd(a.imag());
  auto* xd = reinterpret_cast<const double*>(x);
  auto* yd = reinterpret_cast<double*>(y);
  std::size_t k = 0;
  for (; k + 2 <= n; k += 2) {
    const __m256d xv = _mm256_loadu_pd(xd + 2 * k);
    const __m256d yv = _mm256_loadu_pd(yd + 2 * k);
    _mm256_storeu_pd(yd + 2 * k, _mm256_add_pd(yv, cmul_scalar(xv, ar, ai)));
  }
  for (; k < n; ++k) y[k] += a * x[k];
}

void cwaxpy(const cplx* x, cplx a, const cplx* y, cplx* out, std::size_t n) {
  const __m256d ar = _mm256_set1_pd(a.real());
  const __m256d ai = _mm256_set1_pd(a.imag());
  auto* xd = reinterpret_cast<const double*>(x);
  auto* yd = reinterpret_cast<const double*>(y);
  auto* od = reinterpret_cast<double*>(out);
  std::size_t k = 0;
  for (; k + 2 <= n; k += 2) {
    const __m256d xv = _mm256_loadu_pd(xd + 2 * k);
    const __m256d yv = _mm256_loadu_pd(yd + 2 * k);
    _mm256_storeu_pd(od + 2 * k, _mm256_add_pd(xv, cmul_scalar(yv, ar, ai)));
  }
  for (; k < n; ++k) out[k] = x[k] + a * y[k];
}

double hermitize(cplx* a, std::size_t n) {
  auto* d = reinterpret_cast<double*>(a);
  const __m256d conj_mask = _mm256_setr_pd(0.0, -0.0, 0.0, -0.0);
  const __m256d half = _mm256_set1_pd(0.5);
  const __m256d abs_mask = _mm256_castsi256_pd(_mm256_set1_epi64x(0x7fffffffffffffffLL));
  double residual = 0.0;

  for (std::size_t j = 0; j < n; ++j) {
    cplx& diag = a[j * n + j];
    residual = std::max(residual, 2.0 * std::abs(diag.imag()));
    diag = {diag.real(), 0.0};

    // Pairs (i, j), (i+1, j) in column j against (j, i), (j, i+1) in row j.
    std::size_t i = j + 1;
    __m256d worst = _mm256_setzero_pd();
    for (; i + 2 <= n; i += 2) {
      double* lower = d + 2 * (j * n + i);
      double* up0 = d + 2 * (i * n + j);
      double* up1 = d + 2 * ((i + 1) * n + j);
      const __m256d lo = _mm256_loadu_pd(lower);
      const __m256d up = _mm256_set_m128d(_mm_loadu_pd(up1), _mm_loadu_pd(up0));
      const __m256d upc = _mm256_xor_pd(up, conj_mask);
      const __m256d diff = _mm256_sub_pd(lo, upc);
      const __m256d sq = _mm256_mul_pd(diff, diff);
      // |diff|^2 per complex lane, duplicated into both halves of the lane.
      worst = _mm256_max_pd(worst, _mm256_hadd_pd(sq, sq));
      const __m256d avg = _mm256_mul_pd(half, _mm256_add_pd(lo, upc));
      _mm256_storeu_pd(lower, avg);
      const __m256d avgc = _mm256_xor_pd(avg, conj_mask);
      _mm_storeu_pd(up0, _mm256_castpd256_pd128(avgc));
      _mm_storeu_pd(up1, _mm256_extractf128_pd(avgc, 1));
    }
    alignas(32) double lanes[4];
    _mm256_store_pd(lanes, _mm256_and_pd(worst, abs_mask));
    residual = std::max(residual, std::sqrt(std::max(lanes[0], lanes[2])));

    for (; i < n; ++i) {
      cplx& lower = a[j * n + i];
      cplx& upper = a[i * n + j];
      residual = std::max(residual, std::abs(lower - std::conj(upper)));
      const cplx avg = 0.5 * (lower + std::conj(upper));
      lower = avg;
      upper = std::conj(avg);
    }
  }
  return residual;
}

// Four phase-space points per pass, real and imaginary parts in separate
// registers. Same recurrence as the scalar reference.
void wigner_points(const cplx* rho, std::size_t n, const double* re, const double* im,
                   double* out, std::size_t npts) {
#pragma GCC diagnostic push
#pragma GCC diagnostic ignored "-Wignored-attributes"
  std::vector<__m256d> wr(n), wi(n);  // aligned new covers the 32-byte alignment
#pragma GCC diagnostic pop
  std::vector<double> sq(n), inv_sq(n);
  for (std::size_t k = 0; k < n; ++k) {
    sq[k] = std::sqrt(static_cast<double>(k));
    inv_sq[k] = k ? 1.0 / sq[k] : 0.0;
  }
  const __m256d two = _mm256_set1_pd(2.0);
  const __m256d inv_pi = _mm256_set1_pd(1.0 / std::numbers::pi);

  std::size_t p = 0;
  for (; p + 4 <= npts; p += 4) {
    const __m256d ar = _mm256_mul_pd(two, _mm256_loadu_pd(re + p));  // 2 alpha
    const __m256d ai = _mm256_mul_pd(two, _mm256_loadu_pd(im + p));
    alignas(32) double mag[4];
    _mm256_store_pd(mag, _mm256_add_pd(_mm256_mul_pd(ar, ar), _mm256_mul_pd(ai, ai)));
    alignas(32) double g[4];
    for (int l = 0; l < 4; ++l) g[l] = std::exp(-0.5 * mag[l]);  // exp(-2|alpha|^2)
    wr[0] = _mm256_mul_pd(_mm256_load_pd(g), inv_pi);
    wi[0] = _mm256_setzero_pd();

    __m256d acc = _mm256_mul_pd(_mm256_set1_pd(rho[0].real()), wr[0]);
    for (std::size_t k = 1; k < n; ++k) {
      const __m256d s = _mm256_set1_pd(inv_sq[k]);
      // (2a) * w[k-1]
      const __m256d nr = _mm256_fmsub_pd(ar, wr[k - 1], _mm256_mul_pd(ai, wi[k - 1]));
      const __m256d ni = _mm256_fmadd_pd(ar, wi[k - 1], _mm256_mul_pd(ai, wr[k - 1]));
      wr[k] = _mm256_mul_pd(nr, s);
      wi[k] = _mm256_mul_pd(ni, s);
      const cplx r = rho[k * n];
      // 2 Re(r w) = 2 (r.re w.re - r.im w.im)
      acc = _mm256_fmadd_pd(_mm256_set1_pd(2.0 * r.real()), wr[k], acc);
      acc = _mm256_fnmadd_pd(_mm256_set1_pd(2.0 * r.imag()), wi[k], acc);
    }
    for (std::size_t m = 1; m < n; ++m) {
      const __m256d sm = _mm256_set1_pd(sq[m]);
      const __m256d ism = _mm256_set1_pd(inv_sq[m]);
      __m256d pr = wr[m], pi = wi[m];
      // conj(2a) * prev - sqrt(m) w[m-1]
      const __m256d cr = _mm256_fmadd_pd(ar, pr, _mm256_mul_pd(ai, pi));
      const __m256d ci = _mm256_fmsub_pd(ar, pi, _mm256_mul_pd(ai, pr));
      wr[m] = _mm256_mul_pd(_mm256_fnmadd_pd(sm, wr[m - 1], cr), ism);
      wi[m] = _mm256_mul_pd(_mm256_fnmadd_pd(sm, wi[m - 1], ci), ism);
      const cplx rd = rho[m * n + m];
      acc = _mm256_fmadd_pd(_mm256_set1_pd(rd.real()), wr[m], acc);
      acc = _mm256_fnmadd_pd(_mm256_set1_pd(rd.imag()), wi[m], acc);
      for (std::size_t k = m + 1; k < n; ++k) {
        const __m256d isk = _mm256_set1_pd(inv_sq[k]);
        const __m256d tr = _mm256_fmsub_pd(ar, wr[k - 1], _mm256_mul_pd(ai, wi[k - 1]));
        const __m256d ti = _mm256_fmadd_pd(ar, wi[k - 1], _mm256_mul_pd(ai, wr[k - 1]));
        const __m256d nr = _mm256_mul_pd(_mm256_fnmadd_pd(sm, pr, tr), isk);
        const __m256d ni = _mm256_mul_pd(_mm256_fnmadd_pd(sm, pi, ti), isk);
        pr = wr[k];
        pi = wi[k];
        wr[k] = nr;
        wi[k] = ni;
        const cplx r = rho[k * n + m];
        acc = _mm256_fmadd_pd(_mm256_set1_pd(2.0 * r.real()), wr[k], acc);
        acc = _mm256_fnmadd_pd(_mm256_set1_pd(2.0 * r.imag()), wi[k], acc);
      }
    }
    _mm256_storeu_pd(out + p, _mm256_mul_pd(two, acc));
  }
  if (p < npts) scalar::wigner_points(rho, n, re + p, im + p, out + p, npts - p);
}

}  // namespace qmech::kernels::avx2

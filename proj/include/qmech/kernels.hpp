#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <string_view>

// Data-parallel inner loops with a scalar reference implementation and
// vectorized variants chosen once at runtime. Every variant must agree with
// the scalar one (see tests/kernels_test.cpp).
namespace qmech::kernels {

using cplx = std::complex<double>;

enum class Isa { scalar, avx2 };

/// The variant selected for this process. QMECH_FORCE_SCALAR=1 in the
/// environment pins the scalar path.
Isa active_isa();
std::string_view isa_name(Isa isa);
bool isa_available(Isa isa);

/// y += a * x
void caxpy(cplx a, std::span<const cplx> x, std::span<cplx> y, Isa isa = active_isa());

/// out = x + a * y
void cwaxpy(std::span<const cplx> x, cplx a, std::span<const cplx> y, std::span<cplx> out,
            Isa isa = active_isa());

/// In-place A <- (A + A^dagger)/2 for an n x n column-major matrix. Returns
/// the largest |A_ij - conj(A_ji)| seen before symmetrizing.
double hermitize(std::span<cplx> a, std::size_t n, Isa isa = active_isa());

/// Wigner accumulation over a batch of phase-space points. `rho` is n x n
/// column-major; `re`/`im` hold alpha for each point; writes W(alpha) into
/// `out` (already including the 2/pi prefactor).
void wigner_points(std::span<const cplx> rho, std::size_t n, std::span<const double> re,
                   std::span<const double> im, std::span<double> out, Isa isa = active_isa());

namespace scalar {
void caxpy(cplx a, const cplx* x, cplx* y, std::size_t n);
void cwaxpy(const cplx* x, cplx a, const cplx* y, cplx* out, std::size_t n);
double hermitize(cplx* a, std::size_t n);
void wigner_points(const cplx* rho, std::size_t n, const double* re, const double* im,
                   double* out, std::size_t npts);
}  // namespace scalar

namespace avx2 {
void caxpy(cplx a, const cplx* x, cplx* y, std::size_t n);
void cwaxpy(const cplx* x, cplx a, const cplx* y, cplx* out, std::size_t n);
double hermitize(cplx* a, std::size_t n);
void wigner_points(const cplx* rho, std::size_t n, const double* re, const double* im,
                   double* out, std::size_t npts);
}  // namespace avx2

}  // namespace qmech::kernels

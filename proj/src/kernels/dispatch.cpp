#include <cstdlib>
#include <string>

#include "qmech/error.hpp"
#include "qmech/kernels.hpp"

namespace qmech::kernels {
namespace {

bool cpu_has_avx2() {
#if defined(QMECH_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

Isa detect() {
  if (const char* force = std::getenv("QMECH_FORCE_SCALAR"); force && std::string(force) == "1") {
    return Isa::scalar;
  }
  return cpu_has_avx2() ? Isa::avx2 : Isa::scalar;
}

void require_same_size(std::size_t a, std::size_t b, const char* what) {
  if (a != b) throw Error(ErrorKind::InvalidDimension, std::string(what) + ": length mismatch");
}

}  // namespace

Isa active_isa() {
  static const Isa isa = detect();
  return isa;
}

bool isa_available(Isa isa) { return isa == Isa::scalar || cpu_has_avx2(); }

std::string_view isa_name(Isa isa) {
  switch (isa) {
    case Isa::avx2:
      return "avx2";
    case Isa::scalar:
      break;
  }
  return "scalar";
}

#if defined(QMECH_HAVE_AVX2)
#define QMECH_DISPATCH(isa, fn, ...)                                        \
  ((isa) == Isa::avx2 && isa_available(Isa::avx2) ? avx2::fn(__VA_ARGS__) \
                                                   : scalar::fn(__VA_ARGS__))
#else
#define QMECH_DISPATCH(isa, fn, ...) scalar::fn(__VA_ARGS__)
#endif

void caxpy(cplx a, std::span<const cplx> x, std::span<cplx> y, Isa isa) {
  require_same_size(x.size(), y.size(), "caxpy");
  QMECH_DISPATCH(isa, caxpy, a, x.data(), y.data(), x.size());
}

void cwaxpy(std::span<const cplx> x, cplx a, std::span<const cplx> y, std::span<cplx> out,
            Isa isa) {
  require_same_size(x.size(), y.size(), "cwaxpy");
  require_same_size(x.size(), out.size(), "cwaxpy");
  QMECH_DISPATCH(isa, cwaxpy, x.data(), a, y.data(), out.data(), x.size());
}

double hermitize(std::span<cplx> a, std::size_t n, Isa isa) {
  require_same_size(a.size(), n * n, "hermitize");
  return QMECH_DISPATCH(isa, hermitize, a.data(), n);
}

void wigner_points(std::span<const cplx> rho, std::size_t n, std::span<const double> re,
                   std::span<const double> im, std::span<double> out, Isa isa) {
  require_same_size(rho.size(), n * n, "wigner_points");
  require_same_size(re.size(), im.size(), "wigner_points");
  require_same_size(re.size(), out.size(), "wigner_points");
  QMECH_DISPATCH(isa, wigner_points, rho.data(), n, re.data(), im.data(), out.data(), re.size());
}

#undef QMECH_DISPATCH

}  // namespace qmech::kernels

#pragma once
// Complex-double inner loops shared by the eigensolvers, partial traces and
// the convex-roof objective. Each kernel has a scalar reference version and,
// on x86-64, an AVX2/FMA version picked once at startup from CPUID.

#include <complex>
#include <span>
#include <string_view>

namespace monogamy::simd {

using cplx = std::complex<double>;

enum class Level { scalar, avx2 };

std::string_view to_string(Level level);

struct KernelTable {
  Level level;
  // x <- a*x + b*y ; y <- c*x + d*y  (simultaneously). x and y must not alias.
  void (*rotate_pair)(std::span<cplx> x, std::span<cplx> y, cplx a, cplx b, cplx c, cplx d);
  // sum |x_i|^2
  double (*squared_norm)(std::span<const cplx> x);
  // sum conj(x_i) * y_i
  cplx (*inner_product)(std::span<const cplx> x, std::span<const cplx> y);
  // y <- y + alpha * x
  void (*axpy)(cplx alpha, std::span<const cplx> x, std::span<cplx> y);
};

const KernelTable& scalar_kernels();

// nullptr when the AVX2 variant was not compiled in.
const KernelTable* avx2_kernels();

bool cpu_supports(Level level);

// Highest level that is both compiled in and supported by the running CPU.
// The environment variable MONOGAMY_SIMD=scalar pins the scalar path.
Level detect_level();

const KernelTable& active();

// Test hook: switch the active table. Throws if `level` is unavailable.
void force_level(Level level);

inline void rotate_pair(std::span<cplx> x, std::span<cplx> y, cplx a, cplx b, cplx c, cplx d) {
  active().rotate_pair(x, y, a, b, c, d);
}
inline double squared_norm(std::span<const cplx> x) { return active().squared_norm(x); }
inline cplx inner_product(std::span<const cplx> x, std::span<const cplx> y) {
  return active().inner_product(x, y);
}
inline void axpy(cplx alpha, std::span<const cplx> x, std::span<cplx> y) {
  active().axpy(alpha, x, y);
}

}  // namespace monogamy::simd

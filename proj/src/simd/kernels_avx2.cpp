// Compiled with -mavx2 -mfma; only reached after a CPUID check.
#include <immintrin.h>

#include "monogamy/simd/kernels.hpp"

namespace monogamy::simd {
namespace {

// One __m256d holds two complex doubles laid out [re0, im0, re1, im1].
inline __m256d swap_re_im(__m256d v) { return _mm256_permute_pd(v, 0b0101); }

// (ar + i ai) * v for both packed complex values.
inline __m256d cmul(__m256d ar, __m256d ai, __m256d v) {
  return _mm256_fmaddsub_pd(ar, v, _mm256_mul_pd(ai, swap_re_im(v)));
}

inline double hsum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d s = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

void rotate_pair_avx2(std::span<cplx> x, std::span<cplx> y, cplx a, cplx b, cplx c, cplx d) {
  const std::size_t n = x.size();
  double* px = reinterpret_cast<double*>(x.data());
  double* py = reinterpret_cast<double*>(y.data());
  const __m256d ar = _mm256_set1_pd(a.real()), ai = _mm256_set1_pd(a.imag());
  const __m256d br = _mm256_set1_pd(b.real()), bi = _mm256_set1_pd(b.imag());
  const __m256d cr = _mm256_set1_pd(c.real()), ci = _mm256_set1_pd(c.imag());
  const __m256d dr = _mm256_set1_pd(d.real()), di = _mm256_set1_pd(d.imag());
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d vx = _mm256_loadu_pd(px + 2 * i);
    const __m256d vy = _mm256_loadu_pd(py + 2 * i);
    const __m256d nx = _mm256_add_pd(cmul(ar, ai, vx), cmul(br, bi, vy));
    const __m256d ny = _mm256_add_pd(cmul(cr, ci, vx), cmul(dr, di, vy));
    _mm256_storeu_pd(px + 2 * i, nx);
    _mm256_storeu_pd(py + 2 * i, ny);
  }
  for (; i < n; ++i) {
    const cplx xi = x[i];
    const cplx yi = y[i];
    x[i] = a * xi + b * yi;
    y[i] = c * xi + d * yi;
  }
}

double squared_norm_avx2(std::span<const cplx> x) {
  const std::size_t n = x.size();
  const double* px = reinterpret_cast<const double*>(x.data());
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d v0 = _mm256_loadu_pd(px + 2 * i);
    const __m256d v1 = _mm256_loadu_pd(px + 2 * i + 4);
    acc0 = _mm256_fmadd_pd(v0, v0, acc0);
    acc1 = _mm256_fmadd_pd(v1, v1, acc1);
  }
  for (; i + 2 <= n; i += 2) {
    const __m256d v = _mm256_loadu_pd(px + 2 * i);
    acc0 = _mm256_fmadd_pd(v, v, acc0);
  }
  double acc = hsum(_mm256_add_pd(acc0, acc1));
  for (; i < n; ++i) acc += x[i].real() * x[i].real() + x[i].imag() * x[i].imag();
  return acc;
}

cplx inner_product_avx2(std::span<const cplx> x, std::span<const cplx> y) {
  const std::size_t n = x.size();
  const double* px = reinterpret_cast<const double*>(x.data());
  const double* py = reinterpret_cast<const double*>(y.data());
  __m256d re_acc = _mm256_setzero_pd();  // [xr*yr, xi*yi, ...]
  __m256d im_acc = _mm256_setzero_pd();  // [xr*yi, xi*yr, ...]
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d vx = _mm256_loadu_pd(px + 2 * i);
    const __m256d vy = _mm256_loadu_pd(py + 2 * i);
    re_acc = _mm256_fmadd_pd(vx, vy, re_acc);
    im_acc = _mm256_fmadd_pd(vx, swap_re_im(vy), im_acc);
  }
  double re = hsum(re_acc);
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, im_acc);
  double im = (lanes[0] - lanes[1]) + (lanes[2] - lanes[3]);
  for (; i < n; ++i) {
    re += x[i].real() * y[i].real() + x[i].imag() * y[i].imag();
    im += x[i].real() * y[i].imag() - x[i].imag() * y[i].real();
  }
  return {re, im};
}

void axpy_avx2(cplx alpha, std::span<const cplx> x, std::span<cplx> y) {
  const std::size_t n = x.size();
  const double* px = reinterpret_cast<const double*>(x.data());
  double* py = reinterpret_cast<double*>(y.data());
  const __m256d ar = _mm256_set1_pd(alpha.real()), ai = _mm256_set1_pd(alpha.imag());
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d vx = _mm256_loadu_pd(px + 2 * i);
    const __m256d vy = _mm256_loadu_pd(py + 2 * i);
    _mm256_storeu_pd(py + 2 * i, _mm256_add_pd(vy, cmul(ar, ai, vx)));
  }
  for (; i < n; ++i) y[i] += alpha * x[i];
}

constexpr KernelTable kAvx2Table{
    Level::avx2, rotate_pair_avx2, squared_norm_avx2, inner_product_avx2, axpy_avx2};

}  // namespace

const KernelTable* avx2_kernels() { return &kAvx2Table; }

}  // namespace monogamy::simd

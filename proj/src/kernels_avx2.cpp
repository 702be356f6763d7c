// AVX2+FMA kernel variants. This translation unit is compiled with
// -mavx2 -mfma; callers must check avx2_ops() != nullptr before use.

#include "wpb/kernels.hpp"

#if defined(__x86_64__) || defined(_M_X64)

#include <immintrin.h>

namespace wpb::kernels {
namespace avx2 {

namespace {

// Complex product of two packed pairs (re,im,re,im).
inline __m256d cmul2(__m256d a, __m256d b) {
  const __m256d b_re = _mm256_movedup_pd(b);        // [br0 br0 br1 br1]
  const __m256d b_im = _mm256_permute_pd(b, 0xF);   // [bi0 bi0 bi1 bi1]
  const __m256d a_sw = _mm256_permute_pd(a, 0x5);   // [ai0 ar0 ai1 ar1]
  const __m256d t = _mm256_mul_pd(a_sw, b_im);
  return _mm256_fmaddsub_pd(a, b_re, t);
}

inline double hsum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d s = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

}  // namespace

void cmul(cplx* dst, const cplx* a, const cplx* b, std::size_t n) {
  auto* d = reinterpret_cast<double*>(dst);
  const auto* pa = reinterpret_cast<const double*>(a);
  const auto* pb = reinterpret_cast<const double*>(b);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d va = _mm256_loadu_pd(pa + 2 * i);
    const __m256d vb = _mm256_loadu_pd(pb + 2 * i);
    _mm256_storeu_pd(d + 2 * i, cmul2(va, vb));
  }
  for (; i < n; ++i) dst[i] = a[i] * b[i];
}

void cmul_inplace(cplx* a, const cplx* b, std::size_t n) { cmul(a, a, b, n); }

void caxpy(cplx* y, cplx alpha, const cplx* x, std::size_t n) {
  const __m256d a_re = _mm256_set1_pd(alpha.real());
  const __m256d a_im = _mm256_set1_pd(alpha.imag());
  auto* py = reinterpret_cast<double*>(y);
  const auto* px = reinterpret_cast<const double*>(x);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d vx = _mm256_loadu_pd(px + 2 * i);
    const __m256d x_sw = _mm256_permute_pd(vx, 0x5);
    const __m256d t = _mm256_mul_pd(x_sw, a_im);
    const __m256d prod = _mm256_fmaddsub_pd(vx, a_re, t);
    const __m256d vy = _mm256_loadu_pd(py + 2 * i);
    _mm256_storeu_pd(py + 2 * i, _mm256_add_pd(vy, prod));
  }
  for (; i < n; ++i) y[i] += alpha * x[i];
}

void cscale(cplx* a, cplx alpha, std::size_t n) {
  const __m256d a_re = _mm256_set1_pd(alpha.real());
  const __m256d a_im = _mm256_set1_pd(alpha.imag());
  auto* pa = reinterpret_cast<double*>(a);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d va = _mm256_loadu_pd(pa + 2 * i);
    const __m256d a_sw = _mm256_permute_pd(va, 0x5);
    const __m256d t = _mm256_mul_pd(a_sw, a_im);
    _mm256_storeu_pd(pa + 2 * i, _mm256_fmaddsub_pd(va, a_re, t));
  }
  for (; i < n; ++i) a[i] *= alpha;
}

cplx cdotc(const cplx* a, const cplx* b, std::size_t n) {
  const auto* pa = reinterpret_cast<const double*>(a);
  const auto* pb = reinterpret_cast<const double*>(b);
  __m256d acc_sym = _mm256_setzero_pd();   // lanes hold ar*br, ai*bi
  __m256d acc_asym = _mm256_setzero_pd();  // lanes hold ai*br, ar*bi
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d va = _mm256_loadu_pd(pa + 2 * i);
    const __m256d vb = _mm256_loadu_pd(pb + 2 * i);
    acc_sym = _mm256_fmadd_pd(va, vb, acc_sym);
    acc_asym = _mm256_fmadd_pd(_mm256_permute_pd(va, 0x5), vb, acc_asym);
  }
  double re = hsum(acc_sym);
  // Imaginary part is (ar*bi - ai*br): odd lanes minus even lanes.
  const __m256d neg = _mm256_mul_pd(acc_asym, _mm256_setr_pd(-1.0, 1.0, -1.0, 1.0));
  double im = hsum(neg);
  for (; i < n; ++i) {
    const double ar = a[i].real(), ai = a[i].imag();
    const double br = b[i].real(), bi = b[i].imag();
    re += ar * br + ai * bi;
    im += ar * bi - ai * br;
  }
  return {re, im};
}

double sumsq(const cplx* a, std::size_t n) {
  const auto* pa = reinterpret_cast<const double*>(a);
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d va = _mm256_loadu_pd(pa + 2 * i);
    acc = _mm256_fmadd_pd(va, va, acc);
  }
  double s = hsum(acc);
  for (; i < n; ++i) {
    s += a[i].real() * a[i].real() + a[i].imag() * a[i].imag();
  }
  return s;
}

void fft_pass(cplx* data, const cplx* tw, std::size_t half, std::size_t n) {
  const std::size_t len = 2 * half;
  if (half < 2) {
    // Final-span stages have too little contiguous work for 256-bit lanes.
    for (std::size_t b = 0; b < n; b += len) {
      for (std::size_t j = 0; j < half; ++j) {
        const cplx u = data[b + j];
        const cplx v = data[b + j + half] * tw[j];
        data[b + j] = u + v;
        data[b + j + half] = u - v;
      }
    }
    return;
  }
  auto* d = reinterpret_cast<double*>(data);
  const auto* w = reinterpret_cast<const double*>(tw);
  for (std::size_t b = 0; b < n; b += len) {
    for (std::size_t j = 0; j < half; j += 2) {
      const std::size_t top = 2 * (b + j);
      const std::size_t bot = 2 * (b + j + half);
      const __m256d u = _mm256_loadu_pd(d + top);
      const __m256d v = _mm256_loadu_pd(d + bot);
      const __m256d vw = cmul2(v, _mm256_loadu_pd(w + 2 * j));
      _mm256_storeu_pd(d + top, _mm256_add_pd(u, vw));
      _mm256_storeu_pd(d + bot, _mm256_sub_pd(u, vw));
    }
  }
}

}  // namespace avx2

const Ops* avx2_ops() {
  static const Ops table{avx2::cmul,  avx2::cmul_inplace, avx2::caxpy,
                         avx2::cscale, avx2::cdotc,        avx2::sumsq,
                         avx2::fft_pass};
  return &table;
}

}  // namespace wpb::kernels

#else

namespace wpb::kernels {
const Ops* avx2_ops() { return nullptr; }
}  // namespace wpb::kernels

#endif

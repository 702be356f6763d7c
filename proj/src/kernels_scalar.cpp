#include "wpb/kernels.hpp"

namespace wpb::kernels {
namespace scalar {

void cmul(cplx* dst, const cplx* a, const cplx* b, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) dst[i] = a[i] * b[i];
}

void cmul_inplace(cplx* a, const cplx* b, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) a[i] *= b[i];
}

void caxpy(cplx* y, cplx alpha, const cplx* x, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] += alpha * x[i];
}

void cscale(cplx* a, cplx alpha, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) a[i] *= alpha;
}

cplx cdotc(const cplx* a, const cplx* b, std::size_t n) {
  double re = 0.0, im = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double ar = a[i].real(), ai = a[i].imag();
    const double br = b[i].real(), bi = b[i].imag();
    re += ar * br + ai * bi;
    im += ar * bi - ai * br;
  }
  return {re, im};
}

double sumsq(const cplx* a, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    s += a[i].real() * a[i].real() + a[i].imag() * a[i].imag();
  }
  return s;
}

void fft_pass(cplx* data, const cplx* tw, std::size_t half, std::size_t n) {
  const std::size_t len = 2 * half;
  for (std::size_t b = 0; b < n; b += len) {
    for (std::size_t j = 0; j < half; ++j) {
      const cplx u = data[b + j];
      const cplx v = data[b + j + half] * tw[j];
      data[b + j] = u + v;
      data[b + j + half] = u - v;
    }
  }
}

}  // namespace scalar

const Ops& scalar_ops() {
  static const Ops table{scalar::cmul,  scalar::cmul_inplace, scalar::caxpy,
                         scalar::cscale, scalar::cdotc,        scalar::sumsq,
                         scalar::fft_pass};
  return table;
}

}  // namespace wpb::kernels

#pragma once

#include <cstddef>

#include "wpb/types.hpp"

namespace wpb::kernels {

// Data-parallel inner loops used by the grid solver, the FFT and the
// wavefunction reconstruction. Each operation has a scalar reference
// implementation and, on x86-64 with AVX2+FMA, a vectorized variant.
// The active table is selected once at startup; WPB_KERNELS=scalar in
// the environment forces the reference path.
struct Ops {
  // dst[i] = a[i] * b[i]
  void (*cmul)(cplx* dst, const cplx* a, const cplx* b, std::size_t n);
  // a[i] *= b[i]
  void (*cmul_inplace)(cplx* a, const cplx* b, std::size_t n);
  // y[i] += alpha * x[i]
  void (*caxpy)(cplx* y, cplx alpha, const cplx* x, std::size_t n);
  // a[i] *= alpha
  void (*cscale)(cplx* a, cplx alpha, std::size_t n);
  // sum_i conj(a[i]) * b[i]
  cplx (*cdotc)(const cplx* a, const cplx* b, std::size_t n);
  // sum_i |a[i]|^2
  double (*sumsq)(const cplx* a, std::size_t n);
  // One radix-2 butterfly pass over `data` of length n. `half` is the
  // butterfly span; `tw` holds `half` contiguous twiddle factors.
  // For each block b = 0, 2*half, ...:
  //   u = data[b+j]; v = data[b+j+half] * tw[j];
  //   data[b+j] = u + v; data[b+j+half] = u - v.
  void (*fft_pass)(cplx* data, const cplx* tw, std::size_t half, std::size_t n);
};

// Reference implementations (always available).
const Ops& scalar_ops();

// AVX2 implementations, or nullptr when unsupported by CPU or build.
const Ops* avx2_ops();

// Table selected at startup (honors WPB_KERNELS).
const Ops& ops();

// "avx2" or "scalar".
const char* active_backend();

}  // namespace wpb::kernels

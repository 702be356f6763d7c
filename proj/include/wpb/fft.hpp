#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <vector>

#include "wpb/types.hpp"

namespace wpb {

// In-place complex FFT plan. Power-of-two lengths run the iterative
// radix-2 path through the kernel dispatch table; other lengths fall back
// to Bluestein's chirp-z algorithm on an internal power-of-two plan.
//
// Conventions: forward computes X[k] = sum_j x[j] exp(-2*pi*i*j*k/n);
// inverse includes the 1/n factor, so inverse(forward(x)) == x.
class Fft {
 public:
  explicit Fft(std::size_t n);

  std::size_t size() const { return n_; }

  void forward(cplx* data) const;
  void inverse(cplx* data) const;

 private:
  void transform_pow2(cplx* data, bool inverse) const;
  void transform_bluestein(cplx* data, bool inverse) const;

  std::size_t n_ = 0;
  bool pow2_ = false;

  // Radix-2 state.
  std::vector<std::uint32_t> bitrev_;
  std::vector<std::vector<cplx>> stage_tw_fwd_;
  std::vector<std::vector<cplx>> stage_tw_inv_;

  // Bluestein state.
  std::unique_ptr<Fft> conv_;          // power-of-two convolution plan
  std::vector<cplx> chirp_;            // exp(-i*pi*j^2/n)
  std::vector<cplx> chirp_kernel_fft_; // FFT of the wrapped conjugate chirp
};

}  // namespace wpb

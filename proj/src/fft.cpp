#include "wpb/fft.hpp"

#include <cmath>
#include <stdexcept>

#include "wpb/kernels.hpp"

namespace wpb {

namespace {

bool is_pow2(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

std::size_t next_pow2(std::size_t n) {
  std::size_t m = 1;
  while (m < n) m <<= 1;
  return m;
}

// exp(-i*pi*k/n) with the integer phase reduced mod 2n so large k keeps
// full precision in the trig argument.
cplx unit_phase(std::uint64_t k, std::uint64_t n) {
  const double arg = -kPi * static_cast<double>(k % (2 * n)) / static_cast<double>(n);
  return {std::cos(arg), std::sin(arg)};
}

}  // namespace

Fft::Fft(std::size_t n) : n_(n), pow2_(is_pow2(n)) {
  if (n == 0) throw std::invalid_argument("Fft: length must be positive");
  if (pow2_) {
    bitrev_.resize(n);
    std::uint32_t j = 0;
    bitrev_[0] = 0;
    for (std::uint32_t i = 1; i < n; ++i) {
      std::uint32_t bit = static_cast<std::uint32_t>(n >> 1);
      for (; j & bit; bit >>= 1) j ^= bit;
      j ^= bit;
      bitrev_[i] = j;
    }
    for (std::size_t len = 2; len <= n; len <<= 1) {
      const std::size_t half = len / 2;
      std::vector<cplx> fwd(half), inv(half);
      for (std::size_t k = 0; k < half; ++k) {
        // exp(-2*pi*i*k/len) = exp(-i*pi*(2k)/len)
        fwd[k] = unit_phase(2 * k, len);
        inv[k] = std::conj(fwd[k]);
      }
      stage_tw_fwd_.push_back(std::move(fwd));
      stage_tw_inv_.push_back(std::move(inv));
    }
  } else {
    const std::size_t m = next_pow2(2 * n - 1);
    conv_ = std::make_unique<Fft>(m);
    chirp_.resize(n);
    for (std::uint64_t j = 0; j < n; ++j) {
      chirp_[j] = unit_phase(j * j, n);
    }
    std::vector<cplx> kernel(m, cplx{0.0, 0.0});
    kernel[0] = std::conj(chirp_[0]);
    for (std::size_t j = 1; j < n; ++j) {
      kernel[j] = std::conj(chirp_[j]);
      kernel[m - j] = std::conj(chirp_[j]);
    }
    conv_->forward(kernel.data());
    chirp_kernel_fft_ = std::move(kernel);
  }
}

void Fft::transform_pow2(cplx* data, bool inverse) const {
  const auto& k = kernels::ops();
  for (std::size_t i = 0; i < n_; ++i) {
    const std::size_t j = bitrev_[i];
    if (i < j) std::swap(data[i], data[j]);
  }
  const auto& stages = inverse ? stage_tw_inv_ : stage_tw_fwd_;
  for (const auto& tw : stages) {
    k.fft_pass(data, tw.data(), tw.size(), n_);
  }
  if (inverse) {
    k.cscale(data, cplx{1.0 / static_cast<double>(n_), 0.0}, n_);
  }
}

void Fft::transform_bluestein(cplx* data, bool inverse) const {
  const auto& k = kernels::ops();
  if (inverse) {
    // inverse(x) = conj(forward(conj(x))) / n
    for (std::size_t i = 0; i < n_; ++i) data[i] = std::conj(data[i]);
    transform_bluestein(data, false);
    const double s = 1.0 / static_cast<double>(n_);
    for (std::size_t i = 0; i < n_; ++i) data[i] = std::conj(data[i]) * s;
    return;
  }
  const std::size_t m = conv_->size();
  std::vector<cplx> work(m, cplx{0.0, 0.0});
  k.cmul(work.data(), data, chirp_.data(), n_);
  conv_->forward(work.data());
  k.cmul_inplace(work.data(), chirp_kernel_fft_.data(), m);
  conv_->inverse(work.data());
  k.cmul(data, work.data(), chirp_.data(), n_);
}

void Fft::forward(cplx* data) const {
  pow2_ ? transform_pow2(data, false) : transform_bluestein(data, false);
}

void Fft::inverse(cplx* data) const {
  pow2_ ? transform_pow2(data, true) : transform_bluestein(data, true);
}

}  // namespace wpb

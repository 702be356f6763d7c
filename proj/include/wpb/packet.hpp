#pragma once

#include <array>

#include "wpb/types.hpp"

namespace wpb {

// One-dimensional wave packet
//
//   psi(x) = exp(log_prefactor) * exp(i*momentum*(x - center))
//                               * exp(-width*(x - center)^2 / 2)
//
// with complex width (Re width > 0). The prefactor is stored as a complex
// logarithm: the real part carries the normalization, the imaginary part
// the global phase, and products of many per-step factors stay additive.
struct GeneralizedGaussian {
  double center = 0.0;
  double momentum = 0.0;
  cplx width{1.0, 0.0};
  cplx log_prefactor{0.0, 0.0};

  // Unit-norm packet with the given shape and global phase.
  static GeneralizedGaussian normalized(double center, double momentum,
                                        cplx width, double phase = 0.0);
};

// psi(x). Throws std::domain_error for non-finite x or Re(width) <= 0.
cplx evaluate(const GeneralizedGaussian& g, double x);

// Translation by dx: same shape and norm, center moved.
GeneralizedGaussian shift(const GeneralizedGaussian& g, double dx);

// Momentum kick by dp, phase referenced at the packet center, so the
// modulus of the wavefunction is unchanged everywhere.
GeneralizedGaussian boost(const GeneralizedGaussian& g, double dp);

// L2 norm of the packet.
double packet_norm(const GeneralizedGaussian& g);

// Same packet rescaled to unit norm (only Re(log_prefactor) changes).
GeneralizedGaussian normalize(const GeneralizedGaussian& g);

// <a|b> in closed form.
cplx overlap(const GeneralizedGaussian& a, const GeneralizedGaussian& b);

// <a|x^k|b> for k in 0..4.
cplx moment(const GeneralizedGaussian& a, const GeneralizedGaussian& b, int k);

// <a|p^2/2m|b>.
cplx kinetic_element(const GeneralizedGaussian& a, const GeneralizedGaussian& b,
                     double mass);

// Shared quantities for assembling many matrix elements over one pair:
// the overlap, the moments <a|x^k|b> up to k = 4, and the kinetic element.
struct PairIntegrals {
  cplx overlap;
  std::array<cplx, 5> moments;  // moments[k] = <a|x^k|b>
  cplx kinetic;                 // <a|p^2/2m|b>
};

PairIntegrals pair_integrals(const GeneralizedGaussian& a,
                             const GeneralizedGaussian& b, double mass);

}  // namespace wpb

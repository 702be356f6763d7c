#pragma once

#include <random>

#include "wpb/packet.hpp"

namespace testsupport {

// Randomized packets over the ranges the closed-form integrals are
// validated on: Re(gamma) in [0.2, 5], |Im(gamma)| <= 5, |center| <= 3,
// |momentum| <= 3.
inline wpb::GeneralizedGaussian random_packet(std::mt19937_64& rng,
                                              double center_max = 3.0,
                                              double momentum_max = 3.0) {
  std::uniform_real_distribution<double> re_g(0.2, 5.0);
  std::uniform_real_distribution<double> im_g(-5.0, 5.0);
  std::uniform_real_distribution<double> cen(-center_max, center_max);
  std::uniform_real_distribution<double> mom(-momentum_max, momentum_max);
  std::uniform_real_distribution<double> ph(-3.0, 3.0);
  return wpb::GeneralizedGaussian::normalized(cen(rng), mom(rng),
                                              {re_g(rng), im_g(rng)}, ph(rng));
}

}  // namespace testsupport
